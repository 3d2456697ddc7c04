"""Command line front end.

Every subcommand is a pure function of its arguments: identical inputs
produce byte-identical output (collections are sorted before emission).
Exit codes: 0 on success, 1 on a verification failure, 2 on usage
errors.

Rectangle lists are written as comma-separated ``rxs`` pairs
(``--R "2x1,1x3"``); a bare integer means a single column of that
height.  Structured inputs are inline JSON or the name of a JSON file.
"""

import csv
import json
import os
import sys

import click

from .core import insert as rsk_insert
from .energy import (QLaurent, cokostka, energy as path_energy, kostka,
                     onedim_sum, rmatrix)
from .fermionic import M_Atd, M_sum, M_sum_mform, M_sum_rc, verify_XM
from .rc import (charge as lr_charge, comp, phi_bar_inverse, phi_bar_lr,
                 rc_from_json, rc_to_json, wedge_rc)
from .virtual import (TAGS, VirtualElement, decompose, generate_V, member_V,
                      virtual_D, virtual_f, virtual_weight)


def _parse_rects(text):
    out = []
    for token in text.split(","):
        token = token.strip()
        if "x" in token:
            r, s = token.split("x")
            out.append((int(r), int(s)))
        else:
            out.append((int(token), 1))
    if not out or any(r < 1 or s < 1 for r, s in out):
        raise click.UsageError(f"bad rectangle list {text!r}")
    return tuple(out)


def _parse_ints(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise click.UsageError(f"bad integer list {text!r}")


def _load_json(value):
    """Inline JSON, or the contents of the named JSON file."""
    if os.path.exists(value):
        with open(value) as fh:
            return json.load(fh)
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        raise click.UsageError(
            f"{value!r} is neither a file nor valid JSON")


def _tuplify(data):
    if isinstance(data, list):
        return tuple(_tuplify(x) for x in data)
    return data


def _emit(data, fmt, text_lines):
    if fmt == "json":
        click.echo(json.dumps(data, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            click.echo(line)


def _tableau_lines(t):
    return [" ".join(str(x) for x in row) for row in t] or ["(empty)"]


def _poly_text(p: QLaurent) -> str:
    return repr(p)


_format = click.option("--format", "fmt", type=click.Choice(["json", "text"]),
                       default="text", show_default=True)
_type = click.option("--type", "tag", type=click.Choice(TAGS), required=True)


class _Group(click.Group):
    """Group whose commands report library validation errors as usage
    errors (exit code 2) instead of tracebacks."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ValueError as exc:
            raise click.UsageError(str(exc))


@click.group(cls=_Group)
def main():
    """Exact computations for crystals, rigged configurations and
    fermionic sums."""


# ---------------------------------------------------------------------------
# plain type-A commands

@main.command()
@click.option("--word", required=True, help="comma-separated letters")
@click.option("--n", type=int, default=None, help="alphabet bound (optional)")
@_format
def insert(word, n, fmt):
    """Insert a word and print its tableau."""
    letters = _parse_ints(word)
    if n is not None and any(x < 1 or x > n for x in letters):
        raise click.UsageError(f"letters outside 1..{n}")
    t = rsk_insert(letters)
    _emit([list(row) for row in t], fmt, _tableau_lines(t))


@main.command("rmatrix")
@click.option("--b2", required=True, help="left factor (JSON tableau)")
@click.option("--b1", required=True, help="right factor (JSON tableau)")
@click.option("--n", type=int, required=True)
@_format
def rmatrix_cmd(b2, b1, n, fmt):
    """Apply the local isomorphism to a pair of rectangle tableaux."""
    left, right = _tuplify(_load_json(b2)), _tuplify(_load_json(b1))
    new1, new2 = rmatrix(left, right, n)
    _emit([[list(r) for r in new1], [list(r) for r in new2]], fmt,
          _tableau_lines(new1) + ["(x)"] + _tableau_lines(new2))


@main.command("energy")
@click.option("--path", "path_json", required=True,
              help="JSON list of rectangle tableaux, leftmost first")
@click.option("--n", type=int, required=True)
@click.option("--convention", type=click.Choice(["standard", "unshifted"]),
              default="standard", show_default=True)
@_format
def energy_cmd(path_json, n, convention, fmt):
    """Energy of a tensor product of rectangle tableaux."""
    b = _tuplify(_load_json(path_json))
    value = path_energy(b, n, convention)
    _emit({"energy": value}, fmt, [str(value)])


@main.command()
@click.option("--R", "rects", required=True)
@click.option("--lam", required=True, help="comma-separated partition")
@click.option("--n", type=int, required=True)
@_format
def onedim(rects, lam, n, fmt):
    """Graded census of classically restricted elements."""
    value = onedim_sum(_parse_rects(rects), _parse_ints(lam), n)
    _emit(value.to_json(), fmt, [_poly_text(value)])


@main.command("kostka")
@click.option("--R", "rects", required=True)
@click.option("--lam", required=True)
@click.option("--n", type=int, required=True)
@click.option("--co", is_flag=True, help="emit the inverted-variable variant")
@_format
def kostka_cmd(rects, lam, n, co, fmt):
    """Kostka polynomial of a partition and a rectangle list."""
    fn = cokostka if co else kostka
    value = fn(_parse_ints(lam), _parse_rects(rects), n)
    _emit(value.to_json(), fmt, [_poly_text(value)])


@main.command("charge")
@click.option("--lr", required=True,
              help='JSON {"tableau": ..., "rects": ...}')
@_format
def charge_cmd(lr, fmt):
    """Charge of a Littlewood-Richardson tableau."""
    data = _load_json(lr)
    value = lr_charge(_tuplify(data["tableau"]), _tuplify(data["rects"]))
    _emit({"charge": value}, fmt, [str(value)])


# ---------------------------------------------------------------------------
# rigged configurations

@main.group()
def rc():
    """Bijections and dualities on rigged configurations."""


def _trace_lines(steps):
    lines = []
    for x, _, sel, snapshot in steps:
        picks = " ".join(f"level {k}: length {ln}" for k, ln in sel)
        lines.append(f"x={x}" + (f"  [{picks}]" if picks else ""))
        for k, level in enumerate(snapshot, start=1):
            body = " ".join(f"({ln},{rig})^{vac}" for vac, ln, rig in level)
            lines.append(f"  nu^({k}): {body if body else '-'}")
    return lines


def _trace_json(steps):
    return [
        {"x": x,
         "selected": [{"level": k, "length": ln} for k, ln in sel],
         "levels": [[{"vac": vac, "len": ln, "rig": rig}
                     for vac, ln, rig in level] for level in snapshot]}
        for x, _, sel, snapshot in steps]


@rc.command("to")
@click.option("--lr", required=True,
              help='JSON {"tableau": ..., "rects": ...}')
@click.option("--trace", is_flag=True)
@_format
def rc_to(lr, trace, fmt):
    """Map an LR tableau to its rigged configuration."""
    data = _load_json(lr)
    t, rects = _tuplify(data["tableau"]), _tuplify(data["rects"])
    if trace:
        out, steps = phi_bar_lr(t, rects, trace=True)
        _emit({"rc": rc_to_json(out), "trace": _trace_json(steps)}, fmt,
              _trace_lines(steps) + ["rc: " + json.dumps(rc_to_json(out))])
    else:
        out = phi_bar_lr(t, rects)
        _emit(rc_to_json(out), fmt, [json.dumps(rc_to_json(out))])


@rc.command("trace")
@click.option("--lr", required=True)
@_format
@click.pass_context
def rc_trace(ctx, lr, fmt):
    """Shorthand for `rc to --trace`."""
    ctx.invoke(rc_to, lr=lr, trace=True, fmt=fmt)


@rc.command("from")
@click.option("--rc", "rc_json", required=True)
@click.option("--R", "rects", required=True)
@_format
def rc_from(rc_json, rects, fmt):
    """Invert the bijection: rigged configuration to path."""
    path = phi_bar_inverse(rc_from_json(_load_json(rc_json)),
                           _parse_rects(rects))
    lines = []
    for j, t in enumerate(path):
        lines.extend([f"factor {j + 1}:"] + _tableau_lines(t))
    _emit([[list(r) for r in t] for t in path], fmt, lines)


@rc.command("dual")
@click.option("--rc", "rc_json", required=True)
@click.option("--n", type=int, required=True)
@_format
def rc_dual(rc_json, n, fmt):
    """Level-reversing duality."""
    out = wedge_rc(rc_from_json(_load_json(rc_json)), n)
    _emit(rc_to_json(out), fmt, [json.dumps(rc_to_json(out))])


@rc.command("comp")
@click.option("--rc", "rc_json", required=True)
@click.option("--R", "rects", required=True)
@_format
def rc_comp(rc_json, rects, fmt):
    """Complement every rigging within its box."""
    out = comp(rc_from_json(_load_json(rc_json)), _parse_rects(rects))
    _emit(rc_to_json(out), fmt, [json.dumps(rc_to_json(out))])


# ---------------------------------------------------------------------------
# virtual crystals

@main.group()
def virtual():
    """Virtual crystals inside type-A ambient tensors."""


def _graph_payload(tag, n, r, s, cap):
    nodes = generate_V(tag, n, r, s, cap)
    index = {v: k for k, v in enumerate(nodes)}
    payload = []
    for v in nodes:
        edges = {}
        for i in range(n + 1):
            w = virtual_f(i, v)
            if w is not None:
                edges[str(i)] = index[w]
        payload.append({
            "ambient": [[list(row) for row in t] for t in v.ambient],
            "weight": list(virtual_weight(v)),
            "energy2": virtual_D(v),
            "f": edges,
        })
    return {"type": tag, "n": n, "r": r, "s": s, "nodes": payload}


@virtual.command("generate")
@_type
@click.option("--n", type=int, required=True)
@click.option("--r", type=int, required=True)
@click.option("--s", type=int, required=True)
@click.option("--cap", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def virtual_generate(tag, n, r, s, cap, out):
    """Generate the virtual crystal graph."""
    payload = _graph_payload(tag, n, r, s, cap)
    text = json.dumps(payload, sort_keys=True, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
        click.echo(f"wrote {len(payload['nodes'])} nodes to {out}")
    else:
        click.echo(text)


@virtual.command("member")
@_type
@click.option("--n", type=int, required=True)
@click.option("--r", type=int, required=True)
@click.option("--s", type=int, required=True)
@click.option("--ambient", required=True,
              help="JSON list of rectangle tableaux, leftmost first")
@_format
def virtual_member(tag, n, r, s, ambient, fmt):
    """Test membership; exits 1 when the element is outside."""
    v = VirtualElement(tag, n, r, s, _tuplify(_load_json(ambient)))
    ok = member_V(v)
    _emit({"member": ok}, fmt, ["member" if ok else "not a member"])
    if not ok:
        sys.exit(1)


@virtual.command("decompose")
@_type
@click.option("--n", type=int, required=True)
@click.option("--r", type=int, required=True)
@click.option("--s", type=int, required=True)
@_format
def virtual_decompose(tag, n, r, s, fmt):
    """Classical components with doubled energies."""
    comps = decompose(tag, n, r, s)
    _emit([{"weight": list(w), "energy2": d} for w, d in comps], fmt,
          [f"weight {w}  energy2 {d}" for w, d in comps])


# ---------------------------------------------------------------------------
# fermionic sums

@main.group()
def fermionic():
    """Fermionic sums and the three-way verifier."""


@fermionic.command("m")
@_type
@click.option("--n", type=int, required=True)
@click.option("--R", "rects", required=True)
@click.option("--weight", required=True, help="fundamental multiplicities")
@click.option("--form", type=click.Choice(["binom", "strings", "occupancy"]),
              default="binom", show_default=True)
@_format
def fermionic_m(tag, n, rects, weight, form, fmt):
    """Evaluate the fermionic sum M."""
    R = _parse_rects(rects)
    wt = _parse_ints(weight)
    if tag == "A2D":
        value = M_Atd(n, wt, R)
    elif form == "binom":
        value = M_sum(tag, n, wt, R)
    elif form == "strings":
        value = M_sum_rc(tag, n, wt, R)
    else:
        value = M_sum_mform(tag, n, wt, R)
    _emit(value.to_json(), fmt, [_poly_text(value)])


def _report_csv(report, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["Lambda", "x_paths", "x_rc_filtered", "m_sum",
                         "verdict"])
        for entry in report["reports"]:
            writer.writerow([
                ",".join(str(c) for c in entry["Lambda"]),
                json.dumps(entry["x_paths"], sort_keys=True),
                json.dumps(entry["x_rc_filtered"], sort_keys=True),
                json.dumps(entry["m_sum"], sort_keys=True),
                entry["verdict"]])


def _report_png(report, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = ["(" + ",".join(str(c) for c in e["Lambda"]) + ")"
              for e in report["reports"]]
    counts = [sum(term["coef"] for term in e["x_paths"])
              for e in report["reports"]]
    colors = ["tab:green" if e["verdict"] == "pass" else "tab:red"
              for e in report["reports"]]
    fig, ax = plt.subplots(figsize=(max(4, 0.8 * len(labels)), 3.5))
    ax.bar(range(len(labels)), counts, color=colors)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_ylabel("restricted elements")
    ax.set_title(f"{report['tag']}  n={report['n']}  "
                 f"R={report['R']}  [{report['verdict']}]")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


@fermionic.command("verify-xm")
@_type
@click.option("--n", type=int, required=True)
@click.option("--R", "rects", required=True)
@click.option("--weight", default=None, help="restrict to one weight")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--report-dir", type=click.Path(file_okay=False), default=None)
@_format
def fermionic_verify(tag, n, rects, weight, jobs, report_dir, fmt):
    """Compare the path census with the filtered and fermionic sums."""
    R = _parse_rects(rects)
    wt = _parse_ints(weight) if weight is not None else None
    report = verify_XM(tag, n, R, wt, jobs=jobs)
    lines = [f"{report['tag']} n={report['n']} R={report['R']} "
             f"scope={report['scope']}"]
    for entry in report["reports"]:
        lines.append(f"  Lambda={tuple(entry['Lambda'])}: "
                     f"{entry['verdict']}")
    lines.append(f"verdict: {report['verdict']}")
    if report_dir:
        os.makedirs(report_dir, exist_ok=True)
        with open(os.path.join(report_dir, "report.json"), "w") as fh:
            json.dump(report, fh, sort_keys=True, indent=2)
            fh.write("\n")
        _report_csv(report, os.path.join(report_dir, "report.csv"))
        _report_png(report, os.path.join(report_dir, "report.png"))
        lines.append(f"report written to {report_dir}")
    _emit(report, fmt, lines)
    if report["verdict"] != "pass":
        sys.exit(1)


# ---------------------------------------------------------------------------
# plain crystal graphs

@main.command("graph")
@click.option("--R", "rects", required=True,
              help="display order, leftmost factor first")
@click.option("--n", type=int, required=True)
@click.option("--affine", is_flag=True, help="include the node-0 edges")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def graph_cmd(rects, n, affine, out):
    """Edge list of a tensor product of rectangle crystals."""
    from .crystal import enumerate_paths, f_affine, f_tensor
    R = _parse_rects(rects)
    nodes = sorted(enumerate_paths(R, n))
    index = {b: k for k, b in enumerate(nodes)}
    payload = []
    for b in nodes:
        edges = {}
        for i in range(0 if affine else 1, n):
            c = f_affine(i, b, n) if i == 0 else f_tensor(i, b)
            if c is not None:
                edges[str(i)] = index[c]
        payload.append({
            "path": [[list(row) for row in t] for t in b], "f": edges})
    text = json.dumps({"R": [list(r) for r in R], "n": n,
                       "nodes": payload}, sort_keys=True, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
        click.echo(f"wrote {len(nodes)} nodes to {out}")
    else:
        click.echo(text)


if __name__ == "__main__":
    main()
