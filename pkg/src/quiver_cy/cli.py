"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 on
usage or input errors.  Every report starts with a header echoing the
dimension and cap so the truncation order is always visible.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bracket import single_bracket
from .constructions import (
    check_quintuple,
    cyclic_derivative,
    eta_identity_residual,
    ginzburg_dg,
    ginzburg_lazaroiu,
    quintuple_from_ice,
    relative_ginzburg_dg,
)
from .dg import DgAlgebra, DgMorphism, check_chain_map, check_d_squared, h0_truncated
from .document import Document, load
from .errors import QuintupleInvalid, QuiverCYError, SchemaError
from .series import DEFAULT_CAP, NcSeries, format_scalar
from .witness import cy_generator_check, hc_red, hh_red, witness_class

COMMANDS = (
    "build-ginzburg",
    "check-d2",
    "h0-dim",
    "derive",
    "bracket",
    "check-quintuple",
    "build-lazaroiu",
    "check-cy",
    "hochschild",
    "cyclic",
)


class Output:
    def __init__(self, command: str, args):
        self.lines = [f"# {command} dim={args.dim} cap={args.cap}"]
        self.data = {"command": command, "dim": args.dim, "cap": args.cap}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _ginzburg(doc: Document, d: int, cap: int) -> DgAlgebra:
    W = doc.potential_on(cap=cap) if doc.potential else None
    if doc.ice.frozen_vertices or doc.ice.frozen_arrows:
        return relative_ginzburg_dg(doc.ice, W, d, cap)
    return ginzburg_dg(doc.quiver, W, d, cap)


def _describe_algebra(out: Output, A: DgAlgebra, title: str) -> dict:
    sp = A.space
    out.line(f"{title} generators:")
    gens = []
    for g in sp.generators:
        out.line(f"  {g.name}: {g.source} -> {g.target}, degree {g.degree}")
        gens.append({"name": g.name, "source": g.source, "target": g.target, "degree": g.degree})
    out.line(f"{title} differential:")
    diff = {}
    for g in sp.generators:
        value = A.differential.get(g.name)
        if value:
            out.line(f"  d({g.name}) = {value.render()}")
            diff[g.name] = value.render()
    return {"generators": gens, "differential": diff}


def _describe_morphism(out: Output, f: DgMorphism, title: str) -> dict:
    out.line(f"{title}:")
    images = {}
    for g in f.source.space.generators:
        value = f.image_gen(g.name)
        out.line(f"  {g.name} -> {value.render()}")
        images[g.name] = value.render()
    return images


def cmd_build_ginzburg(doc, args, out):
    A = _ginzburg(doc, args.dim, args.cap)
    out.data["algebra"] = _describe_algebra(out, A, "ginzburg")
    return 0


def _report_residuals(out: Output, report, label: str, ok_text: str) -> int:
    if report.ok:
        out.line(f"{ok_text} ({report.checked} generators, effective cap {report.effective_cap})")
    else:
        out.line(f"{label} fails on {len(report.residuals)} of {report.checked} generators (effective cap {report.effective_cap})")
        for name, r in sorted(report.residuals.items()):
            out.line(f"  {name}: {r.render()}")
    out.data[label] = {
        "pass": report.ok,
        "generators": report.checked,
        "effective_cap": report.effective_cap,
        "residuals": {k: v.render() for k, v in sorted(report.residuals.items())},
    }
    return 0 if report.ok else 1


def cmd_check_d2(doc, args, out):
    A = _ginzburg(doc, args.dim, args.cap)
    return _report_residuals(out, check_d_squared(A), "d^2", "d^2 = 0")


def cmd_h0_dim(doc, args, out):
    A = _ginzburg(doc, args.dim, args.cap)
    length = args.length if args.length is not None else args.cap
    res = h0_truncated(A, length)
    out.line(f"# length={length}")
    out.line(str(res.dimension))
    out.data.update(length=length, dimension=res.dimension, basis=[A.space.render_word(w) for w in res.basis])
    return 0


def cmd_derive(doc, args, out):
    if not args.arrow:
        raise SchemaError("--arrow is required for derive")
    W = doc.potential_on(cap=args.cap)
    value = cyclic_derivative(W, args.arrow)
    out.line(f"∂_{args.arrow} W = {value.render()}")
    out.data.update(arrow=args.arrow, derivative=value.render())
    return 0


def cmd_bracket(doc, args, out):
    q = quintuple_from_ice(doc.ice, doc.potential_on(cap=args.cap) if doc.potential else None, args.dim, args.cap)
    amb = q.ambient
    names = [args.arrow] if args.arrow else list(q.N.names)
    results = {}
    for name in names:
        if name not in q.N:
            raise SchemaError(f"unknown generator {name!r}", "--arrow")
        value = single_bracket(q.w_A_amb, NcSeries.gen(amb, name, cap=args.cap), q.eta)
        out.line(f"{{W, {name}}} = {value.render()}")
        results[name] = value.render()
    out.data["brackets"] = results
    return 0


def cmd_check_quintuple(doc, args, out):
    q = doc.build_quintuple(args.dim, args.cap)
    rep = check_quintuple(q)
    rows = {}
    for label in ("wB_square", "N_closure", "R_chain", "kernel"):
        ok = getattr(rep, label)
        out.line(f"{label}: {'pass' if ok else 'FAIL'}")
        if not ok:
            out.line(f"  witness: {rep.witnesses[label].render()}")
        rows[label] = ok
    if rep.cap_warning:
        out.line("warning: potential terms approach the cap")
    out.data.update(checks=rows, cap_warning=rep.cap_warning)
    return 0 if rep.ok else 1


def _lazaroiu(doc, args):
    q = doc.build_quintuple(args.dim, args.cap)
    return ginzburg_lazaroiu(q, args.cap)


def cmd_build_lazaroiu(doc, args, out):
    res = _lazaroiu(doc, args)
    out.data["B"] = _describe_algebra(out, res.B, "B")
    out.data["A"] = _describe_algebra(out, res.A, "A")
    out.data["gamma"] = _describe_morphism(out, res.gamma, "gamma")
    checks = {
        "d2_B": check_d_squared(res.B).ok,
        "d2_A": check_d_squared(res.A).ok,
        "chain": check_chain_map(res.gamma).ok,
        "eta": not eta_identity_residual(res),
    }
    for k, v in checks.items():
        out.line(f"{k}: {'pass' if v else 'FAIL'}")
    out.data["checks"] = checks
    return 0 if all(checks.values()) else 1


def cmd_check_cy(doc, args, out):
    res = _lazaroiu(doc, args)
    wit = witness_class(res)
    cy = cy_generator_check(res.gamma, args.dim, res.quintuple.eta_B)
    out.line(f"z_A^dag = {wit.witness.z_A_dag.render()}")
    out.line(f"z_B^dag = {wit.witness.z_B_dag.render()}")
    checks = {
        "closed_B": wit.closed_B,
        "closed_A": wit.closed_A,
        "antisymmetric_B": wit.antisymmetric_B,
        "antisymmetric_A": wit.antisymmetric_A,
        "half_dimensional": cy.half_dimensional,
        "degree_window": cy.degree_window,
        "isotropic": cy.isotropic,
    }
    out.line(f"kernel: dim {cy.kernel_dim} of {cy.total_dim}, degrees {cy.kernel_degrees}")
    for k, v in checks.items():
        out.line(f"{k}: {'pass' if v else 'FAIL'}")
    out.data.update(
        z_A_dag=wit.witness.z_A_dag.render(),
        z_B_dag=wit.witness.z_B_dag.render(),
        kernel_dim=cy.kernel_dim,
        total_dim=cy.total_dim,
        kernel_degrees=cy.kernel_degrees,
        checks=checks,
    )
    return 0 if all(checks.values()) else 1


def _homology_cmd(fn, label):
    def run(doc, args, out):
        A = _ginzburg(doc, args.dim, args.cap)
        res = fn(A, args.degree, args.cap)
        out.line(f"{label}_{args.degree} = {res.dimension} (effective cap {res.effective_cap})")
        out.data.update(degree=args.degree, dimension=res.dimension, effective_cap=res.effective_cap)
        return 0

    return run


HANDLERS = {
    "build-ginzburg": cmd_build_ginzburg,
    "check-d2": cmd_check_d2,
    "h0-dim": cmd_h0_dim,
    "derive": cmd_derive,
    "bracket": cmd_bracket,
    "check-quintuple": cmd_check_quintuple,
    "build-lazaroiu": cmd_build_lazaroiu,
    "check-cy": cmd_check_cy,
    "hochschild": _homology_cmd(hh_red, "HH^red"),
    "cyclic": _homology_cmd(hc_red, "HC^red"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiver-cy", description="Ginzburg dg algebras and Calabi–Yau checks.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", required=True, help="JSON quiver document")
    parser.add_argument("--dim", type=int, help="dimension d (default: the quintuple's d, else 3)")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP)
    parser.add_argument("--length", type=int)
    parser.add_argument("--arrow")
    parser.add_argument("--degree", type=int, default=0)
    parser.add_argument("--json", action="store_true")
    return parser


def _resolve_dim(doc: Document, args) -> None:
    declared = doc.quintuple["d"] if doc.quintuple is not None else None
    if args.dim is None:
        args.dim = declared if declared is not None else 3
    elif declared is not None and declared != args.dim:
        raise SchemaError(f"--dim {args.dim} disagrees with the quintuple's d={declared}", "/quintuple/d")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = load(fh.read())
        _resolve_dim(doc, args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = Output(args.command, args)
    try:
        code = HANDLERS[args.command](doc, args, out)
    except QuintupleInvalid as exc:
        out.line(f"quintuple invalid: {exc}")
        out.data["error"] = str(exc)
        code = 1
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuiverCYError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    out.data["exit"] = code
    if args.json:
        sys.stdout.write(json.dumps(out.data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(out.text())
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
