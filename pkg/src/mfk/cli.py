"""Command-line front end:  mfk <subcommand> [options]."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import __version__
from .errors import MfkError
from .exactalg.grading import WeightSystem, milnor_number
from .exactalg.parse import ParseError, parse_poly
from .exactalg.scalars import MODES, RATIONAL, parse_scalar
from .mfcore.jsonio import matrix_to_json, mf_from_json, mf_to_json, morphism_from_json, morphism_to_json

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _mf(path: str):
    return mf_from_json(_load(path))


def _module(path: Optional[str], x8: bool = False):
    from .clifford.modules import GradedCliffordModule, column_module_X8

    if x8:
        return column_module_X8()
    if path is None:
        raise UsageError("give a module file or --x8")
    return GradedCliffordModule.from_json(_load(path)).check()


def _ints(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _names(text: str) -> list:
    return [t.strip() for t in text.split(",") if t.strip()]


def _odd_to_json(h, names) -> dict:
    return {"b1": matrix_to_json(h.b1, names), "b0": matrix_to_json(h.b0, names)}


def _resolved_bound(args) -> object:
    if getattr(args, "degree_bound", None) is not None:
        return args.degree_bound
    env = os.environ.get("MFK_DEGREE_BOUND")
    return int(env) if env else "auto"


def _config(args) -> dict:
    skip = {"func"}
    cfg = {k: v for k, v in vars(args).items() if k not in skip}
    cfg["degree_bound"] = _resolved_bound(args)
    cfg["window_cap"] = args.window_cap if args.window_cap is not None else \
        int(os.environ.get("MFK_WINDOW_CAP", "64"))
    return cfg


# ------------------------------------------------------------------ commands
# Each command returns (result dict, optional factorization for output).

def cmd_validate(args):
    from .mfcore.factorization import validate

    rep = validate(_mf(args.file))
    return rep.to_dict(), None


def cmd_shift(args):
    from .mfcore.constructions import shift

    return None, shift(_mf(args.file))


def cmd_cone(args):
    from .mfcore.constructions import cone

    P, Q = _mf(args.source), _mf(args.target)
    alpha = morphism_from_json(_load(args.morphism), P, Q)
    return None, cone(alpha)


def cmd_sum(args):
    from .mfcore.constructions import direct_sum

    return None, direct_sum(_mf(args.first), _mf(args.second))


def cmd_tensor(args):
    from .mfcore.constructions import tensor

    return None, tensor(_mf(args.first), _mf(args.second))


def cmd_stabilize(args):
    from .mfcore.constructions import koszul_stabilization

    names = _names(args.vars)
    f = parse_poly(args.f, names, args.mode)
    pairs = []
    for item in args.pair:
        if ":" not in item:
            raise UsageError(f"--pair expects G:X, got {item!r}")
        g, x = item.split(":", 1)
        pairs.append((parse_poly(g, names, args.mode), parse_poly(x, names, args.mode)))
    w = WeightSystem(_ints(args.weights), args.degree) if args.weights else None
    return None, koszul_stabilization(f, pairs, names, args.mode, w)


def cmd_strip(args):
    from .mfcore.stripping import strip_trivial_summands

    res = strip_trivial_summands(_mf(args.file))
    return {"removed": res.removed}, res.mf


def cmd_homology(args):
    from .homotopy import hom_homology_dims

    P = _mf(args.first)
    Q = _mf(args.second) if args.second else P
    return hom_homology_dims(P, Q, cap=args.window_cap).to_dict(), None


def cmd_null_homotopy(args):
    from .homotopy import find_null_homotopy

    P, Q = _mf(args.source), _mf(args.target)
    alpha = morphism_from_json(_load(args.morphism), P, Q)
    cert = find_null_homotopy(alpha, args.degree_bound)
    if cert is None:
        return {"status": "inconclusive", "null_homotopic": None}, None
    return {"status": "found", "null_homotopic": True, "verified": cert.verify(alpha),
            "h": _odd_to_json(cert.h, P.vars)}, None


def cmd_equiv(args):
    from .homotopy import find_homotopy_equivalence

    P, Q = _mf(args.first), _mf(args.second)
    cert = find_homotopy_equivalence(P, Q, args.degree_bound)
    if cert is None:
        return {"status": "inconclusive", "equivalent": None}, None
    return {"status": "found", "equivalent": True, "verified": cert.verify(),
            "alpha": morphism_to_json(cert.alpha), "beta": morphism_to_json(cert.beta),
            "h": _odd_to_json(cert.h, P.vars), "h2": _odd_to_json(cert.h2, P.vars)}, None


def cmd_clifford_classify(args):
    from .clifford.algebra import DiagonalForm, classify

    coeffs = tuple(parse_scalar(t) for t in args.form.split(","))
    t = classify(DiagonalForm(coeffs, RATIONAL))
    return {"form": [str(c) for c in coeffs], "algebra": str(t), "base": t.base,
            "size": t.size, "double": t.double}, None


def cmd_beh(args):
    from .clifford.modules import beh_theta

    M = _module(args.module, args.x8)
    names = _names(args.vars) if args.vars else None
    return None, beh_theta(M, names)


def cmd_abs_class(args):
    from .clifford.absgroups import abs_class, abs_group

    M = _module(args.module, args.x8)
    c = abs_class(M)
    G = abs_group(M.n, M.form.mode)
    return {"class": c.to_dict(), "group": G.to_dict(),
            "generator_of_free_factor": c.is_generator_of_free_factor()}, None


def cmd_knorrer(args):
    from .knoerrer import knorrer_report

    out, rep = knorrer_report(_mf(args.file), "complex")
    return rep.to_dict(), out


def cmd_knorrer_real8(args):
    from .knoerrer import knorrer_report

    out, rep = knorrer_report(_mf(args.file), "real8", positive=args.positive)
    return rep.to_dict(), out


def cmd_verify_x8(args):
    from .knoerrer import verify_x8_endomorphisms, verify_y_endomorphisms

    rep = verify_y_endomorphisms(strict=True) if args.y else verify_x8_endomorphisms(strict=True)
    return rep.to_dict(), None


def cmd_verify_periodicity(args):
    from .knoerrer import verify_periodicity_diagram_quadratic

    M = _module(args.module, args.x8)
    rep = verify_periodicity_diagram_quadratic(M)
    if rep.status == "failed":
        raise MfkError(f"periodicity diagram does not commute: {rep.to_dict()}")
    return rep.to_dict(), None


def cmd_theta(args):
    from .theta import theta

    return theta(_mf(args.first), _mf(args.second), cap=args.window_cap).to_dict(), None


def cmd_milnor(args):
    names = _names(args.vars) if args.vars else None
    w = WeightSystem(_ints(args.weights), args.degree)
    if names is None:
        names = ["x", "y", "z", "w"][: w.nvars] if w.nvars <= 4 else [f"x{i + 1}" for i in range(w.nvars)]
    if len(names) != w.nvars:
        raise UsageError("need one weight per variable")
    f = parse_poly(args.f, names, args.mode)
    return {"f": f.to_str(names), "weights": list(w.weights), "degree": w.degree,
            "milnor_number": milnor_number(f, w)}, None


# ------------------------------------------------------------------ parser

def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--mode", choices=MODES, default=RATIONAL, help="scalar field for string inputs")
    p.add_argument("--degree-bound", type=int, default=None,
                   help="degree bound for ungraded solvers (overrides MFK_DEGREE_BOUND)")
    p.add_argument("--window-cap", type=int, default=None, help="cap on graded degree windows")
    p.add_argument("--jobs", type=int, default=1, help="parallelism degree (computation is sequential)")
    p.add_argument("-o", "--output", default=None, help="write the resulting factorization JSON here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mfk", description="Exact matrix-factorization calculus.")
    parser.add_argument("--version", action="version", version=f"mfk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *positional):
        p = sub.add_parser(name, help=help_text)
        for pos in positional:
            if pos.endswith("?"):
                p.add_argument(pos[:-1], nargs="?", default=None)
            else:
                p.add_argument(pos)
        _add_common(p)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check d1*d0 = d0*d1 = f*I and grading", "file")
    add("shift", cmd_shift, "shift P[1]", "file")
    add("cone", cmd_cone, "mapping cone of a morphism", "source", "target", "morphism")
    add("sum", cmd_sum, "direct sum", "first", "second")
    add("tensor", cmd_tensor, "tensor product over disjoint variables", "first", "second")
    p = add("stabilize", cmd_stabilize, "Koszul stabilization for f = sum g_k x_k")
    p.add_argument("--f", required=True)
    p.add_argument("--vars", required=True)
    p.add_argument("--pair", action="append", required=True, help="G:X with f = sum G*X")
    p.add_argument("--weights", default=None)
    p.add_argument("--degree", type=int, default=None)
    add("strip", cmd_strip, "split off trivial summands", "file")
    add("homology", cmd_homology, "graded Hom homology dimensions", "first", "second?")
    add("null-homotopy", cmd_null_homotopy, "search for a null-homotopy", "source", "target", "morphism")
    add("equiv", cmd_equiv, "search for a homotopy equivalence", "first", "second")
    p = add("clifford-classify", cmd_clifford_classify, "classify Cliff(q) for a +-1 diagonal form")
    p.add_argument("--form", required=True, help="comma-separated coefficients, e.g. -1,-1")
    for name, func, text in (("beh", cmd_beh, "Clifford module to factorization"),
                             ("abs-class", cmd_abs_class, "ABS class of a Clifford module"),
                             ("verify-periodicity", cmd_verify_periodicity,
                              "Knoerrer periodicity against the Bott pairing")):
        p = add(name, func, text, "module?")
        p.add_argument("--x8", action="store_true", help="use the first-column module of Mat16(R)")
        if name == "beh":
            p.add_argument("--vars", default=None)
    add("knorrer", cmd_knorrer, "complex Knoerrer functor P -> P (x) Y", "file")
    p = add("knorrer-real8", cmd_knorrer_real8, "real Knoerrer functor P -> P (x) X8", "file")
    p.add_argument("--positive", action="store_true", help="use +sum u_i^2 instead of -sum u_i^2")
    p = add("verify-x8", cmd_verify_x8, "endomorphism homology of X8")
    p.add_argument("--y", action="store_true", help="check Y = ([u+iv],[u-iv]) instead")
    add("theta", cmd_theta, "Hochster theta pairing", "first", "second")
    p = add("milnor", cmd_milnor, "Milnor number of a quasi-homogeneous f")
    p.add_argument("--f", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--vars", default=None)
    return parser


# ------------------------------------------------------------------ output

def _render_text(doc: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in doc.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_render_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], list):
            lines.append(f"{pad}{k}:")
            lines += [f"{pad}  [{', '.join(map(str, row))}]" for row in v]
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(line for line in lines if line)


def _emit(args, result: Optional[dict], mf, seconds: float) -> None:
    doc: dict = {}
    if mf is not None:
        doc.update(mf_to_json(mf))
    if result is not None:
        doc["report"] = result
    doc["config"] = _config(args)
    doc["seconds"] = round(seconds, 3)
    if args.output:
        if mf is None:
            raise UsageError("--output only applies to commands that produce a factorization")
        with open(args.output, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(_render_text(doc))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    start = time.perf_counter()
    try:
        result, mf = args.func(args)
        _emit(args, result, mf, time.perf_counter() - start)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"mfk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MfkError, ParseError, ValueError, KeyError, OSError, json.JSONDecodeError, AssertionError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "command": args.command}
        if isinstance(exc, ParseError) and getattr(exc, "position", None) is not None:
            err["position"] = exc.position
        print(json.dumps(err), file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
