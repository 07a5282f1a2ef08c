"""Command-line interface.

Exit codes: 0 verified true (or plain success), 1 verified false, 2 input or
parse error, 3 degree cap exceeded, 4 the mathematics rejects the request
(infinite symmetry group, undefined invariant, ...).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import chains, equations
from .errors import InvalidInput, LimitExceeded, NotSemiconjugate, ParseError, SemiconjError
from .expr import DEFAULT_MAX_DEGREE, parse_expression, print_expression
from .families import make, parse_tag
from .mu_equivalence import describe as describe_mu
from .orbifold import classify_signature, euler_char, format_signature, orbifolds_of_map
from .ramification import check_riemann_hurwitz, portrait, portrait_record
from .ratmap import classify_mu_equivalence, format_ratmap

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT, EXIT_LIMIT, EXIT_MATH = 0, 1, 2, 3, 4


def _fmt(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _orbifold_record(O) -> dict:
    return {
        "text": str(O),
        "signature": format_signature(O),
        "euler_char": _fmt(euler_char(O)),
        "class": classify_signature(O).value,
    }


class Command:
    """Parsed arguments plus helpers shared by subcommands."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args

    def parse(self, text: str):
        return parse_expression(text, self.args.max_degree)


def cmd_portrait(c: Command) -> tuple[dict, str, int]:
    f = c.parse(c.args.expr)
    p = portrait(f)
    rec = portrait_record(p) | {"map": print_expression(f), "riemann_hurwitz": check_riemann_hurwitz(f)}
    return rec, rec["text"], EXIT_TRUE


def cmd_orbifold(c: Command) -> tuple[dict, str, int]:
    f = c.parse(c.args.expr)
    o1, o2 = orbifolds_of_map(f)
    rec = {"map": print_expression(f), "O1": _orbifold_record(o1), "O2": _orbifold_record(o2)}
    lines = [
        f"O1 = {o1}  signature {format_signature(o1)}  chi = {rec['O1']['euler_char']}  {rec['O1']['class']}",
        f"O2 = {o2}  signature {format_signature(o2)}  chi = {rec['O2']['euler_char']}  {rec['O2']['class']}",
    ]
    return rec, "\n".join(lines), EXIT_TRUE


def cmd_classify(c: Command) -> tuple[dict, str, int]:
    f = c.parse(c.args.expr)
    sp = equations.classify_special(f)
    mu = classify_mu_equivalence(f)
    rec = {
        "map": print_expression(f),
        "special": sp.kind,
        "n": sp.n,
        "sign": sp.sign,
        "conjugator": str(sp.witness) if sp.witness is not None else None,
        "orbifold": str(sp.orbifold) if sp.orbifold is not None else None,
        "exceptional_case": sp.exceptional.case if sp.exceptional else None,
        "mu_equivalence": {
            "kind": mu.kind,
            "n": mu.n,
            "exact": mu.exact,
            "portrait_matches": mu.portrait_matches,
            "witnesses": [str(m) for m in mu.witnesses] if mu.witnesses else None,
        },
    }
    text = f"{sp.describe()}\nmu-equivalence: {describe_mu(mu)}"
    return rec, text, EXIT_TRUE


def cmd_verify_semi(c: Command) -> tuple[dict, str, int]:
    A, X, B = (c.parse(t) for t in (c.args.A, c.args.X, c.args.B))
    ok = equations.verify_semiconjugacy(A, X, B)
    rec = {"A": print_expression(A), "X": print_expression(X), "B": print_expression(B), "holds": ok}
    return rec, "true" if ok else "false", EXIT_TRUE if ok else EXIT_FALSE


def cmd_verify_square(c: Command) -> tuple[dict, str, int]:
    A, C, D, B = (c.parse(t) for t in (c.args.A, c.args.C, c.args.D, c.args.B))
    try:
        sq = equations.SolutionSquare(A, C, D, B)
    except InvalidInput:
        return {"holds": False}, "false", EXIT_FALSE
    rec: dict = {"holds": True}
    lines = ["true"]
    ok = True
    if c.args.good:
        rep = equations.is_good_solution(sq)
        t1 = equations.diagram_is_minimal(sq) if rep.verdict else None
        rec["goodness"] = {
            "fiber_product_irreducible": "not-checked"
            if rep.fiber_product_irreducible is None
            else rep.fiber_product_irreducible,
            "no_common_right_factor": rep.no_common_right_factor,
            "degrees_match": rep.degrees_match,
            "verdict": rep.verdict,
            "diagram_minimal_holomorphic": t1,
        }
        lines = [
            "square holds: true",
            f"degrees match: {str(rep.degrees_match).lower()}",
            f"no common right factor: {str(rep.no_common_right_factor).lower()}",
            f"good: {str(rep.verdict).lower()}",
        ]
        if t1 is not None:
            lines.append(f"orbifold diagram minimal holomorphic: {str(t1).lower()}")
        ok = rep.verdict
    return rec, "\n".join(lines), EXIT_TRUE if ok else EXIT_FALSE


def cmd_luroth(c: Command) -> tuple[dict, str, int]:
    X, B = c.parse(c.args.X), c.parse(c.args.B)
    U, idx = equations.luroth_generator(X, B)
    rec = {"U": print_expression(U), "degree_index": idx, "primitive": idx == 1}
    return rec, f"U = {rec['U']}\ndegree index = {idx}\nprimitive: {str(idx == 1).lower()}", EXIT_TRUE


def cmd_decompose(c: Command) -> tuple[dict, str, int]:
    X, B = c.parse(c.args.X), c.parse(c.args.B)
    dec = equations.decompose_semiconjugacy(X, B)
    rec = {
        "A": print_expression(dec.A),
        "Xtilde": print_expression(dec.xtilde),
        "U": print_expression(dec.U),
        "k": dec.k,
        "steps": [[print_expression(u), print_expression(v)] for u, v in dec.steps],
        "special_basis": dec.special,
        "checks": dec.checks,
    }
    lines = [
        f"A = {rec['A']}",
        f"X = Xtilde o U o B^{dec.k}",
        f"Xtilde = {rec['Xtilde']}",
        f"U = {rec['U']}",
        f"steps = {len(dec.steps)}",
    ]
    lines += [f"  U_{i} = {u}, V_{i} = {v}" for i, (u, v) in enumerate(rec["steps"], 1)]
    lines += [f"{k}: {str(v).lower()}" for k, v in sorted(dec.checks.items())]
    ok = all(dec.checks.values())
    return rec, "\n".join(lines), EXIT_TRUE if ok else EXIT_FALSE


def cmd_chain_check(c: Command) -> tuple[dict, str, int]:
    try:
        text = Path(c.args.file).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {c.args.file}: {exc}") from exc
    ch = chains.chain_from_json(text)
    valid = chains.validate_chain(ch)
    rec: dict = {"length": ch.length, "basis": print_expression(ch.basis), "valid": valid}
    if valid and not ch.relaxed:
        good = chains.is_good_chain(ch)
        rec["good"] = good
        rec["nonnegative"] = good and chains.is_nonnegative(ch)
        rec["stable"] = good and chains.is_stable(ch)
        if rec["stable"]:
            rec["chi1"] = _fmt(chains.chi1(ch))
            rec["chi2"] = _fmt(chains.chi2(ch))
    lines = [f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in rec.items()]
    return rec, "\n".join(lines), EXIT_TRUE if valid else EXIT_FALSE


def cmd_bounds(c: Command) -> tuple[dict, str, int]:
    rec = chains.bounds_record(c.args.d)
    lines = [
        f"theta = {rec['theta']['expr']}",
        f"chain bound = {rec['chain_bound']['expr']}",
        f"step bound = {rec['luroth_steps_bound']['expr']}",
        f"primitive degree bound = {rec['primitive_degree_bound']}",
    ]
    return rec, "\n".join(lines), EXIT_TRUE


def cmd_family(c: Command) -> tuple[dict, str, int]:
    tag = parse_tag(c.args.tag)
    f = make(tag)
    if f.degree > c.args.max_degree:
        raise LimitExceeded(f"degree {f.degree} exceeds the cap {c.args.max_degree}")
    rec = {"tag": str(tag), "map": format_ratmap(f), "degree": f.degree}
    text = f"{tag} = {rec['map']}"
    if f.degree >= 2:
        rec["portrait"] = portrait_record(portrait(f))["text"]
        text += f"\nportrait {rec['portrait']}"
    return rec, text, EXIT_TRUE


def cmd_symmetry(c: Command) -> tuple[dict, str, int]:
    B = c.parse(c.args.expr)
    group = equations.mobius_symmetry_group(B)
    rec = {"map": print_expression(B), "group": [str(m) for m in group], "order": len(group)}
    return rec, "\n".join(rec["group"]), EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "structured"), default="text")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)

    parser = argparse.ArgumentParser(prog="semiconj", description="Exact tools for semiconjugate rational maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *positional):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    add("portrait", cmd_portrait, "branching portrait of a map", "expr")
    add("orbifold", cmd_orbifold, "orbifolds O1, O2 of a map", "expr")
    add("classify", cmd_classify, "special-map and mu-equivalence classification", "expr")
    add("verify-semi", cmd_verify_semi, "check A o X = X o B", "A", "X", "B")
    add("verify-square", cmd_verify_square, "check A o C = D o B", "A", "C", "D", "B").add_argument(
        "--good", action="store_true", help="also decide goodness"
    )
    add("luroth", cmd_luroth, "generator of Q(X, B)", "X", "B")
    add("decompose", cmd_decompose, "split X = Xtilde o U o B^k", "X", "B")
    add("chain-check", cmd_chain_check, "validate a chain stored as JSON", "file")
    add("bounds", cmd_bounds, "explicit length and degree bounds").add_argument("d", type=int)
    add("family", cmd_family, "print a named map", "tag")
    add("symmetry", cmd_symmetry, "rational Mobius symmetry group", "expr")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record, text, code = args.func(Command(args))
    except ParseError as exc:
        return _fail(args, "parse-error", str(exc), EXIT_INPUT)
    except LimitExceeded as exc:
        return _fail(args, "limit-exceeded", str(exc), EXIT_LIMIT)
    except NotSemiconjugate as exc:
        return _fail(args, "not-semiconjugate", str(exc), EXIT_FALSE)
    except InvalidInput as exc:
        return _fail(args, "invalid-input", str(exc), EXIT_INPUT)
    except SemiconjError as exc:
        return _fail(args, type(exc).__name__, str(exc), EXIT_MATH)
    if args.output == "structured":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)
    return code


def _fail(args: argparse.Namespace, kind: str, message: str, code: int) -> int:
    if args.output == "structured":
        print(json.dumps({"error": kind, "message": message}, sort_keys=True))
    else:
        print(f"error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
