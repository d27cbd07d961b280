"""Command-line front end.

Scheme expressions are written as s-expressions:

    (point q [m])                      Spec F_{q^m} over F_q
    (curve q (c0 c1 ...))              curve with L-polynomial c0 + c1 t + ...
    (numberring :conductor f :subgroup (a b ...))
    (Q) (Qi)                           shorthands for Spec Z, Spec Z[i]
    (disjoint e ...)  (glue z u)  (minus x z)
    (affine r e)  (proj r e)  (cellular e (r1 r2 ...))

Verbs: zeta, ord, value, verify-c, verify-vo, trace-check, ell-check,
p-check, det, batch.  Reports print as text or JSON; exit status is 0 when
every requested verdict passes, 1 on a failed verdict, 2 on an error.
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath as mp

from . import archimedean, ffengine
from .detcomplex import cohomology, complex_from_json_dict, determinant
from .errors import ArityError, ExprSyntaxError, ZetaforgeError
from .intlinalg import is_prime
from .lfunctions import AbelianFieldSpec, Q, QI, default_precision
from .scheme_algebra import (
    Affine,
    Cellular,
    Curve,
    Disjoint,
    Glue,
    Minus,
    NumberRing,
    Point,
    Proj,
    SchemeExpr,
    format_expr,
    is_finite_characteristic,
    validate,
    weil_order_data,
    zeta_of,
)
from .zetarep import evaluate_at, vanishing_order

__all__ = ["parse_expr", "print_expr", "parse_hodge_json", "run_command", "main"]

print_expr = format_expr


# ---------------------------------------------------------------------------
# s-expression parser


def _tokenize(src: str):
    tokens = []
    i = 0
    while i < len(src):
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c in "()":
            tokens.append((c, i))
            i += 1
            continue
        j = i
        while j < len(src) and not src[j].isspace() and src[j] not in "()":
            j += 1
        tokens.append((src[i:j], i))
        i = j
    return tokens


def _parse_node(tokens, idx):
    if idx >= len(tokens):
        raise ExprSyntaxError("unexpected end of input")
    text, pos = tokens[idx]
    if text == "(":
        items = []
        idx += 1
        while True:
            if idx >= len(tokens):
                raise ExprSyntaxError("missing closing parenthesis", pos)
            if tokens[idx][0] == ")":
                return (items, pos), idx + 1
            node, idx = _parse_node(tokens, idx)
            items.append(node)
    if text == ")":
        raise ExprSyntaxError("unexpected ')'", pos)
    return (text, pos), idx + 1


def _expect_int(node, what: str) -> int:
    value, pos = node
    if isinstance(value, list):
        raise ExprSyntaxError(f"expected an integer for {what}", pos)
    try:
        return int(value)
    except ValueError:
        raise ExprSyntaxError(f"expected an integer for {what}, got {value!r}", pos) from None


def _expect_int_list(node, what: str) -> list[int]:
    value, pos = node
    if not isinstance(value, list):
        raise ExprSyntaxError(f"expected a parenthesized list for {what}", pos)
    return [_expect_int(item, what) for item in value]


def _build_expr(node) -> SchemeExpr:
    value, pos = node
    if not isinstance(value, list):
        raise ExprSyntaxError(f"expected an expression, got atom {value!r}", pos)
    if not value:
        raise ExprSyntaxError("empty expression", pos)
    head, head_pos = value[0]
    if isinstance(head, list):
        raise ExprSyntaxError("expression head must be a symbol", head_pos)
    head = head.lower()
    args = value[1:]

    def arity(expected: str, ok: bool):
        if not ok:
            raise ArityError(f"({head} ...) expects {expected}")

    if head == "point":
        arity("q [m]", len(args) in (1, 2))
        q = _expect_int(args[0], "q")
        m = _expect_int(args[1], "m") if len(args) == 2 else 1
        return Point(q, m)
    if head == "curve":
        arity("q (c0 c1 ...)", len(args) == 2)
        q = _expect_int(args[0], "q")
        coeffs = _expect_int_list(args[1], "L-polynomial coefficients")
        return Curve(q, tuple(coeffs))
    if head == "q":
        arity("no arguments", len(args) == 0)
        return NumberRing(Q)
    if head == "qi":
        arity("no arguments", len(args) == 0)
        return NumberRing(QI)
    if head == "numberring":
        conductor = None
        subgroup = None
        i = 0
        while i < len(args):
            key, key_pos = args[i]
            if key == ":conductor":
                conductor = _expect_int(args[i + 1], "conductor") if i + 1 < len(args) else None
                i += 2
            elif key == ":subgroup":
                subgroup = _expect_int_list(args[i + 1], "subgroup") if i + 1 < len(args) else None
                i += 2
            else:
                raise ExprSyntaxError(f"unknown numberring keyword {key!r}", key_pos)
        if conductor is None:
            raise ArityError("(numberring ...) requires :conductor")
        if subgroup is None:
            subgroup = [1]
        return NumberRing(AbelianFieldSpec.from_generators(conductor, subgroup))
    if head == "disjoint":
        return Disjoint(tuple(_build_expr(a) for a in args))
    if head == "glue":
        arity("two expressions", len(args) == 2)
        return Glue(_build_expr(args[0]), _build_expr(args[1]))
    if head == "minus":
        arity("two expressions", len(args) == 2)
        return Minus(_build_expr(args[0]), _build_expr(args[1]))
    if head == "affine":
        arity("r and an expression", len(args) == 2)
        return Affine(_expect_int(args[0], "r"), _build_expr(args[1]))
    if head == "proj":
        arity("r and an expression", len(args) == 2)
        return Proj(_expect_int(args[0], "r"), _build_expr(args[1]))
    if head == "cellular":
        arity("an expression and (r1 r2 ...)", len(args) == 2)
        return Cellular(_build_expr(args[0]), tuple(_expect_int_list(args[1], "cell ranks")))
    raise ExprSyntaxError(f"unknown operation {head!r}", head_pos)


def parse_expr(src: str) -> SchemeExpr:
    """Parse a scheme expression; raises with a position on bad syntax."""
    tokens = _tokenize(src)
    if not tokens:
        raise ExprSyntaxError("empty input")
    node, idx = _parse_node(tokens, 0)
    if idx != len(tokens):
        raise ExprSyntaxError("trailing input after expression", tokens[idx][1])
    return _build_expr(node)


def parse_hodge_json(text: str) -> archimedean.HodgeData:
    """{"hpq": {"p,q": h, ...}, "diag": {"p": [plus, minus], ...}}"""
    data = json.loads(text)
    weights = {}
    for key, h in data.get("hpq", {}).items():
        p, q = (int(x) for x in key.split(","))
        weights[(p, q)] = int(h)
    diagonal = {}
    for key, pair in data.get("diag", {}).items():
        diagonal[int(key)] = (int(pair[0]), int(pair[1]))
    return archimedean.HodgeData.make(weights, diagonal)


# ---------------------------------------------------------------------------
# command implementations, each returning (report_dict, passed)


def _num(x, digits=30):
    return mp.nstr(x, digits)


def _cmd_zeta(expr: SchemeExpr, args) -> tuple[dict, bool]:
    z = zeta_of(expr)
    report = {
        "command": "zeta",
        "expression": format_expr(expr),
        "zeta": str(z),
        "factors": [
            {"factor": str(f), "exponent": e} for f, e in z.factors
        ],
        "diagnostics": [
            {"severity": d.severity, "message": d.message, "where": d.where}
            for d in validate(expr)
        ],
        "pass": True,
    }
    return report, True


def _cmd_ord(expr: SchemeExpr | None, args) -> tuple[dict, bool]:
    if getattr(args, "hodge", None):
        H = parse_hodge_json(args.hodge)
        dims = archimedean.hodge_equivariant_dims(H, args.n)
        chi = sum((-1) ** (i % 2) * d for i, d in dims.items())
        gamma = archimedean.gamma_factor_order(H, args.n)
        ok = gamma == chi
        return {
            "command": "ord",
            "n": args.n,
            "hodge_equivariant_dims": {str(i): d for i, d in sorted(dims.items())},
            "chi": chi,
            "gamma_factor_order": gamma,
            "vo": "pass" if ok else "fail",
            "pass": ok,
        }, ok
    analytic = vanishing_order(zeta_of(expr), args.n)
    conjectural = archimedean.vanishing_order_conjectural(expr, args.n)
    ok = analytic == conjectural
    return {
        "command": "ord",
        "expression": format_expr(expr),
        "n": args.n,
        "analytic_order": analytic,
        "conjectural_order": conjectural,
        "vo": "pass" if ok else "fail",
        "pass": ok,
    }, ok


def _cmd_verify_vo(expr: SchemeExpr, args) -> tuple[dict, bool]:
    report, ok = _cmd_ord(expr, args)
    report["command"] = "verify-vo"
    return report, ok


def _cmd_value(expr: SchemeExpr, args) -> tuple[dict, bool]:
    value = evaluate_at(zeta_of(expr), args.n, args.precision)
    return {
        "command": "value",
        "expression": format_expr(expr),
        "n": args.n,
        "order": value.order,
        "exact": None if value.exact is None else str(value.exact),
        "exact_flag": value.is_exact,
        "numeric": _num(value.numeric, args.precision),
        "error_bound": _num(value.error, 5),
        "pass": True,
    }, True


def _wrap_checks(command: str, expr: SchemeExpr, n, reports) -> tuple[dict, bool]:
    ok = all(r.passed for r in reports)
    out = {
        "command": command,
        "expression": format_expr(expr),
        "checks": [r.as_dict() for r in reports],
        "pass": ok,
    }
    if n is not None:
        out["n"] = n
    return out, ok


def _cmd_verify_c(expr, args):
    return _wrap_checks("verify-c", expr, args.n, [ffengine.verify_C_finite_char(expr, args.n)])


def _cmd_trace_check(expr, args):
    return _wrap_checks(
        "trace-check", expr, None, [ffengine.trace_formula_check(expr, args.series_order)]
    )


def _cmd_ell_check(expr, args):
    if args.ell is None or not is_prime(args.ell):
        raise ZetaforgeError(f"--ell must be a prime, got {args.ell}")
    return _wrap_checks(
        "ell-check", expr, args.n, [ffengine.ell_adic_check(expr, args.n, args.ell)]
    )


def _cmd_p_check(expr, args):
    return _wrap_checks("p-check", expr, args.n, [ffengine.p_part_check(expr, args.n)])


def _cmd_det(args) -> tuple[dict, bool]:
    with open(args.file, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    C = complex_from_json_dict(data)
    line = determinant(C)
    groups = {}
    if not C.is_zero:
        for i in range(C.lo, C.hi + 1):
            H = cohomology(C, i)
            groups[str(i)] = {"rank": H.rank, "torsion": list(H.torsion), "group": str(H)}
    return {
        "command": "det",
        "file": args.file,
        "grade": line.grade,
        "ideal": None if line.ideal is None else str(line.ideal),
        "cohomology": groups,
        "pass": True,
    }, True


_BATTERY_ELLS = (2, 3, 5, 7, 11, 13)


def _battery(expr: SchemeExpr, n: int, precision: int, series_order: int) -> list:
    """Per-entry battery used by batch mode."""
    reports = []
    if is_finite_characteristic(expr):
        reports.append(ffengine.verify_C_finite_char(expr, n))
        reports.append(ffengine.p_part_check(expr, n))
        try:
            reports.append(ffengine.trace_formula_check(expr, series_order))
        except ZetaforgeError:
            pass  # mixed bases: the trace formula needs a single ground field
        if weil_order_data(expr, n).has_graded:
            chars = ffengine.base_characteristics(expr)
            for ell in _BATTERY_ELLS:
                if ell not in chars:
                    reports.append(ffengine.ell_adic_check(expr, n, ell))
    analytic = vanishing_order(zeta_of(expr), n)
    conjectural = archimedean.vanishing_order_conjectural(expr, n)
    reports.append(
        ffengine.VerificationReport(
            claim="vanishing-order",
            left=analytic,
            right=conjectural,
            context={"expression": format_expr(expr), "n": n},
        )
    )
    return reports


def _cmd_batch(args) -> tuple[dict, bool]:
    with open(args.manifest, "r", encoding="utf-8") as handle:
        manifest = json.load(handle)
    if not isinstance(manifest, list):
        raise ZetaforgeError("manifest must be a JSON list of {expr, n} objects")
    entries = []
    all_ok = True
    for item in manifest:
        expr = parse_expr(item["expr"])
        n = int(item["n"])
        reports = _battery(expr, n, args.precision, args.series_order)
        ok = all(r.passed for r in reports)
        all_ok = all_ok and ok
        entries.append(
            {
                "expression": format_expr(expr),
                "n": n,
                "checks": [r.as_dict() for r in reports],
                "pass": ok,
            }
        )
    return {
        "command": "batch",
        "manifest": args.manifest,
        "entries": entries,
        "pass": all_ok,
    }, all_ok


# ---------------------------------------------------------------------------
# rendering and dispatch


def _render_text(report: dict) -> str:
    lines = []

    def emit(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                emit(f"{prefix}{k}." if prefix else f"{k}.", v) if isinstance(
                    v, (dict, list)
                ) else lines.append(f"{prefix}{k}: {v}")
        elif isinstance(value, list):
            for idx, v in enumerate(value):
                emit(f"{prefix}{idx}.", v) if isinstance(v, (dict, list)) else lines.append(
                    f"{prefix}{idx}: {v}"
                )
        else:
            lines.append(f"{prefix}: {value}")

    emit("", report)
    return "\n".join(lines)


def run_command(args) -> tuple[dict, bool]:
    """Dispatch a parsed argparse namespace to its implementation."""
    verb = args.verb
    if verb == "det":
        return _cmd_det(args)
    if verb == "batch":
        return _cmd_batch(args)
    expr = None
    if verb == "ord" and getattr(args, "hodge", None):
        pass
    else:
        if args.expression is None:
            raise ZetaforgeError(f"{verb} requires an expression")
        expr = parse_expr(args.expression)
    if verb in ("ord", "value", "verify-c", "verify-vo", "ell-check", "p-check"):
        if args.n is None:
            raise ZetaforgeError(f"{verb} requires -n")
        if args.n >= 0:
            raise ZetaforgeError("n must be a strictly negative integer")
    handlers = {
        "zeta": _cmd_zeta,
        "ord": _cmd_ord,
        "value": _cmd_value,
        "verify-c": _cmd_verify_c,
        "verify-vo": _cmd_verify_vo,
        "trace-check": _cmd_trace_check,
        "ell-check": _cmd_ell_check,
        "p-check": _cmd_p_check,
    }
    return handlers[verb](expr, args)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetaforge",
        description="zeta functions of arithmetic schemes at negative integers",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, expression=True, needs_n=False):
        if expression:
            p.add_argument("expression", nargs="?", help="scheme expression (s-expression)")
        p.add_argument("-n", type=int, default=None, help="negative integer weight")
        p.add_argument(
            "--precision",
            type=int,
            default=default_precision(),
            help="decimal digits for numeric output (env ZETAFORGE_PRECISION)",
        )
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--series-order", type=int, default=10, dest="series_order")
        p.add_argument("--ell", type=int, default=None, help="auxiliary prime for ell-check")

    for verb in ("zeta", "value", "verify-c", "verify-vo", "trace-check", "ell-check", "p-check"):
        common(sub.add_parser(verb))
    p_ord = sub.add_parser("ord")
    common(p_ord)
    p_ord.add_argument("--hodge", default=None, help="inline Hodge-data JSON instead of an expression")
    p_det = sub.add_parser("det")
    p_det.add_argument("file", help="complex file (JSON)")
    common(p_det, expression=False)
    p_batch = sub.add_parser("batch")
    p_batch.add_argument("--manifest", required=True, help="JSON list of {expr, n} entries")
    common(p_batch, expression=False)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        report, ok = run_command(args)
    except ZetaforgeError as exc:
        payload = {"error": {"code": exc.code, "message": exc.message}}
        if args.format == "json":
            print(json.dumps(payload, indent=2))
        else:
            print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        payload = {"error": {"code": "io-error", "message": str(exc)}}
        if args.format == "json":
            print(json.dumps(payload, indent=2))
        else:
            print(f"error [io-error]: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(_render_text(report))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
