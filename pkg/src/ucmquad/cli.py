"""Command-line front end: ``ucmquad rule`` and ``ucmquad verify``.

Data goes to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 when a verification check fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from .classical import Family, FamilySpec, build_family_rule, normalized_nodes
from .engine import RuleResult, build_rule
from .errors import QuadratureError
from .gaussian import gauss_legendre_rule
from .moments import LegendreWeight, MomentProvider, Uniform
from .oracle import midpoint_tolerance, monomial_error_coefficient, probe_degree, vandermonde_weights
from .polynomial import NodeSet
from .scalar import BigFloatField, Field, Precision, RationalField

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

GAUSS = "gauss-legendre"
CUSTOM = "custom"
FAMILIES = [f.value for f in Family] + [GAUSS, CUSTOM]

_INT_OR_RATIO = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_SQRT = re.compile(r"^([+-]?)sqrt\((.+)\)$")


class UsageError(Exception):
    pass


# -- literals ---------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    text: str
    #: "rational", "decimal" or "irrational"
    kind: str
    value: Fraction | None = None

    def to(self, fld: Field):
        if self.kind == "irrational":
            m = _SQRT.match(self.text)
            root = fld.sqrt(fld(parse_literal(m.group(2)).exact()))
            return -root if m.group(1) == "-" else root
        if fld.flavor == "bigfloat" and self.kind == "decimal":
            return fld.parse(self.text)
        return fld(self.value)

    def exact(self) -> Fraction:
        if self.value is None:
            raise UsageError(f"{self.text!r} is not a rational number")
        return self.value


def parse_literal(text: str) -> Literal:
    """Rational (``p`` or ``p/q``), decimal, or ``sqrt(r)`` literal."""
    t = text.strip().replace(" ", "")
    if _INT_OR_RATIO.match(t):
        try:
            return Literal(t, "rational", Fraction(t))
        except ZeroDivisionError:
            raise UsageError(f"zero denominator in {text!r}") from None
    if _DECIMAL.match(t):
        return Literal(t, "decimal", Fraction(t))
    m = _SQRT.match(t)
    if m:
        inner = parse_literal(m.group(2)).exact()
        if inner < 0:
            raise UsageError(f"negative radicand in {text!r}")
        num, den = _exact_sqrt(inner.numerator), _exact_sqrt(inner.denominator)
        if num is not None and den is not None:
            v = Fraction(num, den)
            return Literal(t, "rational", -v if m.group(1) == "-" else v)
        return Literal(t, "irrational")
    raise UsageError(f"cannot parse number {text!r}")


def _exact_sqrt(k: int) -> int | None:
    import math

    r = math.isqrt(k)
    return r if r * r == k else None


def parse_list(text: str) -> list[Literal]:
    return [parse_literal(tok) for tok in text.split(",") if tok.strip()]


def parse_range(text: str) -> range:
    m = re.match(r"^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$", text)
    if not m:
        raise UsageError(f"bad n range {text!r}; expected N or A..B")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise UsageError(f"empty n range {text!r}")
    return range(lo, hi + 1)


# -- rule construction ------------------------------------------------------

@dataclass
class Built:
    name: str
    rule: RuleResult
    mp: MomentProvider
    out_digits: int | None
    h_power: int | None = None
    extra: dict = field(default_factory=dict)


def _precision(args) -> Precision | None:
    if args.digits is None:
        return None
    try:
        return Precision.from_digits(args.digits)
    except ValueError as exc:
        raise UsageError(f"--digits: {exc}") from None


def build(family: str, n: int | None, args) -> Built:
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    prec = _precision(args)

    if family == GAUSS:
        if args.exact:
            raise UsageError("gauss-legendre nodes are irrational; --exact is not available")
        if n is None or n < 1:
            raise UsageError("gauss-legendre needs --n >= 1")
        g = gauss_legendre_rule(n, prec)
        return Built(GAUSS, g.rule, LegendreWeight(g.field), g.target.decimal_digits,
                     extra={"gauss": g})

    if family == CUSTOM:
        return _build_custom(n, args, prec)

    if n is None:
        raise UsageError(f"{family} needs --n")
    try:
        spec = FamilySpec(Family(family), n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fld: Field = RationalField() if prec is None else BigFloatField(prec)
    rule, err = build_family_rule(spec, fld)
    a, b = rule.nodes.interval
    return Built(family, rule, Uniform(a, b, fld), None if prec is None else prec.decimal_digits,
                 h_power=err.h_power, extra={"spec": spec})


def _build_custom(n: int | None, args, prec: Precision | None) -> Built:
    if not args.nodes or not args.interval:
        raise UsageError("custom rules need --nodes and --interval")
    nodes = parse_list(args.nodes)
    interval = parse_list(args.interval)
    if len(interval) != 2:
        raise UsageError("--interval takes exactly two numbers a,b")
    if n is not None and n != len(nodes):
        raise UsageError(f"--n {n} does not match the {len(nodes)} nodes given")
    literals = nodes + interval
    irrational = [lit.text for lit in literals if lit.kind == "irrational"]
    if args.exact:
        if irrational:
            raise UsageError(f"--exact needs rational nodes; got {', '.join(irrational)}")
        fld: Field = RationalField()
    elif prec is not None:
        fld = BigFloatField(prec)
    elif all(lit.kind == "rational" for lit in literals):
        fld = RationalField()
    else:
        fld = BigFloatField(Precision())
    a, b = (lit.to(fld) for lit in interval)
    try:
        ns = NodeSet([lit.to(fld) for lit in nodes], (a, b), fld)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    mp = Uniform(a, b, fld)
    rule = build_rule(ns, mp)
    digits = None if fld.precision is None else fld.precision.decimal_digits
    return Built(CUSTOM, rule, mp, digits)


# -- output -----------------------------------------------------------------

def _fmt(b: Built, x) -> str:
    return b.rule.field.format(x, b.out_digits)


def document(b: Built) -> dict[str, Any]:
    """Machine-readable description of a rule; arrays follow node order."""
    r = b.rule
    doc: dict[str, Any] = {"rule": b.name, "n": r.n, "arithmetic": r.field.flavor}
    if b.out_digits is not None:
        doc["precision_digits"] = b.out_digits
    doc["interval"] = [_fmt(b, v) for v in r.nodes.interval]
    doc["nodes"] = [_fmt(b, v) for v in r.nodes]
    doc["weights"] = [_fmt(b, v) for v in r.weights]
    doc["degree"] = r.degree
    err: dict[str, Any] = {"coefficient": _fmt(b, r.error_coefficient), "derivative_order": r.derivative_order}
    if b.h_power is not None:
        err["h_power"] = b.h_power
    doc["error"] = err
    doc["diagnostics"] = {
        "diag_det": _fmt(b, r.diag_det),
        "conditioning_warning": r.conditioning_warning,
        "I_q_list": [_fmt(b, v) for v in r.i_q],
    }
    return doc


def dump_json(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def render_csv(doc: dict) -> str:
    buf = io.StringIO()
    for key in ("rule", "n", "arithmetic", "precision_digits", "degree"):
        if key in doc:
            buf.write(f"# {key}: {doc[key]}\n")
    buf.write(f"# error_coefficient: {doc['error']['coefficient']}\n")
    buf.write(f"# derivative_order: {doc['error']['derivative_order']}\n")
    if "h_power" in doc["error"]:
        buf.write(f"# h_power: {doc['error']['h_power']}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "node", "weight"])
    for i, (x, a) in enumerate(zip(doc["nodes"], doc["weights"]), start=1):
        w.writerow([i, x, a])
    return buf.getvalue()


def render_table(doc: dict) -> str:
    lines = [f"{doc['rule']}  n={doc['n']}  {doc['arithmetic']}"
             + (f" ({doc['precision_digits']} digits)" if "precision_digits" in doc else "")]
    lines.append(f"interval [{doc['interval'][0]}, {doc['interval'][1]}]")
    wx = max(len("node"), *(len(s) for s in doc["nodes"]))
    lines.append(f"{'i':>4}  {'node':<{wx}}  weight")
    for i, (x, a) in enumerate(zip(doc["nodes"], doc["weights"]), start=1):
        lines.append(f"{i:>4}  {x:<{wx}}  {a}")
    e = doc["error"]
    scale = f"h^{e['h_power']} * " if "h_power" in e else ""
    lines.append(f"degree {doc['degree']}")
    lines.append(f"error  {scale}{e['coefficient']} * f^({e['derivative_order']})(xi)")
    if doc["diagnostics"]["conditioning_warning"]:
        lines.append(f"warning: triangular system is ill-conditioned (det {doc['diagnostics']['diag_det']})")
    return "\n".join(lines) + "\n"


RENDERERS = {"json": lambda d: dump_json(d), "csv": render_csv, "table": render_table}


# -- verification -----------------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _close(fld: Field, u, v, digits: int | None) -> bool:
    if fld.precision is None:
        return u == v
    tol = fld(10) ** (-(digits - 10))
    return abs(u - v) <= tol * max(abs(v), 1)


def verify_one(family: str, n: int, args) -> tuple[Built | None, list[Check]]:
    try:
        b = build(family, n, args)
    except QuadratureError as exc:
        return None, [Check("build", False, str(exc))]
    r, mp, fld = b.rule, b.mp, b.rule.field
    checks: list[Check] = []

    ow = vandermonde_weights(r.nodes, mp)
    bad = [i + 1 for i, (u, v) in enumerate(zip(r.weights, ow)) if not _close(fld, u, v, b.out_digits)]
    checks.append(Check("weights=oracle", not bad, f"mismatch at nodes {bad}" if bad else ""))

    probed = probe_degree(r.nodes, r.weights, mp, 2 * n, midpoint_tolerance(fld, b.out_digits))
    checks.append(Check("degree=probe", probed == r.degree, f"engine {r.degree}, probe {probed}"))

    c_mono = monomial_error_coefficient(r.nodes, r.weights, mp, r.degree)
    checks.append(Check("error=monomial", _close(fld, r.error_coefficient, c_mono, b.out_digits)))

    total = sum(r.weights, fld.zero)
    checks.append(Check("sum(weights)=mass", _close(fld, total, mp.mass(), b.out_digits),
                        f"sum {fld.format(total, 20)}"))

    if family == Family.CLOSED_NEWTON_COTES.value:
        want = n - 1 if n % 2 == 0 else n
        checks.append(Check("parity", r.degree == want, f"degree {r.degree}, expected {want}"))
    if family in (Family.ADAMS_BASHFORTH.value, Family.ADAMS_MOULTON.value):
        checks.append(Check("degree=n-1", r.degree == n - 1, f"degree {r.degree}"))
    if family in (Family.CLOSED_NEWTON_COTES.value, Family.OPEN_NEWTON_COTES.value, GAUSS):
        w = r.weights
        pal = all(_close(fld, w[i], w[n - 1 - i], b.out_digits) for i in range(n))
        checks.append(Check("palindromic", pal))
    if family == GAUSS:
        g = b.extra["gauss"]
        checks.append(Check("degree=2n-1", r.degree == 2 * n - 1, f"degree {r.degree}"))
        checks.append(Check("positive", all(w > 0 for w in r.weights)))
        # gauss_legendre_rule already raised if the closed form disagreed
        checks.append(Check("closed-form", True, fld.format(fld(g.closed_form_c), 12)))
    return b, checks


def cmd_verify(args) -> int:
    if args.family == CUSTOM:
        raise UsageError("verify works on named families; use `rule custom` for explicit nodes")
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    rows = []
    all_ok = True
    for n in parse_range(args.n):
        b, checks = verify_one(args.family, n, args)
        ok = all(c.ok for c in checks)
        all_ok &= ok
        rows.append((n, None if b is None else b.rule.degree, ok, checks))

    if args.format == "json":
        out = [{"n": n, "degree": d, "pass": ok,
                "checks": {c.name: c.ok for c in checks},
                "failures": {c.name: c.detail for c in checks if not c.ok}} for n, d, ok, checks in rows]
        sys.stdout.write(dump_json({"family": args.family, "pass": all_ok, "results": out}))
    else:
        sys.stdout.write(f"{'n':>4}  {'degree':>6}  status  checks\n")
        for n, d, ok, checks in rows:
            names = " ".join(c.name if c.ok else f"FAIL:{c.name}" for c in checks)
            sys.stdout.write(f"{n:>4}  {'-' if d is None else d:>6}  {'pass' if ok else 'FAIL':<6}  {names}\n")
        degrees = ",".join(str(d) for _, d, _, _ in rows)
        sys.stdout.write(f"degrees [{degrees}]  {'all pass' if all_ok else 'FAILED'}\n")
    for n, _, ok, checks in rows:
        for c in checks:
            if not c.ok:
                print(f"n={n}: check {c.name} failed {c.detail}".rstrip(), file=sys.stderr)
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_rule(args) -> int:
    n = None
    if args.n is not None:
        try:
            n = int(args.n)
        except ValueError:
            raise UsageError(f"--n must be an integer, got {args.n!r}") from None
    b = build(args.family, n, args)
    sys.stdout.write(RENDERERS[args.format](document(b)))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ucmquad",
        description="Quadrature weights, degree of precision and error constants.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("family", help=f"one of: {', '.join(FAMILIES)}")
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--digits", type=int, help="big-float precision in decimal digits")
        mode.add_argument("--exact", action="store_true", help="exact rational arithmetic")

    p = sub.add_parser("rule", help="emit one rule")
    common(p)
    p.add_argument("--n", help="number of nodes")
    p.add_argument("--nodes", help="custom: comma-separated nodes (p/q, decimals, sqrt(r)); write --nodes=-1,... when the first is negative")
    p.add_argument("--interval", help="custom: integration interval a,b")
    p.add_argument("--format", choices=sorted(RENDERERS), default="json")
    p.set_defaults(func=cmd_rule)

    p = sub.add_parser("verify", help="cross-check a family against the oracle")
    common(p)
    p.add_argument("--n", required=True, help="node counts, N or A..B")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ucmquad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"ucmquad: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
