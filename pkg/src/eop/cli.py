"""``eop`` command line: verification suites, level tables, polynomials and ladder actions.

Exit status: 0 on success, 1 when an asserted identity fails, 2 on bad
configuration or invalid quantum numbers.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import __version__
from .errors import EOPError
from .model import Grid, ModelParams, PRODUCTS, SINGLE, ladder_match, make_state
from .orthopoly import assoc_legendre, jacobi, laguerre, legendre, xjacobi
from .report import fmt_q
from .spectrum import spectrum_table
from .verify import DEFAULT_PMAX, SUITES, run_suite

EXIT_OK, EXIT_ASSERTION, EXIT_CONFIG = 0, 1, 2

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_RANGE = re.compile(r"^(N|m|n):(-?\d+)\.\.(-?\d+)$")


class ConfigError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    """``"p/q"`` or an integer, optionally signed; anything else is rejected."""
    t = text.strip()
    if not _RATIONAL.match(t):
        raise ConfigError(f"not an exact rational literal: {text!r} (use p/q)")
    return Fraction(t)


def parse_grid(text: str) -> dict:
    """``N:a..b,m:a..b,n:a..b``; ``m`` bounds are offsets above the azimuthal ``mu``."""
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        match = _RANGE.match(part)
        if not match:
            raise ConfigError(f"bad grid range {part!r}; expected e.g. N:1..3")
        key, lo, hi = match.group(1), int(match.group(2)), int(match.group(3))
        if lo > hi:
            raise ConfigError(f"empty range {part!r}")
        out[key] = (lo, hi)
    return out


def _decimal(q: Fraction, places: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(q.numerator) / Decimal(q.denominator)
        return str(d.quantize(Decimal(1).scaleb(-places)))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# verify

def build_grid(args) -> Grid:
    alphas = tuple(parse_rational(a) for a in args.alpha.split(",")) if args.alpha else (Fraction(1), Fraction(2))
    gamma = parse_rational(args.gamma)
    delta = parse_rational(args.delta)
    for a in alphas:
        ModelParams(a, gamma, delta)
    bounds = parse_grid(args.grid) if args.grid else {}
    N = bounds.get("N", (0 if args.include_n0 else 1, 3))
    if N[0] < 0 or (N[0] == 0 and not args.include_n0):
        raise ConfigError("N must be >= 1 (pass --include-n0 to allow N = 0)")
    dm = bounds.get("m", (0, 2))
    n = bounds.get("n", (1, 3))
    if dm[0] < 0:
        raise ConfigError("m offsets above mu must be >= 0")
    if n[0] < 1:
        raise ConfigError("n must be >= 1 (the exceptional family starts at degree 1)")
    return Grid(alphas, gamma, delta, N, dm, n)


def verification_document(suite: str, grid: Grid, pmax: int = DEFAULT_PMAX) -> tuple[dict, bool]:
    reports = run_suite(suite, grid, pmax)
    assertions, findings, summary = [], [], []
    for r in reports:
        summary.append({"id": r.identity_id, "asserted": r.asserted, "passed": r.passed,
                        "cases": len(r.cases), "failures": len(r.failures), "ratioPattern": r.ratio_pattern()})
        for c in r.cases:
            d = c.to_dict()
            if r.asserted:
                assertions.append({"id": r.identity_id, "state": d["state"], "expected": d["expected"],
                                   "measured": d["measured"], "verdict": d["verdict"]})
            elif c in r.failures:
                findings.append({"id": r.identity_id, "state": d["state"], "paperValue": d["expected"],
                                 "measuredValue": d["measured"], "exactRatio": d["ratio"],
                                 "verdict": d["verdict"], "note": d["note"]})
    ok = all(r.passed for r in reports if r.asserted)
    doc = {
        "meta": {
            "params": {"alpha": [fmt_q(a) for a in grid.alphas], "gamma": fmt_q(grid.gamma),
                       "delta": fmt_q(grid.delta)},
            "grid": grid.to_dict(),
            "version": __version__,
            "suite": suite,
            "pmax": pmax,
            "passed": ok,
            "summary": summary,
        },
        "assertions": assertions,
        "findings": findings,
    }
    return doc, ok


def _verify_text(doc: dict) -> str:
    lines = [f"suite {doc['meta']['suite']}  version {doc['meta']['version']}"]
    for s in doc["meta"]["summary"]:
        tag = ("PASS" if s["passed"] else "FAIL") if s["asserted"] else ("agrees" if s["passed"] else "finding")
        lines.append(f"{tag:8s} {s['id']:32s} cases={s['cases']:<4d} off={s['failures']:<4d} {s['ratioPattern']}")
    lines.append(f"assertions {len(doc['assertions'])}, findings {len(doc['findings'])}, "
                 f"{'all asserted checks pass' if doc['meta']['passed'] else 'ASSERTED CHECK FAILED'}")
    return "\n".join(lines) + "\n"


def _verify_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "id", "state", "expected", "measured", "verdict", "ratio"])
    for a in doc["assertions"]:
        w.writerow(["assertion", a["id"], json.dumps(a["state"], sort_keys=True), a["expected"], a["measured"],
                    a["verdict"], ""])
    for f in doc["findings"]:
        w.writerow(["finding", f["id"], json.dumps(f["state"], sort_keys=True), f["paperValue"], f["measuredValue"],
                    f["verdict"], f["exactRatio"]])
    return buf.getvalue()


def cmd_verify(args) -> int:
    grid = build_grid(args)
    doc, ok = verification_document(args.suite, grid, args.pmax)
    if args.format == "json":
        text = json.dumps(doc, indent=2) + "\n"
    elif args.format == "csv":
        text = _verify_csv(doc)
    else:
        text = _verify_text(doc)
    _emit(text, args.out)
    if args.out and args.format != "text":
        sys.stdout.write(_verify_text(doc))
    return EXIT_OK if ok else EXIT_ASSERTION


# ---------------------------------------------------------------------------
# spectrum

def _states_text(states) -> str:
    return "[" + ",".join(f"({N},{m})" for N, m in states) + "]"


def spectrum_document(pmax: int, alpha: Fraction, include_n0: bool) -> list[dict]:
    return [{"p": r.p, "E_exact": fmt_q(r.E), "E_decimal": _decimal(r.E), "states": [list(s) for s in r.states]}
            for r in spectrum_table(pmax, alpha, include_n0)]


def cmd_spectrum(args) -> int:
    if args.pmax < 1 or args.pmax % 2 == 0:
        raise ConfigError("pmax must be an odd positive integer (p = 2(N+m)+1)")
    alpha = parse_rational(args.alpha)
    if alpha <= 0:
        raise ConfigError("alpha must be positive")
    rows = spectrum_document(args.pmax, alpha, args.include_n0)
    if args.format == "json":
        text = json.dumps({"alpha": fmt_q(alpha), "includeN0": args.include_n0,
                           "note": "n is a free label: E does not depend on it", "rows": rows}, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "E_exact", "E_decimal", "states"])
        for r in rows:
            w.writerow([r["p"], r["E_exact"], r["E_decimal"], _states_text(r["states"])])
        text = buf.getvalue()
    else:
        text = "".join(f"p={r['p']:<3d} E={r['E_exact']:>10s} ({r['E_decimal']})  {_states_text(r['states'])}\n"
                       for r in rows)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# poly

def cmd_poly(args) -> int:
    fam, n = args.family, args.n
    if n < 0:
        raise ConfigError("index must be nonnegative")
    if fam == "laguerre":
        beta = parse_rational(args.beta)
        if beta <= -1:
            raise ConfigError("Laguerre needs beta > -1")
        P, params = laguerre(n, beta), {"beta": fmt_q(beta)}
    elif fam == "jacobi":
        a, b = parse_rational(args.a), parse_rational(args.b)
        if a <= -1 or b <= -1:
            raise ConfigError("Jacobi needs a, b > -1")
        P, params = jacobi(n, a, b), {"a": fmt_q(a), "b": fmt_q(b)}
    elif fam == "legendre":
        P, params = legendre(n), {}
    elif fam == "assoclegendre":
        if args.mu is None or args.mu < 0:
            raise ConfigError("associated Legendre needs --mu >= 0")
        if args.mu > n:
            raise ConfigError(f"order mu={args.mu} exceeds degree m={n}")
        P, params = assoc_legendre(n, args.mu), {"mu": args.mu}
    else:
        delta, gamma = parse_rational(args.delta), parse_rational(args.gamma)
        if not delta > gamma > 0:
            raise ConfigError("X1 Jacobi needs delta > gamma > 0")
        if n < 1:
            raise ConfigError("the X1 family starts at n = 1")
        P, params = xjacobi(n, delta, gamma), {"delta": fmt_q(delta), "gamma": fmt_q(gamma)}
    text = P.format(args.var)
    if args.format == "json":
        # coefficients in ascending powers of the variable
        doc = {"family": fam, "n": n, "params": params, "value": text, "coefficients": [fmt_q(c) for c in P.coeffs]}
        out = json.dumps(doc, indent=2) + "\n"
    else:
        out = text + "\n"
    _emit(out, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# ladder

def _coords_for(op: str) -> tuple[str, ...]:
    if op in PRODUCTS:
        return tuple(SINGLE[part].coord for part in PRODUCTS[op][:2])
    return (SINGLE[op].coord,)


def cmd_ladder(args) -> int:
    if args.op not in SINGLE and args.op not in PRODUCTS:
        raise ConfigError(f"unknown operator {args.op!r}; choose from {', '.join(list(SINGLE) + list(PRODUCTS))}")
    try:
        N, m, n = (int(v) for v in args.state.split(","))
    except ValueError:
        raise ConfigError("--state must be N,m,n with integers") from None
    alpha = parse_rational(args.alpha)
    P = ModelParams(alpha, parse_rational(args.gamma), parse_rational(args.delta))
    s = make_state(N, m, n, P, coords=_coords_for(args.op))
    la = ladder_match(args.op, s)
    rec = la.to_dict()
    rec["state"] = {"N": N, "m": m, "n": n}
    rec["params"] = P.to_dict()
    if args.format == "json":
        out = json.dumps(rec, indent=2) + "\n"
    else:
        T = la.output
        tm = T.mr if "radial" in _coords_for(args.op) else T.mp
        out = (f"{args.op} on (N={N}, m={m}, n={n}): coefficient {rec['coefficient']}"
               f" (stated {rec['stated']}); target N={T.N}, m={tm}, n={T.n}"
               f"{'; annihilated' if la.annihilated else ''}\n")
    _emit(out, args.out)
    return EXIT_OK if la.matched else EXIT_ASSERTION


# ---------------------------------------------------------------------------

def _params_flags(p: argparse.ArgumentParser, alpha_default: str | None) -> None:
    p.add_argument("--alpha", default=alpha_default, help="rational p/q (verify: comma list)")
    p.add_argument("--gamma", default="2/1", help="rational p/q")
    p.add_argument("--delta", default="3/1", help="rational p/q")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eop", description="Exact verification of a superintegrable model with X1 Jacobi polynomials.")
    ap.add_argument("--version", action="version", version=f"eop {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run an identity suite and write a report")
    v.add_argument("--suite", default="all", choices=list(SUITES))
    _params_flags(v, None)
    v.add_argument("--grid", help="N:a..b,m:a..b,n:a..b (m is the offset above mu)")
    v.add_argument("--include-n0", action="store_true", help="allow N = 0")
    v.add_argument("--pmax", type=int, default=DEFAULT_PMAX)
    v.add_argument("--out")
    v.add_argument("--format", default="json", choices=["json", "csv", "text"])
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("spectrum", help="energy levels with their (N, m) states")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--alpha", default="1/1")
    s.add_argument("--include-n0", action="store_true")
    s.add_argument("--out")
    s.add_argument("--format", default="csv", choices=["json", "csv", "text"])
    s.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("poly", help="print a polynomial family member with exact coefficients")
    p.add_argument("--family", required=True, choices=["laguerre", "jacobi", "legendre", "assoclegendre", "xjacobi"])
    p.add_argument("--n", type=int, required=True, help="index (degree for Legendre families)")
    p.add_argument("--beta", default="0")
    p.add_argument("--a", default="0")
    p.add_argument("--b", default="0")
    p.add_argument("--mu", type=int)
    p.add_argument("--delta", default="3/1")
    p.add_argument("--gamma", default="1/1")
    p.add_argument("--var", default="y")
    p.add_argument("--out")
    p.add_argument("--format", default="text", choices=["json", "text"])
    p.set_defaults(func=cmd_poly)

    la = sub.add_parser("ladder", help="apply one operator to a state and report the coefficient")
    la.add_argument("--op", required=True)
    la.add_argument("--state", required=True, help="N,m,n")
    _params_flags(la, "1/1")
    la.add_argument("--out")
    la.add_argument("--format", default="text", choices=["json", "text"])
    la.set_defaults(func=cmd_ladder)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, EOPError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"eop: error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
