"""Command-line driver.

    quon-energy matrix  --n N [--q a/b] [--inverse]
    quon-energy coeffs  --n N [--q a/b] [--method product|explicit|both]
    quon-energy verify  {det,eigen,remark1,greenberg,integrality,rp} --n N [--q a/b] [--seed S]
    quon-energy bench   --n N [--q a/b]

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 singular
specialization.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction

from . import coefficients, zagier
from .group_algebra import SingularSpecializationError, XGroupPolynomial
from .scalar import parse_rational, to_text

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SINGULAR = 0, 1, 2, 3

VERIFY_CHECKS = ("det", "eigen", "remark1", "greenberg", "integrality", "rp")
BENCH_MAX_N = 6


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int
    q: Fraction | None
    seed: int
    output_format: str
    output_path: str | None
    check: str | None = None
    method: str = "product"
    inverse: bool = False
    allow_slow: bool = False
    draws: int = 20

    @property
    def q_text(self) -> str:
        return "symbolic" if self.q is None else str(self.q)

    @property
    def symbolic(self) -> bool:
        return self.q is None


def parse_q(text: str) -> Fraction | None:
    if text == "symbolic":
        return None
    try:
        q0 = parse_rational(text)
    except ValueError as exc:
        raise UsageError(f"--q: {exc}") from None
    if q0 in (1, -1):
        raise UsageError(f"--q {text}: q = +-1 makes the Gram matrix singular")
    return q0


# --------------------------------------------------------------------------
# per-command bounds
# --------------------------------------------------------------------------

def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def _bound_inverse(cfg: RunConfig) -> None:
    if cfg.symbolic:
        top = 5 if cfg.allow_slow else 4
        _require(cfg.n <= top, f"symbolic inverse supports n <= {top} (n = 5 needs --allow-slow)")
    else:
        _require(cfg.n <= 5, "specialized inverse supports n <= 5")


# --------------------------------------------------------------------------
# commands; each returns (exit code, json payload, text lines)
# --------------------------------------------------------------------------

def _table_text(c: XGroupPolynomial) -> list[str]:
    return [f"c_{d + 1}({p}) = {to_text(c.coefficient(p, d))}" for p, d in c.keys()]


def cmd_matrix(cfg: RunConfig):
    _require(1 <= cfg.n <= zagier.MAX_N, f"matrix supports 1 <= n <= {zagier.MAX_N}")
    m = zagier.build(cfg.n, cfg.q)
    result = {"matrix": m.to_json()}
    lines = [f"A_{cfg.n} (rows and columns in lexicographic order, q = {cfg.q_text})"]
    lines += [", ".join(to_text(x) for x in row) for row in m.entries]
    if cfg.inverse:
        _bound_inverse(cfg)
        inv = zagier.invert(m, allow_slow=cfg.allow_slow)
        result["inverse"] = {"n": cfg.n, "order": "lex", "q": cfg.q_text,
                             "entries": [[to_text(x) for x in row] for row in inv]}
        lines.append(f"A_{cfg.n}^-1")
        lines += [", ".join(to_text(x) for x in row) for row in inv]
    return EXIT_OK, None, result, lines


def _coeffs(n: int, q, method: str, allow_slow: bool) -> XGroupPolynomial:
    if method == "product":
        return coefficients.coeffs_via_product(n, q, allow_slow=allow_slow)
    return coefficients.coeffs_via_explicit(n, q, allow_slow=allow_slow)


def cmd_coeffs(cfg: RunConfig):
    top = 5 if (cfg.allow_slow or not cfg.symbolic) else 4
    _require(1 <= cfg.n <= top, f"coeffs supports 1 <= n <= {top} here"
             + ("" if top == 5 else " (n = 5 needs --q or --allow-slow)"))
    methods = ["product", "explicit"] if cfg.method == "both" else [cfg.method]
    tables = {m: _coeffs(cfg.n, cfg.q, m, cfg.allow_slow) for m in methods}
    first = tables[methods[0]]
    result = {"coeffs": first.to_json(), "method": cfg.method}
    lines = [f"coefficients c_i(q, p), n = {cfg.n}, q = {cfg.q_text}, method = {methods[0]}"]
    lines += _table_text(first)
    passed = None
    if cfg.method == "both":
        diff = coefficients.compare(tables["product"], tables["explicit"])
        passed = not diff
        result["equality"] = {"equal": passed, "differences": diff}
        lines.append(f"product and explicit formulas agree: {passed}")
    code = EXIT_FAIL if passed is False else EXIT_OK
    return code, passed, result, lines


def _verify_det(cfg: RunConfig):
    if cfg.symbolic:
        _require(cfg.n <= 5, "symbolic det check supports n <= 5")
        det = zagier.determinant(zagier.build(cfg.n))
        formula = zagier.zagier_formula(cfg.n)
    else:
        _require(cfg.n <= 6, "specialized det check supports n <= 6")
        det = zagier.determinant(zagier.build(cfg.n, cfg.q))
        formula = zagier.zagier_formula(cfg.n).evaluate(cfg.q)
    match = det == formula
    result = {"determinant": to_text(det), "formula": to_text(formula), "match": match}
    lines = [f"det A_{cfg.n} = {to_text(det)}", f"product formula = {to_text(formula)}",
             f"match: {match}"]
    return match, result, lines


def _verify_eigen(cfg: RunConfig):
    _require(cfg.n <= 4, "eigen check supports n <= 4")
    rep = coefficients.eigen_check(cfg.n, cfg.q, seed=cfg.seed, draws=cfg.draws)
    return rep.holds, rep.to_json(), [
        f"eigenvalue equation on {cfg.draws} random {cfg.n}-particle states: "
        f"{len(rep.violations)} failures"]


def _verify_remark1(cfg: RunConfig):
    if cfg.symbolic:
        _require(cfg.n <= 4, "symbolic position-symmetry check supports n <= 4; use --q for n = 5")
    else:
        _require(cfg.n <= 5, "position-symmetry check supports n <= 5")
    rep = coefficients.check_remark1(cfg.n, cfg.q)
    lines = [f"c_i(q,p) = c_p(i)(q,p) for all i, p: {len(rep.violations)} violations"]
    if not cfg.symbolic:
        lines.append("a match at a specialized q is evidence, not a proof")
    return rep.holds, rep.to_json(), lines


def _verify_greenberg(cfg: RunConfig):
    _require(cfg.n <= 4, "greenberg check supports n <= 4")
    _require(cfg.q in (None, 0), "the Greenberg limit is taken at q = 0; omit --q or pass 0")
    rep = coefficients.greenberg_limit_check(cfg.n, seed=cfg.seed)
    return rep.holds, rep.to_json(), [
        f"q = 0 energy operator vs sum_i E(i) n(i): {len(rep.violations)} mismatches"]


def _verify_integrality(cfg: RunConfig):
    _require(cfg.symbolic, "integrality is a statement over Z[q]; omit --q")
    top = 5 if cfg.allow_slow else 4
    _require(cfg.n <= top, f"integrality check supports n <= {top}")
    rep = zagier.check_integrality(cfg.n, allow_slow=cfg.allow_slow)
    bad = len(rep.violations)
    return rep.holds, rep.to_json(), [
        f"Delta_{cfg.n} * A_{cfg.n}^-1: {len(rep.entries)} entries, {bad} not in Z[q]"]


def _verify_rp(cfg: RunConfig):
    if cfg.symbolic:
        _require(cfg.n <= 4, "symbolic R_p check supports n <= 4; use --q for n = 5")
    else:
        _require(cfg.n <= 5, "R_p check supports n <= 5")
    rows, ok = [], True
    for p in range(1, cfg.n + 1):
        diff = coefficients.compare(coefficients.r_p_defining(p, cfg.q),
                                    coefficients.r_p_closed(p, cfg.q))
        rows.append({"p": p, "equal": not diff, "differences": diff})
        ok = ok and not diff
    lines = [f"R_{r['p']}: defining form = closed form: {r['equal']}" for r in rows]
    return ok, {"holds": ok, "checks": rows}, lines


_VERIFY = {
    "det": _verify_det,
    "eigen": _verify_eigen,
    "remark1": _verify_remark1,
    "greenberg": _verify_greenberg,
    "integrality": _verify_integrality,
    "rp": _verify_rp,
}


def cmd_verify(cfg: RunConfig):
    _require(cfg.n >= 1, "--n must be positive")
    passed, result, lines = _VERIFY[cfg.check](cfg)
    lines.append("PASS" if passed else "FAIL")
    return (EXIT_OK if passed else EXIT_FAIL), passed, result, lines


def _timed(fn):
    t0 = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - t0


def _size(value) -> int:
    if isinstance(value, XGroupPolynomial):
        return len(value.terms)
    if isinstance(value, list):
        return sum(1 for row in value for x in row if x)
    if hasattr(value, "terms"):
        return len(value.terms)
    if hasattr(value, "degree"):
        return value.degree + 1
    return 1


def cmd_bench(cfg: RunConfig):
    _require(2 <= cfg.n <= BENCH_MAX_N, f"bench supports 2 <= n <= {BENCH_MAX_N}")
    q0 = cfg.q if cfg.q is not None else Fraction(1, 3)
    rows = []

    def record(n, mode, op, fn):
        value, secs = _timed(fn)
        rows.append({"n": n, "mode": mode, "op": op, "seconds": round(secs, 6),
                     "terms": _size(value)})

    for n in range(2, cfg.n + 1):
        sym_top = 5 if cfg.allow_slow else 4
        if n <= sym_top:
            record(n, "symbolic", "build", lambda: zagier.build(n).entries)
            record(n, "symbolic", "det", lambda: zagier.determinant(zagier.build(n)))
            record(n, "symbolic", "invert", lambda: zagier.invert(zagier.build(n), allow_slow=True))
            record(n, "symbolic", "coeffs",
                   lambda: coefficients.coeffs_via_product(n, allow_slow=True))
        mode = f"q={q0}"
        record(n, mode, "build", lambda: zagier.build(n, q0).entries)
        record(n, mode, "det", lambda: zagier.determinant(zagier.build(n, q0)))
        if n <= 5:
            record(n, mode, "invert", lambda: zagier.invert(zagier.build(n, q0)))
            record(n, mode, "coeffs", lambda: coefficients.coeffs_via_product(n, q0))
    lines = [f"{'n':>2}  {'mode':<10} {'op':<7} {'seconds':>10} {'terms':>8}"]
    lines += [f"{r['n']:>2}  {r['mode']:<10} {r['op']:<7} {r['seconds']:>10.4f} {r['terms']:>8}"
              for r in rows]
    return EXIT_OK, None, {"timings": rows}, lines


_COMMANDS = {"matrix": cmd_matrix, "coeffs": cmd_coeffs, "verify": cmd_verify,
             "bench": cmd_bench}


# --------------------------------------------------------------------------
# argument parsing and output
# --------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="number of particles / degree of S_n")
    p.add_argument("--q", default="symbolic", help="'symbolic' (default) or an exact rational a/b")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--format", choices=("text", "json"), default="text", dest="output_format")
    p.add_argument("--out", default=None, help="write output to this file instead of stdout")
    p.add_argument("--allow-slow", action="store_true",
                   help="permit symbolic runs at n = 5 that take minutes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quon-energy",
                                     description="Exact energy operator for infinite statistics")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("matrix", help="emit the Gram matrix A_n (and optionally its inverse)")
    _common(p)
    p.add_argument("--inverse", action="store_true")
    p = sub.add_parser("coeffs", help="emit the coefficient table c_i(q, p)")
    _common(p)
    p.add_argument("--method", choices=("product", "explicit", "both"), default="product")
    p = sub.add_parser("verify", help="run one of the verification suites")
    p.add_argument("check", choices=VERIFY_CHECKS)
    _common(p)
    p.add_argument("--draws", type=int, default=20, help="random states for the eigen check")
    p = sub.add_parser("bench", help="time build/det/invert/coeffs for n = 2..N")
    _common(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    q = parse_q(args.q)
    if getattr(args, "check", None) == "greenberg" and q is None:
        q = Fraction(0)
    return RunConfig(
        command=args.command,
        n=args.n,
        q=q,
        seed=args.seed,
        output_format=args.output_format,
        output_path=args.out,
        check=getattr(args, "check", None),
        method=getattr(args, "method", "product"),
        inverse=getattr(args, "inverse", False),
        allow_slow=args.allow_slow,
        draws=getattr(args, "draws", 20),
    )


def _envelope(cfg: RunConfig, code: int, passed, result, error: str | None = None) -> dict:
    command = cfg.command + (f" {cfg.check}" if cfg.check else "")
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "n": cfg.n,
        "q": cfg.q_text,
        "seed": cfg.seed,
        "exit_code": code,
        "passed": passed,
        "error": error,
        "result": result,
    }


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".quon-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _render(cfg: RunConfig, code: int, passed, result, lines, error=None) -> str:
    if cfg.output_format == "json":
        return json.dumps(_envelope(cfg, code, passed, result, error), indent=2,
                          sort_keys=True) + "\n"
    head = [f"# {cfg.command}{' ' + cfg.check if cfg.check else ''}  n={cfg.n}  "
            f"q={cfg.q_text}  seed={cfg.seed}"]
    if error:
        head.append(f"error: {error}")
    return "\n".join(head + list(lines)) + "\n"


def _glue_negative_q(argv: list[str]) -> list[str]:
    # argparse reads "-1/3" as an option flag; rewrite "--q -1/3" as "--q=-1/3"
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--q" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--q={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_negative_q(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        print(f"quon-energy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, passed, result, lines = _COMMANDS[cfg.command](cfg)
        error = None
    except UsageError as exc:
        print(f"quon-energy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularSpecializationError as exc:
        code, passed, result, lines, error = EXIT_SINGULAR, False, None, [], str(exc)
        print(f"quon-energy: error: {exc}", file=sys.stderr)
    _write(_render(cfg, code, passed, result, lines, error), cfg.output_path)
    return code


if __name__ == "__main__":
    sys.exit(main())
