"""Command-line front end.

Subcommands: ``spline``, ``enum``, ``chaos``, ``riesz``, ``gram``, ``verify``.
Exit status is 0 on success, 1 when a computation fails (or ``verify`` finds a
failing check) and 2 for invalid arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .affine_operators import build_spline
from .chaos_spectrum import decompose, gamma, verify_lemma3
from .jacobi import ConvergenceError
from .riesz_analysis import (
    DEVIATION_BOUND,
    BoundsCertificate,
    deviation_norm,
    full_report,
    norm_sum_certificate,
    psi_gram,
    riesz_bounds_estimate,
)
from .walsh_index import chaos_order, index_table, paley_multiindex

MAX_M = 8
MAX_DEPTH = 10
MAX_INDEX = 1 << 16
MAX_SAMPLES = 1 << 16
DIGITS = 30

SUBCOMMANDS = ("spline", "enum", "chaos", "riesz", "gram", "verify")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    m: int = 1
    depth: int = 6
    max_index: int = 4096
    samples: int = 256
    tol: float = 1e-12
    format: str = "json"
    out_path: str | None = None

    def validate(self) -> None:
        problems = []
        if self.subcommand not in SUBCOMMANDS:
            problems.append(f"unknown subcommand {self.subcommand!r}")
        if self.depth > MAX_DEPTH:
            problems.append(f"depth exceeds limit ({self.depth} > {MAX_DEPTH})")
        elif self.depth < 1:
            problems.append("depth must be >= 1")
        if self.m > MAX_M:
            problems.append(f"m exceeds limit ({self.m} > {MAX_M})")
        min_m = 0 if self.subcommand in ("riesz", "gram") else 1
        if self.m < min_m:
            problems.append(f"m must be >= {min_m}")
        if self.max_index > MAX_INDEX:
            problems.append(f"max-index exceeds limit ({self.max_index} > {MAX_INDEX})")
        elif self.max_index < 7:
            problems.append("max-index must be >= 7")
        if not 1 <= self.samples <= MAX_SAMPLES:
            problems.append(f"samples must be in [1, {MAX_SAMPLES}]")
        if not self.tol > 0:
            problems.append("tol must be positive")
        if self.format not in ("csv", "json"):
            problems.append(f"unknown format {self.format!r}")
        if problems:
            raise ConfigError("; ".join(problems))


def decimal_string(x: Fraction, digits: int = DIGITS) -> str:
    """Round to ``digits`` significant digits, half-even, in positional notation."""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, "f")


def exact_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator), "value": decimal_string(x)}


def worker_count() -> int:
    env = os.environ.get("SPLINE_AFFINE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


# -- subcommands --------------------------------------------------------------


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_spline(cfg: RunConfig) -> tuple[str, int]:
    spec = build_spline(cfg.m)
    if cfg.format == "json":
        return json.dumps(spec.to_json(), indent=1) + "\n", 0
    rows = []
    for i in range(cfg.samples + 1):
        t = Fraction(i, cfg.samples)
        rows.append((decimal_string(t), decimal_string(spec(t))))
    return _csv_text(("t", "psi"), rows), 0


def cmd_enum(cfg: RunConfig) -> tuple[str, int]:
    rows = index_table(cfg.depth - 1)
    if cfg.format == "json":
        keys = ("alpha", "paley_n", "natural_n", "chaos_order")
        return json.dumps([dict(zip(keys, r)) for r in rows], indent=1) + "\n", 0
    return _csv_text(("alpha", "paley_n", "natural_n", "chaos_order"), rows), 0


def cmd_chaos(cfg: RunConfig) -> tuple[str, int]:
    dec = decompose(cfg.m, cfg.max_index)
    lemma3 = verify_lemma3(cfg.m, cfg.max_index)
    rows = [
        (n, str(paley_multiindex(n)), chaos_order(n), c.numerator, c.denominator)
        for n, c in dec.coeffs.items()
        if c
    ]
    if cfg.format == "csv":
        text = _csv_text(("n", "alpha", "order_d", "coeff_num", "coeff_den"), rows)
        summary = [f"# partial_sq_norms[{d}] = {v}" for d, v in dec.partial_sq_norms.items()]
        summary += [
            f"# residual = {dec.residual}",
            f"# gamma = {gamma(cfg.m)}",
            f"# verify_lemma3 = {str(lemma3).lower()}",
        ]
        return text + "\n".join(summary) + "\n", 0
    doc = {
        "m": cfg.m,
        "max_index": cfg.max_index,
        "coefficients": [
            {"n": n, "alpha": a, "order_d": d, "coeff_num": str(p), "coeff_den": str(q)}
            for n, a, d, p, q in rows
        ],
        "summary": {
            "partial_sq_norms": {str(d): exact_json(v) for d, v in dec.partial_sq_norms.items()},
            "residual": exact_json(dec.residual),
            "gamma": exact_json(gamma(cfg.m)),
            "verify_lemma3": lemma3,
        },
    }
    return json.dumps(doc, indent=1) + "\n", 0


def cmd_riesz(cfg: RunConfig) -> tuple[str, int]:
    cert = riesz_bounds_estimate(cfg.m, cfg.depth, cfg.tol)
    if cfg.m >= 1:
        cert.deviation_norm_lsq = deviation_norm(cfg.m, cfg.depth, cfg.tol) ** 2
        cert.norm_sum_interval = norm_sum_certificate(cfg.m, cfg.max_index)
        cert.checks["deviation"] = cert.deviation_norm <= DEVIATION_BOUND
        cert.checks["norm_sum"] = cert.norm_sum_interval[1] < DEVIATION_BOUND
    doc = cert.to_json()
    doc.pop("checks")
    return json.dumps(doc, indent=1) + "\n", 0


def cmd_gram(cfg: RunConfig) -> tuple[str, int]:
    g = psi_gram(cfg.m, cfg.depth)
    rows = [[n] + [str(e) for e in row] for n, row in zip(g.n_range, g.entries)]
    return _csv_text(["n"] + [str(n) for n in g.n_range], rows), 0


def _report(args: tuple[int, int, int, float]) -> BoundsCertificate:
    return full_report(*args)


def verify_table(certs: Sequence[BoundsCertificate]) -> str:
    lines = [
        f"{'m':>2}  {'lambda_min':>10}  {'lambda_max':>10}  {'deviation':>9}  "
        f"{'norm_sum_hi':>11}  {'tail_hi':>8}  result"
    ]
    for c in certs:
        failed = [k for k, ok in c.checks.items() if not ok]
        status = "PASS" if c.passed else "FAIL (" + ", ".join(failed) + ")"
        lines.append(
            f"{c.m:>2}  {c.lambda_min:>10.6f}  {c.lambda_max:>10.6f}  {c.deviation_norm:>9.6f}  "
            f"{c.norm_sum_interval[1]:>11.6f}  {c.tail_upper:>8.6f}  {status}"
        )
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    jobs = [(m, cfg.depth, cfg.max_index, cfg.tol) for m in range(1, cfg.m + 1)]
    workers = min(worker_count(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(_report, jobs))
    else:
        certs = [_report(j) for j in jobs]
    ok = all(c.passed for c in certs)
    return verify_table(certs), 0 if ok else 1


COMMANDS = {
    "spline": cmd_spline,
    "enum": cmd_enum,
    "chaos": cmd_chaos,
    "riesz": cmd_riesz,
    "gram": cmd_gram,
    "verify": cmd_verify,
}


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    """Execute one validated subcommand; return the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    cfg.validate()
    try:
        text, status = COMMANDS[cfg.subcommand](cfg)
    except (ValueError, ArithmeticError, ConvergenceError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if cfg.out_path:
        write_atomic(cfg.out_path, text)
    else:
        stdout.write(text)
    return status


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spline-affine",
        description="Exact spline affine systems and finite-section Riesz bound checks.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser, *, m: bool = True) -> None:
        if m:
            p.add_argument("--m", type=int, default=1, help="spline order")
        p.add_argument("--out", dest="out_path", help="write output to this file atomically")

    p = sub.add_parser("spline", help="sample psi_m on an equispaced grid (CSV) or dump it (JSON)")
    common(p)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--json", dest="format", action="store_const", const="json", default="csv")

    p = sub.add_parser("enum", help="table of multi-indices and their enumerations")
    common(p, m=False)
    p.add_argument("--depth", type=int, default=6, help="list words of length < depth")
    p.add_argument("--json", dest="format", action="store_const", const="json", default="csv")

    p = sub.add_parser("chaos", help="Walsh coefficients of psi_m grouped by chaos order")
    common(p)
    p.add_argument("--max-index", type=int, default=4096)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    p.set_defaults(format="json")

    p = sub.add_parser("riesz", help="finite-section Riesz bound certificate (JSON)")
    common(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--max-index", type=int, default=4096)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--json", dest="format", action="store_const", const="json", default="json")

    p = sub.add_parser("gram", help="exact Gram matrix of the psi_m system as a+b*sqrt2 strings")
    common(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--csv", dest="format", action="store_const", const="csv", default="csv")

    p = sub.add_parser("verify", help="run every certificate for m = 1..M")
    common(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--max-index", type=int, default=4096)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(format="json")
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    fields = {k: v for k, v in vars(ns).items() if v is not None}
    cfg = RunConfig(**fields)
    try:
        cfg.validate()
    except ConfigError as exc:
        parser.error(str(exc))
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
