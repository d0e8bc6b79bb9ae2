"""Command line front end.

Exit codes: 0 success, 2 usage or input error, 3 transform kind incompatible
with the requested node set.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import statistics
import sys
import time

import numpy as np

from . import complexity, error_bounds
from .beams import beam_responses
from .core import make_spec, spec_from_delay
from .exceptions import NotRealizable, SpecMismatch, VandermondeError
from .sfg import build_sfg, export_dot, to_json
from .transform import TransformKind, check_compatible, direct_matvec, transform

log = logging.getLogger("vanradix")

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 2, 3
KINDS = [k.value for k in TransformKind]


class UsageError(Exception):
    pass


def read_complex_csv(path) -> np.ndarray:
    """One complex value per line as ``re,im`` (or a bare real); an optional header line."""
    handle = sys.stdin if path in (None, "-") else open(path, newline="")
    values = []
    with handle:
        for lineno, row in enumerate(csv.reader(handle), start=1):
            if not row or not "".join(row).strip():
                continue
            try:
                parts = [float(cell) for cell in row]
            except ValueError:
                if lineno == 1 and not values:
                    continue  # header
                raise UsageError(f"line {lineno}: cannot parse {row!r}") from None
            if len(parts) not in (1, 2):
                raise UsageError(f"line {lineno}: expected 're,im', got {len(parts)} fields")
            values.append(complex(parts[0], parts[1] if len(parts) == 2 else 0.0))
    if not values:
        raise UsageError("input contains no values")
    return np.array(values)


def format_complex_csv(y) -> str:
    return "".join(f"{v.real!r},{v.imag!r}\n" for v in map(complex, y))


def _emit(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _table_text(headers, rows, fmt: str) -> str:
    if fmt == "markdown":
        lines = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
        lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def _spec_from_args(args, kind: TransformKind):
    if args.freq is not None or args.tau is not None:
        if args.freq is None or args.tau is None:
            raise UsageError("--freq and --tau must be given together")
        spec = spec_from_delay(args.n, args.freq, args.tau, args.radius)
    else:
        direction = args.direction or kind.direction.value
        spec = make_spec(args.n, args.theta, args.radius, direction)
    check_compatible(kind, spec)
    return spec


def cmd_transform(args) -> int:
    kind = TransformKind.parse(args.kind)
    spec = _spec_from_args(args, kind)
    z = read_complex_csv(args.input)
    if len(z) != spec.n:
        raise UsageError(f"input has {len(z)} values, expected {spec.n}")
    y = direct_matvec(z, spec) if args.direct else transform(kind, z, spec)
    _emit(format_complex_csv(y), args.output)
    return EXIT_OK


def _sizes_up_to(n_max: int):
    if n_max < 4 or n_max & (n_max - 1):
        raise UsageError(f"--n must be a power of two >= 4, got {n_max}")
    return [2**t for t in range(2, n_max.bit_length())]


def _bounds_rows(sizes, model):
    for n in sizes:
        yield (n, error_bounds.radix2_bound(n, model, error_bounds.Sign.PLUS),
               error_bounds.fft_bound(n, model), error_bounds.direct_bound(n, model))


def cmd_tables(args) -> int:
    if args.table == 4:
        model = error_bounds.ErrorModel.uniform(args.u, args.mu)
        rows = [(n, f"{r:.1e}", f"{f:.1e}") for n, r, f, _ in _bounds_rows(complexity.TABLE_SIZES, model)]
        headers = ("N", "radix2_bound", "fft_bound")
    else:
        rows = complexity.count_table(args.table)
        headers = complexity.TABLE_HEADERS[args.table]
    _emit(_table_text(headers, rows, args.format), args.output)
    return EXIT_OK


def cmd_errors(args) -> int:
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    kind = TransformKind.parse(args.kind)
    model = error_bounds.ErrorModel.uniform(args.u, args.mu)
    rows = []
    for n, r2, fft, direct in _bounds_rows(_sizes_up_to(args.n), model):
        spec = make_spec(n, args.theta, 1.0, kind.direction)
        measured = error_bounds.measure_forward_error(kind, spec, args.trials, args.seed)
        rows.append((n, f"{r2:.6e}", f"{fft:.6e}", f"{direct:.6e}",
                     f"{measured.max_rel_error:.6e}", f"{measured.mean_rel_error:.6e}"))
    headers = ("N", "radix2_bound", "fft_bound", "direct_bound", "measured_max", "measured_mean")
    _emit(_table_text(headers, rows, args.format), args.output)
    return EXIT_OK


def cmd_beams(args) -> int:
    if args.grid < 2:
        raise UsageError(f"--grid must be >= 2, got {args.grid}")
    if args.freq is None or args.tau is None:
        raise UsageError("beams needs --freq and --tau")
    rows = []
    for beam in beam_responses(args.n, args.freq, args.tau, args.grid):
        for w, h, db in zip(beam.omega_x_grid, beam.response, beam.magnitude_db):
            rows.append((beam.k, repr(float(w)), repr(float(h.real)), repr(float(h.imag)), repr(float(db))))
    _emit(_table_text(("k", "omega_x", "re", "im", "magnitude_db"), rows, "csv"), args.output)
    return EXIT_OK


def _median_time(fn, repeats: int, warmup: int) -> float:
    for _ in range(warmup):
        fn()
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def bench_sizes(text: str):
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad size list {text!r}") from None
    if not sizes:
        raise UsageError("empty size list")
    return sizes


def run_bench(sizes, repeats=5, warmup=1, seed=0, theta=0.3):
    """``(n, fast_median_s, direct_median_s)`` for the clockwise kernel at each size."""
    rows = []
    for n in sizes:
        spec = make_spec(n, theta, 1.0, "cw")
        z = error_bounds.random_inputs(n, 1, seed)[0]
        fast = _median_time(lambda: transform(TransformKind.VANC, z, spec), repeats, warmup)
        direct = _median_time(lambda: direct_matvec(z, spec), repeats, warmup)
        rows.append((n, fast, direct))
    return rows


def cmd_bench(args) -> int:
    if args.repeats < 1:
        raise UsageError("--repeats must be >= 1")
    rows = run_bench(bench_sizes(args.n), args.repeats, args.warmup, args.seed, args.theta)
    text = _table_text(("N", "fast_median_s", "direct_median_s", "speedup"),
                       [(n, f"{f:.3e}", f"{d:.3e}", f"{d / f:.2f}") for n, f, d in rows], "csv")
    _emit(text, args.output)
    return EXIT_OK


def cmd_sfg(args) -> int:
    kind = TransformKind.parse(args.kind)
    spec = _spec_from_args(args, kind)
    graph = build_sfg(kind, spec)
    _emit(to_json(graph) if args.format == "json" else export_dot(graph), args.output)
    return EXIT_OK


def _add_spec_flags(p, n_required=True):
    p.add_argument("--n", type=int, required=n_required, help="matrix size, a power of two")
    p.add_argument("--theta", type=float, default=0.0, help="rotation of the first node (radians)")
    p.add_argument("--freq", type=float, help="temporal frequency in Hz (with --tau)")
    p.add_argument("--tau", type=float, help="delay in seconds (with --freq)")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--direction", choices=["cw", "ccw"],
                   help="node direction; defaults to the one the kernel needs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vanradix",
        description="Fast products with Vandermonde matrices on equally spaced circular nodes.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="apply a kernel to a CSV vector")
    p.add_argument("--kind", choices=KINDS, required=True)
    _add_spec_flags(p)
    p.add_argument("--input", default="-")
    p.add_argument("--output", default="-")
    p.add_argument("--direct", action="store_true", help="use the O(N^2) oracle")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("tables", help="GDB count tables (1-3) or error bound table (4)")
    p.add_argument("--table", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.add_argument("--u", type=float, default=1e-15)
    p.add_argument("--mu", type=float, default=1e-15)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("errors", help="error bounds and measured forward errors")
    p.add_argument("--kind", choices=KINDS[:2], default="vanc")
    p.add_argument("--n", type=int, default=1024, help="largest size")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--u", type=float, default=1e-15)
    p.add_argument("--mu", type=float, default=1e-15)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_errors)

    p = sub.add_parser("beams", help="true-time-delay beam responses via the fast kernel")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--freq", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--grid", type=int, default=181)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_beams)

    p = sub.add_parser("bench", help="wall time of fast vs direct products")
    p.add_argument("--n", default=",".join(str(2**t) for t in range(1, 13)),
                   help="comma separated sizes")
    p.add_argument("--theta", type=float, default=0.3)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--warmup", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sfg", help="export the signal flow graph of vanc/vancr")
    p.add_argument("--kind", choices=KINDS, required=True)
    _add_spec_flags(p)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_sfg)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (SpecMismatch, NotRealizable) as exc:
        log.error("%s", exc)
        return EXIT_MISMATCH
    except (UsageError, VandermondeError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
