"""``bidiagtrace`` command line tool.

Subcommands: ``trace``, ``diag``, ``bounds``, ``compare``, ``bench``, ``oracle``, ``gen``.
Exit status is 0 whenever the computation completes, numeric warnings
included; 1 on I/O, parse or validation failures; 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from .. import _backend, kyn11, oracle, unified, ykn12
from ..bounds import bound_report
from ..core import BidiagonalMatrix, load_matrix, parse_inline, relative_deviation, save_matrix
from ..engines import METHODS, overflow_reach, trace_table
from ..errors import BidiagError, ComplexityGuard, ParseError
from ..ykyy14 import MAX_ORDER
from .generators import draw, parse_distribution


class UsageError(Exception):
    pass


# -- formatting ---------------------------------------------------------------


def _cell(x, digits: int):
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.{digits}g}"
    return "" if x is None else str(x)


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, (np.floating,)):
        return _json_value(float(x))
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def render(report: dict, fmt: str, text_lines: list[str]) -> str:
    if fmt == "json":
        clean = {
            "config": report["config"],
            "results": [{k: _json_value(v) for k, v in row.items()} for row in report["results"]],
            "warnings": report["warnings"],
        }
        if "summary" in report:
            clean["summary"] = {k: _json_value(v) for k, v in report["summary"].items()}
        return json.dumps(clean, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        keys: list[str] = []
        for row in report["results"]:
            keys.extend(k for k in row if k not in keys)
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for row in report["results"]:
            writer.writerow([_cell(row.get(k), 17) for k in keys])
        return buf.getvalue()
    lines = list(text_lines)
    lines.extend(f"warning: {w}" for w in report["warnings"])
    return "\n".join(lines) + "\n"


def _table(header: list[str], rows: list[list]) -> list[str]:
    return [", ".join(header)] + [", ".join(_cell(c, 6) for c in row) for row in rows]


# -- input --------------------------------------------------------------------


def _matrix(args) -> BidiagonalMatrix:
    if args.inline is not None:
        return parse_inline(args.inline)
    if args.input is None:
        raise UsageError("give --input PATH or --inline 'q1,q2;e1'")
    return load_matrix(args.input)


def _methods(args, default) -> list[str]:
    methods = args.method or list(default)
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    # keep first occurrence order
    return list(dict.fromkeys(methods))


def _config(args, **extra) -> dict:
    cfg = {"command": args.command}
    for key in ("input", "inline", "max_order", "side", "z_direction", "seed", "budget"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    cfg.update(extra)
    return cfg


# -- commands -----------------------------------------------------------------


def cmd_trace(args):
    b = _matrix(args)
    methods = _methods(args, ["new"])
    report = {"config": _config(args, methods=methods, n=b.n), "results": [], "warnings": []}
    tables = {}
    for m in methods:
        tables[m] = trace_table(
            b, args.max_order, m, z_direction=args.z_direction, side=args.side, mark_overflow=True
        )
        for order, tag in sorted(tables[m].notes.items()):
            report["warnings"].append(f"{m} order {order}: {tag}")
    rows = []
    for order in range(1, args.max_order + 1):
        row = [order]
        for m in methods:
            value = tables[m][order]
            note = tables[m].notes.get(order)
            report["results"].append({"method": m, "order": order, "value": value, "warning": note})
            row.append(_cell(value, 6) + (f" ({note})" if note else ""))
        rows.append(row)
    return report, _table(["order"] + methods, rows)


def cmd_diag(args):
    b = _matrix(args)
    methods = _methods(args, ["ykn12"])
    order = args.max_order
    report = {"config": _config(args, methods=methods, n=b.n), "results": [], "warnings": []}
    lines = []
    for m in methods:
        if m == "kyn11":
            table = kyn11._tables(b, order, args.z_direction)
            if any(o >= 1 for o in table.nonpositive_orders()):
                report["warnings"].append("kyn11: nonpositive diagonal entries (cancellation)")
            v, w = table.v[order], table.w[order]
        elif m == "ykn12":
            if order == 1:
                v, w = kyn11.diag_first_order(b)
            else:
                table = ykn12.diag_powers_subfree(b, order)
                v, w = table.v[order], table.w[order]
        elif m == "oracle":
            v = np.diag(oracle.gram_inverse_power(b, "upper", order))
            w = np.diag(oracle.gram_inverse_power(b, "lower", order))
        else:
            raise UsageError(f"diag supports kyn11, ykn12 and oracle, not {m!r}")
        rows = []
        for i in range(b.n):
            report["results"].append(
                {"method": m, "order": order, "index": i + 1, "v": float(v[i]), "w": float(w[i])}
            )
            rows.append([i + 1, float(v[i]), float(w[i])])
        lines.append(f"# {m}, order {order}")
        lines.extend(_table(["i", "v", "w"], rows))
    return report, lines


def cmd_bounds(args):
    b = _matrix(args)
    methods = _methods(args, ["new", "oracle"])
    rep = bound_report(b, args.max_order, methods)
    report = {
        "config": _config(args, methods=methods, n=b.n),
        "results": [],
        "warnings": [f"{m}: {msg}" for m, msg in rep.failures.items()],
        "summary": {"sigma_min": rep.sigma_min},
    }
    cross = rep.cross_deviation() if len(rep.sequences) > 1 else np.zeros(args.max_order)
    names = list(rep.sequences)
    rows = []
    for order in range(1, args.max_order + 1):
        row = [order]
        for m in names:
            th = float(rep.sequences[m].thetas[order - 1])
            gap = (rep.sigma_min - th) / rep.sigma_min
            report["results"].append({"method": m, "order": order, "theta": th, "gap": gap})
            row.append(th)
        row.append(float(cross[order - 1]))
        rows.append(row)
    lines = [f"sigma_min = {rep.sigma_min:.6g}"]
    lines += _table(["order"] + names + ["max_deviation"], rows)
    return report, lines


def _path_residuals(b, order_max, budget):
    """Worst relative gap between both small tables and brute-force path sums."""
    top = min(order_max, 12)
    while top >= 2:
        if max(b.n - 1, 0) ** (top - 1) * b.n <= budget:
            break
        top -= 1
    if top < 2:
        return None, 0
    _, gt = ykn12.subfree_all(b, top)
    ut = unified.unified_tables(b, top, "tilde")
    up = unified.unified_tables(b, top, "plain")
    wmat = oracle.gram_inverse_power(b, "lower", 1)
    vmat = oracle.gram_inverse_power(b, "upper", 1)
    worst = 0.0
    for m in range(2, top + 1):
        for i in range(b.n):
            pt = oracle.path_sum_gtilde(b, i, m, budget=budget, gram=wmat)
            pg = oracle.path_sum_g(b, i, m, budget=budget, gram=vmat)
            worst = max(
                worst,
                relative_deviation(gt.g_tilde[m - 1, i], pt),
                relative_deviation(ut.small[m - 1, i], pt),
                relative_deviation(gt.g[m - 1, i], pg),
                relative_deviation(up.small[m - 1, i], pg),
            )
    return worst, top


def cmd_compare(args):
    b = _matrix(args)
    methods = _methods(args, METHODS)
    if len(methods) < 2:
        raise UsageError("compare needs at least two methods")
    report = {"config": _config(args, methods=methods, n=b.n), "results": [], "warnings": [], "summary": {}}
    tables = {}
    for m in methods:
        tables[m] = trace_table(b, args.max_order, m, z_direction=args.z_direction, mark_overflow=True)
        for order, tag in sorted(tables[m].notes.items()):
            report["warnings"].append(f"{m} order {order}: {tag}")
    rows = []
    overall = 0.0
    for order in range(1, args.max_order + 1):
        vals = [tables[m][order] for m in methods]
        dev = 0.0
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if math.isfinite(vals[i]) and math.isfinite(vals[j]):
                    dev = max(dev, relative_deviation(vals[i], vals[j]))
        overall = max(overall, dev)
        row = {"order": order}
        row.update({m: v for m, v in zip(methods, vals)})
        row["max_deviation"] = dev
        report["results"].append(row)
        rows.append([order] + vals + [dev])
    summary = report["summary"]
    summary["max_deviation"] = overall
    if args.max_order <= MAX_ORDER:
        try:
            tr = unified.verify_transforms(b, args.max_order)
            summary.update(
                transform_h=tr.h_vs_gtilde,
                transform_htilde=tr.htilde_vs_g,
                transform_H=tr.big_h_vs_big_gtilde,
                transform_Htilde=tr.big_htilde_vs_big_g,
            )
        except BidiagError as exc:
            report["warnings"].append(f"transform check skipped: {exc}")
    ids = unified.trace_identities_j2_j3(b)
    summary.update(j2_identity=ids.j2_deviation, j3_identity=ids.j3_deviation)
    try:
        worst, top = _path_residuals(b, args.max_order, args.budget)
    except ComplexityGuard as exc:
        worst, top = None, 0
        report["warnings"].append(f"path sums skipped: {exc}")
    if worst is not None:
        summary["path_sum_residual"] = worst
        summary["path_sum_max_order"] = top
    lines = _table(["order"] + methods + ["max_deviation"], rows)
    lines += [f"{k} = {_cell(v, 6)}" for k, v in summary.items()]
    return report, lines


_BENCH_RUNNERS = {
    "kyn11": lambda b, m: kyn11._tables(b, m, "forward"),
    "ykn12": lambda b, m: ykn12.subfree_all(b, m),
    "ykyy14": lambda b, m: trace_table(b, m, "ykyy14", mark_overflow=True),
    "new": lambda b, m: unified.unified_tables(b, m),
    "oracle": lambda b, m: oracle.gram_inverse_power(b, "upper", m),
}


def _int_list(text: str, name: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{name} must be a comma-separated list of integers") from None
    if not out:
        raise UsageError(f"{name} list is empty")
    if any(x < 1 for x in out):
        raise UsageError(f"{name} entries must be >= 1")
    return out


def cmd_bench(args):
    sizes = _int_list(args.n, "--n")
    orders = _int_list(args.orders, "--orders")
    methods = _methods(args, ["ykn12", "ykyy14", "new"])
    try:
        dist = parse_distribution(args.dist)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.kernels == "both":
        kernel_sets = _backend.available()
    else:
        kernel_sets = [args.kernels if args.kernels != "auto" else _backend.active()]
        if kernel_sets[0] not in _backend.available():
            raise UsageError(f"kernel set {kernel_sets[0]!r} is not available")
    report = {
        "config": _config(args, methods=methods, sizes=sizes, orders=orders, dist=str(dist),
                          repeat=args.repeat, kernels=kernel_sets),
        "results": [],
        "warnings": [],
    }
    rng = np.random.default_rng(args.seed)
    mats = {n: draw(dist, n, rng) for n in sizes}
    lines = ["kind, kernels, method, n, order, value"]
    for ks in kernel_sets:
        with _backend.use(ks):
            for n in sizes:
                for order in orders:
                    for m in methods:
                        best = math.inf
                        for _ in range(args.repeat):
                            t0 = time.perf_counter()
                            _BENCH_RUNNERS[m](mats[n], order)
                            best = min(best, time.perf_counter() - t0)
                        report["results"].append(
                            {"kind": "seconds", "kernels": ks, "method": m, "n": n, "order": order, "value": best}
                        )
                        lines.append(f"seconds, {ks}, {m}, {n}, {order}, {best:.6g}")
    for n in sizes:
        for m in ("ykyy14", "new"):
            if m in methods:
                r = overflow_reach(mats[n], m, args.reach_cap)
                report["results"].append(
                    {"kind": "reach", "kernels": _backend.active(), "method": m, "n": n, "order": None, "value": r}
                )
                lines.append(f"reach, {_backend.active()}, {m}, {n}, , {r}")
    return report, lines


def cmd_oracle(args):
    b = _matrix(args)
    report = {"config": _config(args, n=b.n), "results": [], "warnings": [], "summary": {}}
    sigma = oracle.sigma_min_oracle(b)
    report["summary"]["sigma_min"] = sigma
    rows = []
    for order in range(1, args.max_order + 1):
        up = oracle.trace_oracle(b, order, "upper")
        lo = oracle.trace_oracle(b, order, "lower")
        report["results"].append({"order": order, "trace_upper": up, "trace_lower": lo})
        rows.append([order, up, lo])
    lines = [f"sigma_min = {sigma:.6g}"] + _table(["order", "trace_upper", "trace_lower"], rows)
    if args.path_sums:
        wmat = oracle.gram_inverse_power(b, "lower", 1)
        vmat = oracle.gram_inverse_power(b, "upper", 1)
        lines.append("order, i, path_sum_gtilde, path_sum_g")
        for order in range(2, args.max_order + 1):
            for i in range(b.n):
                try:
                    pt = oracle.path_sum_gtilde(b, i, order, budget=args.budget, gram=wmat)
                    pg = oracle.path_sum_g(b, i, order, budget=args.budget, gram=vmat)
                except ComplexityGuard as exc:
                    report["warnings"].append(f"path sums stopped at order {order}: {exc}")
                    break
                report["results"].append(
                    {"order": order, "index": i + 1, "path_sum_gtilde": pt, "path_sum_g": pg}
                )
                lines.append(f"{order}, {i + 1}, {pt:.6g}, {pg:.6g}")
            else:
                continue
            break
    return report, lines


def cmd_gen(args):
    try:
        dist = parse_distribution(args.dist)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    rng = np.random.default_rng(args.seed)
    mats = [draw(dist, args.n, rng) for _ in range(args.count)]
    comment = f"gen n={args.n} dist={dist} seed={args.seed}"
    if args.count == 1:
        if args.output:
            save_matrix(mats[0], args.output, comment)
            return None
        from ..core import format_matrix_text

        sys.stdout.write(format_matrix_text(mats[0], comment))
        return None
    if not args.output:
        raise UsageError("--count > 1 needs --output DIR")
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for k, b in enumerate(mats):
        save_matrix(b, out / f"matrix_{k:04d}.txt", f"{comment} index={k}")
    return None


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="matrix file in the three-line text format")
    common.add_argument("--inline", help="matrix as 'q1,q2,...;e1,...'")
    common.add_argument("--method", action="append", help="engine (repeatable): " + ", ".join(METHODS))
    common.add_argument("--max-order", type=int, default=4, help="largest power M (default 4)")
    common.add_argument("--side", choices=("upper", "lower"), default="upper")
    common.add_argument("--z-direction", choices=("forward", "backward"), default="forward")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET, help="path-sum term budget")

    parser = argparse.ArgumentParser(prog="bidiagtrace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("trace", parents=[common], help="traces J_1..J_M")
    sub.add_parser("diag", parents=[common], help="diagonals of the Gram inverse powers")
    sub.add_parser("bounds", parents=[common], help="lower bounds of the minimal singular value")
    sub.add_parser("compare", parents=[common], help="cross-check engines and identities")
    p = sub.add_parser("oracle", parents=[common], help="dense reference values")
    p.add_argument("--path-sums", action="store_true", help="also enumerate the path sums")
    p = sub.add_parser("bench", parents=[common], help="timings and overflow reach")
    p.add_argument("--n", default="100,1000", help="comma-separated matrix orders")
    p.add_argument("--orders", default="8", help="comma-separated powers M")
    p.add_argument("--dist", default="uniform:0.5:2")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--kernels", choices=("auto", "python", "compiled", "both"), default="auto")
    p.add_argument("--reach-cap", type=int, default=4000)
    p = sub.add_parser("gen", parents=[common], help="write random matrices")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--dist", default="uniform:0.5:2")
    p.add_argument("--count", type=int, default=1)
    return parser


COMMANDS = {
    "trace": cmd_trace,
    "diag": cmd_diag,
    "bounds": cmd_bounds,
    "compare": cmd_compare,
    "bench": cmd_bench,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_order", 1) < 1:
        parser.error("--max-order must be >= 1")
    try:
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 1
    except (ParseError, BidiagError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if result is None:
        return 0
    report, lines = result
    text = render(report, args.format, lines)
    if args.command != "gen" and args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
