"""Command-line front end.

Every report is a JSON object holding the library version, the request that
produced it and the result.  JSON output is serialized with sorted keys and
no timestamps, so identical requests give byte-identical reports.

Exit codes: 0 ok, 1 verification failure, 2 infeasible size,
3 precondition violation, 4 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .asymptotics import mc_class_sample
from .blocks import NotInYoungSubgroupError, ShortCycleError, run_colored_descents
from .cache import DistributionCache
from .conjugacy import (
    RPartition,
    centralizer_order,
    class_size,
    enumerate_class,
    r_partitions,
    representative,
)
from .enumeration import DEFAULT_CAP, Domain, InfeasibleError
from .moments import (
    FormulaNotApplicableError,
    closed_form_moment,
    gf_distribution,
    moment_generating_function,
)
from .perm import (
    MalformedCyclesError,
    ParameterError,
    format_cycles,
    format_one_line,
    order_by_name,
    parse_cycles,
    permutation_from_cycles,
    parse_element,
    to_cycles,
)
from .stats import Statistic
from . import verify as suites

EXIT_OK, EXIT_FAIL, EXIT_INFEASIBLE, EXIT_PRECONDITION, EXIT_BAD_INPUT = 0, 1, 2, 3, 4

log = logging.getLogger("colperm")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ParameterError(f"bad integer list {text!r}") from None


def _domain(args) -> Domain:
    if getattr(args, "cls", None):
        lam = RPartition.parse(args.cls, r=args.r)
        if lam.n != args.n:
            raise ParameterError(f"class {lam} is a class of S_({lam.n},{lam.r}), not n={args.n}")
        return Domain.conj_class(lam)
    if getattr(args, "orbit", None):
        colors = _int_list(args.orbit)
        if len(colors) != args.n:
            raise ParameterError(f"orbit needs {args.n} colors")
        return Domain.orbit(colors, args.r)
    return Domain.group(args.n, args.r)


def _stat(text: str, n: int, r: int) -> Statistic:
    s = Statistic.parse(text)
    s.check(n, r)
    return s


def _check_nr(args) -> None:
    if args.n < 1 or args.r < 1:
        raise ParameterError("need n >= 1 and r >= 1")


# --------------------------------------------------------------------------
# subcommands; each returns (result dict, exit code, csv rows or None, text lines)


def cmd_dist(args):
    _check_nr(args)
    stat = _stat(args.stat, args.n, args.r)
    domain = _domain(args)
    order = order_by_name(args.order)
    key = {"stat": str(stat), "domain": domain.to_json(), "order": order.kind.value}
    cache = None if args.no_cache else DistributionCache.from_env()
    poly = cache.get(key) if cache else None
    source = "cache" if poly is not None else "enumeration"
    if poly is None:
        poly = gf_distribution(stat, domain, order=order, jobs=args.jobs, cap=args.cap)
        if cache:
            cache.put(key, poly)
    coeffs = list(poly.coeffs)
    total = sum(coeffs)
    result = {
        "domain": domain.to_json(),
        "coefficients": coeffs,
        "size": total,
        "mean": _frac(moment_generating_function(poly, 1)),
        "source": source,
    }
    rows = [("value", "count")] + [(d, a) for d, a in enumerate(coeffs)]
    if args.plot_data:
        _write_columns(args.plot_data, [(d, a, _float(a, total)) for d, a in enumerate(coeffs)],
                       "# value count probability")
    if args.plot:
        from .plotting import plot_distribution

        plot_distribution(coeffs, args.plot, f"{stat} on {domain.describe()}")
    text = [f"{stat} on {domain.describe()}: {coeffs}"]
    return result, EXIT_OK, rows, text


def _float(a: int, total: int) -> str:
    return repr(a / total) if total else "0.0"


def cmd_moments(args):
    _check_nr(args)
    stat = _stat(args.stat, args.n, args.r)
    domain = _domain(args)
    if args.k < 0:
        raise ParameterError("k must be >= 0")
    result: dict = {"domain": domain.to_json(), "k": args.k}
    if args.method in ("enumerate", "both"):
        poly = gf_distribution(stat, domain, order=order_by_name(args.order), jobs=args.jobs, cap=args.cap)
        result["enumerated"] = _frac(moment_generating_function(poly, args.k))
    if args.method in ("closed", "both"):
        if args.order != "descent":
            raise ParameterError("closed forms are for the descent order")
        if domain.kind == "orbit":
            raise ParameterError("closed forms cover the group and its classes")
        result["closed_form"] = _frac(closed_form_moment(stat.name if not stat.params else str(stat),
                                                         args.n, args.r, args.k, domain.cycle_type))
    code = EXIT_OK
    if args.method == "both":
        result["agree"] = result["enumerated"] == result["closed_form"]
        code = EXIT_OK if result["agree"] else EXIT_FAIL
    rows = [("method", "value")] + [(m, result[m]) for m in ("enumerated", "closed_form") if m in result]
    text = [f"E[{stat}^{args.k}] on {domain.describe()}: "
            + ", ".join(f"{m}={result[m]}" for m in ("enumerated", "closed_form") if m in result)]
    return result, code, rows, text


def cmd_verify(args):
    t = args.target
    pairs = [(n, r) for n in range(1, args.n_max + 1) for r in range(1, args.r_max + 1)]
    if t == "eq1":
        rep = suites.suite_eq1(pairs, D=args.D, jobs=args.jobs)
    elif t == "eq2":
        rep = suites.suite_eq2(pairs, jobs=args.jobs)
    elif t == "theorem1":
        rep = suites.suite_theorem1(_need(args, "n"), _need(args, "r"), args.k, jobs=args.jobs)
    elif t == "lemmas":
        rep = suites.suite_lemmas(args.n_max, args.r_max, max(args.k))
    elif t == "degree":
        rep = suites.suite_degree(args.n_max, args.r_max)
    elif t == "orbits":
        rep = suites.suite_orbits(_need(args, "n"), _need(args, "r"), max(args.k))
    else:
        rep = suites.suite_satisfies(_need(args, "n"), _need(args, "r"), args.m)
    result = rep.to_json()
    rows = [("index", "ok", "instance")] + [
        (i, inst["ok"], json.dumps({k: v for k, v in inst.items() if k != "ok"}, sort_keys=True))
        for i, inst in enumerate(rep.instances)]
    text = [f"{t}: {'PASS' if rep.ok else 'FAIL'} ({len(rep.instances)} checked, "
            f"{len(rep.failures)} failed, {len(rep.skipped)} skipped)"]
    text += [f"  failed: {json.dumps(f, sort_keys=True)}" for f in rep.failures]
    return result, EXIT_OK if rep.ok else EXIT_FAIL, rows, text


def _need(args, name: str) -> int:
    v = getattr(args, name)
    if v is None:
        raise ParameterError(f"verify {args.target} needs --{name}")
    return v


def cmd_canonicalize(args):
    text = args.element.strip()
    if text.startswith("("):
        cycles = parse_cycles(text)
        n = sum(len(c) for c in cycles)
        x = permutation_from_cycles(cycles, n, args.r)
    else:
        x = parse_element(text, args.r)
        cycles = to_cycles(x).cycles
    if args.n is not None and args.n != x.n:
        raise ParameterError(f"element has {x.n} letters, expected n={args.n}")
    indices = _int_list(args.indices)
    order = order_by_name(args.order)
    if not indices:
        out, trace, out_cycles = x, [format_cycles(cycles)], cycles
    else:
        run = run_colored_descents(x, indices, order, cycles)
        out, trace, out_cycles = run.result, run.trace_lines(), run.cycles
    result = {
        "input": format_cycles(cycles),
        "indices": sorted(set(indices)),
        "result": format_cycles(out_cycles),
        "canonical": format_cycles(to_cycles(out).cycles),
        "one_line": format_one_line(out),
    }
    if args.trace:
        result["trace"] = trace
    text = trace if args.trace else [result["result"]]
    rows = [("step", "cycles")] + list(enumerate(trace if args.trace else [result["result"]]))
    return result, EXIT_OK, rows, text


def cmd_sample(args):
    _check_nr(args)
    lam = RPartition.parse(args.cls, r=args.r)
    if lam.n != args.n:
        raise ParameterError(f"class {lam} has n={lam.n}, not {args.n}")
    if args.N < 1:
        raise ParameterError("N must be >= 1")
    _stat(args.stat, args.n, args.r)
    summary = mc_class_sample(args.stat, lam, args.N, args.seed)
    hist = summary.histogram()
    result = summary.to_json()
    result["histogram"] = [[v, c] for v, c in hist]
    rows = [("bin", "count")] + hist
    if args.csv_out:
        _write_csv(args.csv_out, rows)
    if args.plot_data:
        mu = float(Fraction(summary.mu))
        sd = float(Fraction(summary.sigma_sq)) ** 0.5
        cum = 0
        cols = []
        for v, c in hist:
            cum += c
            cols.append((v, repr((v - mu) / sd), c, repr(cum / args.N)))
        _write_columns(args.plot_data, cols, "# value standardized count cdf")
    if args.plot:
        from .plotting import plot_standardized_histogram

        plot_standardized_histogram(summary, args.plot)
    text = [f"{args.stat} on class {lam} (N={args.N}, seed={args.seed}): "
            f"mean={summary.mean:.6g} (mu={summary.mu}), variance={summary.variance:.6g} "
            f"(sigma^2={summary.sigma_sq}), KS={summary.ks_distance:.4g} (raw {summary.ks_raw:.4g})",
            summary.note]
    return result, EXIT_OK, rows, text


def cmd_class(args):
    _check_nr(args)
    if args.cls:
        lam = RPartition.parse(args.cls, r=args.r)
        if lam.n != args.n:
            raise ParameterError(f"class {lam} has n={lam.n}, not {args.n}")
        result = {
            "class": str(lam),
            "cycle_type": lam.to_json(),
            "size": class_size(lam),
            "centralizer": centralizer_order(lam),
            "representative": format_cycles(to_cycles(representative(lam)).cycles),
        }
        if args.list:
            dom = Domain.conj_class(lam)
            if dom.work() > args.cap:
                raise InfeasibleError(f"listing {dom.describe()} exceeds the cap {args.cap}")
            result["elements"] = [format_cycles(to_cycles(x).cycles) for x in enumerate_class(lam)]
        rows = [("class", "size")] + [(str(lam), result["size"])]
        text = [f"{lam}: size {result['size']}, centralizer {result['centralizer']}, "
                f"representative {result['representative']}"] + result.get("elements", [])
        return result, EXIT_OK, rows, text
    classes = [{"class": str(lam), "cycle_type": lam.to_json(), "size": class_size(lam)}
               for lam in r_partitions(args.n, args.r)]
    result = {"n": args.n, "r": args.r, "count": len(classes), "classes": classes}
    rows = [("class", "size")] + [(c["class"], c["size"]) for c in classes]
    text = [f"{c['class']}\t{c['size']}" for c in classes]
    return result, EXIT_OK, rows, text


# --------------------------------------------------------------------------
# output


def _write_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)


def _write_columns(path, rows, header: str) -> None:
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(" ".join(map(str, row)) + "\n")


def _request(args) -> dict:
    skip = {"func", "format", "output", "verbose"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def render(report: dict, rows, text, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows or [])
        return buf.getvalue()
    return "\n".join(text) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest enumeration allowed")
    common.add_argument("--verbose", "-v", action="store_true")

    p = _Parser(prog="colperm", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"colperm {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def nr(q, required=True):
        q.add_argument("--n", type=int, required=required)
        q.add_argument("--r", type=int, required=required)

    q = sub.add_parser("dist", parents=[common], help="exact distribution as polynomial coefficients")
    q.add_argument("--stat", required=True)
    nr(q)
    q.add_argument("--class", dest="cls", help='restrict to a class, e.g. "0:[5]"')
    q.add_argument("--orbit", help="restrict to the color orbit with these colors")
    q.add_argument("--order", default="descent", choices=("descent", "adin-roichman"))
    q.add_argument("--no-cache", action="store_true")
    q.add_argument("--plot-data", help="write gnuplot-ready columns here")
    q.add_argument("--plot", help="write a PNG bar chart here")
    q.set_defaults(func=cmd_dist)

    q = sub.add_parser("moments", parents=[common], help="exact k-th moment")
    q.add_argument("--stat", required=True)
    nr(q)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--class", dest="cls")
    q.add_argument("--orbit")
    q.add_argument("--order", default="descent", choices=("descent", "adin-roichman"))
    q.add_argument("--method", default="enumerate", choices=("enumerate", "closed", "both"))
    q.set_defaults(func=cmd_moments)

    q = sub.add_parser("verify", parents=[common], help="run a verification suite")
    q.add_argument("target", choices=("eq1", "eq2", "theorem1", "lemmas", "degree", "orbits", "satisfies"))
    nr(q, required=False)
    q.add_argument("--n-max", type=int, default=4)
    q.add_argument("--r-max", type=int, default=3)
    q.add_argument("--k", type=int, nargs="+", default=[1])
    q.add_argument("--m", type=int, default=2, help="largest partial permutation size (satisfies)")
    q.add_argument("--D", type=int, default=30, help="series degree (eq1)")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("canonicalize", parents=[common], help="run ColoredDescents on an element")
    q.add_argument("element", help='cycle notation "(1^0 3^1 ...)" (rotation kept) or one-line')
    q.add_argument("--indices", default="", help="comma separated descent positions")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--n", type=int)
    q.add_argument("--order", default="descent", choices=("descent", "adin-roichman"))
    q.add_argument("--trace", action="store_true", help="print the cycles after every step")
    q.set_defaults(func=cmd_canonicalize)

    q = sub.add_parser("sample", parents=[common], help="Monte Carlo sample on a class")
    q.add_argument("--stat", required=True, choices=("des", "maj", "fmaj"))
    q.add_argument("--class", dest="cls", required=True)
    nr(q)
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--csv-out", help="write the (bin, count) histogram here")
    q.add_argument("--plot-data", help="write gnuplot-ready columns here")
    q.add_argument("--plot", help="write a PNG histogram here")
    q.set_defaults(func=cmd_sample)

    q = sub.add_parser("class", parents=[common], help="class sizes, or one class and its elements")
    nr(q)
    q.add_argument("--class", dest="cls")
    q.add_argument("--list", action="store_true", help="list the elements of --class")
    q.set_defaults(func=cmd_class)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"colperm: error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        result, code, rows, text = args.func(args)
    except InfeasibleError as e:
        print(f"colperm: infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ShortCycleError, FormulaNotApplicableError, NotInYoungSubgroupError) as e:
        print(f"colperm: precondition violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ParameterError, MalformedCyclesError, ValueError) as e:
        print(f"colperm: bad input: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    report = {"version": __version__, "command": args.command, "request": _request(args),
              "result": result, "ok": code == EXIT_OK}
    out = render(report, rows, text, args.format)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
