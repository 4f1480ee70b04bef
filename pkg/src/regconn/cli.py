"""Command-line interface.

Exit codes: 0 success, 1 property/soundness failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import bounds, suites
from .enumeration import family_graphs, family_rows, manifest_csv, write_family
from .errors import InapplicableError, ParseError, RegconnError
from .graph import random_regular_multigraph, read_mg, serialize_mg
from .spectral import adjacency_spectrum, laplacian_spectrum

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _f(x) -> str:
    return f"{x:.9f}"


def _int_range(text: str) -> list[int]:
    """``7`` or ``6..20`` (inclusive)."""
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
        return
    if not rows:
        return
    cols = list(rows[0])
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([r[c] for c in cols])
        return
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    out.write("  ".join(c.ljust(widths[c]) for c in cols).rstrip() + "\n")
    for r in rows:
        out.write("  ".join(str(r[c]).ljust(widths[c]) for c in cols).rstrip() + "\n")


# ---------------------------------------------------------------- commands

def cmd_spectrum(args, out) -> int:
    g = read_mg(args.file)
    if g.n < 2:
        raise InapplicableError("error: n < 2")
    adj, lap = adjacency_spectrum(g), laplacian_spectrum(g)
    lam2, m2 = adj.values[1], lap.ascending()[1]
    if args.format == "json":
        out.write(json.dumps({"adjacency": [float(_f(x)) for x in adj.values],
                              "laplacian": [float(_f(x)) for x in lap.ascending()],
                              "lambda2": float(_f(lam2)), "mu2": float(_f(m2))}, indent=2) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["kind"] + [f"x{i + 1}" for i in range(g.n)])
        w.writerow(["adjacency"] + [_f(x) for x in adj.values])
        w.writerow(["laplacian"] + [_f(x) for x in lap.ascending()])
    else:
        out.write("adjacency: " + " ".join(_f(x) for x in adj.values) + "\n")
        out.write("laplacian: " + " ".join(_f(x) for x in lap.ascending()) + "\n")
        out.write(f"lambda2 = {_f(lam2)}\n")
        out.write(f"mu2 = {_f(m2)}\n")
    return EXIT_OK


def cmd_certify(args, out) -> int:
    g = read_mg(args.file)
    if g.n < 2:
        raise InapplicableError("error: n < 2")
    cert = bounds.certify(g, t=args.t, tol=args.tol)
    if args.json:
        out.write(json.dumps(cert.to_dict(), indent=2, sort_keys=True) + "\n")
    else:
        out.write(f"n = {cert.n}  d = {cert.d}\n")
        out.write(f"lambda2 = {_f(cert.lambda2)}  mu2 = {_f(cert.mu2)}\n")
        out.write(f"kappa = {cert.kappa}  kappa' = {cert.kappa_prime}\n")
        rows = []
        for r in cert.results:
            tight = abs(r.value - r.threshold) <= args.tol
            rows.append({
                "rule": r.rule, "t": "-" if r.t is None else r.t, "class": r.graph_class,
                "test": f"{r.statistic} {r.comparison} {_f(r.threshold)}",
                "fired": "yes" if r.fired else ("tight" if tight else "no"),
                "guarantee": f"{r.conclusion} >= {r.guaranteed}", "exact": r.exact,
                "sound": "ok" if r.sound else "VIOLATED",
            })
        _emit_rows(rows, "table", out)
        for flag in cert.flags:
            out.write(f"note: {flag}\n")
        best = cert.best()
        for kind in ("kappa", "kappa_prime"):
            if kind in best:
                val, rule, t = best[kind]
                out.write(f"best guarantee: {kind} >= {val} ({rule}{'' if t is None else f', t={t}'})\n")
        if not cert.fired:
            out.write("no rule fired\n")
    if not cert.sound:
        sys.stderr.write("soundness violation: a fired guarantee exceeds the exact connectivity\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    rows = []
    cls = args.graph_class or bounds.RULES[args.rule].classes[-1]
    ns = _int_range(args.n) if args.n else [None]
    ts = _int_range(args.t) if args.t else [None]
    for d in _int_range(args.d):
        for n in ns:
            for t in ts:
                rule = bounds.BoundRule(args.rule, d, n, t, cls)
                row = {"rule": args.rule, "d": d, "n": "" if n is None else n, "t": "" if t is None else t}
                try:
                    row["threshold"] = _f(bounds.evaluate_bound(rule))
                except InapplicableError as exc:
                    row["threshold"] = f"inapplicable: {exc}"
                if args.rule == "thm42_rho" and n is not None and n > 3:
                    # weaker closed form that the cut-edge threshold improves on
                    row["d-1/3-1/(n-3)"] = _f(d - 1 / 3 - 1 / (n - 3))
                if args.compare:
                    try:
                        ocls = args.graph_class or bounds.RULES[args.compare].classes[-1]
                        other = bounds.BoundRule(args.compare, d, n, t if t is not None else 1, ocls)
                        row[args.compare] = _f(bounds.evaluate_bound(other))
                    except InapplicableError as exc:
                        row[args.compare] = f"inapplicable: {exc}"
                rows.append(row)
    _emit_rows(rows, args.format, out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    graphs = family_graphs(args.family)
    rows = family_rows(args.family, graphs)
    if args.out:
        path = write_family(rows, args.out)
        out.write(f"{args.family}: {len(rows)} graphs written, manifest {path}\n")
    else:
        out.write(manifest_csv(rows))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    name = args.suite
    randomized = name in ("thm-soundness", "interlacing", "oracle-equivalence")
    if randomized and args.seed is None:
        raise InapplicableError(f"suite {name} requires --seed")
    if name == "thm-soundness":
        res = suites.soundness_sweep(args.trials or 5000, args.seed)
    elif name == "interlacing":
        res = suites.interlacing_suite(args.trials or 1000, args.seed)
    elif name == "oracle-equivalence":
        res = suites.oracle_suite(args.trials or 500, args.seed)
    elif name == "case-checks":
        res = suites.case_suite()
    else:
        orders = tuple(int(x) for x in args.orders.split(",")) if args.orders else (10, 12, 14, 16, 18)
        res = suites.family_suite(orders, sample=args.sample, seed=args.seed or 0, tol=args.tol)
    for note in res.notes:
        out.write(note + "\n")
    status = "PASS" if res.passed else "FAIL"
    out.write(f"{res.name}: {status} ({res.checked} checked, {len(res.failures)} failures)\n")
    if not res.passed:
        out.write(res.failures[0] + "\n")
        if res.counterexample is not None:
            out.write(serialize_mg(res.counterexample))
        return EXIT_FAIL
    return EXIT_OK


def cmd_random(args, out) -> int:
    g = random_regular_multigraph(args.n, args.d, args.max_mult, args.seed)
    text = serialize_mg(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="regconn", description="Spectral connectivity certificates for regular multigraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", help="adjacency and Laplacian spectra of a .mg file")
    s.add_argument("file")
    s.add_argument("--format", choices=("table", "csv", "json"), default="table")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("certify", help="evaluate every bound on a .mg file")
    s.add_argument("file")
    s.add_argument("--t", type=int, default=None, help="evaluate a single t instead of 1..d-1")
    s.add_argument("--json", action="store_true")
    s.add_argument("--tol", type=float, default=1e-9, help="firing tolerance")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("bounds", help="threshold table for one rule")
    s.add_argument("--rule", required=True, choices=bounds.RULE_IDS)
    s.add_argument("--d", required=True, help="degree or range a..b")
    s.add_argument("--n", help="order or range a..b")
    s.add_argument("--t", help="t or range a..b")
    s.add_argument("--class", dest="graph_class", choices=("simple", "multigraph"),
                   help="graph class (default: the rule's own class)")
    s.add_argument("--compare", choices=bounds.RULE_IDS, help="add a column for a second rule")
    s.add_argument("--format", choices=("table", "csv", "json"), default="table")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("enumerate", help="enumerate a family (B5..B11, A10..A18, M<l>_<j>, S<l>_<j>)")
    s.add_argument("--family", required=True)
    s.add_argument("--out", help="directory for .mg files and manifest.csv")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", help="run a property suite")
    s.add_argument("--suite", required=True, choices=suites.SUITES)
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--sample", type=int, help="family-verify: sample this many join pairs per A18 recipe")
    s.add_argument("--tol", type=float, default=1e-9, help="family-verify eigenvalue tolerance")
    s.add_argument("--orders", help="family-verify: comma-separated subset of 10,12,14,16,18")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("random", help="sample a random regular multigraph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--max-mult", type=int, default=None)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_random)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "max_mult", "unset") is None:
        args.max_mult = args.d
    try:
        return args.func(args, out)
    except (ParseError, InapplicableError) as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (OSError, RegconnError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
