"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 input error,
3 promise violation.  Every ``--json`` document carries
``"schema": "extremal-diam/1"``.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ContractError, GraphInputError, OracleCapError
from .graph import Graph, eccentricity_oracle
from .io import format_edge_list, read_graph

SCHEMA = "extremal-diam/1"

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_PROMISE = 0, 1, 2, 3

_STATS = {"type": "object", "additionalProperties": True}
_PAIR = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "command", "input", "n", "m"],
    "properties": {
        "schema": {"const": SCHEMA},
        "command": {"type": "string"},
        "input": {"type": "string"},
        "n": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 0},
        "diameter": {"type": "integer", "minimum": 0},
        "radius": {"type": "integer", "minimum": 0},
        "certificate": _PAIR,
        "estimates": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "eccentricities": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "extremities": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "alpha": {"type": "integer", "minimum": 0},
        "alpha_exact": {"type": "boolean"},
        "stats": _STATS,
        "wall_time": {"type": "number", "minimum": 0},
        "promise_violated": {"type": "boolean"},
        "verification": {
            "type": "object",
            "required": ["ok"],
            "properties": {"ok": {"type": "boolean"}, "oracle": {}},
        },
    },
}

_SIDE = {
    "type": "object",
    "required": ["wall", "bfs", "work"],
    "properties": {
        "wall": {"type": "number", "minimum": 0},
        "bfs": {"type": "number", "minimum": 0},
        "work": {"type": "number", "minimum": 0},
    },
}

BENCH_SCHEMA = {
    "type": "object",
    "required": ["schema", "command", "family", "sizes", "seeds", "rows", "slopes"],
    "properties": {
        "schema": {"const": SCHEMA},
        "command": {"const": "bench"},
        "family": {"type": "string"},
        "sizes": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "seeds": {"type": "array", "items": {"type": "integer"}},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["size", "n", "m", "exact", "mismatches"],
                "properties": {
                    "size": {"type": "integer"},
                    "n": {"type": "number"},
                    "m": {"type": "number"},
                    "exact": _SIDE,
                    "oracle": _SIDE,
                    "mismatches": {"type": "integer", "minimum": 0},
                },
            },
        },
        "slopes": {"type": "object", "additionalProperties": {"type": ["number", "null"]}},
    },
}


class UsageError(GraphInputError):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _base(args, command: str, g: Graph) -> dict:
    return {"schema": SCHEMA, "command": command, "input": str(args.file), "n": g.n, "m": g.m}


def _load(args) -> Graph:
    return read_graph(args.file, args.format)


def cmd_diameter(args) -> int:
    from .diameter import exact_diameter

    g = _load(args)
    t0 = time.perf_counter()
    res = exact_diameter(g, alpha=args.alpha)
    wall = time.perf_counter() - t0
    out = _base(args, "diameter", g)
    out.update(diameter=res.value, certificate=list(res.certificate), stats=res.stats, wall_time=wall)
    text = f"diameter {res.value}"
    code = EXIT_OK
    if args.verify:
        truth = eccentricity_oracle(g).diameter if g.n else 0
        ok = truth == res.value and bool(res.verified)
        out["verification"] = {"ok": ok, "oracle": truth}
        if ok:
            text += " (verified)"
        else:
            text += f" (MISMATCH: oracle says {truth})"
            code = EXIT_MISMATCH
    if not args.json:
        text += f"\ncertificate {res.certificate[0]} {res.certificate[1]}"
    _emit(args, out, text)
    return code


def cmd_ecc_approx(args) -> int:
    from .diameter import approx_eccentricities

    g = _load(args)
    t0 = time.perf_counter()
    est = approx_eccentricities(g, alpha=args.alpha)
    wall = time.perf_counter() - t0
    out = _base(args, "ecc-approx", g)
    out.update(estimates=est, wall_time=wall)
    lines = [f"{v} {e}" for v, e in enumerate(est)]
    code = EXIT_OK
    if args.verify:
        ecc = eccentricity_oracle(g).ecc
        bad = [v for v in range(g.n) if not (ecc[v] - 1 <= est[v] <= ecc[v])]
        out["verification"] = {"ok": not bad, "oracle": ecc}
        lines.append("band verified" if not bad else f"BAND VIOLATED at {bad[:10]}")
        code = EXIT_OK if not bad else EXIT_MISMATCH
    _emit(args, out, "\n".join(lines))
    return code


def cmd_extremities(args) -> int:
    from .extremities import all_extremities_oracle

    g = _load(args)
    rep = all_extremities_oracle(g)
    out = _base(args, "extremities", g)
    out.update(extremities=rep.extremities, alpha=rep.alpha, alpha_exact=rep.alpha_exact)
    approx = "" if rep.alpha_exact else " (lower bound)"
    text = f"{rep.q} extremities, alpha={rep.alpha}{approx}\n" + " ".join(map(str, rep.extremities))
    _emit(args, out, text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load(args)
    t0 = time.perf_counter()
    tab = eccentricity_oracle(g)
    wall = time.perf_counter() - t0
    out = _base(args, "oracle", g)
    out.update(
        diameter=tab.diameter,
        radius=tab.radius,
        certificate=list(tab.pair),
        eccentricities=tab.ecc,
        wall_time=wall,
    )
    _emit(args, out, f"diameter {tab.diameter} radius {tab.radius}")
    return EXIT_OK


def _verify_into(args, g: Graph, res, out: dict, text: str) -> tuple[str, int]:
    if not args.verify:
        return text, EXIT_OK
    truth = eccentricity_oracle(g).diameter
    ok = truth == res.value
    out["verification"] = {"ok": ok, "oracle": truth}
    if ok:
        return text + " (verified)", EXIT_OK
    return text + f" (MISMATCH: oracle says {truth})", EXIT_MISMATCH


def cmd_chordal(args) -> int:
    from .chordal import diameter_chordal

    g = _load(args)
    res = diameter_chordal(g)
    out = _base(args, "chordal-diameter", g)
    out.update(
        diameter=res.value,
        certificate=list(res.certificate),
        stats=res.stats,
        promise_violated=res.promise_violated,
    )
    text = f"diameter {res.value}"
    text, code = _verify_into(args, g, res, out, text)
    if not args.json:
        text += f"\nbranch {res.stats.get('branch')}"
    _emit(args, out, text)
    return code


def cmd_domtarget(args) -> int:
    from .domtarget import diameter_dominating_target

    g = _load(args)
    res = diameter_dominating_target(g, args.k)
    out = _base(args, "domtarget-diameter", g)
    out.update(
        diameter=res.value,
        certificate=list(res.certificate),
        stats=res.stats,
        promise_violated=res.promise_violated,
    )
    text = f"diameter {res.value}"
    text, code = _verify_into(args, g, res, out, text)
    if res.promise_violated:
        text += f"\npromise violated: {res.stats.get('rounds')} rounds > k={args.k}"
        if code == EXIT_OK:
            code = EXIT_PROMISE
    _emit(args, out, text)
    return code


def cmd_gen(args) -> int:
    from .generators import GenSpec

    spec = GenSpec.parse(args.spec)
    g = spec.build()
    body = format_edge_list(g, comment=f"spec {spec}")
    if args.output:
        Path(args.output).write_text(body)
    else:
        sys.stdout.write(body)
    return EXIT_OK


# -- bench -------------------------------------------------------------------


def _parse_int_list(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty list {text!r}")
    return out


def worker_count() -> int:
    raw = os.environ.get("EXTREMAL_DIAM_THREADS", "0").strip() or "0"
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"EXTREMAL_DIAM_THREADS must be an integer, got {raw!r}") from None
    cpus = os.cpu_count() or 1
    return cpus if cap <= 0 else max(1, min(cap, cpus))


def bench_one(family: str, size: int, k: int, density: float, seed: int, oracle: bool = True) -> dict:
    """One (size, seed) measurement; plain data so it can cross process boundaries."""
    from .diameter import exact_diameter
    from .generators import GenSpec, largest_component

    g, _ = largest_component(GenSpec(family, size, k, density, seed).build())
    t0 = time.perf_counter()
    res = exact_diameter(g, verify_certificate=False)
    t1 = time.perf_counter()
    row = {
        "n": g.n,
        "m": g.m,
        "exact": {
            "wall": t1 - t0,
            "bfs": res.stats.get("bfs_runs", 0),
            "traversals": res.stats.get("traversals", 0),
            "work": res.stats.get("edges_scanned", 0),
        },
        "value": res.value,
    }
    if oracle:
        t0 = time.perf_counter()
        tab = eccentricity_oracle(g)
        t1 = time.perf_counter()
        # one BFS per vertex, each scanning every adjacency entry
        row["oracle"] = {"wall": t1 - t0, "bfs": g.n, "traversals": g.n, "work": g.n * 2 * g.m}
        row["oracle_value"] = tab.diameter
    return row


def fit_slope(xs: list[float], ys: list[float]) -> float | None:
    """Least-squares slope of ``log y`` against ``log x``."""
    pts = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len(pts) < 2 or len({p[0] for p in pts}) < 2:
        return None
    lx = np.log([p[0] for p in pts])
    ly = np.log([p[1] for p in pts])
    return float(np.polyfit(lx, ly, 1)[0])


def run_bench(
    family: str,
    sizes: list[int],
    seeds: list[int],
    k: int = 0,
    density: float = 0.0,
    oracle: bool = True,
    workers: int | None = None,
) -> dict:
    from .generators import FAMILIES

    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    tasks = [(family, s, k, density, seed, oracle) for s in sizes for seed in seeds]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(bench_one, *zip(*tasks)))
    else:
        results = [bench_one(*t) for t in tasks]
    rows = []
    for size in sizes:
        batch = [r for t, r in zip(tasks, results) if t[1] == size]
        row = {
            "size": size,
            "n": statistics.median(r["n"] for r in batch),
            "m": statistics.median(r["m"] for r in batch),
            "exact": {
                key: statistics.median(r["exact"][key] for r in batch)
                for key in ("wall", "bfs", "traversals", "work")
            },
            "mismatches": sum(1 for r in batch if oracle and r["value"] != r["oracle_value"]),
        }
        if oracle:
            row["oracle"] = {
                key: statistics.median(r["oracle"][key] for r in batch)
                for key in ("wall", "bfs", "traversals", "work")
            }
        rows.append(row)
    ns = [r["n"] for r in rows]
    slopes = {}
    sides = ("exact", "oracle") if oracle else ("exact",)
    for side in sides:
        for key in ("wall", "bfs", "traversals", "work"):
            slopes[f"{side}_{key}"] = fit_slope(ns, [r[side][key] for r in rows])
    return {
        "schema": SCHEMA,
        "command": "bench",
        "family": family,
        "k": k,
        "density": density,
        "sizes": sizes,
        "seeds": seeds,
        "rows": rows,
        "slopes": slopes,
    }


def cmd_bench(args) -> int:
    report = run_bench(
        args.family,
        _parse_int_list(args.sizes),
        _parse_int_list(args.seeds),
        k=args.k,
        density=args.density,
        oracle=not args.no_oracle,
    )
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        head = f"{'size':>6} {'n':>7} {'m':>8} {'exact s':>9} {'exact work':>12}"
        if not args.no_oracle:
            head += f" {'oracle s':>9} {'oracle work':>13}"
        lines = [head]
        for r in report["rows"]:
            line = f"{r['size']:>6} {r['n']:>7g} {r['m']:>8g} {r['exact']['wall']:>9.3f} {r['exact']['work']:>12g}"
            if "oracle" in r:
                line += f" {r['oracle']['wall']:>9.3f} {r['oracle']['work']:>13g}"
            lines.append(line)
        for key, val in report["slopes"].items():
            lines.append(f"slope {key} {'n/a' if val is None else f'{val:.3f}'}")
        print("\n".join(lines))
    bad = sum(r["mismatches"] for r in report["rows"])
    return EXIT_MISMATCH if bad else EXIT_OK


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extremal-diam", description="Diameter and eccentricities via extremities.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file")
        sp.add_argument("--format", choices=("auto", "edgelist", "dimacs"), default="auto")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        return sp

    for name, help_text in (("diameter", "exact diameter"), ("ecc-approx", "eccentricities within one")):
        sp = graph_cmd(name, help_text)
        mode = sp.add_mutually_exclusive_group()
        mode.add_argument("--alpha", type=int, help="bound on pairwise nonadjacent extremities")
        mode.add_argument("--oblivious", action="store_true", help="derive the cutoff from the graph (default)")
        sp.add_argument("--verify", action="store_true", help="compare against the all-pairs oracle")
    graph_cmd("extremities", "list extremities and alpha (brute force)")
    graph_cmd("oracle", "all eccentricities by one BFS per vertex")
    sp = graph_cmd("chordal-diameter", "diameter of a chordal graph")
    sp.add_argument("--verify", action="store_true")
    sp = graph_cmd("domtarget-diameter", "diameter with a small dominating target")
    sp.add_argument("--k", type=int, default=None, help="promised dominating-target size")
    sp.add_argument("--verify", action="store_true")

    sp = sub.add_parser("gen", help="write a generated graph as an edge list")
    sp.add_argument("spec", help="family:n:k:density:seed")
    sp.add_argument("-o", "--output")

    sp = sub.add_parser("bench", help="scaling measurements against the oracle")
    sp.add_argument("family")
    sp.add_argument("--sizes", required=True, help="comma list, e.g. 500,1000,2000")
    sp.add_argument("--seeds", default="0", help="comma list or range a..b")
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--density", type=float, default=0.0)
    sp.add_argument("--no-oracle", action="store_true")
    sp.add_argument("--json", action="store_true")
    return p


COMMANDS = {
    "diameter": cmd_diameter,
    "ecc-approx": cmd_ecc_approx,
    "extremities": cmd_extremities,
    "oracle": cmd_oracle,
    "chordal-diameter": cmd_chordal,
    "domtarget-diameter": cmd_domtarget,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (GraphInputError, OracleCapError, ContractError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
