"""Command-line frontend.

Instance files are whitespace-separated text::

    # comment lines start with '#'
    m n
    <m rows of n integers: A>
    <m integers: b>
    <n integers: c>
    delta D          (optional; default max(2, max |A_ij|))
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from .candidates import enumerate_candidates
from .core import Instance, InstanceError, Metrics, SolveStatus, Status, gamma_bound
from .generate import FAMILIES, random_instance
from .oracles import CapExceeded, PreconditionError, brute_force_lexmin, dp_solve_nonneg, l1_cap, oracle_solve
from .pipeline import solve

EXIT_CODES = {Status.OPTIMAL: 0, Status.INFEASIBLE: 2, Status.UNBOUNDED: 3}


class ParseError(ValueError):
    pass


def _ints(tokens, lineno, what):
    out = []
    for col, tok in tokens:
        try:
            out.append(int(tok, 10))
        except ValueError:
            raise ParseError(f"line {lineno}, column {col}: {what}: invalid integer {tok!r}") from None
    return out


def _tokenize(line: str):
    """(column, token) pairs with 1-based columns."""
    out, i = [], 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((i + 1, line[i:j]))
        i = j
    return out


def parse_text(text: str) -> Instance:
    lines = [(no, _tokenize(raw)) for no, raw in enumerate(text.splitlines(), 1)
             if raw.strip() and not raw.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty instance file")
    it = iter(lines)

    def take(what):
        try:
            return next(it)
        except StopIteration:
            raise ParseError(f"unexpected end of file: missing {what}") from None

    no, toks = take("header")
    header = _ints(toks, no, "header")
    if len(header) != 2:
        raise ParseError(f"line {no}: header: expected 'm n', found {len(header)} entries")
    m, n = header
    if m < 1 or n < 1:
        raise ParseError(f"line {no}: header: m and n must be positive")
    A = []
    for i in range(1, m + 1):
        no, toks = take(f"row {i}")
        row = _ints(toks, no, f"row {i}")
        if len(row) != n:
            raise ParseError(f"line {no}: row {i}: expected {n} entries, found {len(row)}")
        A.append(row)
    no, toks = take("b")
    b = _ints(toks, no, "b")
    if len(b) != m:
        raise ParseError(f"line {no}: b: expected {m} entries, found {len(b)}")
    no, toks = take("c")
    c = _ints(toks, no, "c")
    if len(c) != n:
        raise ParseError(f"line {no}: c: expected {n} entries, found {len(c)}")
    delta = None
    rest = list(it)
    if rest:
        no, toks = rest[0]
        if toks[0][1] != "delta" or len(toks) != 2:
            raise ParseError(f"line {no}, column {toks[0][0]}: expected 'delta D' or end of file")
        delta = _ints(toks[1:], no, "delta")[0]
        if len(rest) > 1:
            no, toks = rest[1]
            raise ParseError(f"line {no}, column {toks[0][0]}: unexpected content after delta")
    try:
        return Instance.create(A, b, c, delta)
    except InstanceError as exc:
        raise ParseError(str(exc)) from None


def parse_instance(path) -> Instance:
    return parse_text(Path(path).read_text())


def format_instance(inst: Instance, comment: Optional[str] = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"{inst.m} {inst.n}")
    lines += [" ".join(map(str, row)) for row in inst.A]
    lines.append(" ".join(map(str, inst.b)))
    lines.append(" ".join(map(str, inst.c)))
    if inst.delta != max(2, max(abs(v) for row in inst.A for v in row)):
        lines.append(f"delta {inst.delta}")
    return "\n".join(lines) + "\n"


def result_document(inst: Instance, status: SolveStatus, metrics: Optional[Metrics] = None) -> dict:
    doc = {"status": status.status.value}
    if status.solution is not None:
        doc["x"] = list(status.solution.x)
        doc["objective"] = status.solution.objective
    doc.update(m=inst.m, n=inst.n, delta=inst.delta, gamma=gamma_bound(inst.m, inst.delta))
    if metrics is not None:
        doc["metrics"] = metrics.as_dict()
    return doc


def render(doc: dict, plain: bool) -> str:
    if not plain:
        return json.dumps(doc, indent=2)
    lines = [f"status: {doc['status']}"]
    if "x" in doc:
        lines.append("x: " + " ".join(map(str, doc["x"])))
        lines.append(f"objective: {doc['objective']}")
    lines.append(f"m: {doc['m']}  n: {doc['n']}  delta: {doc['delta']}  gamma: {doc['gamma']}")
    for key, value in doc.get("metrics", {}).items():
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _fmt(v) -> str:
    return "[" + " ".join(map(str, v)) + "]"


def cmd_solve(args) -> int:
    inst = parse_instance(args.input)
    status, metrics = solve(inst, threads=args.threads)
    print(render(result_document(inst, status, metrics if args.metrics else None), args.plain))
    return EXIT_CODES[status.status]


def cmd_candidates(args) -> int:
    inst = parse_instance(args.input)
    count = 0
    for cand in enumerate_candidates(inst):
        if args.limit is not None and count >= args.limit:
            break
        print(f"b' {_fmt(cand.b)} | x' {_fmt(cand.x)}")
        count += 1
    print(f"count {count}")
    return 0


def cmd_oracle(args) -> int:
    inst = parse_instance(args.input)
    extra = {"mode": args.mode}
    if args.mode == "dp":
        sol, states = dp_solve_nonneg(inst)
        status = SolveStatus(Status.OPTIMAL, sol) if sol else SolveStatus(Status.INFEASIBLE)
        extra["state_count"] = states
    elif args.l1cap is not None:
        sol = brute_force_lexmin(inst, args.l1cap)
        status = SolveStatus(Status.OPTIMAL, sol) if sol else SolveStatus(Status.INFEASIBLE)
        extra["l1cap"] = args.l1cap
    else:
        verdict = oracle_solve(inst)
        status = verdict.status
        extra["l1cap"] = verdict.cap
    doc = result_document(inst, status)
    doc["oracle"] = extra
    print(render(doc, args.plain))
    return EXIT_CODES[status.status]


def cmd_generate(args) -> int:
    rng = random.Random(args.seed)
    inst = random_instance(rng, args.m, args.n, args.delta, args.bmax, args.cmax, args.family)
    sys.stdout.write(format_instance(inst, f"seed={args.seed} family={args.family}"))
    return 0


def _parse_sweep(text: str) -> list[int]:
    key, _, values = text.partition("=")
    if key != "bmax" or not values:
        raise ValueError(f"sweep must look like bmax=50,100,200, got {text!r}")
    return [int(v) for v in values.split(",")]


def bench_rows(family: str, sweep: Sequence[int], seeds: Sequence[int], m: int, n: int,
               delta: int, cmax: int):
    """One row per (seed, bmax).  A and c come from the seed; every entry of
    b is set to the swept value."""
    for seed in seeds:
        base = random_instance(random.Random(seed), m, n, delta, max(sweep), cmax, family)
        for bmax in sweep:
            inst = base.with_rhs([bmax] * m)
            status, metrics = solve(inst)
            states, agree = "", ""
            try:
                sol, states = dp_solve_nonneg(inst)
                expected = SolveStatus(Status.OPTIMAL, sol) if sol else SolveStatus(Status.INFEASIBLE)
                agree = expected == status
            except PreconditionError:
                try:
                    agree = oracle_solve(inst).status == status
                except CapExceeded:
                    pass
            yield {
                "family": family, "seed": seed, "m": m, "n": n, "delta": inst.delta, "bmax": bmax,
                "status": status.status.value,
                "objective": status.solution.objective if status.solution else "",
                "peak_live_words": metrics.peak_live_words,
                "nodes_expanded": metrics.nodes_expanded,
                "elapsed_ms": round(metrics.elapsed_ms, 3),
                "dp_state_count": states,
                "oracle_agree": agree,
            }


def cmd_bench(args) -> int:
    sweep = _parse_sweep(args.sweep)
    rows = bench_rows(args.family, sweep, range(args.seed, args.seed + args.count),
                      args.m, args.n, args.delta, args.cmax)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = None
        for row in rows:
            if writer is None:
                writer = csv.DictWriter(out, fieldnames=list(row))
                writer.writeheader()
            writer.writerow(row)
            out.flush()
    finally:
        if args.out:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyspace-ilp", description="Exact small-m integer programming.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("--input", required=True)
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="plain", action="store_false", default=False)
    fmt.add_argument("--plain", dest="plain", action="store_true")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--metrics", action="store_true", help="include search counters and wall time")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("candidates", help="stream candidate supports")
    s.add_argument("--input", required=True)
    s.add_argument("--limit", type=int)
    s.set_defaults(func=cmd_candidates)

    s = sub.add_parser("oracle", help="run a reference solver")
    s.add_argument("--input", required=True)
    s.add_argument("--mode", choices=["brute", "dp"], default="brute")
    s.add_argument("--l1cap", type=int, help="brute force over this l1 radius only")
    s.add_argument("--plain", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("generate", help="print a seeded random instance")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--delta", type=int, default=2)
    s.add_argument("--bmax", type=int, default=8)
    s.add_argument("--cmax", type=int, default=4)
    s.add_argument("--family", choices=FAMILIES, default="general")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("bench", help="space/time sweep over the right-hand side")
    s.add_argument("--family", choices=FAMILIES, default="nonneg")
    s.add_argument("--sweep", default="bmax=50,100,200")
    s.add_argument("--out")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=3, help="instances per sweep value")
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--delta", type=int, default=2)
    s.add_argument("--cmax", type=int, default=4)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InstanceError, PreconditionError, CapExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
