"""knotcert command line: construct | validate | certify | links | symmetry | iso.

Exit codes: 0 when the checked property holds, 1 when it is refuted, 2 on
input or usage errors.  JSON reports are byte-deterministic for identical
inputs and flags; wall-clock timing goes to stdout only.  The worker pool for
per-cycle certification is sized by KNOTCERT_THREADS (unset or 1 keeps it
sequential, 0 means one worker per CPU); report contents never depend on it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import fixtures
from .diagram import (
    Diagram,
    check_symmetry,
    disjoint_cycle_pairs,
    enumerate_cycles,
    extract_component_pd,
    parse_diagram,
    underlying_graph,
    validate,
)
from .errors import DiagramParseError, InputError, KnotcertError
from .graphcore import (
    apply_script,
    complete_graph,
    graph_from_json,
    graph_to_json,
    is_isomorphic,
    script_from_json,
    K7_LABELS,
)
from .invariants import classify_knot, linking_number
from .errors import ScriptError

SCHEMA = "knotcert/1"
DEFAULT_MAX_CROSSINGS = 16


@dataclass
class CycleRecord:
    cycle: tuple[str, ...]
    retained_crossings: tuple[str, ...]
    crossing_count: int
    verdict: str  # "unknot" | "knotted" | "inconclusive"
    jones: Optional[str]
    jones_t: Optional[str]
    reason: Optional[str]


@dataclass
class CertificationReport:
    diagram_id: str
    max_crossings: int
    cycle_count: int
    records: list[CycleRecord]
    summary: str  # KNOTLESS | KNOT_FOUND | INCONCLUSIVE
    wall_time: float


def _threads_from_env() -> int:
    raw = os.environ.get("KNOTCERT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"KNOTCERT_THREADS must be an integer, got {raw!r}")
    if n == 0:
        return os.cpu_count() or 1
    if n < 0:
        raise InputError("KNOTCERT_THREADS must be >= 0")
    return n


def run_certification(d: Diagram, diagram_id: str,
                      max_crossings: int = DEFAULT_MAX_CROSSINGS,
                      threads: int = 1) -> CertificationReport:
    """Enumerate every cycle, extract its diagram, and classify it."""
    t0 = time.perf_counter()
    g = underlying_graph(d)
    cycles = enumerate_cycles(g)

    def work(cyc) -> CycleRecord:
        pd = extract_component_pd(d, (cyc,))
        verdict = classify_knot(pd, max_crossings)
        jones = jones_t = None
        if verdict.kind == "knotted":
            jones = verdict.witness.to_text()
            tf = verdict.witness.t_form()
            jones_t = tf.to_text("t") if tf is not None else None
        elif verdict.kind == "unknot":
            jones = "1"
            jones_t = "1"
        return CycleRecord(
            cycle=cyc,
            retained_crossings=tuple(sorted(pd.crossings)),
            crossing_count=len(pd.crossings),
            verdict=verdict.kind,
            jones=jones,
            jones_t=jones_t,
            reason=verdict.reason,
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(work, cycles))
    else:
        records = [work(c) for c in cycles]

    if any(r.verdict == "knotted" for r in records):
        summary = "KNOT_FOUND"
    elif any(r.verdict == "inconclusive" for r in records):
        summary = "INCONCLUSIVE"
    else:
        summary = "KNOTLESS"
    return CertificationReport(
        diagram_id=diagram_id,
        max_crossings=max_crossings,
        cycle_count=len(cycles),
        records=records,
        summary=summary,
        wall_time=time.perf_counter() - t0,
    )


def certification_report_json(report: CertificationReport) -> str:
    obj = {
        "schema": SCHEMA,
        "command": "certify",
        "diagram": report.diagram_id,
        "max_crossings": report.max_crossings,
        "cycle_count": report.cycle_count,
        "summary": report.summary,
        "cycles": [
            {
                "cycle": list(r.cycle),
                "retained_crossings": list(r.retained_crossings),
                "crossing_count": r.crossing_count,
                "verdict": r.verdict,
                **({"jones": r.jones} if r.jones is not None else {}),
                **({"jones_t": r.jones_t} if r.jones_t is not None else {}),
                **({"reason": r.reason} if r.reason is not None else {}),
            }
            for r in report.records
        ],
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_diagram_arg(path: str) -> Diagram:
    return parse_diagram(_read_text(path))


def _write_or_print(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    if args.script:
        script = script_from_json(_read_text(args.script))
    else:
        script = fixtures.load_script(fixtures.G7_SCRIPT)
    if args.graph:
        start = graph_from_json(_read_text(args.graph))
    else:
        start = complete_graph(K7_LABELS)
    try:
        final, intermediates = apply_script(start, script)
    except ScriptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_or_print(graph_to_json(final), args.out)
    if args.intermediates:
        obj = {
            "schema": SCHEMA,
            "command": "construct",
            "steps": [json.loads(graph_to_json(g)) for g in intermediates],
        }
        Path(args.intermediates).write_text(
            json.dumps(obj, indent=2, sort_keys=True) + "\n")
    print(f"constructed graph: {len(final.vertices)} vertices, "
          f"{len(final.edges)} edges", file=sys.stderr)
    return 0


def cmd_validate(args) -> int:
    text = _read_text(args.diagram)  # I/O problems exit 2 via main
    try:
        d = parse_diagram(text)
    except DiagramParseError as exc:
        # structural parse failures refute validity of the diagram itself
        print(f"invalid: {exc}")
        return 1
    report = validate(d)
    if report:
        for line in report:
            print(f"violation: {line}")
        return 1
    print(f"valid: {len(d.vertices)} vertex nodes, {len(d.crossings)} crossings, "
          f"{len(d.edges)} edges")
    if args.expect_graph:
        expected = graph_from_json(_read_text(args.expect_graph))
        witness = is_isomorphic(underlying_graph(d), expected)
        if witness is None:
            print("underlying graph does NOT match the expected graph")
            return 1
        print("underlying graph matches the expected graph "
              f"(witness on {len(witness)} vertices)")
    return 0


def cmd_certify(args) -> int:
    d = _load_diagram_arg(args.diagram)
    problems = validate(d)
    if problems:
        print("error: diagram is invalid:", file=sys.stderr)
        for line in problems:
            print(f"  {line}", file=sys.stderr)
        return 2
    diagram_id = Path(args.diagram).stem
    report = run_certification(d, diagram_id, args.max_crossings, _threads_from_env())
    if args.report:
        Path(args.report).write_text(certification_report_json(report))
    counts = {"unknot": 0, "knotted": 0, "inconclusive": 0}
    for r in report.records:
        counts[r.verdict] += 1
    print(f"diagram {diagram_id}: {report.cycle_count} cycles examined "
          f"(bound {report.max_crossings} crossings)")
    print(f"  unknotted: {counts['unknot']}  knotted: {counts['knotted']}  "
          f"inconclusive: {counts['inconclusive']}")
    for r in report.records:
        if r.verdict == "knotted":
            extra = f" = {r.jones_t} in t" if r.jones_t else ""
            print(f"  KNOT on cycle {'-'.join(r.cycle)}: jones {r.jones}{extra}")
    print(f"summary: {report.summary}  (wall time {report.wall_time:.3f}s)")
    return 0 if report.summary == "KNOTLESS" else 1


def cmd_links(args) -> int:
    d = _load_diagram_arg(args.diagram)
    problems = validate(d)
    if problems:
        print("error: diagram is invalid:", file=sys.stderr)
        for line in problems:
            print(f"  {line}", file=sys.stderr)
        return 2
    diagram_id = Path(args.diagram).stem
    t0 = time.perf_counter()
    g = underlying_graph(d)
    pairs = disjoint_cycle_pairs(g)
    found = []
    for ca, cb in pairs:
        pd = extract_component_pd(d, (ca, cb))
        lk = linking_number(pd)
        if lk != 0:
            found.append((ca, cb, lk))
    if args.report:
        obj = {
            "schema": SCHEMA,
            "command": "links",
            "diagram": diagram_id,
            "pairs_examined": len(pairs),
            "nonzero": [
                {"cycle_a": list(a), "cycle_b": list(b), "linking_number": lk}
                for a, b, lk in found
            ],
        }
        Path(args.report).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    print(f"diagram {diagram_id}: {len(pairs)} disjoint cycle pairs examined")
    for a, b, lk in found:
        print(f"  lk({'-'.join(a)}, {'-'.join(b)}) = {lk}")
    print(f"nonzero linking numbers: {len(found)}  "
          f"(wall time {time.perf_counter() - t0:.3f}s)")
    return 0 if found else 1


def cmd_symmetry(args) -> int:
    d = _load_diagram_arg(args.diagram)
    try:
        vmap = json.loads(_read_text(args.map))
    except json.JSONDecodeError as exc:
        raise InputError(f"map file is not valid JSON: {exc}") from exc
    if not isinstance(vmap, dict):
        raise InputError("map file must be a JSON object mapping vertices")
    res = check_symmetry(d, vmap, reflect=args.reflect, flip_over_under=args.flip)
    if res.ok:
        pairs = ", ".join(f"{x}->{y}" for x, y in sorted(res.crossing_map.items()))
        print(f"symmetry holds; crossing map: {pairs}")
        return 0
    print(f"symmetry refuted: {res.reason}")
    return 1


def cmd_iso(args) -> int:
    g1 = graph_from_json(_read_text(args.graph1))
    g2 = graph_from_json(_read_text(args.graph2))
    witness = is_isomorphic(g1, g2)
    if witness is None:
        print("not isomorphic")
        return 1
    print(json.dumps({"mapping": witness}, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="knotcert",
        description="Certify spatial graph diagrams knot-free with exact invariants.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="run a move script and write the result graph")
    c.add_argument("--script", help="move script JSON (default: bundled g7 script)")
    c.add_argument("--graph", help="starting graph JSON (default: K7 on a..g)")
    c.add_argument("--out", help="output graph file (default: stdout)")
    c.add_argument("--intermediates", help="also write every intermediate graph")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("validate", help="check diagram invariants")
    v.add_argument("diagram")
    v.add_argument("--expect-graph", dest="expect_graph",
                   help="also require the underlying graph to match this graph file")
    v.set_defaults(func=cmd_validate)

    ce = sub.add_parser("certify", help="classify every cycle of a diagram")
    ce.add_argument("diagram")
    ce.add_argument("--max-crossings", dest="max_crossings", type=int,
                    default=DEFAULT_MAX_CROSSINGS,
                    help="certification bound (default %(default)s)")
    ce.add_argument("--report", help="write the JSON certification report here")
    ce.set_defaults(func=cmd_certify)

    l = sub.add_parser("links", help="find disjoint cycle pairs with nonzero linking")
    l.add_argument("diagram")
    l.add_argument("--report", help="write the JSON link report here")
    l.set_defaults(func=cmd_links)

    s = sub.add_parser("symmetry", help="check a diagram self-correspondence")
    s.add_argument("diagram")
    s.add_argument("--map", required=True, help="JSON file with the vertex bijection")
    s.add_argument("--reflect", action="store_true",
                   help="rotation lists map reversed")
    s.add_argument("--flip", action="store_true",
                   help="over/under data maps swapped")
    s.set_defaults(func=cmd_symmetry)

    i = sub.add_parser("iso", help="graph isomorphism witness")
    i.add_argument("graph1")
    i.add_argument("graph2")
    i.set_defaults(func=cmd_iso)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KnotcertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
