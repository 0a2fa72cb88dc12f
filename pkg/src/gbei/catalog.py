"""Batch processing of graph6 streams into JSONL records keyed by (graph6, m)."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator, Optional

from .graph import GRAPH6_HEADER, parse_graph6, write_graph6
from .homology import homological_summary
from .regularity import PreconditionError, classify, reconcile, reg_formula


def read_graph6_lines(lines: Iterable[str]) -> Iterator[str]:
    """Non-empty records with the optional header stripped."""
    for raw in lines:
        line = raw.strip()
        if line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        if line:
            yield line


def catalog_record(code: str, m: int, summary: bool = True, timings: bool = True) -> dict:
    """One record; failures are stored under "error" instead of raised."""
    record: dict = {"graph6": code, "m": m, "reg": None, "classification": None, "summary": None, "error": None}
    clock: dict[str, float] = {}
    try:
        start = time.perf_counter()
        G = parse_graph6(code)
        record["graph6"] = write_graph6(G)
        record["n"] = G.n
        clock["parse"] = time.perf_counter() - start

        start = time.perf_counter()
        formula = reg_formula(G, m)
        clock["formula"] = time.perf_counter() - start
        result = formula

        start = time.perf_counter()
        try:
            record["classification"] = classify(G, m).to_json()
        except PreconditionError as err:
            record["classification_note"] = str(err)
        clock["classify"] = time.perf_counter() - start

        if summary:
            start = time.perf_counter()
            s = homological_summary(G, m)
            clock["oracle"] = time.perf_counter() - start
            record["summary"] = {k: v for k, v in s.to_json().items() if k != "betti"}
            result = reconcile(G, m, formula, s.regularity, s.method)
        record["reg"] = result.to_json()
    except Exception as err:  # noqa: BLE001 - recorded per record, the stream goes on
        record["error"] = f"{type(err).__name__}: {err}"
    if timings:
        record["timings"] = {k: round(v * 1000, 3) for k, v in clock.items()}
    return record


def _task(args) -> dict:
    return catalog_record(*args)


def _existing_keys(path: str) -> set[tuple[str, int]]:
    """Keys already written; a torn final line from an interrupted run is cut off."""
    keys: set[tuple[str, int]] = set()
    if not os.path.exists(path):
        return keys
    good = 0
    with open(path, "rb") as fh:
        for raw in fh:
            try:
                rec = json.loads(raw)
            except json.JSONDecodeError:
                break
            if not raw.endswith(b"\n"):
                break
            keys.add((rec["graph6"], rec["m"]))
            good += len(raw)
    with open(path, "r+b") as fh:
        fh.truncate(good)
    return keys


def run_catalog(
    lines: Iterable[str],
    ms: list[int],
    out_path: str,
    resume: bool = False,
    workers: int = 1,
    summary: bool = True,
    timings: bool = True,
) -> dict:
    """Write one record per (graph, m) in input order; returns counts."""
    done = _existing_keys(out_path) if resume else set()
    tasks = []
    skipped = 0
    for code in read_graph6_lines(lines):
        for m in ms:
            key_code = code
            try:
                key_code = write_graph6(parse_graph6(code))
            except Exception:  # noqa: BLE001 - the record itself will carry the error
                pass
            if (key_code, m) in done:
                skipped += 1
                continue
            tasks.append((code, m, summary, timings))
    counts = {"written": 0, "skipped": skipped, "errors": 0}
    mode = "a" if resume else "w"
    with open(out_path, mode) as out:
        results: Iterable[dict]
        pool: Optional[ProcessPoolExecutor] = None
        if workers > 1 and len(tasks) > 1:
            pool = ProcessPoolExecutor(max_workers=workers)
            results = pool.map(_task, tasks, chunksize=1)
        else:
            results = map(_task, tasks)
        try:
            for rec in results:
                out.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
                out.flush()
                counts["written"] += 1
                counts["errors"] += rec["error"] is not None
        finally:
            if pool is not None:
                pool.shutdown()
    return counts
