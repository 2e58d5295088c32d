"""Isomorphism-free enumeration of finite rumples and latin rumples.

Work is split into tasks: one per row type allowed for row 0 (the type that
is least among all rows of the result) and per admissible row 1.  Each task
is solved by the compiled kernel, which emits lex-least tables only; the
results are merged, re-canonicalized as a safety net, and sorted.
"""

from __future__ import annotations

import json
import logging
import multiprocessing
import os
import tempfile
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from rumple import _engine
from rumple._types import centralizer, centralizer_size, pattern, row_types, type_code
from rumple.core import (Magma, canonical_form, is_latin_rumple, is_rumple,
                         is_uniquely_2_divisible)
from rumple.errors import BoundExceeded, NodeCapExceeded

log = logging.getLogger(__name__)

MAX_ORDER = 8
MAX_LATIN_ORDER = 11
GROUP_CAP = 50000
CHECKPOINT_INTERVAL = 5.0   # seconds between checkpoint flushes


@dataclass(frozen=True)
class SearchConfig:
    order: int
    latin_only: bool = False
    count_only: bool = False
    worker_count: int = 1
    node_cap: Optional[int] = None
    checkpoint: Optional[str] = None
    implied: bool = True          # use Delta-injectivity while searching
    max_order: Optional[int] = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.worker_count < 1:
            raise ValueError("worker_count must be positive")


@dataclass
class SearchResult:
    order: int
    latin_only: bool
    count: int
    magmas: list
    nodes: int
    tasks: int


def _effective_cap(cfg: SearchConfig) -> Optional[int]:
    env = os.environ.get("RUMPLE_NODE_CAP")
    if env:
        return int(env)
    return cfg.node_cap


@lru_cache(maxsize=None)
def _type_data(n):
    # any subset of a centralizer gives sound (if weaker) pruning, so large
    # ones are truncated and the final canonical pass removes leftovers
    out = []
    for t in row_types(n):
        g = centralizer(t, n, GROUP_CAP)
        out.append((pattern(t, n), type_code(t, n), g, np.argsort(g, axis=1),
                    centralizer_size(t) <= GROUP_CAP))
    return out


def _empty_prefix(n):
    return np.zeros((0, n), np.int8)


def task_list(n: int, latin: bool, implied: bool = True):
    """Deterministic task units ``(type_index, row1)``; row1 is None when the
    order is too small to split."""
    tasks = []
    for ti, (pat, key, g, gi, _) in enumerate(_type_data(n)):
        if n <= 2:
            tasks.append((ti, None))
            continue
        rows, count, _, _ = _engine.search(n, latin, implied, pat, key, g, gi,
                                           _empty_prefix(n), True, -1)
        for r in rows[:count]:
            tasks.append((ti, tuple(int(v) for v in r[0])))
    return tasks


def run_task(n: int, latin: bool, implied: bool, task, node_cap: int = -1):
    ti, row1 = task
    pat, key, g, gi, _ = _type_data(n)[ti]
    prefix = _empty_prefix(n) if row1 is None else np.array([row1], dtype=np.int8)
    tables, count, nodes, aborted = _engine.search(n, latin, implied, pat, key, g, gi,
                                                   prefix, False, node_cap)
    return np.array(tables[:count], dtype=np.int64), nodes, aborted


def _worker(args):
    n, latin, implied, tid, task, cap = args
    tables, nodes, aborted = run_task(n, latin, implied, task, cap)
    return tid, tables.tolist(), nodes, aborted


def _atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_checkpoint(path):
    """Completed ids and their stored results (sidecar ``<path>.results``)."""
    if not path or not os.path.exists(path):
        return {}
    with open(path) as fh:
        done = set(int(v) for v in json.load(fh))
    results = {}
    side = path + ".results"
    if os.path.exists(side):
        with open(side) as fh:
            for line in fh:
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue
                if rec["id"] in done:
                    results[rec["id"]] = (rec["tables"], rec["nodes"])
    return {k: v for k, v in results.items() if k in done}


def enumerate_rumples(cfg: SearchConfig) -> SearchResult:
    """All rumples of the given order up to isomorphism (latin ones only when
    ``cfg.latin_only``), as canonical tables in sorted order."""
    n = cfg.order
    bound = cfg.max_order or (MAX_LATIN_ORDER if cfg.latin_only else MAX_ORDER)
    if n > bound:
        raise BoundExceeded(f"order {n} exceeds the configured bound {bound}")
    cap = _effective_cap(cfg)
    tasks = task_list(n, cfg.latin_only, cfg.implied)
    stored = _load_checkpoint(cfg.checkpoint)
    todo = [(tid, t) for tid, t in enumerate(tasks) if tid not in stored]
    results = dict(stored)
    total_nodes = sum(v[1] for v in stored.values())
    log.info("order %d: %d tasks, %d already done", n, len(tasks), len(stored))

    side = open(cfg.checkpoint + ".results", "a") if cfg.checkpoint else None
    last_flush = time.monotonic()

    def flush():
        nonlocal last_flush
        side.flush()
        os.fsync(side.fileno())
        _atomic_write(cfg.checkpoint, json.dumps(sorted(results)))
        last_flush = time.monotonic()

    def record(tid, tables, nodes, aborted):
        nonlocal total_nodes
        total_nodes += nodes
        if aborted or (cap is not None and total_nodes > cap):
            raise NodeCapExceeded(f"node cap {cap} exceeded")
        results[tid] = (tables, nodes)
        if side is not None:
            side.write(json.dumps({"id": tid, "tables": tables, "nodes": nodes}) + "\n")
            if time.monotonic() - last_flush > CHECKPOINT_INTERVAL:
                flush()

    def remaining():
        return -1 if cap is None else max(cap - total_nodes, 0)

    try:
        if cfg.worker_count > 1 and len(todo) > 1:
            ctx = multiprocessing.get_context("spawn")
            with ctx.Pool(cfg.worker_count) as pool:
                args = [(n, cfg.latin_only, cfg.implied, tid, t, remaining()) for tid, t in todo]
                for tid, tables, nodes, aborted in pool.imap_unordered(_worker, args):
                    record(tid, tables, nodes, aborted)
        else:
            for tid, t in todo:
                tables, nodes, aborted = run_task(n, cfg.latin_only, cfg.implied, t, remaining())
                record(tid, tables.tolist(), nodes, aborted)
    finally:
        if side is not None:
            flush()
            side.close()

    all_tables = [tb for tid in sorted(results) for tb in results[tid][0]]
    magmas = _finalize(all_tables, cfg.latin_only)
    return SearchResult(n, cfg.latin_only, len(magmas), [] if cfg.count_only else magmas,
                        total_nodes, len(tasks))


def _finalize(tables, latin):
    seen = {}
    for tb in tables:
        X = Magma(np.asarray(tb, dtype=np.int64))
        assert is_rumple(X), "kernel produced a non-rumple"
        assert is_uniquely_2_divisible(X)
        if latin:
            assert is_latin_rumple(X)
        C = canonical_form(X)
        seen.setdefault(C, C)
    return sorted(seen, key=lambda M: M.table.ravel().tolist())


def enumerate_latin_rumples(cfg: SearchConfig) -> SearchResult:
    if not cfg.latin_only:
        cfg = SearchConfig(cfg.order, True, cfg.count_only, cfg.worker_count, cfg.node_cap,
                           cfg.checkpoint, cfg.implied, cfg.max_order)
    return enumerate_rumples(cfg)


def count_rumples(n: int, latin: bool = False, **kw) -> int:
    return enumerate_rumples(SearchConfig(n, latin, count_only=True, **kw)).count


def record_for(X: Magma) -> dict:
    """JSON Lines record of one class."""
    from rumple.affine import is_affine
    latin = is_latin_rumple(X)
    return {"order": X.order, "table": X.table.tolist(), "latin": latin,
            "affine": bool(latin and is_affine(X))}


def naive_rumples(n: int, latin: bool = False) -> list:
    """Reference enumeration: filter every one of the n^(n^2) tables."""
    import itertools
    seen = set()
    for flat in itertools.product(range(n), repeat=n * n):
        X = Magma(np.array(flat, dtype=np.int64).reshape(n, n))
        if is_rumple(X) and (not latin or is_latin_rumple(X)):
            seen.add(canonical_form(X))
    return sorted(seen, key=lambda M: M.table.ravel().tolist())
