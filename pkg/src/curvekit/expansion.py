"""Unique determination, rigid expansions and witness chains.

``determine(A)`` decides whether exactly one curve is disjoint from every
member of ``A``.  Realize ``A`` in minimal position and cut along it.  A piece
of positive complexity carries infinitely many curves, so the answer is
"many".  Otherwise every candidate is parallel to a boundary circle of some
piece.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .curves import NormalCurve
from .overlay import ComplementPiece, OverlayComplex, complement_decomposition, overlay_of
from .triangulation import Triangulation

EMPTY, UNIQUE, MANY = "empty", "unique", "many"


class ExpansionError(ValueError):
    pass


@dataclass(frozen=True)
class DeterminationResult:
    verdict: str
    curve: NormalCurve | None = None
    candidates: tuple[NormalCurve, ...] = ()
    pieces: tuple[tuple[int, int, int], ...] = ()

    @property
    def unique(self) -> bool:
        return self.verdict == UNIQUE

    def summary(self) -> dict:
        return {
            "verdict": self.verdict,
            "curve": None if self.curve is None else list(self.curve.weights),
            "candidates": [list(c.weights) for c in self.candidates],
            "pieces": [list(p) for p in self.pieces],
        }


def adjacency(a: NormalCurve, b: NormalCurve) -> bool:
    """Disjoint and distinct."""
    from .curves import is_disjoint

    return is_disjoint(a, b)


def _verdict(pieces: Sequence[ComplementPiece], members: set[tuple[int, ...]]) -> DeterminationResult:
    sig = tuple(sorted(p.signature for p in pieces))
    if any(p.complexity >= 1 for p in pieces):
        return DeterminationResult(MANY, pieces=sig)
    found: dict[tuple[int, ...], NormalCurve] = {}
    for p in pieces:
        for c in p.essential_pushoffs():
            if c.weights not in members:
                found.setdefault(c.weights, c)
    cands = tuple(sorted(found.values()))
    if not cands:
        return DeterminationResult(EMPTY, pieces=sig)
    if len(cands) == 1:
        return DeterminationResult(UNIQUE, cands[0], cands, sig)
    return DeterminationResult(MANY, candidates=cands, pieces=sig)


def determine(A: Iterable[NormalCurve]) -> DeterminationResult:
    """Verdict for ``<A>``; an empty family is rejected."""
    A = list({c.weights: c for c in A}.values())
    if not A:
        raise ExpansionError("cannot determine from the empty set")
    ov = overlay_of(A)
    pieces = complement_decomposition(ov)
    return _verdict(pieces, {c.weights for c in A})


class DeterminationPool:
    """One overlay of a fixed pool; subsets are evaluated by activating curves.

    Inactive curves are simply ignored when cutting, so each query costs one
    pass over the pool overlay instead of a fresh construction.
    """

    def __init__(self, curves: Sequence[NormalCurve]):
        uniq: dict[tuple[int, ...], NormalCurve] = {}
        for c in curves:
            uniq.setdefault(c.weights, c)
        self.curves: list[NormalCurve] = sorted(uniq.values())
        if not self.curves:
            raise ExpansionError("empty pool")
        self.tri: Triangulation = self.curves[0].tri
        self.index = {c.weights: i for i, c in enumerate(self.curves)}
        self.overlay = OverlayComplex(self.tri, self.curves)
        self._memo: dict[frozenset[int], DeterminationResult] = {}
        self.queries = 0

    def __len__(self) -> int:
        return len(self.curves)

    def determine_indices(self, subset: Iterable[int]) -> DeterminationResult:
        key = frozenset(subset)
        if not key:
            raise ExpansionError("cannot determine from the empty set")
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self.queries += 1
        pieces = complement_decomposition(self.overlay, key)
        res = _verdict(pieces, {self.curves[i].weights for i in key})
        self._memo[key] = res
        return res

    def determine(self, A: Iterable[NormalCurve]) -> DeterminationResult:
        return self.determine_indices(self.index[c.weights] for c in A)


# ledgers and witness chains ------------------------------------------------------------------


@dataclass
class LedgerEntry:
    curve: NormalCurve
    label: str
    level: int
    witness: tuple[tuple[int, ...], ...] = ()


@dataclass
class CurveSetLedger:
    """Curves with the expansion level at which each was established."""

    tri: Triangulation
    entries: dict[tuple[int, ...], LedgerEntry] = field(default_factory=dict)
    partial: bool = False

    @classmethod
    def from_curves(cls, curves: Iterable[NormalCurve]) -> "CurveSetLedger":
        curves = list(curves)
        if not curves:
            raise ExpansionError("empty base set")
        led = cls(curves[0].tri)
        for k, c in enumerate(curves):
            if c.weights not in led.entries:
                led.entries[c.weights] = LedgerEntry(c, c.label or f"y{k}", 0)
        return led

    def __contains__(self, c: NormalCurve) -> bool:
        return c.weights in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def curves(self, max_level: int | None = None) -> list[NormalCurve]:
        return sorted(
            e.curve for e in self.entries.values() if max_level is None or e.level <= max_level
        )

    def level(self, c: NormalCurve) -> int | None:
        e = self.entries.get(c.weights)
        return None if e is None else e.level

    def add(self, c: NormalCurve, level: int, witness: Sequence[NormalCurve], label: str | None = None) -> bool:
        if c.weights in self.entries and self.entries[c.weights].level <= level:
            return False
        self.entries[c.weights] = LedgerEntry(
            c, label or c.label or f"x{len(self.entries)}", level, tuple(sorted(w.weights for w in witness))
        )
        return True

    def copy(self) -> "CurveSetLedger":
        return CurveSetLedger(self.tri, dict(self.entries), self.partial)

    def to_json(self) -> dict:
        return {
            "surface": str(self.tri.spec),
            "partial": self.partial,
            "curves": [
                {"label": e.label, "weights": list(w), "level": e.level, "witness": [list(x) for x in e.witness]}
                for w, e in sorted(self.entries.items(), key=lambda kv: (kv[1].level, kv[0]))
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class WitnessStep:
    target: NormalCurve
    witness: tuple[NormalCurve, ...]
    level: int | None = None
    label: str | None = None


@dataclass(frozen=True)
class WitnessChain:
    steps: tuple[WitnessStep, ...] = ()

    def __add__(self, other: "WitnessChain") -> "WitnessChain":
        return WitnessChain(self.steps + other.steps)

    @property
    def target(self) -> NormalCurve | None:
        return self.steps[-1].target if self.steps else None


@dataclass
class ChainVerdict:
    ok: bool
    level: int | None
    levels: list[int] = field(default_factory=list)
    failure: str | None = None
    evidence: dict | None = None


def verify_witness_chain(ledger: CurveSetLedger, chain: WitnessChain, target: NormalCurve | None = None) -> ChainVerdict:
    """Re-check every step and compute the level at which the target is reached.

    A witness curve may come from the ledger or from an earlier step.  A step
    whose target already has a known level keeps the smaller level.
    """
    known: dict[tuple[int, ...], int] = {w: e.level for w, e in ledger.entries.items()}
    levels = []
    for n, step in enumerate(chain.steps):
        missing = [c for c in step.witness if c.weights not in known]
        if missing:
            return ChainVerdict(False, None, levels, f"step {n}: witness curve not established", {"missing": [list(c.weights) for c in missing]})
        res = determine(step.witness)
        if res.verdict != UNIQUE or res.curve != step.target:
            return ChainVerdict(False, None, levels, f"step {n}: determination gave {res.verdict}", res.summary())
        lvl = 1 + max(known[c.weights] for c in step.witness)
        if step.level is not None and lvl > step.level:
            return ChainVerdict(False, None, levels, f"step {n}: level {lvl} exceeds asserted {step.level}")
        known[step.target.weights] = min(lvl, known.get(step.target.weights, lvl))
        levels.append(known[step.target.weights])
    goal = target if target is not None else chain.target
    if goal is None:
        return ChainVerdict(True, None, levels)
    if goal.weights not in known:
        return ChainVerdict(False, None, levels, "target not reached")
    return ChainVerdict(True, known[goal.weights], levels)


def transport_witness(f, chain: WitnessChain) -> WitnessChain:
    """Image of a chain under a mapping class; levels are recomputed on verification."""
    return WitnessChain(
        tuple(
            WitnessStep(f(s.target), tuple(f(c) for c in s.witness), None, s.label)
            for s in chain.steps
        )
    )


# expansion -------------------------------------------------------------------------------


@dataclass
class ExpansionStats:
    queries: int = 0
    subsets: int = 0
    seconds: float = 0.0
    partial: bool = False


def _dfs(pool: DeterminationPool, root: int, deadline: float | None, max_subsets: int | None):
    """Pruned depth-first search below the singleton ``{root}``.

    Returns ``(found, visited, finished)`` where ``found`` maps each determined
    curve to its lexicographically first witness (as an index tuple).
    """
    n = len(pool)
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    visited = 0
    stack = [(root,)]
    while stack:
        if deadline is not None and time.monotonic() > deadline:
            return found, visited, False
        if max_subsets is not None and visited >= max_subsets:
            return found, visited, False
        subset = stack.pop()
        visited += 1
        res = pool.determine_indices(subset)
        if res.verdict == UNIQUE:
            w = res.curve.weights
            if w not in found or (len(subset), subset) < (len(found[w]), found[w]):
                found[w] = subset
            continue
        if res.verdict == EMPTY:
            continue
        for j in range(n - 1, subset[-1], -1):
            stack.append(subset + (j,))
    return found, visited, True


_WORKER_POOL: DeterminationPool | None = None


def _worker_init(tri_json: str, weights: list[list[int]]) -> None:
    global _WORKER_POOL
    tri = Triangulation.from_json(json.loads(tri_json))
    _WORKER_POOL = DeterminationPool([NormalCurve(tri, w, check=False) for w in weights])


def _worker_run(args):
    root, remaining, max_subsets = args
    deadline = None if remaining is None else time.monotonic() + remaining
    return root, _dfs(_WORKER_POOL, root, deadline, max_subsets)


def expand_once(
    Y: CurveSetLedger | Sequence[NormalCurve],
    workers: int = 1,
    budget_secs: float | None = None,
    max_subsets: int | None = None,
) -> tuple[CurveSetLedger, ExpansionStats]:
    """All curves uniquely determined by some subset of ``Y``, with witnesses.

    The subset lattice is searched depth-first in lexicographic order.  A
    subset whose verdict is empty or unique is not extended, since adding
    curves can only shrink the common disjoint set.  Under a budget the
    result is flagged partial and is a subset of the true expansion.
    """
    ledger = Y if isinstance(Y, CurveSetLedger) else CurveSetLedger.from_curves(Y)
    base_level = max((e.level for e in ledger.entries.values()), default=0)
    pool_curves = ledger.curves()
    start = time.monotonic()
    deadline = None if budget_secs is None else start + budget_secs
    stats = ExpansionStats()
    results = {}
    pool = DeterminationPool(pool_curves)
    n = len(pool)
    if workers <= 1:
        for root in range(n):
            results[root] = _dfs(pool, root, deadline, max_subsets)
        stats.queries = pool.queries
    else:
        ctx_args = (json.dumps(pool.tri.to_json()), [list(c.weights) for c in pool.curves])
        with ProcessPoolExecutor(max_workers=workers, initializer=_worker_init, initargs=ctx_args) as ex:
            remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
            for root, res in ex.map(_worker_run, [(r, remaining, max_subsets) for r in range(n)]):
                results[root] = res
    out = ledger.copy()
    merged: dict[tuple[int, ...], tuple[int, ...]] = {}
    for root in range(n):
        found, visited, finished = results[root]
        stats.subsets += visited
        stats.partial |= not finished
        for w, subset in found.items():
            if w not in merged or (len(subset), subset) < (len(merged[w]), merged[w]):
                merged[w] = subset
    for w in sorted(merged):
        if w in out.entries:
            continue
        subset = merged[w]
        c = NormalCurve(pool.tri, w, check=False)
        witness = [pool.curves[i] for i in subset]
        # curves of lower level would already be present in a ledger built by expansion
        out.add(c, base_level + 1, witness)
    out.partial = ledger.partial or stats.partial
    stats.seconds = time.monotonic() - start
    return out, stats


def expand_k(Y, k: int, **kw) -> CurveSetLedger:
    ledger = Y if isinstance(Y, CurveSetLedger) else CurveSetLedger.from_curves(Y)
    for _ in range(k):
        ledger, _ = expand_once(ledger, **kw)
    return ledger


def naive_expand_once(curves: Sequence[NormalCurve], workers: int = 1) -> set[tuple[int, ...]]:
    """Reference expansion: evaluate every nonempty subset, no pruning."""
    pool = DeterminationPool(curves)
    n = len(pool)
    out = {c.weights for c in pool.curves}
    if workers <= 1:
        for mask in range(1, 1 << n):
            res = pool.determine_indices(i for i in range(n) if mask >> i & 1)
            if res.verdict == UNIQUE:
                out.add(res.curve.weights)
        return out
    ctx_args = (json.dumps(pool.tri.to_json()), [list(c.weights) for c in pool.curves])
    chunks = [(lo, min(lo + 4096, 1 << n)) for lo in range(1, 1 << n, 4096)]
    with ProcessPoolExecutor(max_workers=workers, initializer=_worker_init, initargs=ctx_args) as ex:
        for part in ex.map(_naive_chunk, chunks):
            out |= part
    return out


def _naive_chunk(bounds):
    lo, hi = bounds
    pool = _WORKER_POOL
    n = len(pool)
    out = set()
    for mask in range(lo, hi):
        res = pool.determine_indices(i for i in range(n) if mask >> i & 1)
        if res.verdict == UNIQUE:
            out.add(res.curve.weights)
    pool._memo.clear()
    return out


def neighbour_set(c: NormalCurve, pool: Iterable[NormalCurve]) -> list[NormalCurve]:
    """Members of ``pool`` disjoint from ``c`` (the largest possible witness)."""
    return [d for d in pool if adjacency(c, d)]


def default_workers() -> int:
    return max(1, min(8, (os.cpu_count() or 1)))
