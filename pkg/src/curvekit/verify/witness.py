"""Witness search and level certification over a growing ledger.

Determination is monotone in the witness set: if ``A`` determines ``z`` and
``A <= B`` with every member of ``B`` disjoint from and distinct from ``z``,
then ``B`` determines ``z`` as well.  So the smallest level at which ``z``
becomes determined by ledger curves is found by offering, level by level,
everything in the ledger that is disjoint from ``z``.  Any witness set found
that way is then shrunk greedily.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ..curves import NormalCurve, is_disjoint
from ..expansion import (
    UNIQUE,
    CurveSetLedger,
    WitnessChain,
    WitnessStep,
    determine,
)


def _as_ledger(pool: CurveSetLedger | Iterable[NormalCurve]) -> CurveSetLedger:
    return pool if isinstance(pool, CurveSetLedger) else CurveSetLedger.from_curves(pool)


def shrink_witness(target: NormalCurve, witness: Sequence[NormalCurve], keep: Callable[[NormalCurve], bool] = lambda c: False) -> list[NormalCurve]:
    """Drop members one at a time (highest level first is the caller's job) while ``target`` stays determined."""
    out = list(witness)
    for c in list(out):
        if keep(c) or len(out) == 1:
            continue
        trial = [d for d in out if d != c]
        res = determine(trial)
        if res.verdict == UNIQUE and res.curve == target:
            out = trial
    return out


def search_witness(
    target: NormalCurve,
    pool: CurveSetLedger | Iterable[NormalCurve],
    max_size: int | None = None,
    max_level: int | None = None,
) -> WitnessChain | None:
    """A one-step chain establishing ``target`` from the pool at the least possible level.

    Returns the empty chain when ``target`` is already in the pool and
    ``None`` when no subset of the pool determines it (or every irredundant
    witness found is larger than ``max_size``).
    """
    ledger = _as_ledger(pool)
    if target in ledger:
        return WitnessChain(())
    step = least_level_step(target, ledger, max_level)
    if step is None or (max_size is not None and len(step.witness) > max_size):
        return None
    return WitnessChain((step,))


def least_level_step(target: NormalCurve, ledger: CurveSetLedger, max_level: int | None = None) -> WitnessStep | None:
    """Irredundant witness from the ledger at the least level that determines ``target``."""
    by_level: dict[int, list[NormalCurve]] = {}
    for e in ledger.entries.values():
        if max_level is not None and e.level > max_level:
            continue
        if is_disjoint(e.curve, target):
            by_level.setdefault(e.level, []).append(e.curve)
    offered: list[NormalCurve] = []
    for lvl in sorted(by_level):
        offered += sorted(by_level[lvl])
        res = determine(offered)
        if res.verdict == UNIQUE and res.curve == target:
            order = sorted(offered, key=lambda c: (-ledger.level(c), c.weights))
            witness = shrink_witness(target, order)
            top = max(ledger.level(c) for c in witness)
            return WitnessStep(target, tuple(sorted(witness)), top + 1, target.label)
    return None


@dataclass
class Resolution:
    curve: NormalCurve
    level: int | None
    method: str
    witness: tuple[NormalCurve, ...] = ()

    @property
    def found(self) -> bool:
        return self.level is not None


@dataclass
class LevelEngine:
    """A ledger of certified levels plus a book of alternative witness sets.

    Every curve enters the ledger only after ``determine`` confirmed it from
    curves already in the ledger, so every recorded level is an upper bound
    for the true expansion level relative to the base set.
    """

    ledger: CurveSetLedger
    book: dict[tuple[int, ...], list[tuple[NormalCurve, ...]]] = field(default_factory=dict)
    determinations: int = 0

    @classmethod
    def from_base(cls, curves: Iterable[NormalCurve]) -> "LevelEngine":
        return cls(CurveSetLedger.from_curves(curves))

    def level(self, c: NormalCurve) -> int | None:
        return self.ledger.level(c)

    def add_to_book(self, target: NormalCurve, witness: Sequence[NormalCurve]) -> None:
        entry = tuple(sorted(set(witness)))
        slot = self.book.setdefault(target.weights, [])
        if entry not in slot:
            slot.append(entry)

    def check(self, target: NormalCurve, witness: Sequence[NormalCurve]) -> bool:
        self.determinations += 1
        res = determine(witness)
        return res.verdict == UNIQUE and res.curve == target

    def admit(self, target: NormalCurve, witness: Sequence[NormalCurve], label: str | None = None) -> int | None:
        """Certify ``target = <witness>``; returns the level, or ``None`` if a witness is unknown or the check fails."""
        levels = [self.level(c) for c in witness]
        if not witness or any(lv is None for lv in levels):
            return None
        if not self.check(target, witness):
            return None
        lvl = 1 + max(levels)
        self.ledger.add(target, lvl, witness, label)
        return self.level(target)

    def search(self, target: NormalCurve, below: int | None = None) -> Resolution:
        """Least-level witness from the ledger; with ``below`` only levels under it are tried."""
        cap = None if below is None else below - 2
        if cap is not None and cap < 0:
            return Resolution(target, None, "unresolved")
        self.determinations += 1
        step = least_level_step(target, self.ledger, cap)
        if step is None:
            return Resolution(target, None, "unresolved")
        self.ledger.add(target, step.level, step.witness)
        return Resolution(target, self.level(target), "search", step.witness)

    def resolve(self, target: NormalCurve) -> Resolution:
        lvl = self.level(target)
        if lvl is not None:
            return Resolution(target, lvl, "ledger")
        return self.search(target)

    def image(self, f, c: NormalCurve, bound: int | None = None, _active: set | None = None) -> Resolution:
        """Certify ``f(c)``: ledger first, then transport of recorded witness sets of ``c``, then search.

        Transport uses ``f(<A>) = <f(A)>``; the image set is re-checked by
        ``determine`` before its level is accepted.
        """
        z = f(c)
        lvl = self.level(z)
        if lvl is not None and (bound is None or lvl <= bound):
            return Resolution(z, lvl, "ledger")
        active = set() if _active is None else _active
        if c.weights in active:
            return Resolution(z, lvl, "ledger" if lvl is not None else "unresolved")
        active.add(c.weights)
        best: Resolution | None = None
        for A in self.book.get(c.weights, ()):
            parts = [self.image(f, a, bound, active) for a in A]
            if any(not p.found for p in parts):
                continue
            cand = 1 + max(p.level for p in parts)
            if best is not None and cand >= best.level:
                continue
            fa = tuple(p.curve for p in parts)
            if self.check(z, fa):
                best = Resolution(z, cand, "transport", fa)
        active.discard(c.weights)
        if best is not None:
            self.ledger.add(z, best.level, best.witness)
        current = self.level(z)
        if current is not None and (bound is None or current <= bound):
            return Resolution(z, current, best.method if best and best.level == current else "ledger", best.witness if best else ())
        found = self.search(z, below=current)
        if found.found:
            return found
        return Resolution(z, current, "ledger" if current is not None else "unresolved")

    def close(self, targets: Sequence[NormalCurve], rounds: int) -> dict[tuple[int, ...], Resolution]:
        """Repeated search passes over ``targets``; each pass may use curves certified by the last."""
        out: dict[tuple[int, ...], Resolution] = {}
        pending = list(dict.fromkeys(targets))
        for _ in range(rounds):
            progress = False
            rest = []
            for t in pending:
                r = self.resolve(t)
                if r.found:
                    out[t.weights] = r
                    progress = True
                else:
                    rest.append(t)
            pending = rest
            if not pending or not progress:
                break
        for t in pending:
            out[t.weights] = Resolution(t, None, "unresolved")
        return out

