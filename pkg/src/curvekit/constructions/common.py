"""Shared catalog plumbing for the per-genus constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from ..curves import NormalCurve, intersection_number
from ..triangulation import SurfaceSpec, Triangulation


class ConstructionError(AssertionError):
    """A built family violates one of its defining patterns."""


@dataclass
class FamilyCatalog:
    """Named curves and curve families on one base triangulation.

    Entries are either single curves, lists, or dicts keyed by index tuples.
    ``labels`` flattens everything that carries a label.
    """

    tri: Triangulation
    entries: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def spec(self) -> SurfaceSpec:
        return self.tri.spec

    def __getitem__(self, key: str) -> Any:
        return self.entries[key]

    def __setitem__(self, key: str, value: Any) -> None:
        self.entries[key] = value

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def get(self, key: str, default=None):
        return self.entries.get(key, default)

    def curves(self) -> Iterator[NormalCurve]:
        for value in self.entries.values():
            yield from _flatten(value)

    def labels(self) -> dict[str, NormalCurve]:
        out: dict[str, NormalCurve] = {}
        for c in self.curves():
            if c.label and c.label not in out:
                out[c.label] = c
        return out

    def to_json(self, families: Iterable[str] | None = None) -> dict:
        keys = list(families) if families is not None else list(self.entries)
        data = {}
        for k in keys:
            data[k] = [c.to_json() for c in _flatten(self.entries[k])]
        return {"surface": str(self.spec), "triangulation": self.tri.to_json(), "families": data}


def _flatten(value) -> Iterator[NormalCurve]:
    if isinstance(value, NormalCurve):
        yield value
    elif isinstance(value, dict):
        for v in value.values():
            yield from _flatten(v)
    elif isinstance(value, (list, tuple)):
        for v in value:
            yield from _flatten(v)


def unique_curves(curves: Iterable[NormalCurve]) -> list[NormalCurve]:
    """Deduplicate by coordinates, keeping the first label seen."""
    seen: dict[tuple[int, ...], NormalCurve] = {}
    for c in curves:
        seen.setdefault(c.weights, c)
    return list(seen.values())


def check_pattern(curves: list[NormalCurve], expected, what: str) -> None:
    """Assert ``i(curves[a], curves[b]) == expected(a, b)`` for all pairs."""
    for a in range(len(curves)):
        for b in range(a + 1, len(curves)):
            got = intersection_number(curves[a], curves[b])
            want = expected(a, b)
            if got != want:
                raise ConstructionError(
                    f"{what}: i({curves[a].label}, {curves[b].label}) = {got}, expected {want}"
                )


def check_unique(A: Iterable[NormalCurve], target: NormalCurve, what: str) -> None:
    from ..expansion import determine

    res = determine(list(A))
    if res.verdict != "unique" or res.curve != target:
        raise ConstructionError(f"{what}: determination gave {res.verdict}")
