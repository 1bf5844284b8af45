"""Finite multisets over hashable elements.

The algebra is the usual one: sum is pointwise addition of counts,
difference is truncated at zero, and inclusion is pointwise <= on counts.
Counts are plain Python ints, so they never overflow; negative counts are
rejected at construction.

Iteration and rendering use a canonical order so that equal multisets
always print and enumerate identically.  Elements are sorted by
``sort_key(element)``, which handles strings, int tuples and any object
exposing its own ``sort_key()`` (nested tokens do).
"""

from __future__ import annotations

from typing import Any, Iterable, Iterator, Mapping


def sort_key(element: Any) -> Any:
    """Canonical ordering key for a multiset element."""
    key = getattr(element, "sort_key", None)
    if key is not None:
        return key()
    return element


class Multiset:
    """Immutable finite multiset.

    ``Multiset(iterable)`` counts occurrences; ``Multiset.from_counts``
    takes an element -> count mapping.  Zero counts are dropped, negative
    counts raise ValueError.
    """

    __slots__ = ("_counts", "_hash")

    def __init__(self, elements: Iterable[Any] = ()):
        counts: dict[Any, int] = {}
        for e in elements:
            counts[e] = counts.get(e, 0) + 1
        self._counts = counts
        self._hash: int | None = None

    @classmethod
    def from_counts(cls, counts: Mapping[Any, int]) -> "Multiset":
        m = cls()
        for e, c in counts.items():
            if not isinstance(c, int):
                raise ValueError(f"count for {e!r} must be an int, got {type(c).__name__}")
            if c < 0:
                raise ValueError(f"negative count {c} for {e!r}")
            if c > 0:
                m._counts[e] = c
        return m

    def count(self, element: Any) -> int:
        return self._counts.get(element, 0)

    def support(self) -> list:
        """Distinct elements, canonically ordered."""
        return sorted(self._counts, key=sort_key)

    def items(self) -> list[tuple[Any, int]]:
        """(element, count) pairs in canonical element order."""
        return [(e, self._counts[e]) for e in self.support()]

    def total(self) -> int:
        """Cardinality counting multiplicity."""
        return sum(self._counts.values())

    def elements(self) -> list:
        """All elements with multiplicity, canonically ordered."""
        out = []
        for e, c in self.items():
            out.extend([e] * c)
        return out

    def __len__(self) -> int:
        return self.total()

    def __iter__(self) -> Iterator[Any]:
        return iter(self.elements())

    def __contains__(self, element: Any) -> bool:
        return element in self._counts

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __add__(self, other: "Multiset") -> "Multiset":
        if not isinstance(other, Multiset):
            return NotImplemented
        counts = dict(self._counts)
        for e, c in other._counts.items():
            counts[e] = counts.get(e, 0) + c
        return Multiset.from_counts(counts)

    def __sub__(self, other: "Multiset") -> "Multiset":
        """Truncated difference: counts never go below zero."""
        if not isinstance(other, Multiset):
            return NotImplemented
        counts = {}
        for e, c in self._counts.items():
            d = c - other.count(e)
            if d > 0:
                counts[e] = d
        return Multiset.from_counts(counts)

    def __mul__(self, n: int) -> "Multiset":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError(f"cannot scale a multiset by {n}")
        return Multiset.from_counts({e: c * n for e, c in self._counts.items()})

    __rmul__ = __mul__

    def leq(self, other: "Multiset") -> bool:
        """Multiset inclusion: every count here is <= the count in other."""
        return all(c <= other.count(e) for e, c in self._counts.items())

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def sort_key(self) -> tuple:
        """Key ordering multisets among themselves (used for canonical forms)."""
        return tuple((sort_key(e), c) for e, c in self.items())

    def __str__(self) -> str:
        return "{{" + ", ".join(str(e) for e in self.elements()) + "}}"

    def __repr__(self) -> str:
        return f"Multiset({self.elements()!r})"


EMPTY = Multiset()
