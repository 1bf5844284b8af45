"""Place/transition nets with multiset markings.

A net stores, per transition, the multiset of places it consumes from and
the multiset it produces to.  Markings are multisets of place names.  The
empty net (no places, no transitions) is the type of plain black tokens:
its only marking is the empty multiset.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .multisets import EMPTY, Multiset


class NotEnabledError(Exception):
    """Raised when a transition or event is fired without being enabled."""


def _check_id(kind: str, name: str) -> None:
    if not isinstance(name, str) or not name:
        raise ValueError(f"{kind} id must be a non-empty string, got {name!r}")
    if any(ch.isspace() for ch in name) or any(ch in name for ch in "{}[]#;"):
        raise ValueError(f"{kind} id {name!r} contains whitespace or reserved characters")


class PetriNet:
    """A net with multiset arcs.

    pre/post map transition ids to multisets of place ids; transitions
    missing from the mappings get empty pre/post sets.
    """

    def __init__(
        self,
        name: str,
        places: Iterable[str] = (),
        transitions: Iterable[str] = (),
        pre: Mapping[str, Multiset] | None = None,
        post: Mapping[str, Multiset] | None = None,
    ):
        _check_id("net", name)
        self.name = name
        self.places = tuple(places)
        self.transitions = tuple(transitions)
        place_set = set(self.places)
        trans_set = set(self.transitions)
        for p in self.places:
            _check_id("place", p)
        for t in self.transitions:
            _check_id("transition", t)
        if len(place_set) != len(self.places):
            raise ValueError(f"net {name}: duplicate place ids")
        if len(trans_set) != len(self.transitions):
            raise ValueError(f"net {name}: duplicate transition ids")
        if place_set & trans_set:
            raise ValueError(f"net {name}: place and transition ids overlap: {sorted(place_set & trans_set)}")
        self.pre: dict[str, Multiset] = {t: EMPTY for t in self.transitions}
        self.post: dict[str, Multiset] = {t: EMPTY for t in self.transitions}
        for label, given, store in (("pre", pre or {}, self.pre), ("post", post or {}, self.post)):
            for t, ms in given.items():
                if t not in trans_set:
                    raise ValueError(f"net {name}: {label} set for unknown transition {t!r}")
                for p in ms.support():
                    if p not in place_set:
                        raise ValueError(f"net {name}: transition {t!r} {label} uses unknown place {p!r}")
                store[t] = ms

    def pre_of(self, t: str) -> Multiset:
        try:
            return self.pre[t]
        except KeyError:
            raise ValueError(f"net {self.name}: unknown transition {t!r}") from None

    def post_of(self, t: str) -> Multiset:
        try:
            return self.post[t]
        except KeyError:
            raise ValueError(f"net {self.name}: unknown transition {t!r}") from None

    def enabled(self, marking: Multiset, t: str) -> bool:
        return self.pre_of(t).leq(marking)

    def fire(self, marking: Multiset, t: str) -> Multiset:
        if not self.enabled(marking, t):
            raise NotEnabledError(f"net {self.name}: transition {t!r} is not enabled at {marking}")
        return marking - self.pre[t] + self.post[t]

    def pre_sum(self, ts: Multiset) -> Multiset:
        """Combined consumption of a multiset of transitions."""
        out = EMPTY
        for t, c in ts.items():
            out = out + self.pre_of(t) * c
        return out

    def post_sum(self, ts: Multiset) -> Multiset:
        out = EMPTY
        for t, c in ts.items():
            out = out + self.post_of(t) * c
        return out

    def fire_multiset(self, marking: Multiset, ts: Multiset) -> Multiset:
        """Fire a multiset of transitions as one step (summed pre/post)."""
        need = self.pre_sum(ts)
        if not need.leq(marking):
            raise NotEnabledError(f"net {self.name}: transition multiset {ts} is not enabled at {marking}")
        return marking - need + self.post_sum(ts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PetriNet):
            return NotImplemented
        return (
            self.name == other.name
            and self.places == other.places
            and self.transitions == other.transitions
            and self.pre == other.pre
            and self.post == other.post
        )

    def __repr__(self) -> str:
        return f"PetriNet({self.name!r}, {len(self.places)} places, {len(self.transitions)} transitions)"


BLACK_ID = "black"

# The empty net: the type of unstructured tokens.  Its only marking is EMPTY.
BLACK = PetriNet(BLACK_ID)
