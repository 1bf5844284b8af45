"""Object systems: nets whose tokens carry markings of other nets.

A system net moves structured tokens around; each system place is typed by
an object net, and a token on that place is the pair (place, marking of
the object net).  Places typed by the empty net carry plain black tokens,
i.e. their inner marking is always empty.

Steps are events: a system transition paired with, per object net, a
multiset of that net's transitions to fire synchronously on the moved
tokens.  An event fires in a mode (lam, rho) where lam is the multiset of
tokens consumed and rho the multiset produced.  The mode is legal when

  1. lam sits exactly on the transition's input places,
  2. rho sits exactly on its output places,
  3. per object net, the consumed tokens jointly contain enough inner
     tokens for the synchronized transitions, and
  4. per object net, rho redistributes exactly the consumed inner tokens
     after the synchronized transitions have fired.

The redistribution is aggregate: inner tokens of equally typed inputs may
be split and merged freely across equally typed outputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .matching import has_perfect_left_matching
from .multisets import EMPTY, Multiset
from .petri import BLACK, BLACK_ID, NotEnabledError, PetriNet

IDLE_PREFIX = "idle::"


def idle_id(place: str) -> str:
    return IDLE_PREFIX + place


@dataclass(frozen=True)
class NestedToken:
    """A token of the system net: a place plus an inner marking."""

    place: str
    inner: Multiset

    def sort_key(self) -> tuple:
        return (self.place, self.inner.sort_key())

    def __str__(self) -> str:
        entries = " ".join(f"{p}:{c}" for p, c in self.inner.items())
        return f"{self.place} {{ {entries} }}" if entries else f"{self.place} {{ }}"


@dataclass(frozen=True)
class Event:
    """A system transition plus the object transitions fired alongside it.

    theta maps object net ids to multisets of that net's transitions; nets
    missing from the map fire nothing.
    """

    name: str
    transition: str
    theta: tuple[tuple[str, Multiset], ...] = ()

    @classmethod
    def make(cls, name: str, transition: str, theta: Mapping[str, Multiset] | None = None) -> "Event":
        entries = tuple(sorted((n, ms) for n, ms in (theta or {}).items() if ms))
        return cls(name, transition, entries)

    def theta_of(self, net_id: str) -> Multiset:
        for n, ms in self.theta:
            if n == net_id:
                return ms
        return EMPTY


@dataclass(frozen=True)
class EventMode:
    """A concrete way to fire an event: consumed and produced tokens."""

    event: Event
    lam: Multiset
    rho: Multiset

    def sort_key(self) -> tuple:
        return (self.event.name, self.lam.sort_key(), self.rho.sort_key())


def project_system(marking: Multiset) -> Multiset:
    """Forget inner markings: the multiset of occupied system places."""
    counts: dict[str, int] = {}
    for tok, c in marking.items():
        counts[tok.place] = counts.get(tok.place, 0) + c
    return Multiset.from_counts(counts)


def _selections(avail: Sequence[tuple[NestedToken, int]], need: int) -> Iterator[dict[NestedToken, int]]:
    """All ways to take exactly `need` tokens from (token, available) pairs."""
    if need == 0:
        yield {}
        return
    if not avail:
        return
    tok, have = avail[0]
    for k in range(min(have, need), -1, -1):
        for rest in _selections(avail[1:], need - k):
            sel = dict(rest)
            if k:
                sel[tok] = k
            yield sel


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` non-negative ints summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _distributions(aggregate: Multiset, slots: int) -> Iterator[list[Multiset]]:
    """All ways to split a multiset across `slots` ordered slots."""
    if slots == 0:
        if not aggregate:
            yield []
        return
    items = aggregate.items()
    per_element = [list(_compositions(c, slots)) for _, c in items]
    for combo in itertools.product(*per_element):
        parts: list[dict] = [{} for _ in range(slots)]
        for (element, _), comp in zip(items, combo):
            for i, k in enumerate(comp):
                if k:
                    parts[i][element] = k
        yield [Multiset.from_counts(d) for d in parts]


class ObjectSystem:
    """System net + typed places + object nets + events.

    Idle transitions (consume and reproduce one token on a single place)
    are synthesized for every system place at construction under ids
    ``idle::<place>``; input descriptions never list them.  Events may
    reference an idle transition, in which case they must fire at least
    one object transition.
    """

    def __init__(
        self,
        system: PetriNet,
        object_nets: Iterable[PetriNet],
        typing: Mapping[str, str],
        events: Iterable[Event] = (),
    ):
        nets: dict[str, PetriNet] = {}
        for net in object_nets:
            if net.name in nets:
                raise ValueError(f"duplicate object net id {net.name!r}")
            nets[net.name] = net
        if BLACK_ID in nets:
            if nets[BLACK_ID].places or nets[BLACK_ID].transitions:
                raise ValueError(f"object net id {BLACK_ID!r} is reserved for the empty net")
        else:
            nets[BLACK_ID] = BLACK
        self.object_nets = nets

        for t in system.transitions:
            if t.startswith(IDLE_PREFIX):
                raise ValueError(f"transition id {t!r} uses the reserved idle namespace")
        with_idles = PetriNet(
            system.name,
            system.places,
            system.transitions + tuple(idle_id(p) for p in system.places),
            dict(system.pre) | {idle_id(p): Multiset([p]) for p in system.places},
            dict(system.post) | {idle_id(p): Multiset([p]) for p in system.places},
        )
        self.system = with_idles

        # ids must be globally unique across the system net and all object nets
        seen: dict[str, str] = {}
        def claim(ids: Iterable[str], owner: str) -> None:
            for i in ids:
                if i in seen:
                    raise ValueError(f"id {i!r} used by both {seen[i]} and {owner}")
                seen[i] = owner
        claim(self.system.places, "system places")
        claim(self.system.transitions, "system transitions")
        for net in nets.values():
            claim(net.places, f"object net {net.name} places")
            claim(net.transitions, f"object net {net.name} transitions")

        self.typing = dict(typing)
        if set(self.typing) != set(system.places):
            missing = set(system.places) - set(self.typing)
            extra = set(self.typing) - set(system.places)
            raise ValueError(f"typing must cover system places exactly (missing {sorted(missing)}, extra {sorted(extra)})")
        for p, n in self.typing.items():
            if n not in nets:
                raise ValueError(f"place {p!r} typed by unknown object net {n!r}")

        self.events = tuple(events)
        names = set()
        for e in self.events:
            if e.name in names:
                raise ValueError(f"duplicate event name {e.name!r}")
            names.add(e.name)
            self.system.pre_of(e.transition)  # raises on unknown transition
            fires_something = False
            for net_id, ms in e.theta:
                if net_id not in nets:
                    raise ValueError(f"event {e.name!r} synchronizes unknown object net {net_id!r}")
                for t in ms.support():
                    nets[net_id].pre_of(t)  # raises on unknown transition
                fires_something = fires_something or bool(ms)
            if e.transition.startswith(IDLE_PREFIX) and not fires_something:
                raise ValueError(f"event {e.name!r} rides an idle transition but fires no object transition")

    # -- markings ----------------------------------------------------------

    def validate_marking(self, marking: Multiset) -> None:
        for tok in marking.support():
            if not isinstance(tok, NestedToken):
                raise ValueError(f"marking element {tok!r} is not a token")
            if tok.place not in self.typing:
                raise ValueError(f"token on unknown system place {tok.place!r}")
            net = self.object_nets[self.typing[tok.place]]
            allowed = set(net.places)
            for p in tok.inner.support():
                if p not in allowed:
                    raise ValueError(
                        f"token on {tok.place!r} (type {net.name}) has inner token on foreign place {p!r}"
                    )

    def project_object(self, marking: Multiset, net_id: str) -> Multiset:
        """Combined inner marking of all tokens typed by the given net."""
        if net_id not in self.object_nets:
            raise ValueError(f"unknown object net {net_id!r}")
        out = EMPTY
        for tok, c in marking.items():
            if self.typing.get(tok.place) == net_id:
                out = out + tok.inner * c
        return out

    # -- enabledness -------------------------------------------------------

    def phi(self, event: Event, lam: Multiset, rho: Multiset) -> bool:
        """The mode predicate: see the module docstring, conditions 1 to 4."""
        if project_system(lam) != self.system.pre_of(event.transition):
            return False
        if project_system(rho) != self.system.post_of(event.transition):
            return False
        for net_id, net in self.object_nets.items():
            ts = event.theta_of(net_id)
            need = net.pre_sum(ts)
            have = self.project_object(lam, net_id)
            if not need.leq(have):
                return False
            if self.project_object(rho, net_id) != have - need + net.post_sum(ts):
                return False
        return True

    def enabled(self, marking: Multiset, mode: EventMode) -> bool:
        return mode.lam.leq(marking) and self.phi(mode.event, mode.lam, mode.rho)

    def enabled_modes(self, marking: Multiset, event: Event) -> list[EventMode]:
        """All modes of an event enabled at a marking, canonically ordered.

        Consumed tokens are chosen per input place; produced inner tokens
        are distributed over output places of the same type in every
        possible way.  Symmetric choices collapse to one mode.
        """
        tpre = self.system.pre_of(event.transition)
        tpost = self.system.post_of(event.transition)

        by_place: dict[str, list[tuple[NestedToken, int]]] = {}
        for tok, c in marking.items():
            by_place.setdefault(tok.place, []).append((tok, c))

        per_place: list[list[dict[NestedToken, int]]] = []
        for p, need in tpre.items():
            sels = list(_selections(by_place.get(p, []), need))
            if not sels:
                return []
            per_place.append(sels)

        slots_by_net: dict[str, list[str]] = {}
        for p, c in tpost.items():
            slots_by_net.setdefault(self.typing[p], []).extend([p] * c)

        modes: dict[tuple, EventMode] = {}
        for combo in itertools.product(*per_place):
            lam_counts: dict[NestedToken, int] = {}
            for sel in combo:
                for tok, k in sel.items():
                    lam_counts[tok] = lam_counts.get(tok, 0) + k
            lam = Multiset.from_counts(lam_counts)

            aggregates: dict[str, Multiset] = {}
            feasible = True
            for net_id, net in self.object_nets.items():
                ts = event.theta_of(net_id)
                need = net.pre_sum(ts)
                have = self.project_object(lam, net_id)
                if not need.leq(have):
                    feasible = False
                    break
                agg = have - need + net.post_sum(ts)
                if agg and not slots_by_net.get(net_id):
                    feasible = False
                    break
                aggregates[net_id] = agg
            if not feasible:
                continue

            net_order = sorted(slots_by_net)
            per_net = [
                list(_distributions(aggregates.get(net_id, EMPTY), len(slots_by_net[net_id])))
                for net_id in net_order
            ]
            for assignment in itertools.product(*per_net):
                tokens: list[NestedToken] = []
                for net_id, inners in zip(net_order, assignment):
                    for place, inner in zip(slots_by_net[net_id], inners):
                        tokens.append(NestedToken(place, inner))
                rho = Multiset(tokens)
                mode = EventMode(event, lam, rho)
                modes[(lam.sort_key(), rho.sort_key())] = mode
        return [modes[k] for k in sorted(modes)]

    def all_modes(self, marking: Multiset) -> list[EventMode]:
        """Enabled modes of every event, in event declaration order."""
        out: list[EventMode] = []
        for e in self.events:
            out.extend(self.enabled_modes(marking, e))
        return out

    # -- structure ---------------------------------------------------------

    def is_conservative(self) -> bool:
        """Every consumed token type reappears among the produced places.

        For each system transition, each input place's type must also be
        the type of some output place, so object tokens are never dropped.
        """
        for t in self.system.transitions:
            out_types = {self.typing[p] for p in self.system.post_of(t).support()}
            for p in self.system.pre_of(t).support():
                if self.typing[p] not in out_types:
                    return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ObjectSystem):
            return NotImplemented
        return (
            self.system == other.system
            and self.object_nets == other.object_nets
            and self.typing == other.typing
            and self.events == other.events
        )

    def __repr__(self) -> str:
        return (
            f"ObjectSystem({self.system.name!r}, {len(self.system.places)} places, "
            f"{len(self.events)} events, {len(self.object_nets)} object nets)"
        )


def fire(marking: Multiset, mode: EventMode) -> Multiset:
    """Replace the consumed tokens with the produced ones."""
    if not mode.lam.leq(marking):
        raise NotEnabledError(f"event {mode.event.name!r}: consumed tokens {mode.lam} not present in {marking}")
    return marking - mode.lam + mode.rho


def covers(marking: Multiset, target: Multiset) -> bool:
    """Token-wise domination: an injective, place-respecting assignment of
    target tokens to marking tokens whose inner markings dominate them."""
    target_places = {tok.place for tok in target.support()}
    for place in target_places:
        left = [tok for tok in target.elements() if tok.place == place]
        right = [tok for tok in marking.elements() if tok.place == place]
        if len(left) > len(right):
            return False
        adjacency = [
            [j for j, r in enumerate(right) if l.inner.leq(r.inner)]
            for l in left
        ]
        if not has_perfect_left_matching(adjacency, len(right)):
            return False
    return True
