"""Nets whose tokens carry names, abstracted as per-name count vectors.

A configuration is a multiset of int tuples, one tuple per known name,
giving that name's token count on each place (places in declaration
order).  Arcs are labelled with multisets of variables.  Standard
variables range over the names present in the configuration; fresh
variables mint names unseen so far, which is why they may only occur on
output arcs, and there only as a whole singleton label.

A transition fires in a mode that picks one distinct tuple occurrence per
standard variable with enough tokens for that variable's input arcs.  The
picked tuples are updated per variable, every fresh variable contributes
one new tuple, and untouched tuples stay as they are.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .matching import has_perfect_left_matching
from .multisets import EMPTY, Multiset
from .petri import NotEnabledError, _check_id

Flow = Mapping[str, Mapping[str, Multiset]]


class NuNet:
    """Places, transitions, variables and variable-labelled arcs.

    inflow[t][p] is the variable multiset on the arc p -> t, outflow[t][p]
    the one on t -> p.  Missing entries mean no arc.
    """

    def __init__(
        self,
        name: str,
        places: Iterable[str],
        transitions: Iterable[str],
        standard_vars: Iterable[str] = (),
        fresh_vars: Iterable[str] = (),
        inflow: Flow | None = None,
        outflow: Flow | None = None,
    ):
        _check_id("net", name)
        self.name = name
        self.places = tuple(places)
        self.transitions = tuple(transitions)
        self.standard_vars = tuple(standard_vars)
        self.fresh_vars = tuple(fresh_vars)
        ids: dict[str, str] = {}
        for kind, group in (
            ("place", self.places),
            ("transition", self.transitions),
            ("variable", self.standard_vars + self.fresh_vars),
        ):
            for i in group:
                _check_id(kind, i)
                if i in ids:
                    if ids[i] == kind:
                        raise ValueError(f"net {name}: duplicate {kind} id {i!r}")
                    raise ValueError(f"net {name}: id {i!r} used as both {ids[i]} and {kind}")
                ids[i] = kind

        all_vars = set(self.standard_vars) | set(self.fresh_vars)
        place_set = set(self.places)

        def normalize(label: str, flow: Flow | None) -> dict[str, dict[str, Multiset]]:
            out: dict[str, dict[str, Multiset]] = {t: {} for t in self.transitions}
            for t, arcs in (flow or {}).items():
                if t not in out:
                    raise ValueError(f"net {name}: {label} for unknown transition {t!r}")
                for p, ms in arcs.items():
                    if p not in place_set:
                        raise ValueError(f"net {name}: transition {t!r} {label} arc on unknown place {p!r}")
                    for v in ms.support():
                        if v not in all_vars:
                            raise ValueError(f"net {name}: transition {t!r} uses undeclared variable {v!r}")
                    if ms:
                        out[t][p] = ms
            return out

        self.inflow = normalize("input", inflow)
        self.outflow = normalize("output", outflow)

    # -- per-transition views ------------------------------------------------

    def _arc_vars(self, flow: dict[str, dict[str, Multiset]], t: str) -> set[str]:
        if t not in self.inflow:
            raise ValueError(f"net {self.name}: unknown transition {t!r}")
        return {v for ms in flow[t].values() for v in ms.support()}

    def vars_of(self, t: str) -> tuple[str, ...]:
        """Variables on any arc of t, in declaration order."""
        used = self._arc_vars(self.inflow, t) | self._arc_vars(self.outflow, t)
        return tuple(v for v in self.standard_vars + self.fresh_vars if v in used)

    def standard_vars_of(self, t: str) -> tuple[str, ...]:
        return tuple(v for v in self.vars_of(t) if v in set(self.standard_vars))

    def fresh_vars_of(self, t: str) -> tuple[str, ...]:
        return tuple(v for v in self.vars_of(t) if v in set(self.fresh_vars))

    def in_vector(self, t: str, v: str) -> tuple[int, ...]:
        """Tokens demanded per place by variable v on t's input arcs."""
        arcs = self.inflow[t]
        return tuple(arcs.get(p, EMPTY).count(v) for p in self.places)

    def out_vector(self, t: str, v: str) -> tuple[int, ...]:
        arcs = self.outflow[t]
        return tuple(arcs.get(p, EMPTY).count(v) for p in self.places)

    def input_demand(self, t: str) -> Multiset:
        """Multiset of per-variable demand vectors over t's standard variables."""
        return Multiset(self.in_vector(t, x) for x in self.standard_vars_of(t))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NuNet):
            return NotImplemented
        return (
            self.name == other.name
            and self.places == other.places
            and self.transitions == other.transitions
            and self.standard_vars == other.standard_vars
            and self.fresh_vars == other.fresh_vars
            and self.inflow == other.inflow
            and self.outflow == other.outflow
        )

    def __repr__(self) -> str:
        return f"NuNet({self.name!r}, {len(self.places)} places, {len(self.transitions)} transitions)"


def validate(net: NuNet) -> list[str]:
    """Well-formedness violations, empty when the net is usable.

    Checks, per transition: fresh variables only on output arcs; output
    standard variables consumed somewhere on the inputs; output arcs either
    all-standard or exactly one fresh variable.  Net-wide: at least one
    place, and a single designated fresh variable on all creating arcs.
    """
    issues: list[str] = []
    if not net.places:
        issues.append("net must declare at least one place")
    fresh = set(net.fresh_vars)
    creating: dict[str, str] = {}
    for t in net.transitions:
        in_vars = net._arc_vars(net.inflow, t)
        out_vars = net._arc_vars(net.outflow, t)
        for v in sorted(in_vars & fresh):
            issues.append(f"transition {t}: fresh variable {v} on an input arc")
        for v in sorted((out_vars - fresh) - in_vars):
            issues.append(f"transition {t}: output variable {v} not consumed on any input arc")
        for p, ms in sorted(net.outflow[t].items()):
            fresh_here = [v for v in ms.support() if v in fresh]
            if not fresh_here:
                continue
            if len(fresh_here) > 1 or ms.total() != 1:
                issues.append(
                    f"transition {t}: output arc to {p} must be standard variables only"
                    f" or exactly one fresh variable"
                )
            else:
                creating.setdefault(fresh_here[0], f"{t}->{p}")
    if len(creating) > 1:
        names = ", ".join(sorted(creating))
        issues.append(f"output arcs use distinct fresh variables: {names}")
    return issues


def size(net: NuNet) -> int:
    """max(place count, transition count, total arc label weight)."""
    weight = sum(
        ms.total()
        for flow in (net.inflow, net.outflow)
        for arcs in flow.values()
        for ms in arcs.values()
    )
    return max(len(net.places), len(net.transitions), weight)


# -- configurations ----------------------------------------------------------


def config(net: NuNet, vectors: Iterable[Sequence[int]]) -> Multiset:
    """Build a configuration, checking arity and non-negativity."""
    out = []
    for vec in vectors:
        tup = tuple(vec)
        if len(tup) != len(net.places):
            raise ValueError(f"vector {tup} has arity {len(tup)}, net has {len(net.places)} places")
        if any(not isinstance(k, int) or k < 0 for k in tup):
            raise ValueError(f"vector {tup} has a negative or non-integer entry")
        out.append(tup)
    return Multiset(out)


@dataclass(frozen=True)
class NuMode:
    """Chosen tuple occurrence per standard variable.

    Indices refer to the canonical enumeration of the configuration's
    occurrences (Multiset.elements()).
    """

    assignment: tuple[tuple[str, int], ...]

    @classmethod
    def make(cls, pairs: Iterable[tuple[str, int]]) -> "NuMode":
        return cls(tuple(sorted(pairs)))

    def index_of(self, var: str) -> int:
        for v, i in self.assignment:
            if v == var:
                return i
        raise KeyError(var)

    def sort_key(self) -> tuple:
        return self.assignment


def raw_modes(net: NuNet, configuration: Multiset, t: str) -> list[NuMode]:
    """Every enabled assignment of distinct occurrences to variables.

    Equal tuples at different occurrence indices yield distinct entries
    here; enabled_modes collapses them.
    """
    occ = configuration.elements()
    xs = net.standard_vars_of(t)
    demands = {x: net.in_vector(t, x) for x in xs}
    out = []
    for idxs in itertools.permutations(range(len(occ)), len(xs)):
        if all(
            all(d <= m for d, m in zip(demands[x], occ[i]))
            for x, i in zip(xs, idxs)
        ):
            out.append(NuMode.make(zip(xs, idxs)))
    return out


def enabled_modes(net: NuNet, configuration: Multiset, t: str) -> list[NuMode]:
    """Enabled modes deduplicated by effect.

    Two assignments picking equal tuples for every variable fire to the
    same configuration; one representative survives.
    """
    occ = configuration.elements()
    seen: dict[tuple, NuMode] = {}
    for mode in raw_modes(net, configuration, t):
        effect = tuple((v, occ[i]) for v, i in mode.assignment)
        if effect not in seen:
            seen[effect] = mode
    return [seen[k] for k in sorted(seen)]


def fire(net: NuNet, configuration: Multiset, t: str, mode: NuMode) -> Multiset:
    """One step: update the picked tuples, mint the fresh ones."""
    occ = configuration.elements()
    xs = net.standard_vars_of(t)
    if sorted(v for v, _ in mode.assignment) != sorted(xs):
        raise NotEnabledError(f"mode variables {mode.assignment} do not match {t!r} (expects {xs})")
    idxs = [i for _, i in mode.assignment]
    if len(set(idxs)) != len(idxs) or any(i < 0 or i >= len(occ) for i in idxs):
        raise NotEnabledError(f"mode {mode.assignment} does not pick distinct occurrences of {configuration}")
    updated = []
    for x, i in mode.assignment:
        din, dout = net.in_vector(t, x), net.out_vector(t, x)
        if any(d > m for d, m in zip(din, occ[i])):
            raise NotEnabledError(f"occurrence {occ[i]} cannot pay {t!r}'s demand for {x}")
        updated.append(tuple(m - d + o for m, d, o in zip(occ[i], din, dout)))
    consumed = Multiset(occ[i] for i in idxs)
    minted = [net.out_vector(t, v) for v in net.fresh_vars_of(t)]
    return configuration - consumed + Multiset(updated) + Multiset(minted)


def covers(configuration: Multiset, target: Multiset, exact: bool = False) -> bool:
    """Domination of a target configuration.

    Default reading: an injective assignment of target tuples to
    configuration tuples with componentwise <=.  With exact=True plain
    multiset inclusion is required instead.
    """
    if exact:
        return target.leq(configuration)
    left = target.elements()
    right = configuration.elements()
    if len(left) > len(right):
        return False
    adjacency = [
        [
            j
            for j, r in enumerate(right)
            if len(l) == len(r) and all(a <= b for a, b in zip(l, r))
        ]
        for l in left
    ]
    return has_perfect_left_matching(adjacency, len(right))
