"""Bounded forward exploration, coverability queries, and the two
correctness harnesses for the compiler.

All searches are breadth first with canonical-form deduplication and two
explicit resource bounds: a depth budget and a state cap.  Exceeding the
state cap raises SearchLimitReached; running out of depth is an ordinary
NotCovered answer carrying the depth actually explored.  Exploration
order is canonical everywhere (layers sorted, actions enumerated in
declaration order), so repeated runs produce byte-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable

from .multisets import Multiset
from .nunet import NuNet, NuMode, config as nu_config, covers as nu_covers, enabled_modes as nu_enabled_modes, fire as nu_fire
from .objectsystem import EventMode, ObjectSystem, covers as os_covers, fire as os_fire
from .petri import NotEnabledError
from .reduction import (
    SELECT_TRAN,
    Reduction,
    decode_config,
    encode_config,
    max_run_length,
    reduce_nunet,
)

DEFAULT_MAX_STATES = 10**6


class SearchLimitReached(Exception):
    """A resource cap was hit before the search finished."""

    def __init__(self, limit: str, value: int):
        super().__init__(f"search exceeded {limit} = {value}")
        self.limit = limit
        self.value = value


@dataclass
class ExploreResult:
    """States and edges discovered within the depth budget.

    states are listed layer by layer, each layer canonically sorted;
    edges originate from expanded states only (those strictly below the
    depth budget).  frontier_exhausted reports whether the search closed
    before running out of depth.
    """

    states: list[Multiset]
    edges: list[tuple[Multiset, Any, Multiset]]
    frontier_exhausted: bool
    depth_reached: int


@dataclass
class CoverAnswer:
    """Outcome of a bounded coverability query.

    covered = True comes with the covering state and a shortest witness
    (ties broken canonically); covered = False reports how deep the search
    actually looked and whether it closed the state space.
    """

    covered: bool
    witness: list | None
    state: Multiset | None
    depth: int
    exhausted: bool = False


Successors = Callable[[Multiset], list[tuple[Any, Multiset]]]


def _search(
    initial: Multiset,
    successors: Successors,
    depth: int,
    max_states: int,
    predicate: Callable[[Multiset], bool] | None = None,
):
    """Shared BFS core: explores up to `depth` layers, optionally stopping
    at the canonically first, shallowest state satisfying `predicate`."""
    seen: dict[Multiset, int] = {initial: 0}
    parents: dict[Multiset, tuple[Multiset, Any]] = {}
    states: list[Multiset] = [initial]
    edges: list[tuple[Multiset, Any, Multiset]] = []
    if predicate is not None and predicate(initial):
        return states, edges, False, 0, initial, parents
    frontier = [initial]
    d = 0
    exhausted = False
    while frontier and d < depth:
        layer: list[Multiset] = []
        for s in frontier:
            for action, nxt in successors(s):
                edges.append((s, action, nxt))
                if nxt not in seen:
                    if len(seen) >= max_states:
                        raise SearchLimitReached("max_states", max_states)
                    seen[nxt] = d + 1
                    parents[nxt] = (s, action)
                    layer.append(nxt)
        layer.sort(key=Multiset.sort_key)
        states.extend(layer)
        d += 1
        if predicate is not None:
            for s in layer:
                if predicate(s):
                    return states, edges, False, d, s, parents
        frontier = layer
    if not frontier:
        exhausted = True
        d = max(seen.values())
    return states, edges, exhausted, d, None, parents


def _witness(parents: dict, state: Multiset) -> list:
    path = []
    while state in parents:
        state, action = parents[state]
        path.append(action)
    path.reverse()
    return path


# -- name nets ---------------------------------------------------------------


def _nunet_successors(net: NuNet) -> Successors:
    def successors(configuration: Multiset) -> list[tuple[Any, Multiset]]:
        out = []
        for t in net.transitions:
            for mode in nu_enabled_modes(net, configuration, t):
                out.append(((t, mode), nu_fire(net, configuration, t, mode)))
        return out

    return successors


def explore_nunet(
    net: NuNet, initial: Multiset, depth: int, max_states: int = DEFAULT_MAX_STATES
) -> ExploreResult:
    nu_config(net, initial.elements())  # arity check
    states, edges, exhausted, d, _, _ = _search(initial, _nunet_successors(net), depth, max_states)
    return ExploreResult(states, edges, exhausted, d)


def cover_nunet(
    net: NuNet,
    initial: Multiset,
    target: Multiset,
    depth: int,
    max_states: int = DEFAULT_MAX_STATES,
    exact: bool = False,
) -> CoverAnswer:
    nu_config(net, initial.elements())
    nu_config(net, target.elements())
    states, edges, exhausted, d, hit, parents = _search(
        initial, _nunet_successors(net), depth, max_states,
        predicate=lambda c: nu_covers(c, target, exact=exact),
    )
    if hit is None:
        return CoverAnswer(False, None, None, d, exhausted)
    return CoverAnswer(True, _witness(parents, hit), hit, d)


def replay_nunet(net: NuNet, initial: Multiset, witness: Iterable[tuple[str, NuMode]]) -> Multiset:
    """Fire a witness step by step; raises if any step is not enabled."""
    current = initial
    for t, mode in witness:
        current = nu_fire(net, current, t, mode)
    return current


# -- object systems ------------------------------------------------------------


def _system_successors(system: ObjectSystem) -> Successors:
    def successors(marking: Multiset) -> list[tuple[Any, Multiset]]:
        return [(mode, os_fire(marking, mode)) for mode in system.all_modes(marking)]

    return successors


def explore_object_system(
    system: ObjectSystem, initial: Multiset, depth: int, max_states: int = DEFAULT_MAX_STATES
) -> ExploreResult:
    system.validate_marking(initial)
    states, edges, exhausted, d, _, _ = _search(initial, _system_successors(system), depth, max_states)
    return ExploreResult(states, edges, exhausted, d)


def cover_object_system(
    system: ObjectSystem,
    initial: Multiset,
    target: Multiset,
    depth: int,
    max_states: int = DEFAULT_MAX_STATES,
) -> CoverAnswer:
    system.validate_marking(initial)
    system.validate_marking(target)
    states, edges, exhausted, d, hit, parents = _search(
        initial, _system_successors(system), depth, max_states,
        predicate=lambda m: os_covers(m, target),
    )
    if hit is None:
        return CoverAnswer(False, None, None, d, exhausted)
    return CoverAnswer(True, _witness(parents, hit), hit, d)


def replay_object_system(system: ObjectSystem, initial: Multiset, witness: Iterable[EventMode]) -> Multiset:
    current = initial
    for mode in witness:
        if not system.enabled(current, mode):
            raise NotEnabledError(f"witness step {mode.event.name!r} is not enabled")
        current = os_fire(current, mode)
    return current


# -- compiler harnesses --------------------------------------------------------


def minimal_runs(
    reduction: Reduction,
    start: Multiset,
    max_len: int,
    max_expansions: int = DEFAULT_MAX_STATES,
) -> list[tuple[list[EventMode], Multiset]]:
    """All runs from an encoding that keep the control place empty until
    they end on another encoding, up to max_len steps.

    Runs are mode sequences; interleavings of the commuting object-update
    steps count separately.  Paths reaching a control-marked marking that
    is not an encoding are dead ends and are dropped.
    """
    net = reduction.net
    system = reduction.system
    if decode_config(net, start) is None:
        raise ValueError("start marking is not an encoding of a configuration")
    runs: list[tuple[list[EventMode], Multiset]] = []
    budget = [max_expansions]

    def walk(marking: Multiset, prefix: list[EventMode]) -> None:
        if len(prefix) >= max_len:
            return
        for mode in system.all_modes(marking):
            budget[0] -= 1
            if budget[0] < 0:
                raise SearchLimitReached("max_expansions", max_expansions)
            nxt = os_fire(marking, mode)
            if any(tok.place == SELECT_TRAN for tok in nxt.support()):
                if decode_config(net, nxt) is not None:
                    runs.append((prefix + [mode], nxt))
            else:
                walk(nxt, prefix + [mode])

    walk(start, [])
    return runs


@dataclass
class SimulationReport:
    """One-step equivalence check between a net and its compilation.

    s1: successors of the configuration in the source net.
    s2: decoded endpoints of the minimal runs of the compiled system.
    """

    configuration: Multiset
    s1: list[Multiset]
    s2: list[Multiset]
    run_count: int
    max_len: int
    passed: bool


def check_simulation(
    net: NuNet,
    configuration: Multiset,
    max_len: int | None = None,
    reduction: Reduction | None = None,
    max_expansions: int = DEFAULT_MAX_STATES,
) -> SimulationReport:
    red = reduction if reduction is not None else reduce_nunet(net)
    if max_len is None:
        max_len = max_run_length(net)
    s1 = {
        nu_fire(net, configuration, t, mode)
        for t in net.transitions
        for mode in nu_enabled_modes(net, configuration, t)
    }
    runs = minimal_runs(red, encode_config(net, configuration), max_len, max_expansions)
    s2 = {decode_config(net, end) for _, end in runs}
    return SimulationReport(
        configuration,
        sorted(s1, key=Multiset.sort_key),
        sorted(s2, key=Multiset.sort_key),
        len(runs),
        max_len,
        s1 == s2,
    )


@dataclass
class TransferReport:
    """Coverability agreement between a net and its compilation."""

    source: CoverAnswer
    compiled: CoverAnswer
    depth: int
    budget: int
    run_bound: int

    @property
    def agree(self) -> bool:
        return self.source.covered == self.compiled.covered


def check_transfer(
    net: NuNet,
    initial: Multiset,
    target: Multiset,
    depth: int,
    max_states: int = DEFAULT_MAX_STATES,
    reduction: Reduction | None = None,
) -> TransferReport:
    """Compare a bounded cover query with the same query on the compiled
    system, giving the compiled side one full gadget run per source step."""
    red = reduction if reduction is not None else reduce_nunet(net)
    bound = max_run_length(net)
    source = cover_nunet(net, initial, target, depth, max_states)
    compiled = cover_object_system(
        red.system,
        encode_config(net, initial),
        encode_config(net, target),
        depth * bound,
        max_states,
    )
    return TransferReport(source, compiled, depth, depth * bound, bound)
