"""Bounded exploration, coverability queries, and the two compiler checks."""

import pytest

from nestnets import (
    Multiset,
    NotEnabledError,
    NuNet,
    ObjectSystem,
    PetriNet,
    Reduction,
    SearchLimitReached,
    check_simulation,
    check_transfer,
    cover_nunet,
    cover_object_system,
    encode_config,
    explore_nunet,
    explore_object_system,
    minimal_runs,
    replay_nunet,
    replay_object_system,
)
from nestnets.nunet import config
from nestnets.reduction import max_run_length, reduce_nunet


def d0():
    return NuNet(
        name="d0",
        places=("p", "q"),
        transitions=("t1",),
        standard_vars=("x",),
        fresh_vars=("nu",),
        inflow={"t1": {"p": Multiset(["x"])}},
        outflow={"t1": {"q": Multiset(["x"]), "p": Multiset(["nu"])}},
    )


# -- exploration ----------------------------------------------------------------

def test_explore_nunet_layers():
    net = d0()
    res = explore_nunet(net, config(net, [(1, 0)]), depth=2)
    assert res.states[0] == config(net, [(1, 0)])
    assert res.states[1] == config(net, [(0, 1), (1, 0)])
    assert res.states[2] == config(net, [(0, 1), (0, 1), (1, 0)])
    assert len(res.states) == 3
    assert len(res.edges) == 2
    assert res.depth_reached == 2
    assert not res.frontier_exhausted


def test_explore_closes_finite_spaces():
    # one name that loses its only token: two states, then silence
    net = NuNet("n", ("p",), ("t",), standard_vars=("x",),
                inflow={"t": {"p": Multiset(["x"])}})
    res = explore_nunet(net, config(net, [(1,)]), depth=10)
    assert [s.elements() for s in res.states] == [[(1,)], [(0,)]]
    assert res.frontier_exhausted
    assert res.depth_reached == 1


def test_explore_layer_is_sorted():
    net = d0()
    res = explore_nunet(net, config(net, [(1, 0), (2, 0)]), depth=1)
    layer = res.states[1:]
    assert layer == sorted(layer, key=Multiset.sort_key)
    assert len(layer) == 2  # two distinct picks, dedup'd as configurations


def test_explore_object_system_counts():
    red = reduce_nunet(d0())
    start = encode_config(d0(), config(d0(), [(1, 0)]))
    res = explore_object_system(red.system, start, depth=5)
    assert res.states[0] == start
    assert res.depth_reached == 5
    # one complete gadget run and nothing else: 5 forced steps with one
    # two-way interleaving in the middle
    assert len(res.states) == 7


# -- cover queries ----------------------------------------------------------------

def test_cover_at_depth_zero():
    net = d0()
    init = config(net, [(1, 0)])
    ans = cover_nunet(net, init, Multiset(), 0)
    assert ans.covered and ans.witness == [] and ans.state == init


def test_cover_nunet_shortest_witness():
    net = d0()
    init = config(net, [(1, 0)])
    ans = cover_nunet(net, init, config(net, [(0, 1), (0, 1)]), 5)
    assert ans.covered
    assert len(ans.witness) == 2
    assert replay_nunet(net, init, ans.witness) == ans.state
    from nestnets.nunet import covers
    assert covers(ans.state, config(net, [(0, 1), (0, 1)]))


def test_cover_nunet_miss_reports_depth():
    net = d0()
    ans = cover_nunet(net, config(net, [(1, 0)]), config(net, [(2, 2)]), 3)
    assert not ans.covered
    assert ans.witness is None and ans.state is None
    assert ans.depth == 3
    assert not ans.exhausted


def test_cover_nunet_exhausted():
    net = NuNet("n", ("p",), ("t",), standard_vars=("x",),
                inflow={"t": {"p": Multiset(["x"])}})
    ans = cover_nunet(net, config(net, [(1,)]), config(net, [(2,)]), 50)
    assert not ans.covered
    assert ans.exhausted
    assert ans.depth == 1


def test_cover_exact_flag():
    net = d0()
    init = config(net, [(2, 0)])
    target = config(net, [(1, 0)])
    # embedding: the initial tuple already dominates the target
    assert cover_nunet(net, init, target, 0).covered
    # exact inclusion: the literal tuple only appears after one step
    assert not cover_nunet(net, init, target, 0, exact=True).covered
    hit = cover_nunet(net, init, target, 1, exact=True)
    assert hit.covered and len(hit.witness) == 1


def test_cover_limit():
    net = d0()
    with pytest.raises(SearchLimitReached) as err:
        cover_nunet(net, config(net, [(1, 0)]), config(net, [(9, 9)]), 50, max_states=10)
    assert "max_states" in str(err.value)


def test_cover_object_system_and_replay():
    net = d0()
    red = reduce_nunet(net)
    start = encode_config(net, config(net, [(1, 0)]))
    goal = encode_config(net, config(net, [(0, 1)]))
    ans = cover_object_system(red.system, start, goal, 5)
    assert ans.covered
    assert len(ans.witness) == 5
    assert replay_object_system(red.system, start, ans.witness) == ans.state
    assert cover_object_system(red.system, start, goal, 4).covered is False


def test_replay_rejects_tampered_witness():
    net = d0()
    red = reduce_nunet(net)
    start = encode_config(net, config(net, [(1, 0)]))
    goal = encode_config(net, config(net, [(0, 1)]))
    witness = cover_object_system(red.system, start, goal, 5).witness
    with pytest.raises(NotEnabledError):
        replay_object_system(red.system, start, witness[1:] + witness[:1])
    with pytest.raises(NotEnabledError):
        replay_nunet(net, Multiset(), cover_nunet(net, config(net, [(1, 0)]),
                                                  config(net, [(0, 1)]), 2).witness)


def test_cover_deterministic():
    net = d0()
    init = config(net, [(1, 0), (2, 0)])
    target = config(net, [(0, 1)])
    first = cover_nunet(net, init, target, 4)
    second = cover_nunet(net, init, target, 4)
    assert first.witness == second.witness
    assert first.state == second.state
    r1 = explore_nunet(net, init, 2)
    r2 = explore_nunet(net, init, 2)
    assert r1.states == r2.states and r1.edges == r2.edges


# -- minimal runs of the compiled system ---------------------------------------

def test_d0_minimal_runs_frozen():
    net = d0()
    red = reduce_nunet(net)
    start = encode_config(net, config(net, [(1, 0)]))
    runs = minimal_runs(red, start, max_run_length(net))
    # the two object-update steps commute, everything else is forced
    assert len(runs) == 2
    names = sorted(tuple(m.event.name for m in modes) for modes, _ in runs)
    assert names == [
        ("t1::pick::x", "t1::pick::nu", "t1::fire::nu", "t1::fire::x", "t1::done"),
        ("t1::pick::x", "t1::pick::nu", "t1::fire::x", "t1::fire::nu", "t1::done"),
    ]
    endpoints = {end for _, end in runs}
    assert endpoints == {encode_config(net, config(net, [(0, 1), (1, 0)]))}
    assert all(len(modes) == 5 for modes, _ in runs)


def test_minimal_runs_need_full_length():
    net = d0()
    red = reduce_nunet(net)
    start = encode_config(net, config(net, [(1, 0)]))
    assert minimal_runs(red, start, max_run_length(net) - 1) == []


def test_minimal_runs_reject_non_encoding_start():
    red = reduce_nunet(d0())
    with pytest.raises(ValueError):
        minimal_runs(red, Multiset(), 5)


def test_minimal_runs_budget():
    net = d0()
    red = reduce_nunet(net)
    start = encode_config(net, config(net, [(1, 0), (2, 0)]))
    with pytest.raises(SearchLimitReached):
        minimal_runs(red, start, max_run_length(net), max_expansions=3)


# -- the one-step equivalence check -----------------------------------------------

def test_check_simulation_d0():
    net = d0()
    report = check_simulation(net, config(net, [(1, 0)]))
    assert report.passed
    assert report.s1 == [config(net, [(0, 1), (1, 0)])]
    assert report.s2 == report.s1
    assert report.run_count == 2
    assert report.max_len == 5


def test_check_simulation_empty_configuration():
    net = d0()
    report = check_simulation(net, Multiset())
    assert report.passed
    assert report.s1 == [] and report.s2 == []
    assert report.run_count == 0


def test_check_simulation_bare_transition():
    # a variable-free transition compiles to a control no-op whose one-step
    # runs decode back to the unchanged configuration
    net = NuNet("n", ("p",), ("t",))
    report = check_simulation(net, config(net, [(2,)]))
    assert report.passed
    assert report.s1 == [config(net, [(2,)])]
    assert report.run_count == 1


def _reduction_with_broken_fire(net):
    """Recompile, then make the object-update step ignore its run token."""
    red = reduce_nunet(net)
    hat = red.system.system
    ts = tuple(t for t in hat.transitions if not t.startswith("idle::"))
    pre = {t: hat.pre_of(t) for t in ts}
    post = {t: hat.post_of(t) for t in ts}
    pre["t1::fire::x"] = Multiset(["t1::selected::x"])
    broken = ObjectSystem(
        PetriNet(hat.name, hat.places, ts, pre, post),
        [red.system.object_nets["data"]],
        red.system.typing,
        red.system.events,
    )
    return Reduction(broken, net, red.object_net_id, red.name_table)


def test_check_simulation_detects_broken_gadget():
    net = d0()
    bad = _reduction_with_broken_fire(net)
    report = check_simulation(net, config(net, [(1, 0)]), reduction=bad)
    # the orphaned run token pollutes every endpoint, so no run decodes
    assert not report.passed
    assert report.s2 == []
    assert report.s1 == [config(net, [(0, 1), (1, 0)])]


# -- coverability transfer ---------------------------------------------------------

def test_check_transfer_agrees_on_d0():
    net = d0()
    init = config(net, [(1, 0)])
    covered = check_transfer(net, init, config(net, [(0, 1)]), 1)
    assert covered.agree
    assert covered.source.covered and covered.compiled.covered
    assert covered.budget == 5 and covered.run_bound == 5
    assert len(covered.source.witness) == 1
    assert len(covered.compiled.witness) == 5

    missed = check_transfer(net, init, config(net, [(3, 3)]), 2)
    assert missed.agree
    assert not missed.source.covered and not missed.compiled.covered
    assert missed.budget == 10


def gap_net():
    """Two gadget lengths apart: a cheap creator next to an expensive mover."""
    return NuNet(
        name="gap",
        places=("p", "q"),
        transitions=("tf", "tb"),
        standard_vars=("x", "y"),
        fresh_vars=("nu",),
        inflow={"tb": {"p": Multiset(["x", "y"])}},
        outflow={
            "tf": {"p": Multiset(["nu"])},
            "tb": {"p": Multiset(["x", "y"]), "q": Multiset(["nu"])},
        },
    )


def test_transfer_budget_gap_is_real():
    # The compiled side gets depth * max_run_length steps, but a short
    # gadget (here 3 steps) fits more than `depth` source firings into
    # that budget.  Verdicts can then legitimately differ between depth k
    # on the source and budget k*L on the compilation; agreement is only
    # guaranteed for targets coverable within k steps or not coverable
    # within k*L steps.
    net = gap_net()
    assert max_run_length(net) == 7  # from tb; tf alone runs in 3
    target = config(net, [(1, 0), (1, 0)])
    report = check_transfer(net, Multiset(), target, 1)
    assert not report.source.covered   # two creations cannot fit in one step
    assert report.compiled.covered     # but two cheap gadget runs fit in 7
    assert len(report.compiled.witness) == 6
    assert not report.agree


def test_transfer_gap_closes_at_matching_depth():
    net = gap_net()
    target = config(net, [(1, 0), (1, 0)])
    report = check_transfer(net, Multiset(), target, 2)
    assert report.agree
    assert report.source.covered and report.compiled.covered
