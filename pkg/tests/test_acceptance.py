"""One test per advertised guarantee of the workbench.

Each test records a single PASS/FAIL line with the measured quantities
(repeated in the terminal summary by conftest).  Instance sizes follow
the netgen defaults, which keep every case small enough for exhaustive
search and the brute force oracles.
"""

import pathlib
import random
import subprocess
import sys
import time
from collections import Counter

from conftest import record
from netgen import (
    random_config,
    random_marking,
    random_nupn,
    random_object_system,
    random_walk,
    weaken_config,
)
from oracles import eos_mode_keys, eos_successors, nu_mode_effects, nu_successors

from nestnets import (
    Multiset,
    NestedToken,
    NuNet,
    SearchLimitReached,
    check_simulation,
    check_transfer,
    cover_nunet,
    cover_object_system,
    covers,
    decode_config,
    encode_config,
    max_run_length,
    minimal_runs,
    name_table_tsv,
    nu_covers,
    nu_enabled_modes,
    nu_fire,
    nu_size,
    parse_nunet,
    parse_object_system,
    print_nunet,
    print_object_system,
    reduce_nunet,
)
from nestnets.cli import main
from nestnets.objectsystem import fire as eos_fire

DATA = pathlib.Path(__file__).parent / "data"


# -- 1. one-step equivalence ----------------------------------------------------

def test_one_step_equivalence_fuzz():
    rng = random.Random(101)
    start = time.perf_counter()
    checked = 0
    mismatches = 0
    while checked < 200:
        net = random_nupn(rng)
        red = reduce_nunet(net)
        for _ in range(2):
            cfg = random_config(rng, net)
            report = check_simulation(net, cfg, reduction=red)
            checked += 1
            if not report.passed:
                mismatches += 1
    elapsed = time.perf_counter() - start
    record(
        "one-step equivalence",
        mismatches == 0 and elapsed < 60.0,
        f"{checked} configurations on {checked // 2} nets, "
        f"{mismatches} mismatches, {elapsed:.1f}s (limit 60s)",
    )


# -- 2. coverability transfer ---------------------------------------------------

def test_cover_transfer_fuzz():
    # Agreement is guaranteed when the target is coverable within the source
    # depth k, or not coverable even within k steps of slack per gadget step;
    # targets in between can disagree (the compiled side may finish a cheap
    # gadget more often than the budget accounts for) and are regenerated.
    rng = random.Random(202)
    agreed = 0
    disagreed = 0
    regenerated = 0
    while agreed + disagreed < 100:
        net = random_nupn(rng)
        red = reduce_nunet(net)
        bound = max_run_length(net)
        k = rng.randint(1, 3)
        init = random_config(rng, net)
        if rng.random() < 0.5:
            tau = weaken_config(rng, random_walk(rng, net, init, k))
        else:
            tau = random_config(rng, net)
            try:
                probe = cover_nunet(net, init, tau, k * bound, max_states=20000)
            except SearchLimitReached:
                regenerated += 1
                continue
            if probe.covered:
                regenerated += 1
                continue
        try:
            report = check_transfer(net, init, tau, k, max_states=50000, reduction=red)
        except SearchLimitReached:
            regenerated += 1
            continue
        if report.agree:
            agreed += 1
        else:
            disagreed += 1
    record(
        "coverability transfer",
        disagreed == 0,
        f"{agreed + disagreed} instances at depths k <= 3, "
        f"{disagreed} disagreements, {regenerated} regenerated",
    )


# -- 3. conservativity ------------------------------------------------------------

def test_compiled_conservativity():
    rng = random.Random(303)
    nets = 150
    violations = sum(
        1 for _ in range(nets)
        if not reduce_nunet(random_nupn(rng)).system.is_conservative()
    )
    record("conservativity", violations == 0, f"{nets} compiled nets, {violations} violations")


# -- 4. structure counts and build scaling ----------------------------------------

def _ladder(m: int) -> NuNet:
    """m copies of the running transition over one shared place pair;
    every copy contributes arc weight 3, so the size measure is 3m."""
    ts = tuple(f"t{i}" for i in range(m))
    return NuNet(
        "ladder", ("p", "q"), ts,
        standard_vars=("x",), fresh_vars=("nu",),
        inflow={t: {"p": Multiset(["x"])} for t in ts},
        outflow={t: {"q": Multiset(["x"]), "p": Multiset(["nu"])} for t in ts},
    )


def _expected_counts(net: NuNet) -> tuple[int, int]:
    places, transitions = 2, 0
    for t in net.transitions:
        n = len(net.standard_vars_of(t))
        if net.fresh_vars_of(t):
            places += 3 * n + 2
            transitions += 2 * n + 3
        else:
            places += 3 * n
            transitions += 2 * n + 1
    return places, transitions


def test_structure_counts_and_build_scaling():
    rng = random.Random(404)
    nets = 150
    count_failures = 0
    for _ in range(nets):
        net = random_nupn(rng)
        red = reduce_nunet(net)
        places, transitions = _expected_counts(net)
        events = [e for e in red.system.events if not e.name.startswith("idle::")]
        if (len(red.system.system.places), len(events)) != (places, transitions):
            count_failures += 1

    sizes = (5, 17, 34, 67)
    per_unit = []
    largest = 0.0
    for m in sizes:
        net = _ladder(m)
        assert nu_size(net) == 3 * m
        red = reduce_nunet(net)
        assert len(red.system.system.places) == 5 * m + 2
        best = min(_timed_build(net) for _ in range(7))
        largest = best
        per_unit.append(best / (3 * m))
    spread = max(per_unit) / min(per_unit)
    record(
        "structure counts and build scaling",
        count_failures == 0 and spread <= 5.0 and largest < 2.0,
        f"{nets} nets with exact counts ({count_failures} off); build time per "
        f"size unit varies {spread:.1f}x across sizes 15..201 (linear budget 5x), "
        f"largest build {largest * 1000:.0f}ms",
    )


def _timed_build(net: NuNet) -> float:
    start = time.perf_counter()
    reduce_nunet(net)
    return time.perf_counter() - start


# -- 5. running example end to end -------------------------------------------------

def test_running_example_end_to_end():
    net, init, target = parse_nunet((DATA / "d0.nupn").read_text())
    red = reduce_nunet(net)
    enc_init = encode_config(net, init)
    enc_target = encode_config(net, target)

    source = cover_nunet(net, init, target, 1)
    hit = cover_object_system(red.system, enc_init, enc_target, 5)
    miss = cover_object_system(red.system, enc_init, enc_target, 4)
    runs = minimal_runs(red, enc_init, max_run_length(net))
    endpoints = {end.sort_key() for _, end in runs}
    name_sets = {tuple(sorted(mode.event.name for mode in seq)) for seq, _ in runs}
    decoded = {decode_config(net, end).sort_key() for _, end in runs}

    ok = (
        source.covered and source.depth == 1
        and hit.covered and len(hit.witness) == 5
        and not miss.covered and miss.depth == 4
        and len(runs) == 2
        and all(len(seq) == 5 for seq, _ in runs)
        and len(endpoints) == 1 and len(name_sets) == 1
        and decoded == {Multiset([(0, 1), (1, 0)]).sort_key()}
    )
    record(
        "running example",
        ok,
        f"source covers at depth {source.depth}; compiled covers at depth "
        f"{len(hit.witness) if hit.witness is not None else '?'} and not at 4; "
        f"{len(runs)} interleavings of one length-5 run",
    )


# -- 6. mode oracles and order laws ---------------------------------------------

def _random_multiset(rng: random.Random, alphabet: str = "abcd", max_count: int = 3) -> Multiset:
    return Multiset([s for s in alphabet for _ in range(rng.randint(0, max_count))])


def _pointwise_max(a: Multiset, b: Multiset) -> Multiset:
    keys = set(a.support()) | set(b.support())
    return Multiset.from_counts({k: max(a.count(k), b.count(k)) for k in keys})


def _law_case(rng: random.Random) -> bool:
    a = _random_multiset(rng)
    b = _random_multiset(rng)
    c = _random_multiset(rng)
    ca, cb = Counter(dict(a.items())), Counter(dict(b.items()))
    return (
        dict((a + b).items()) == dict(ca + cb)
        and dict((a - b).items()) == dict(ca - cb)
        and (a - b) + b == _pointwise_max(a, b)
        and (a + b) - b == a
        and a + b == b + a
        and (a + b) + c == a + (b + c)
        and a.leq(b) == all(a.count(k) <= b.count(k) for k in a.support())
    )


def _nu_order_case(rng: random.Random) -> bool:
    cfg = Multiset([
        (rng.randint(0, 2), rng.randint(0, 2)) for _ in range(rng.randint(0, 4))
    ])
    once = _weaken_vectors(rng, cfg)
    twice = _weaken_vectors(rng, once)
    return (
        nu_covers(cfg, cfg)
        and nu_covers(cfg, cfg, exact=True)
        and nu_covers(cfg, once)
        and nu_covers(once, twice)
        and nu_covers(cfg, twice)
    )


def _weaken_vectors(rng: random.Random, cfg: Multiset) -> Multiset:
    kept = []
    for vec in cfg:
        if rng.random() < 0.3:
            continue
        kept.append(tuple(max(0, e - rng.randint(0, 1)) for e in vec))
    return Multiset(kept)


def _eos_order_case(rng: random.Random) -> bool:
    marking = Multiset([
        NestedToken(rng.choice("st"), _random_multiset(rng, "ab", 2))
        for _ in range(rng.randint(0, 3))
    ])
    thinner = Multiset([
        NestedToken(tok.place, _weaken_inner(rng, tok.inner))
        for tok in marking if rng.random() < 0.7
    ])
    extra = marking + Multiset([NestedToken("s", Multiset())])
    return covers(marking, marking) and covers(marking, thinner) and covers(extra, marking)


def _weaken_inner(rng: random.Random, inner: Multiset) -> Multiset:
    return Multiset([p for p in inner if rng.random() < 0.6])


def test_mode_oracles_and_order_laws():
    rng = random.Random(606)
    mode_failures = 0
    nu_instances = 0
    for _ in range(150):
        net = random_nupn(rng)
        cfg = random_config(rng, net, max_tuples=4)
        occ = cfg.elements()
        for t in net.transitions:
            nu_instances += 1
            modes = nu_enabled_modes(net, cfg, t)
            effects = {tuple(sorted((x, occ[i]) for x, i in m.assignment)) for m in modes}
            succ = {nu_fire(net, cfg, t, m).sort_key() for m in modes}
            if (
                effects != nu_mode_effects(net, cfg, t)
                or len(effects) != len(modes)
                or succ != nu_successors(net, cfg, t)
            ):
                mode_failures += 1

    eos_instances = 0
    for _ in range(150):
        system = random_object_system(rng)
        marking = random_marking(rng, system, max_tokens=3)
        for event in system.events:
            eos_instances += 1
            modes = system.enabled_modes(marking, event)
            keys = {(mode.lam.sort_key(), mode.rho.sort_key()) for mode in modes}
            succ = {eos_fire(marking, mode).sort_key() for mode in modes}
            if (
                keys != eos_mode_keys(system, marking, event)
                or len(keys) != len(modes)
                or succ != eos_successors(system, marking, event)
            ):
                mode_failures += 1

    cases = 10**4
    law_failures = sum(1 for _ in range(cases) if not _law_case(rng))
    order_failures = sum(1 for _ in range(cases) if not _nu_order_case(rng))
    order_failures += sum(1 for _ in range(cases) if not _eos_order_case(rng))

    record(
        "mode oracles and order laws",
        mode_failures == 0 and law_failures == 0 and order_failures == 0,
        f"{nu_instances}+{eos_instances} mode instances against brute force, "
        f"{cases} algebra cases, {2 * cases} order cases; "
        f"{mode_failures + law_failures + order_failures} failures",
    )


# -- 7. determinism and round trips -----------------------------------------------

def test_determinism_and_round_trips(capsys):
    rng = random.Random(707)
    stable = True

    for _ in range(40):
        net = random_nupn(rng)
        init = random_config(rng, net)
        text = print_nunet(net, init)
        net2, init2, _ = parse_nunet(text)
        stable &= net2 == net and init2 == init
        stable &= print_nunet(net2, init2) == text
        red_a, red_b = reduce_nunet(net), reduce_nunet(net2)
        stable &= print_object_system(red_a.system) == print_object_system(red_b.system)
        stable &= name_table_tsv(red_a) == name_table_tsv(red_b)

    for _ in range(25):
        system = random_object_system(rng)
        marking = random_marking(rng, system)
        text = print_object_system(system, marking)
        system2, marking2, _ = parse_object_system(text)
        stable &= print_object_system(system2, marking2) == text

    def cli_output(*argv: str) -> str:
        assert main(list(argv)) == 0
        return capsys.readouterr().out

    d0 = str(DATA / "d0.nupn")
    for argv in (
        ("simulate", d0, "--steps", "6", "--seed", "5"),
        ("check-lemma", d0, "--random", "--trials", "5", "--seed", "2"),
        ("reduce", d0),
    ):
        stable &= cli_output(*argv) == cli_output(*argv)

    # a fresh interpreter with a different hash seed must print the same bytes
    runs = [
        subprocess.run(
            [sys.executable, "-m", "nestnets.cli", "check-lemma", d0,
             "--random", "--trials", "5", "--seed", "2"],
            capture_output=True, env={"PYTHONHASHSEED": seed, "PATH": ""},
        )
        for seed in ("0", "1")
    ]
    stable &= runs[0].stdout == runs[1].stdout and runs[0].returncode == 0

    record(
        "determinism and round trips",
        stable,
        "65 print/parse round trips exact; repeated seeded runs byte-identical "
        "across interpreters",
    )
