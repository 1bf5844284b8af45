"""Name nets: tokens are names, arcs are labelled with variables, and a
fresh variable mints a name that does not occur anywhere yet.

A configuration is a multiset of vectors, one per name in use: entry i of
a vector counts how often that name sits on place i.  The identity of a
name is its vector, nothing else.

Run with:  python3 demos/03_name_nets.py
"""

from nestnets import (
    Multiset,
    NuNet,
    nu_config,
    nu_covers,
    nu_enabled_modes,
    nu_fire,
    nu_size,
    nu_validate,
)

# One transition: move a name from p to q and mint a fresh one on p.
net = NuNet(
    name="d0",
    places=("p", "q"),
    transitions=("t1",),
    standard_vars=("x",),
    fresh_vars=("nu",),
    inflow={"t1": {"p": Multiset(["x"])}},
    outflow={"t1": {"q": Multiset(["x"]), "p": Multiset(["nu"])}},
)
assert nu_validate(net) == []
print("net size:", nu_size(net))

cfg = nu_config(net, [(1, 0)])  # one name, sitting once on p
print("configuration:", cfg)

# A mode assigns each variable of the transition to a name (an occurrence
# index into the configuration).  Two names with equal vectors are
# interchangeable, so modes are deduplicated by effect.
for mode in nu_enabled_modes(net, cfg, "t1"):
    print("mode:", mode)

after = nu_fire(net, cfg, "t1", nu_enabled_modes(net, cfg, "t1")[0])
print("after t1:", after)
# The moved name now reads (0, 1); the minted one reads (1, 0).

# Another round: now two names qualify for x?  No: only the one on p.
modes = nu_enabled_modes(net, after, "t1")
print("second step has", len(modes), "mode(s)")

# Distinct variables must pick distinct names: a transition that needs
# x and y on p cannot fire with a single name on p.
pair = NuNet(
    "pair", ("p",), ("t",),
    standard_vars=("x", "y"),
    inflow={"t": {"p": Multiset(["x", "y"])}},
    outflow={"t": {"p": Multiset(["x"])}},
)
print("pair net on one name :", len(nu_enabled_modes(pair, nu_config(pair, [(1,)]), "t")), "modes")
print("pair net on two names:", len(nu_enabled_modes(pair, nu_config(pair, [(1,), (1,)]), "t")), "modes")

# Coverage on configurations is the embedding order: an injective matching
# of required vectors to available ones, componentwise at least.
print(nu_covers(after, nu_config(net, [(0, 1)])))   # the moved name suffices
print(nu_covers(after, nu_config(net, [(1, 1)])))   # no single name covers both
