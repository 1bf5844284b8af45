"""Multisets and plain place/transition nets, the two bottom layers.

Run with:  python3 demos/01_multisets.py
"""

from nestnets import Multiset, PetriNet

# -- multisets -------------------------------------------------------------

a = Multiset(["p", "p", "q"])
b = Multiset(["p", "r"])

print("a        =", a)
print("b        =", b)
print("a + b    =", a + b)
print("a - b    =", a - b, " (subtraction never goes negative)")
print("a * 3    =", a * 3)
print("b <= a+b =", b.leq(a + b))
print()

# Iteration and rendering are canonically sorted, so equal multisets
# always look the same and can be compared as strings.
print("support of a + b:", (a + b).support())
print("counts:", (a + b).items())
print()

# -- a small net -------------------------------------------------------------

# Two producers feed one consumer that needs a token from each.
net = PetriNet(
    "handshake",
    places=("left", "right", "done"),
    transitions=("meet",),
    pre={"meet": Multiset(["left", "right"])},
    post={"meet": Multiset(["done"])},
)

marking = Multiset(["left", "left", "right"])
print("start     :", marking)
print("enabled   :", net.enabled(marking, "meet"))
marking = net.fire(marking, "meet")
print("after meet:", marking)
print("enabled   :", net.enabled(marking, "meet"), " (no right token left)")
