"""Object systems: tokens that are themselves marked nets.

A small courier desk.  Documents (object nets) sit in an inbox; the desk
moves a document to the outbox and drops a receipt on a spool, and the
synchronized object transition stamps the document while it moves.

Run with:  python3 demos/02_object_systems.py
"""

from nestnets import Event, Multiset, NestedToken, ObjectSystem, PetriNet, covers
from nestnets.objectsystem import fire

doc = PetriNet(
    "doc",
    places=("draft", "final"),
    transitions=("stamp",),
    pre={"stamp": Multiset(["draft"])},
    post={"stamp": Multiset(["final"])},
)

desk = PetriNet(
    "desk",
    places=("inbox", "outbox", "spool"),
    transitions=("move",),
    pre={"move": Multiset(["inbox"])},
    post={"move": Multiset(["outbox", "spool"])},
)

system = ObjectSystem(
    system=desk,
    object_nets=[doc],
    typing={"inbox": "doc", "outbox": "doc", "spool": "black"},
    events=[Event.make("process", "move", {"doc": Multiset(["stamp"])})],
)

# A marking is a multiset of nested tokens: a system place plus an inner
# marking of the object net typing that place.
marking = Multiset([
    NestedToken("inbox", Multiset(["draft", "draft"])),
    NestedToken("inbox", Multiset()),
])
print("marking:", marking)

# An event mode fixes which tokens are consumed (lambda) and what is
# produced (rho); enumerating modes answers "how can this event fire?".
for event in system.events:
    for mode in system.enabled_modes(marking, event):
        print(f"  {event.name}: take {mode.lam}  put {mode.rho}")

# The empty inbox token cannot pay for the stamp, so only the loaded one
# moves.  Fire the single mode and look at the result.
mode = system.enabled_modes(marking, system.events[0])[0]
after = fire(marking, mode)
print("after:", after)

# Idle transitions are synthesized per place; an event may ride one to
# update an object in place without moving it.
hold = ObjectSystem(
    system=desk,
    object_nets=[doc],
    typing={"inbox": "doc", "outbox": "doc", "spool": "black"},
    events=[Event.make("hold", "idle::inbox", {"doc": Multiset(["stamp"])})],
)
stamped_in_place = fire(marking, hold.enabled_modes(marking, hold.events[0])[0])
print("hold :", stamped_in_place)

# Coverage compares nested markings token by token: each required token
# must be matched by a distinct token on the same place with at least its
# inner marking.
want = Multiset([NestedToken("outbox", Multiset(["final"]))])
print("covers target", want, "->", covers(after, want))
print("covers target", want, "->", covers(marking, want), "(before the move)")
