"""The text formats, DOT export, and where the command line does the same.

Run with:  python3 demos/05_formats_and_cli.py
"""

from nestnets import (
    dot_nunet,
    dot_object_system,
    parse_nunet,
    print_nunet,
    print_object_system,
    reduce_nunet,
    sniff_format,
)

SOURCE = """\
# move a name from p to q, mint a fresh one on p
nupn d0
places p q
vars x
fresh nu
trans t1
  in p : x
  out q : x
  out p : nu
end
init [1 0]
target [0 1]
"""

net, init, target = parse_nunet(SOURCE)
print("parsed:", net.name, "with init", init, "and target", target)
print()

# Printing is canonical: whatever order the file declared things in, the
# printed form is the same, and parsing it back gives an equal net.
canonical = print_nunet(net, init, target)
print(canonical)
reparsed, init2, target2 = parse_nunet(canonical)
assert reparsed == net and init2 == init and target2 == target
assert print_nunet(reparsed, init2, target2) == canonical

# The same holds for object systems; the compiled form of a net is just
# another object system file.
compiled = reduce_nunet(net)
text = print_object_system(compiled.system, init=None)
print(text)
assert sniff_format(text) == "eos"

# DOT output is for the eyeball check: places as circles, transitions as
# boxes, object nets in their own clusters.
print("--- dot, first lines ---")
print("\n".join(dot_nunet(net).splitlines()[:6]))
print("...")
print("\n".join(dot_object_system(compiled.system).splitlines()[:4]))
print("...")

# The command line wraps all of the above on files:
#
#   nestnets validate model.nupn              syntax + well-formedness
#   nestnets simulate model.nupn --steps 10   random walk from init
#   nestnets reduce model.nupn -o out.eos     compile, keep the id table
#   nestnets cover model.nupn --target '[0 1]' --depth 3
#   nestnets cover-transfer model.nupn --target '[0 1]' --depth 2
#   nestnets check-lemma model.nupn --random --trials 20
#   nestnets dot model.nupn -o model.dot
#
# Exit codes: 0 ok/covered/pass, 1 bad input, 2 not covered within the
# depth, 3 search budget exhausted, 4 a check found a mismatch.
