"""Graphviz DOT export.

Places are circles (triangles when they hold plain black tokens),
transitions are boxes, object nets sit in their own clusters, and nested
tokens attach to their place as dashed sub-clusters.  Output is fully
deterministic: nodes follow declaration order, tokens canonical order.
"""

from __future__ import annotations

from .multisets import Multiset
from .nunet import NuNet
from .objectsystem import IDLE_PREFIX, ObjectSystem
from .petri import BLACK_ID, PetriNet


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _inner_text(inner: Multiset) -> str:
    entries = " ".join(f"{p}:{c}" for p, c in inner.items())
    return "{ " + entries + " }" if entries else "{ }"


def dot_nunet(net: NuNet) -> str:
    out = ["digraph nunet {", "  rankdir=LR;"]
    for p in net.places:
        out.append(f"  {_q(p)} [shape=circle];")
    for t in net.transitions:
        out.append(f"  {_q(t)} [shape=box];")
    for t in net.transitions:
        for p in net.places:
            if p in net.inflow[t]:
                label = ", ".join(net.inflow[t][p].elements())
                out.append(f"  {_q(p)} -> {_q(t)} [label={_q(label)}];")
            if p in net.outflow[t]:
                label = ", ".join(net.outflow[t][p].elements())
                out.append(f"  {_q(t)} -> {_q(p)} [label={_q(label)}];")
    out.append("}")
    return "\n".join(out) + "\n"


def _emit_plain_net(out: list[str], net: PetriNet, indent: str) -> None:
    for p in net.places:
        out.append(f"{indent}{_q(p)} [shape=circle];")
    for t in net.transitions:
        out.append(f"{indent}{_q(t)} [shape=box];")
    for t in net.transitions:
        for p, k in net.pre[t].items():
            label = f" [label={_q(str(k))}]" if k > 1 else ""
            out.append(f"{indent}{_q(p)} -> {_q(t)}{label};")
        for p, k in net.post[t].items():
            label = f" [label={_q(str(k))}]" if k > 1 else ""
            out.append(f"{indent}{_q(t)} -> {_q(p)}{label};")


def dot_object_system(system: ObjectSystem, marking: Multiset | None = None) -> str:
    out = ["digraph system {", "  rankdir=LR;"]
    for net in system.object_nets.values():
        if net.name == BLACK_ID or (not net.places and not net.transitions):
            continue
        out.append(f"  subgraph {_q('cluster_' + net.name)} {{")
        out.append(f"    label={_q(net.name)};")
        _emit_plain_net(out, net, "    ")
        out.append("  }")

    sysnet = system.system
    events_on = {}
    for e in system.events:
        events_on.setdefault(e.transition, []).append(e)
    for p in sysnet.places:
        shape = "triangle" if system.typing[p] == BLACK_ID else "circle"
        out.append(f"  {_q(p)} [shape={shape}];")
    for t in sysnet.transitions:
        if t.startswith(IDLE_PREFIX):
            continue
        label_lines = [t]
        for e in events_on.get(t, []):
            clauses = "; ".join(f"{nid}: " + " ".join(ms.elements()) for nid, ms in e.theta)
            if clauses:
                label_lines.append(f"{e.name} ⟨{clauses}⟩")
            elif e.name != t:
                label_lines.append(e.name)
        out.append(f"  {_q(t)} [shape=box, label={_q(chr(10).join(label_lines))}];")
    for t in sysnet.transitions:
        if t.startswith(IDLE_PREFIX):
            continue
        for p, k in sysnet.pre[t].items():
            label = f" [label={_q(str(k))}]" if k > 1 else ""
            out.append(f"  {_q(p)} -> {_q(t)}{label};")
        for p, k in sysnet.post[t].items():
            label = f" [label={_q(str(k))}]" if k > 1 else ""
            out.append(f"  {_q(t)} -> {_q(p)}{label};")

    if marking is not None:
        for i, tok in enumerate(marking.elements()):
            node = f"token{i}"
            out.append(f"  subgraph {_q('cluster_' + node)} {{")
            out.append("    style=dashed;")
            out.append('    label="";')
            out.append(f"    {_q(node)} [shape=plaintext, label={_q(_inner_text(tok.inner))}];")
            out.append("  }")
            out.append(f"  {_q(node)} -> {_q(tok.place)} [style=dashed, arrowhead=none];")
    out.append("}")
    return "\n".join(out) + "\n"


def dot_witness(snapshots: list[str], steps: list[str]) -> str:
    """A chain of state snapshots joined by labelled step edges."""
    if len(snapshots) != len(steps) + 1:
        raise ValueError("need one more snapshot than steps")
    out = ["digraph witness {", "  rankdir=TB;"]
    for i, snap in enumerate(snapshots):
        out.append(f"  {_q('s' + str(i))} [shape=box, label={_q(snap)}];")
    for i, step in enumerate(steps):
        out.append(f"  {_q('s' + str(i))} -> {_q('s' + str(i + 1))} [label={_q(step)}];")
    out.append("}")
    return "\n".join(out) + "\n"
