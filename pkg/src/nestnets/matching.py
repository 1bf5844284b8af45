"""Maximum bipartite matching via augmenting paths."""

from __future__ import annotations

from typing import Sequence


def max_matching_size(adjacency: Sequence[Sequence[int]], n_right: int) -> int:
    """Size of a maximum matching.

    adjacency[i] lists the right-side vertices compatible with left vertex i.
    """
    match_right: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for j in adjacency[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match_right or augment(match_right[j], seen):
                match_right[j] = i
                return True
        return False

    size = 0
    for i in range(len(adjacency)):
        if augment(i, set()):
            size += 1
    return size


def has_perfect_left_matching(adjacency: Sequence[Sequence[int]], n_right: int) -> bool:
    """True when every left vertex can be matched to a distinct right vertex."""
    return max_matching_size(adjacency, n_right) == len(adjacency)
