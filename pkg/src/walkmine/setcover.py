"""Enumeration of minimal set covers over bitmask universes."""

from __future__ import annotations

from typing import Sequence


def minimal_covers(target_mask: int, candidates: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    """All minimal covers of ``target_mask`` drawn from ``candidates``.

    ``candidates`` pairs a member id with the mask it covers. A cover is a
    set of members whose masks jointly contain the target; it is minimal when
    dropping any member breaks that. Returns each cover as a sorted id tuple,
    with the whole list sorted lexicographically. An empty target has exactly
    the empty cover.
    """
    if target_mask == 0:
        return [()]
    cands = sorted((vid, img & target_mask) for vid, img in candidates)
    cands = [(vid, img) for vid, img in cands if img]
    results: list[tuple[int, ...]] = []
    emitted: set[frozenset] = set()

    def emit(chosen: list[tuple[int, int]]):
        key = frozenset(vid for vid, _ in chosen)
        if key in emitted:
            return
        # keep only irredundant covers: every member must cover something
        # the others do not
        for i in range(len(chosen)):
            rest = 0
            for j, (_, img) in enumerate(chosen):
                if j != i:
                    rest |= img
            if rest & target_mask == target_mask:
                return
        emitted.add(key)
        results.append(tuple(sorted(key)))

    def search(covered: int, chosen: list, banned: frozenset):
        if covered & target_mask == target_mask:
            emit(chosen)
            return
        # branch on the lowest uncovered element; each surviving cover picks
        # its smallest-id member covering it, so no cover appears twice
        low = (target_mask & ~covered) & -(target_mask & ~covered)
        options = [(vid, img) for vid, img in cands if img & low and vid not in banned]
        skipped: set[int] = set()
        for vid, img in options:
            search(covered | img, chosen + [(vid, img)], banned | frozenset(skipped))
            skipped.add(vid)

    search(0, [], frozenset())
    results.sort()
    return results
