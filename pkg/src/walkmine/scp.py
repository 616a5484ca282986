"""Colour programs: simulation, classification, predicates, and mining.

A colour program is a sequence of colour ids. Run from a vertex set, each
step moves to all out-neighbours and keeps those of the step's colour. The
miners search backwards from the target, maintaining triples (suffix, B, M)
whose meaning is: any start set sandwiched between B and M runs the suffix
into the target. The default search keeps that invariant exactly; the
``literal`` fidelity reproduces an uncorrected variant kept for comparison.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .bitset import VertexSet, iter_bits
from .graph import DirectedGraph
from .mining import LITERAL, Budget, MiningConfig, MiningReport
from .setcover import minimal_covers

EXACT = "exact"
FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
COMPLETE_HALT = "complete_halt"


@dataclass(frozen=True)
class Classification:
    """Outcome of running a program: kind, halting data, full trace."""

    kind: str
    halt_step: Optional[int] = None
    partial_halt_steps: tuple[int, ...] = ()
    trace: tuple[VertexSet, ...] = ()

    @property
    def succeeded(self) -> bool:
        return self.kind in (EXACT, FEASIBLE)


def simulate_scp(g: DirectedGraph, source: VertexSet, program: tuple[int, ...]) -> list[VertexSet]:
    """Endpoint trace E0..En of a colour program run from ``source``."""
    trace = [source]
    cur = source.mask
    for c in program:
        cur = g.out_image(cur) & g.color_mask(c)
        trace.append(VertexSet(g.n, cur))
    return trace


def classify_with_masks(
    g: DirectedGraph, source: VertexSet, target: VertexSet, step_masks: list[int]
) -> Classification:
    """Classification core shared by colour and criterion programs.

    ``step_masks[i]`` is the set of vertices the i-th step may keep.
    """
    trace = [source.mask]
    cur = source.mask
    for m in step_masks:
        cur = g.out_image(cur) & m
        trace.append(cur)
    partial = tuple(
        i for i, m in enumerate(step_masks) if trace[i] & ~g.in_image(m)
    )
    halt = next((i for i in range(1, len(trace)) if not trace[i]), None)
    final = trace[-1]
    if halt is not None:
        kind = COMPLETE_HALT
    elif final == target.mask:
        kind = EXACT
    elif final & ~target.mask == 0:
        kind = FEASIBLE
    else:
        kind = INFEASIBLE
    vsets = tuple(VertexSet(g.n, m) for m in trace)
    return Classification(kind, halt, partial, vsets)


def classify_scp(
    g: DirectedGraph, source: VertexSet, target: VertexSet, program: tuple[int, ...]
) -> Classification:
    return classify_with_masks(g, source, target, [g.color_mask(c) for c in program])


# -- predicate algebra --------------------------------------------------------


def _image(g: DirectedGraph, amask: int, c: int) -> int:
    return g.out_image(amask) & g.color_mask(c)


def covers(g: DirectedGraph, A: VertexSet, B: VertexSet, c: int) -> bool:
    """Does the c-coloured out-image of A contain B?"""
    return B.mask & ~_image(g, A.mask, c) == 0


def outspans(g: DirectedGraph, A: VertexSet, B: VertexSet, c: int) -> bool:
    """Does the c-coloured out-image of A leak outside B?"""
    return _image(g, A.mask, c) & ~B.mask != 0


def injects(g: DirectedGraph, A: VertexSet, B: VertexSet, c: int) -> bool:
    """Is the c-coloured out-image of A nonempty and inside B?"""
    img = _image(g, A.mask, c)
    return img != 0 and img & ~B.mask == 0


def spans(g: DirectedGraph, A: VertexSet, B: VertexSet, c: int) -> bool:
    return covers(g, A, B, c) and not outspans(g, A, B, c)


def enumerate_pseudo_bases(
    g: DirectedGraph, pool: VertexSet, B: VertexSet, M: VertexSet, c: int
) -> Iterator[VertexSet]:
    """Minimal subsets of ``pool`` whose c-image covers B without leaving M.

    Members whose own c-image leaks outside M are excluded up front; the
    union of per-member images stays in M exactly when each one does. Yields
    in lexicographic order of sorted member ids.
    """
    if not B:
        raise ValueError("pseudo-bases are defined for nonempty B")
    cmask = g.color_mask(c)
    candidates = []
    for v in pool:
        img = g.out_mask(v) & cmask
        if img & ~M.mask == 0:
            candidates.append((v, img & B.mask))
    for ids in minimal_covers(B.mask, candidates):
        yield VertexSet.from_ids(g.n, ids)


# -- mining -------------------------------------------------------------------


def _colors_in(g: DirectedGraph, mask: int) -> list[int]:
    return [c for c in range(g.num_colors) if mask & g.color_mask(c)]


def _mono_color(g: DirectedGraph, mask: int) -> Optional[int]:
    """The single colour shared by every vertex in ``mask``, if any."""
    present = _colors_in(g, mask)
    if len(present) != 1:
        return None
    c = present[0]
    if mask & ~g.color_mask(c):
        return None  # some member is uncoloured
    return c


def _zero_stats() -> dict:
    return {"triples_expanded": 0, "pseudo_bases": 0, "dedup_hits": 0}


@dataclass
class _LevelState:
    stats: dict = field(default_factory=_zero_stats)
    found: set = field(default_factory=set)
    exhausted: bool = True


def _validate_instance(g: DirectedGraph, source: VertexSet, target: VertexSet):
    if not source or not target:
        raise ValueError("source and target sets must be nonempty")
    if source.size != g.n or target.size != g.n:
        raise ValueError("vertex sets must live in the graph's universe")


def _accept_kinds(mode: str) -> tuple[str, ...]:
    return (EXACT,) if mode == EXACT else (EXACT, FEASIBLE)


def mine_exact_scp(g, source, target, config: MiningConfig) -> Iterator[MiningReport]:
    """One report per length 0..max_len listing all exact colour programs."""
    return _mine_scp(g, source, target, config, EXACT)


def mine_feasible_scp(g, source, target, config: MiningConfig) -> Iterator[MiningReport]:
    """Like :func:`mine_exact_scp` but for feasibility (endpoints inside T)."""
    return _mine_scp(g, source, target, config, FEASIBLE)


def _mine_scp(g, source, target, config, mode) -> Iterator[MiningReport]:
    _validate_instance(g, source, target)
    if config.fidelity == LITERAL:
        yield from _mine_scp_literal(g, source, target, config, mode)
        return
    budget = Budget(config)
    reach = source.mask
    for length in range(config.max_len + 1):
        # reach holds the vertices exactly `length` steps from the source
        if length == 0:
            ok = source == target if mode == EXACT else source.issubset(target)
            yield MiningReport("scp", mode, 0, [()] if ok else [], True, _zero_stats())
        else:
            if mode == EXACT:
                viable = target.mask & ~reach == 0
            else:
                viable = target.mask & reach != 0
            if not viable:
                yield MiningReport("scp", mode, length, [], True, _zero_stats())
            else:
                state = _run_scp_level(g, source, target, length, mode, budget)
                yield MiningReport(
                    "scp", mode, length, sorted(state.found), state.exhausted, state.stats
                )
                if budget.tripped:
                    return
        reach = g.out_image(reach)


def _seeds_repaired(g, source, target, mode):
    if mode == EXACT:
        return [((), target, target)]
    seeds = []
    for c in range(g.num_colors):
        cmask = g.color_mask(c)
        safe = 0
        starters = []
        for v in range(g.n):
            img = g.out_mask(v) & cmask
            if img & ~target.mask == 0:
                safe |= 1 << v
                if img:
                    starters.append(v)
        for v in starters:
            seeds.append(((c,), VertexSet.single(g.n, v), VertexSet(g.n, safe)))
    return seeds


def _run_scp_level(g, source, target, length, mode, budget) -> _LevelState:
    state = _LevelState()
    seeds = _seeds_repaired(g, source, target, mode)
    queue = deque()
    seen = set()
    for p, B, M in seeds:
        if len(p) > length:
            continue
        key = (p, B.mask, M.mask)
        if key not in seen:
            seen.add(key)
            queue.append((p, B, M))
    # positions[j] = vertices exactly j steps from the source
    positions = [source.mask]
    for _ in range(length - 1):
        positions.append(g.out_image(positions[-1]))
    inb_cache: dict[int, int] = {}

    while queue:
        if not budget.charge_triple():
            state.exhausted = False
            break
        p, B, M = queue.popleft()
        state.stats["triples_expanded"] += 1
        n = len(p)
        if n == length:
            if B.mask & ~source.mask == 0 and source.mask & ~M.mask == 0:
                cls = classify_scp(g, source, target, p)
                if cls.kind in _accept_kinds(mode) and p not in state.found:
                    state.found.add(p)
                    budget.charge_program()
            continue
        c = _mono_color(g, B.mask)
        if c is None:
            continue
        cmask = g.color_mask(c)
        base = positions[length - n - 1]
        if B.mask not in inb_cache:
            inb_cache[B.mask] = g.in_image(B.mask)
        inb = inb_cache[B.mask]
        if length == n + 1:
            branches = [base]
        else:
            branches = [g.color_mask(d) & base for d in _colors_in(g, base & inb)]
        newp = (c,) + p
        for branch in branches:
            safe = 0
            for v in iter_bits(branch):
                if g.out_mask(v) & cmask & ~M.mask == 0:
                    safe |= 1 << v
            if not safe:
                continue
            new_m = VertexSet(g.n, safe)
            pool = VertexSet(g.n, safe & inb)
            for basis in enumerate_pseudo_bases(g, pool, B, M, c):
                state.stats["pseudo_bases"] += 1
                key = (newp, basis.mask, safe)
                if key in seen:
                    state.stats["dedup_hits"] += 1
                    continue
                seen.add(key)
                queue.append((newp, basis, new_m))
    return state


# -- literal fidelity ---------------------------------------------------------


def _seeds_literal(g, target, mode):
    if mode == EXACT:
        return [((), target, target)]
    seeds = []
    for c in range(g.num_colors):
        cmask = g.color_mask(c)
        for d in range(g.num_colors):
            safe = 0
            starters = []
            for v in iter_bits(g.color_mask(d)):
                img = g.out_mask(v) & cmask
                if img & ~target.mask == 0:
                    safe |= 1 << v
                    if img:
                        starters.append(v)
            for v in starters:
                seeds.append(((c,), VertexSet.single(g.n, v), VertexSet(g.n, safe)))
    return seeds


def _mine_scp_literal(g, source, target, config, mode) -> Iterator[MiningReport]:
    budget = Budget(config)
    carry = deque(_seeds_literal(g, target, mode))
    reach = source.mask
    for length in range(config.max_len + 1):
        if length == 0:
            ok = source == target if mode == EXACT else source.issubset(target)
            yield MiningReport("scp", mode, 0, [()] if ok else [], True, _zero_stats())
            reach = g.out_image(reach)
            continue
        if target.mask & ~reach != 0:
            # uncorrected rule: only containment levels run, queue untouched
            yield MiningReport("scp", mode, length, [], True, _zero_stats())
            reach = g.out_image(reach)
            continue
        state = _LevelState()
        queue = carry
        carry = deque()
        seen = {(p, B.mask, M.mask) for p, B, M in queue}
        positions = [source.mask]
        for _ in range(length - 1):
            positions.append(g.out_image(positions[-1]))
        while queue:
            if not budget.charge_triple():
                state.exhausted = False
                break
            p, B, M = queue.popleft()
            state.stats["triples_expanded"] += 1
            n = len(p)
            if n == length:
                first_step = g.out_image(B.mask) & g.color_mask(p[0]) if p else B.mask
                if B.mask & ~source.mask == 0 and source.mask & ~g.in_image(first_step) == 0:
                    if p not in state.found:
                        state.found.add(p)
                        budget.charge_program()
                carry.append((p, B, M))
                continue
            for c in _colors_in(g, B.mask):
                pool = positions[length - n - 1] & g.in_image(B.mask)
                newp = (c,) + p
                for d in _colors_in(g, pool):
                    nd = pool if length == n + 1 else g.color_mask(d) & pool
                    if not nd:
                        continue
                    ndset = VertexSet(g.n, nd)
                    for basis in enumerate_pseudo_bases(g, ndset, B, M, c):
                        state.stats["pseudo_bases"] += 1
                        key = (newp, basis.mask, nd)
                        if key in seen:
                            state.stats["dedup_hits"] += 1
                            continue
                        seen.add(key)
                        queue.append((newp, basis, ndset))
        yield MiningReport("scp", mode, length, sorted(state.found), state.exhausted, state.stats)
        if budget.tripped:
            return
        reach = g.out_image(reach)
