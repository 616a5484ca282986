import random

from walkmine.bitset import VertexSet, mask_of
from walkmine.oracle import minimal_covers_bruteforce
from walkmine.setcover import minimal_covers


def test_empty_target_has_the_empty_cover():
    assert minimal_covers(0, [(0, 0b1)]) == [()]


def test_uncoverable_target_yields_nothing():
    assert minimal_covers(0b100, [(0, 0b011)]) == []


def test_single_and_joint_covers():
    # v3 covers both elements; v1 and v2 must pair up
    cands = [(1, 0b01), (2, 0b10), (3, 0b11)]
    assert minimal_covers(0b11, cands) == [(1, 2), (3,)]


def test_redundant_members_never_appear():
    cands = [(1, 0b11), (2, 0b01)]
    assert minimal_covers(0b11, cands) == [(1,)]


def test_candidates_outside_target_are_trimmed():
    # images are intersected with the target before covering
    cands = [(1, 0b111), (2, 0b001)]
    assert minimal_covers(0b001, cands) == [(1,), (2,)]


def test_deterministic_lexicographic_order():
    cands = [(5, 0b10), (1, 0b01), (3, 0b11)]
    out = minimal_covers(0b11, cands)
    assert out == sorted(out)
    assert out == [(1, 5), (3,)]


def test_matches_bruteforce_on_random_instances():
    rng = random.Random(17)
    for _ in range(300):
        n = rng.randint(1, 9)
        pool = list(range(n))
        images = {v: mask_of(i for i in range(6) if rng.random() < 0.3) for v in pool}
        target = mask_of(i for i in range(6) if rng.random() < 0.5)
        got = minimal_covers(target, [(v, images[v]) for v in pool])
        want = minimal_covers_bruteforce(
            VertexSet.from_ids(n, pool) if pool else VertexSet(0),
            {v: VertexSet(6, images[v] & target) for v in pool},
            VertexSet(6, target),
        )
        assert {frozenset(c) for c in got} == {frozenset(w.ids()) for w in want}
        # each result is itself minimal
        for cover in got:
            union = 0
            for v in cover:
                union |= images[v]
            assert target & ~union == 0
            for v in cover:
                rest = 0
                for u in cover:
                    if u != v:
                        rest |= images[u]
                assert target & ~rest != 0
