import pytest

from cyctori.cycnum import totient
from cyctori.orbits import (CharacterTuple, all_tuples, galois_orbits,
                            orbit_of, paired_even_tuple, paired_odd_tuple,
                            units)

PUBLISHED_COUNTS = {7: 2, 9: 2, 15: 4, 16: 4, 20: 4, 24: 5, 11: 4}

PUBLISHED_REPRESENTATIVES = {
    7: [(1, 2, 3), (1, 2, 4)],
    9: [(1, 2, 4), (1, 4, 7)],
    15: [(1, 2, 4, 7), (1, 2, 4, 8), (1, 2, 7, 11), (1, 4, 7, 13)],
    16: [(1, 3, 5, 9), (1, 3, 5, 7), (1, 3, 9, 11), (1, 5, 9, 13)],
    20: [(1, 3, 7, 9), (1, 3, 7, 11), (1, 3, 11, 13), (1, 9, 13, 17)],
    24: [(1, 5, 7, 11), (1, 5, 7, 13), (1, 5, 13, 17), (1, 7, 13, 19), (1, 11, 17, 19)],
    11: [(1, 2, 3, 4, 5), (1, 2, 3, 4, 6), (1, 2, 3, 5, 7), (1, 3, 4, 5, 9)],
}


def test_all_tuples_small():
    assert {t.residues for t in all_tuples(3)} == {(1,), (2,)}
    assert {t.residues for t in all_tuples(5)} == {(1, 2), (1, 3), (2, 4), (3, 4)}
    assert len(all_tuples(7)) == 8
    with pytest.raises(ValueError):
        all_tuples(2)


def test_tuple_validation():
    with pytest.raises(ValueError):
        CharacterTuple(7, (1, 6))  # conjugate pair selected twice
    with pytest.raises(ValueError):
        CharacterTuple(9, (1, 3))  # 3 not coprime to 9
    with pytest.raises(ValueError):
        CharacterTuple(7, (2, 1))  # not increasing


def test_orbit_counts_match_published():
    for m, want in PUBLISHED_COUNTS.items():
        assert len(galois_orbits(m)) == want


def test_published_representatives_hit_distinct_orbits():
    for m, reps in PUBLISHED_REPRESENTATIVES.items():
        orbs = galois_orbits(m)
        indices = {orbs.index_of(CharacterTuple(m, r)) for r in reps}
        assert len(indices) == len(reps) == len(orbs)


def test_orbit_partition_and_closure():
    for m in range(3, 31):
        orbs = galois_orbits(m)
        total = sum(len(o) for o in orbs.orbits)
        assert total == 2 ** (totient(m) // 2)
        for o in orbs.orbits:
            for t in o.members:
                for u in units(m):
                    assert t.multiply(u) in o.members
                assert t.conjugate() in o.members


def test_orbit_of_examples():
    assert orbit_of(CharacterTuple(7, (1, 2, 4))).residues == (1, 2, 4)
    assert orbit_of(CharacterTuple(5, (2, 4))).residues == (1, 2)
    assert orbit_of(CharacterTuple(3, (2,))).residues == (1,)


def test_orbit_of_constant_and_idempotent():
    for m in (7, 15, 16):
        for o in galois_orbits(m).orbits:
            reps = {orbit_of(t) for t in o.members}
            assert reps == {o.representative}
            assert orbit_of(o.representative) == o.representative


def test_paired_tuples_roundtrip():
    # negating an order-2k automorphism (k odd) gives the order-k one
    assert paired_odd_tuple(14, (9, 11, 13)) == (1, 2, 3)
    for k, tup in ((7, (1, 2, 4)), (9, (1, 4, 7)), (15, (1, 2, 4, 8))):
        lifted = paired_even_tuple(k, tup)
        assert paired_odd_tuple(2 * k, lifted) == tup
