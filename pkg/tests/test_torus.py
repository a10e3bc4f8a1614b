import random

import pytest

from cyctori.cycnum import CyclotomicNumber, cyclotomic_poly
from cyctori.intlattice import FiniteAbelianGroup, IntMatrix, companion, det
from cyctori.torus import (ComplexStructure, InfiniteCokernelError,
                           LatticeAutomorphism, PairChoice, admissible_orders,
                           character_multiplicities, eigenvector_basis,
                           eigenvector_full, eigenvector_reduced, fixed_locus,
                           is_rigid, moduli_dimension, multiplication_matrix,
                           reduced_rank)


def test_character_multiplicities_examples():
    minus = IntMatrix([[-1 if i == j else 0 for j in range(4)] for i in range(4)])
    assert character_multiplicities(minus) == {2: 4}
    assert character_multiplicities(companion(cyclotomic_poly(5))) == {5: 1}
    blk = IntMatrix.block_diag([companion(cyclotomic_poly(4))] * 2)
    assert character_multiplicities(blk) == {4: 2}


def test_character_multiplicities_roundtrip():
    rng = random.Random(2)
    for _ in range(15):
        ks = rng.sample([2, 3, 4, 5, 6, 8, 12], rng.randint(1, 3))
        module = [(k, rng.randint(1, 2)) for k in ks]
        aut = LatticeAutomorphism.from_module(module)
        assert character_multiplicities(aut.rep) == dict(module)


def test_rep_has_stated_order():
    for module in ([(5, 1)], [(3, 1), (4, 1)], [(2, 2), (6, 1)]):
        aut = LatticeAutomorphism.from_module(module)
        P = aut.rep.copy()
        ident = IntMatrix.identity(aut.rep.rows)
        for _ in range(aut.m - 1):
            assert P != ident
            P = P @ aut.rep
        assert P == ident


def test_fixed_locus_examples():
    cases = {
        ((5, 1),): (5,),
        ((3, 2),): (3, 3),
        ((6, 1),): (),
        ((9, 1),): (3,),
    }
    for module, invf in cases.items():
        aut = LatticeAutomorphism.from_module(module)
        assert fixed_locus(aut) == FiniteAbelianGroup(invf)


def test_fixed_locus_prime_power_law():
    # Fix = (Z/p)^r for a rank-r module of prime-power order
    for m in (3, 4, 5, 7, 8, 9, 16):
        p = min(q for q in range(2, m + 1) if m % q == 0)
        for r in (1, 2, 3):
            got = fixed_locus(LatticeAutomorphism.from_module([(m, r)]))
            assert got == FiniteAbelianGroup.from_cyclic_orders([p] * r)


def test_fixed_locus_order_is_phi_product():
    rng = random.Random(9)
    for _ in range(15):
        ks = rng.sample([2, 3, 4, 5, 6, 8, 9, 12], rng.randint(1, 3))
        module = [(k, rng.randint(1, 2)) for k in ks]
        aut = LatticeAutomorphism.from_module(module)
        want = 1
        for k, r in module:
            want *= cyclotomic_poly(k)(1) ** r
        assert fixed_locus(aut).order == want
        assert abs(det(aut.rep - IntMatrix.identity(aut.rep.rows))) == want


def test_unit_eigenvalue_rejected():
    with pytest.raises(ValueError):
        LatticeAutomorphism.from_module([(1, 2)])
    aut = LatticeAutomorphism.from_module([(1, 1), (3, 1)], allow_unit_eigenvalue=True)
    with pytest.raises(InfiniteCokernelError):
        fixed_locus(aut)


def test_admissible_orders():
    assert admissible_orders(1) == []
    assert admissible_orders(2) == [2, 3, 4, 6]
    assert admissible_orders(3) == [2, 3, 4, 5, 6, 8, 10, 12]
    for n in range(1, 11):
        assert set(admissible_orders(n)) <= set(admissible_orders(n + 1))


def test_moduli_dimension_examples():
    two_param = ComplexStructure(pairs=(PairChoice(k=3, r=2, nu=1),))
    assert moduli_dimension(two_param) == 2
    four_param = ComplexStructure(pairs=(PairChoice(k=3, r=3, nu=1),))
    assert moduli_dimension(four_param) == 4
    threefold = ComplexStructure(pairs=(), s=3)
    assert moduli_dimension(threefold) == 6
    rank1 = ComplexStructure.rank_one_primary(7, (1, 2, 3))
    assert moduli_dimension(rank1) == 0


def test_moduli_conjugation_invariant():
    rng = random.Random(4)
    for _ in range(20):
        pairs = tuple(PairChoice(k=5, r=rng.randint(1, 4), nu=0, pair_index=i)
                      for i in range(rng.randint(1, 3)))
        pairs = tuple(PairChoice(p.k, p.r, rng.randint(0, p.r), p.pair_index) for p in pairs)
        cs = ComplexStructure(pairs=pairs, s=rng.randint(0, 2))
        assert moduli_dimension(cs) == moduli_dimension(cs.conjugate())


def test_is_rigid():
    assert is_rigid(ComplexStructure.rank_one_primary(8, (1, 5)))
    assert not is_rigid(ComplexStructure(pairs=(PairChoice(k=3, r=2, nu=1),)))
    assert not is_rigid(ComplexStructure(pairs=(), s=1))
    # rigid exactly when the moduli count vanishes
    for nu in range(4):
        cs = ComplexStructure(pairs=(PairChoice(k=5, r=3, nu=nu),))
        assert is_rigid(cs) == (moduli_dimension(cs) == 0)


def test_structure_validation():
    with pytest.raises(ValueError):
        ComplexStructure.rank_one_primary(9, (1, 8))  # conjugate pair
    with pytest.raises(ValueError):
        ComplexStructure.rank_one_primary(9, (1, 3))  # 3 not coprime to 9


def test_eigenvector_full_m3():
    v1 = eigenvector_full(3, 1)
    eps_inv = CyclotomicNumber.root_of_unity(3, -1)
    assert v1[0] == CyclotomicNumber.from_rational(3, 1)
    assert v1[1] == eps_inv
    assert v1[2] == eps_inv * eps_inv


def test_eigenvector_eigenproperty_m7():
    Mx = multiplication_matrix(7)
    for j in (1, 2, 3):
        v = eigenvector_reduced(7, j)
        eps_j = CyclotomicNumber.root_of_unity(7, j)
        assert Mx.apply(v) == [eps_j * c for c in v]


def test_eigenvector_conjugation_m5():
    for j in (1, 2):
        v = eigenvector_reduced(5, j)
        w = eigenvector_reduced(5, 5 - j)
        assert [c.conj() for c in v] == w


def test_eigenvector_basis_rejects_noncoprime():
    with pytest.raises(ValueError):
        eigenvector_basis(9, (3,))
    basis = eigenvector_basis(7, (1, 2, 3))
    assert set(basis.vectors) == {1, 2, 3}
    assert all(len(v) == reduced_rank(7) for v in basis.vectors.values())
