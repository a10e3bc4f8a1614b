"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Every tolerance is pinned here; the exact checks use exact arithmetic,
the analytic ones certified intervals at 10^-20.
"""

import random
from fractions import Fraction

import mpmath
import pytest

from cyctori.bdf import classify
from cyctori.cycnum import (_mpf_to_fraction, order_count_brute,
                            order_count_oracle, order_count_paper)
from cyctori.families import nu_vector_classes, torus_families
from cyctori.fixtures import (all_flags, check_against_whitelist,
                              compare_with_fixture, load_fixture,
                              load_whitelist, verify_table7)
from cyctori.intlattice import FiniteAbelianGroup
from cyctori.orbits import CharacterTuple, galois_orbits
from cyctori.polarization import (LambdaVector, build_form, first_riemann,
                                  gram_and_posdef, standard_structure)
from cyctori.torus import (LatticeAutomorphism, fixed_locus, is_rigid,
                           moduli_dimension, reduced_rank)

PUBLISHED_ORBITS = {
    7: [(1, 2, 3), (1, 2, 4)],
    9: [(1, 2, 4), (1, 4, 7)],
    15: [(1, 2, 4, 7), (1, 2, 4, 8), (1, 2, 7, 11), (1, 4, 7, 13)],
    16: [(1, 3, 5, 9), (1, 3, 5, 7), (1, 3, 9, 11), (1, 5, 9, 13)],
    20: [(1, 3, 7, 9), (1, 3, 7, 11), (1, 3, 11, 13), (1, 9, 13, 17)],
    24: [(1, 5, 7, 11), (1, 5, 7, 13), (1, 5, 13, 17), (1, 7, 13, 19), (1, 11, 17, 19)],
    11: [(1, 2, 3, 4, 5), (1, 2, 3, 4, 6), (1, 2, 3, 5, 7), (1, 3, 4, 5, 9)],
}
ORBIT_COUNTS = {7: 2, 9: 2, 15: 4, 16: 4, 20: 4, 24: 5, 11: 4}


def report(num, ok, detail=""):
    line = f"ACCEPTANCE {num:2d}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
    print(line)
    assert ok, line


def test_criterion_01_galois_orbit_counts():
    ok = True
    for m, want in ORBIT_COUNTS.items():
        orbs = galois_orbits(m)
        ok &= len(orbs) == want
        hit = {orbs.index_of(CharacterTuple(m, rep)) for rep in PUBLISHED_ORBITS[m]}
        ok &= len(hit) == want
    report(1, ok, "orbit counts 2,2,4,4,4,5,4 with distinct listed representatives")


def test_criterion_02_fixed_locus_law():
    ok = True
    for m in (3, 4, 5, 7, 8, 9, 16):
        p = min(q for q in range(2, m + 1) if m % q == 0)
        for r in (1, 2, 3):
            got = fixed_locus(LatticeAutomorphism.from_module([(m, r)]))
            want = FiniteAbelianGroup.from_cyclic_orders([p] * r)
            ok &= got == want
    report(2, ok, "Fix = (Z/p)^(2d/phi(m)) on prime-power primary modules")


def test_criterion_03_order_count_cross_check():
    ok = True
    prime_powers = [m for m in range(2, 33)
                    if len({q for q in range(2, m + 1) if m % q == 0 and
                            all(q % d for d in range(2, q))}) == 1]
    for m in prime_powers:
        for r in (1, 2, 3, 4):
            ok &= order_count_paper(m, r) == order_count_oracle(m, r)
    for m in range(2, 25):
        for r in (1, 2, 3, 4):
            if m * r <= 24:
                ok &= order_count_oracle(m, r) == order_count_brute(m, r)
    report(3, ok, "closed form == oracle on prime powers; oracle == brute force")


def test_criterion_04_moduli_dimensions():
    # Tables 1 and 2 row by row: the only table1/table2 flags are the two
    # fixed-locus cells and the omitted row, never a moduli cell
    t1 = compare_with_fixture("table1")
    t2 = compare_with_fixture("table2")
    ok = not [f for f in t1 + t2 if f.cell == "p"]
    ok &= len(load_fixture("table1")) == 19 and len(load_fixture("table2")) == 56
    # spot values from the published rows
    fams2 = {(f.m, f.display(), f.types): f.moduli for f in torus_families(2)}
    fams3 = {(f.m, f.display(), f.types): f.moduli for f in torus_families(3)}
    ok &= fams2[(3, "S_6", (3,))] == 2
    ok &= fams3[(3, "A_6", (3,))] == 4
    ok &= fams3[(6, "E x S_6", (2, 6))] == 3
    ok &= fams3[(2, "T", (2,))] == 6
    # proposition values: dimension 4 with phi(m)=2 -> 6/8, with phi(m)=4 -> 2/4,
    # dimension 5 with phi(m)=2 -> 8/12
    grass = lambda r, nu: 2 * nu * (r - nu)
    ok &= sorted(sum(grass(4, v) for v in cls) for cls in nu_vector_classes(3, 4)) == [6, 8]
    ok &= sorted(sum(grass(2, v) for v in cls) for cls in nu_vector_classes(8, 2)) == [2, 4]
    ok &= sorted(sum(grass(5, v) for v in cls) for cls in nu_vector_classes(3, 5)) == [8, 12]
    # Table 3 moduli column diverges exactly on the whitelisted cells
    t3 = {f.key for f in compare_with_fixture("table3")}
    wl3 = {f.key for f in load_whitelist() if f.table_id == "table3"}
    ok &= t3 == wl3
    named = {"X_6^6", "X_6^8", "X_10^2", "X_10^4"}
    ok &= named <= {k[1].split("|")[1] for k in t3}
    report(4, ok, "p columns of tables 1-2 reproduced; table 3 diverges only on whitelisted cells")


def test_criterion_05_standard_principal_polarization():
    ok = True
    eps = Fraction(1, 10 ** 20)
    for m in (3, 4, 5, 6, 7, 8, 9, 11, 12, 15, 16, 20, 24):
        lv = LambdaVector(m, (1,) + (0,) * (m // 2 - 1))
        cs = standard_structure(m)
        rep = gram_and_posdef(build_form(lv), cs, bits=128)
        ok &= rep.invariant and rep.riemann1 and rep.posdef == "yes"
        ok &= rep.type is not None and all(d == 1 for d in rep.type)
        n = reduced_rank(m)
        with mpmath.workprec(240):
            for g, k in zip(rep.gram_diagonal, cs.chosen):
                true_val = _mpf_to_fraction(2 * m * mpmath.sin(2 * mpmath.pi * k / m))
                ok &= g.lo <= true_val + eps and true_val - eps <= g.hi and g.width <= eps
                # the printed coefficient (2n, n = rank R') is a verified slip:
                # it never lies in the certified interval
                printed = _mpf_to_fraction(2 * n * mpmath.sin(2 * mpmath.pi * k / m))
                ok &= not g.contains(printed)
    report(5, ok, "standard form principal and positive; diagonal = 2m*sin(2*pi*k/m) "
                  "to 1e-20 (printed coefficient 2n flagged, see decisions ledger)")


def test_criterion_06_table7_verification():
    rows = verify_table7()
    unparseable = {r.case for r in rows if r.status == "unparseable"}
    ok = unparseable == {"X_16^3", "X_16^4", "X_24^2", "X_24^3"}
    for r in rows:
        if r.case in unparseable:
            ok &= bool(r.recovered)
            for lam in r.recovered:
                ok &= all(-1 <= x <= 1 for x in lam)
        else:
            ok &= r.status == "pass"
    report(6, ok, "16 parseable rows pass; 4 overlong rows reported and recovered by "
                  "bound-1 search (the two X_16 rows are also overlong as printed)")


def test_criterion_07_first_relation_universality():
    rng = random.Random(123)
    ok = True
    for m in range(3, 13):
        cs = standard_structure(m)
        half = m // 2
        nfree = half - 1 if m % 2 == 0 else half
        for _ in range(100):
            lam = [rng.randint(-9, 9) for _ in range(nfree)]
            if not any(lam):
                lam[0] = 1
            lv = LambdaVector(m, tuple(lam) + ((0,) if m % 2 == 0 else ()))
            ok &= first_riemann(build_form(lv), cs)
    report(7, ok, "first Riemann relation holds for the standard structure, any lambda")


def test_criterion_08_bdf_counts():
    ok = classify(1) == []
    rows2 = classify(2)
    ok &= sum(r.family_count for r in rows2) == 7
    # row multisets against tables 5 and 6
    for n, fid in ((3, "table5"), (4, "table6")):
        fixture = load_fixture(fid)
        from cyctori.fixtures import normalize_label, parse_factors
        printed = sorted((int(r["m"]), normalize_label(r["b1"]), parse_factors(r["b2"]))
                         for r in fixture)
        computed = sorted((r.m, r.b1_label(), tuple(sorted(r.b2_labels)))
                          for r in classify(n))
        ok &= printed == computed
    # translation-option discrepancies confined to the whitelist
    t5 = {f.key for f in compare_with_fixture("table5")}
    wl5 = {f.key for f in load_whitelist() if f.table_id == "table5"}
    ok &= t5 == wl5 and compare_with_fixture("table4") == []
    report(8, ok, "no curves; 7 surface families; tables 5 and 6 row multisets match")


def test_criterion_09_rigidity_iff_zero_moduli():
    ok = True
    rank_one_all_rigid = True
    for n in (1, 2, 3, 4, 5):
        for fam in torus_families(n):
            cs = fam.complex_structure()
            ok &= is_rigid(cs) == (moduli_dimension(cs) == 0)
            if all(c.kind == "orbit" for c in fam.components):
                rank_one_all_rigid &= is_rigid(cs)
    ok &= rank_one_all_rigid
    report(9, ok, "rigid <=> zero moduli over all generated families, dims <= 5")


def test_criterion_10_known_discrepancy_ledger_exact():
    flags = all_flags()
    unexpected, missing = check_against_whitelist(flags)
    ok = not unexpected and not missing
    keys = {f.key for f in flags}
    # the headline divergences are all present
    ok &= ("table1", "8|S_8':8", "fix") in keys
    ok &= ("table1", "8|S_8'':8", "fix") in keys
    ok &= ("table7", "X_24^2", "lambda") in keys
    ok &= ("table7", "X_24^3", "lambda") in keys
    ok &= ("table5", "4|E|S_4", "tr:Z2 x Z2") in keys
    for label in ("X_6^6", "X_6^8", "X_10^2", "X_10^4"):
        ok &= any(k[0] == "table3" and k[1].endswith("|" + label) and k[2] == "p"
                  for k in keys)
    report(10, ok, f"{len(flags)} flags raised, all whitelisted, none missing")
