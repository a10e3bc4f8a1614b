import pytest

from cyctori.fixtures import (FixtureError, all_flags, case_modulus,
                              check_against_whitelist, compare_with_fixture,
                              load_fixture, load_whitelist, parse_group,
                              verify_table7)
from cyctori.intlattice import FiniteAbelianGroup


def test_fixture_row_counts():
    assert len(load_fixture("table1")) == 19
    assert len(load_fixture("table2")) == 56
    assert len(load_fixture("table3")) == 56
    assert len(load_fixture("table4")) == 4
    assert len(load_fixture("table5")) == 20
    assert len(load_fixture("table6")) == 60
    assert len(load_fixture("table7")) == 20


def test_parse_group():
    assert parse_group("{0}") == FiniteAbelianGroup.trivial()
    assert parse_group("Z2^2 x Z3") == FiniteAbelianGroup.from_cyclic_orders([2, 2, 3])
    assert parse_group("Z6") == FiniteAbelianGroup.from_cyclic_orders([6])


def test_case_modulus():
    assert case_modulus("S_8''") == 8
    assert case_modulus("X_24^5") == 24
    with pytest.raises(FixtureError):
        case_modulus("Y_3")


def test_table1_flags():
    keys = {f.key for f in compare_with_fixture("table1")}
    assert keys == {("table1", "8|S_8':8", "fix"), ("table1", "8|S_8'':8", "fix")}


def test_table2_flags():
    keys = {f.key for f in compare_with_fixture("table2")}
    assert keys == {("table2", "10|E:2,S_10:10", "row")}


def test_table3_flags_are_p_cells():
    flags = compare_with_fixture("table3")
    assert all(f.cell == "p" for f in flags)
    assert len(flags) == 14
    labels = {f.row_key.split("|")[1] for f in flags}
    assert {"X_6^6", "X_6^8", "X_10^2", "X_10^4"} <= labels


def test_table4_and_6_clean():
    assert compare_with_fixture("table4") == []
    assert compare_with_fixture("table6") == []


def test_table5_flags():
    keys = {(f.row_key, f.cell) for f in compare_with_fixture("table5")}
    assert keys == {
        ("4|E|S_4", "tr:Z2 x Z2"),
        ("4|E|E_iota x E_iota", "tr:Z2 x Z2"),
        ("4|E|E x E_iota", "tr:Z2 x Z2"),
        ("6|E|E x E_rho", "tr:Z2 x Z2"),
        ("6|E|E x E_rho", "tr:Z2 x Z6"),
    }


def test_table7_statuses():
    rows = {r.case: r for r in verify_table7()}
    unparseable = {c for c, r in rows.items() if r.status == "unparseable"}
    assert unparseable == {"X_16^3", "X_16^4", "X_24^2", "X_24^3"}
    for case, r in rows.items():
        if case in unparseable:
            assert r.recovered, f"{case} should be recovered by the bound-1 search"
        else:
            assert r.status == "pass", f"{case}: {r.detail}"


def test_whole_ledger_matches_whitelist():
    unexpected, missing = check_against_whitelist(all_flags())
    assert unexpected == set()
    assert missing == set()


def test_missing_fixture_is_configuration_error(tmp_path, monkeypatch):
    monkeypatch.setenv("CYCTORI_FIXTURE_DIR", str(tmp_path))
    with pytest.raises(FixtureError):
        load_fixture("table1")


def test_whitelist_loads():
    wl = load_whitelist()
    assert len(wl) == 29
    assert all(f.table_id and f.row_key and f.cell for f in wl)


def test_unknown_fixture_id():
    with pytest.raises(FixtureError):
        compare_with_fixture("table9")
