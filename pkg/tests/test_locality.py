import pytest

from lrclp import catalog
from lrclp.code import codeword_array, indices_of, mask_of
from lrclp.locality import (
    SubsetCapExceeded,
    classical_bounds,
    classify,
    repair_groups,
    repair_supports,
    verify_gr,
    verify_rlr,
    zeta_max,
)
from oracles import brute_dual, recount_zeta, support


def helper_sets(c, i, r):
    """Helper sets as 1-based index tuples."""
    return sorted(tuple(j + 1 for j in indices_of(m & ~(1 << i))) for m in repair_supports(c, i, r))


def test_example2_node1_groups(ex2):
    assert helper_sets(ex2, 0, 3) == sorted([(3, 4, 8), (2, 4, 6), (2, 3, 5), (2, 7, 8), (3, 6, 7), (4, 5, 7), (5, 6, 8)])


def test_example1_named_groups(ex1):
    labels = catalog.get("example1").labels
    groups = [{labels[j] for j in indices_of(g.helpers)} for g in repair_groups(ex1, 0, 3)]
    assert {"C2", "C3", "P1"} in groups
    assert {"C4", "C7", "P4"} in groups
    assert not {"C2", "C3", "P1"} & {"C4", "C7", "P4"}


def test_example1_two_groups_per_node(ex1):
    assert all(len(repair_supports(ex1, i, 3)) >= 2 for i in range(ex1.n))


def test_repetition_groups():
    c = catalog.repetition(3)
    assert helper_sets(c, 0, 1) == [(2,), (3,)]
    with pytest.raises(IndexError):
        repair_supports(c, 3, 1)


def test_supports_sorted_and_distinct(all_entries):
    for e in all_entries.values():
        for i in range(e.code.n):
            sups = repair_supports(e.code, i, e.code.n - 1)
            assert sups == sorted(set(sups))


def test_scalar_multiples_count_once():
    # over GF(3) each dual support carries two words; alternatives count supports
    c = catalog.repetition(3, 3)
    assert len(repair_supports(c, 0, 1)) == 2
    assert zeta_max(c, 1, 0) == 2


@pytest.mark.parametrize("gamma,want", [(0, 7), (1, 4), (2, 2)])
def test_zeta_max_example2(ex2, gamma, want):
    assert zeta_max(ex2, 3, gamma) == want


def test_verify_rlr_examples(ex1, ex2):
    assert verify_rlr(ex1, 3, 1, 1).passed
    assert verify_rlr(ex1, 3, 0, 2).passed
    res = verify_rlr(ex2, 3, 1, 5)
    assert not res.passed and res.zeta_max == 4
    node, extra = res.witness
    # the witness really leaves only 4 alternatives
    left = [m for m in repair_supports(ex2, node, 3) if not m & mask_of(extra)]
    assert len(left) == 4 and len(extra) == 1


def test_verify_gr_examples(ex1):
    assert verify_gr(ex1, 3)
    assert not verify_gr(ex1, 4)
    assert verify_gr(catalog.repetition(3), 2)


def test_classify_examples(ex1, ex2):
    p = classify(ex2, 3, 2)
    assert p.beta_max == 3 and p.rows == ((0, 7), (1, 4), (2, 2))
    p = classify(ex1, 3, 1)
    assert p.beta_max == 3
    assert p.rows[0][1] >= 2 and p.rows[1][1] >= 1
    assert p.rows == ((0, 2), (1, 1))  # brute-forced exact values
    p = classify(catalog.repetition(3), 1, 1)
    assert p.beta_max == 2 and p.rows == ((0, 2), (1, 1))


def test_classify_clamps_gamma():
    p = classify(catalog.repetition(3), 1, 5)
    assert [g for g, _ in p.rows] == [0, 1]


def test_gamma_range_and_cap(ex1):
    with pytest.raises(ValueError):
        zeta_max(catalog.repetition(3), 1, 2)
    with pytest.raises(SubsetCapExceeded):
        zeta_max(ex1, 3, 2, cap=100)


def test_classical_bounds_examples():
    b = classical_bounds(16, 9, 4, 3)
    assert b.gopalan_satisfied and b.singleton_satisfied
    assert classical_bounds(8, 4, 4, 3).gopalan_satisfied
    assert not classical_bounds(8, 4, 5, 3).gopalan_satisfied
    assert not classical_bounds(10, 9, 4, 9).singleton_satisfied
    with pytest.raises(ValueError):
        classical_bounds(4, 2, 2, 0)


def test_zeta_monotone(all_entries):
    for e in all_entries.values():
        c = e.code
        for r in range(1, c.n):
            row = [zeta_max(c, r, g) for g in range(min(3, c.n - 2) + 1)]
            assert row == sorted(row, reverse=True), (e.name, r)
        for g in range(min(3, c.n - 2) + 1):
            col = [zeta_max(c, r, g) for r in range(1, c.n)]
            assert col == sorted(col), (e.name, g)


def test_zeta_matches_independent_recount(all_entries):
    for e in all_entries.values():
        c = e.code
        for r in range(1, min(c.n, 5)):
            for g in range(min(2, c.n - 2) + 1):
                assert zeta_max(c, r, g) == recount_zeta(c, r, g), (e.name, r, g)


def test_plain_lr_degenerate_case(all_entries):
    for e in all_entries.values():
        c = e.code
        duals = [support(h) for h in brute_dual(c)] if c.q**c.n <= 1 << 16 else None
        if duals is None:
            continue
        for r in range(1, c.n):
            plain = all(any(i in s and 2 <= len(s) <= r + 1 for s in duals) for i in range(c.n))
            assert verify_rlr(c, r, 0, 1).passed == plain


def test_repair_reconstructs_every_codeword(all_entries):
    for e in all_entries.values():
        c = e.code
        words = codeword_array(c)
        for i in range(c.n):
            for g in repair_groups(c, i, c.n - 1):
                assert all(g.repair(w, c.q) == w[i] for w in words.tolist()), (e.name, i)
