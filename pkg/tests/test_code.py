from collections import Counter
from itertools import product
from math import comb

import numpy as np
import pytest

from lrclp import catalog
from lrclp.code import (
    GuardExceeded,
    LinearCode,
    UpdateCode,
    ZeroCodeError,
    bivariate_enumerator,
    check_guard,
    code_from_generator,
    code_from_parity_check,
    codeword_array,
    dual,
    dual_bivariate_enumerator,
    enumerate_codewords,
    enumeration_guard,
    indices_of,
    mask_of,
    min_distance,
    support_enumerator,
    support_of,
    to_update_code,
    verify_update_criteria,
    weight_enumerator,
)
from lrclp.field import FieldMatrix, row_space_equal
from oracles import brute_codewords


def rep(n, q=2):
    return catalog.repetition(n, q)


# -- construction -----------------------------------------------------------------


def test_code_from_generator_examples(ex2):
    c = code_from_generator(FieldMatrix([[1, 1, 1]], 2))
    assert (c.n, c.k) == (3, 1)
    c = code_from_generator(FieldMatrix([[1, 0, 1], [1, 0, 1], [0, 1, 1]], 2))
    assert c.k == 2
    assert (ex2.n, ex2.k, ex2.q) == (8, 4, 2)
    with pytest.raises(ZeroCodeError):
        code_from_generator(FieldMatrix([[0, 0]], 2))


def test_generator_stored_in_rref():
    c = code_from_generator(FieldMatrix([[0, 1, 1], [1, 1, 0]], 2))
    assert c.G.tolist() == [[1, 0, 1], [0, 1, 1]]


def test_code_from_parity_check_examples(ex1):
    c = code_from_parity_check(FieldMatrix([[1, 1]], 2))
    assert c == rep(2)
    assert (ex1.n, ex1.k) == (16, 9)
    with pytest.raises(ZeroCodeError):
        code_from_parity_check(FieldMatrix.identity(3, 2))


def test_linear_code_requires_full_rank():
    with pytest.raises(ValueError):
        LinearCode(FieldMatrix([[1, 1], [1, 1]], 2))


def test_dual_examples(ex1):
    assert dual(rep(2)) == rep(2)
    assert dual(rep(3)) == catalog.single_parity(3)
    assert row_space_equal(dual(dual(ex1)).G, ex1.G)
    with pytest.raises(ZeroCodeError):
        dual(code_from_generator(FieldMatrix.identity(3, 2)))


def test_dual_involution_catalog(all_entries):
    for e in all_entries.values():
        c = e.code
        if c.k < c.n:
            assert dual(dual(c)).G == c.G
            assert (c.G @ dual(c).G.T).is_zero()


# -- enumeration ------------------------------------------------------------------


def test_enumerate_examples(ex1, ex2):
    assert list(enumerate_codewords(rep(2))) == [(0, 0), (1, 1)]
    words = list(enumerate_codewords(ex2))
    assert len(words) == len(set(words)) == 16
    assert words[0] == (0,) * 8
    assert len(set(enumerate_codewords(ex1))) == 512


def test_enumeration_matches_bruteforce(all_entries):
    for e in all_entries.values():
        assert set(enumerate_codewords(e.code)) == brute_codewords(e.code.G)


def test_enumeration_lexicographic_order():
    c = code_from_generator(FieldMatrix([[1, 0, 2], [0, 1, 1]], 3))
    G = c.G.array
    want = [tuple(int(x) for x in (np.array(u) @ G) % 3) for u in product(range(3), repeat=2)]
    assert list(enumerate_codewords(c)) == want


def test_guard(monkeypatch, ex1):
    with pytest.raises(GuardExceeded, match="q\\^K"):
        list(enumerate_codewords(ex1, guard=256))
    monkeypatch.setenv("LRC_ENUM_GUARD", "100")
    assert enumeration_guard() == 100
    with pytest.raises(GuardExceeded):
        codeword_array(ex1)
    monkeypatch.setenv("LRC_ENUM_GUARD", "junk")
    with pytest.raises(ValueError):
        enumeration_guard()
    monkeypatch.delenv("LRC_ENUM_GUARD")
    assert enumeration_guard() == 1 << 22
    check_guard(2, 22)
    with pytest.raises(GuardExceeded):
        check_guard(2, 23)


def test_support_of_examples():
    assert support_of((0, 0, 0, 0)) == 0
    assert indices_of(support_of((0, 1, 0, 1))) == (1, 3)
    assert indices_of(support_of((0, 2, 1))) == (1, 2)
    assert mask_of([1, 3]) == 0b1010


def test_support_enumerator_examples(ex2):
    assert dict(support_enumerator(rep(2))) == {0: 1, 0b11: 1}
    assert dict(support_enumerator(rep(2, 3))) == {0: 1, 0b11: 2}
    assert support_enumerator(ex2).by_weight() == [1, 0, 0, 0, 14, 0, 0, 0, 1]


def test_support_enumerator_invariants(all_entries):
    for e in all_entries.values():
        c = e.code
        lam = support_enumerator(c)
        assert lam.total() == c.q**c.k
        assert lam[0] == 1
        assert all(v >= c.q - 1 for w, v in lam.items() if w)
        oracle = Counter(support_of(v) for v in brute_codewords(c.G))
        assert dict(lam) == dict(oracle)


def test_weight_enumerator_examples(ex1, ex2):
    assert weight_enumerator(rep(3)) == [1, 0, 0, 1]
    assert weight_enumerator(ex2) == [1, 0, 0, 0, 14, 0, 0, 0, 1]
    a = weight_enumerator(ex1)
    assert a[1] == a[2] == a[3] == 0 and a[4] > 0


def test_min_distance_examples(ex1, ex2, all_entries):
    assert min_distance(ex1) == 4
    assert min_distance(ex2) == 4
    assert min_distance(rep(3)) == 3
    assert min_distance(catalog.hamming_7_4()) == 3
    for e in all_entries.values():
        a = weight_enumerator(e.code)
        assert min_distance(e.code) == min(t for t in range(1, len(a)) if a[t])


# -- update codes -----------------------------------------------------------------


def test_to_update_code_examples(ex2):
    u = to_update_code(rep(2))
    assert u.G.tolist() == [[1, 1, 1]]
    assert (u.n, u.k) == (2, 1)
    assert to_update_code(ex2).G.shape == (4, 12)
    assert u.stored == rep(2)


def test_update_code_validation():
    with pytest.raises(ValueError):
        UpdateCode(FieldMatrix([[1, 1, 0]], 2), 2)  # last column is not the identity
    with pytest.raises(ValueError):
        UpdateCode(FieldMatrix([[0, 0, 1]], 2), 2)  # stored part has rank 0


def test_bivariate_examples():
    e = bivariate_enumerator(to_update_code(rep(2)))
    nonzero = {(t1, t2): v for t1, row in enumerate(e.counts) for t2, v in enumerate(row) if v}
    assert nonzero == {(0, 0): 1, (2, 1): 1}


def test_prop4_identities(all_entries):
    for e in all_entries.values():
        u = to_update_code(e.code)
        if u.n + u.k > 16:
            continue
        n, k, q = u.n, u.k, u.q
        A = bivariate_enumerator(u)
        assert A[(0, 0)] == 1
        assert A.total() == q**k
        assert all(A[(0, t2)] == 0 for t2 in range(1, k + 1))
        for t2 in range(k + 1):
            assert sum(A[(t1, t2)] for t1 in range(n + 1)) == comb(k, t2) * (q - 1) ** t2
        B = dual_bivariate_enumerator(u)
        assert B[(0, 0)] == 1
        assert B.total() == q**n
        assert all(B[(0, t2)] == 0 for t2 in range(1, k + 1))
        for t2 in range(k + 1):
            assert sum(B[(t1, t2)] for t1 in range(n + 1)) == comb(k, t2) * (q - 1) ** t2 * q ** (n - k)


def test_verify_update_criteria_examples():
    u = to_update_code(rep(2))
    assert verify_update_criteria(u, 1, 1, 2).passed
    rep_gr = verify_update_criteria(u, 1, 2, 2)
    assert not rep_gr.gr and rep_gr.gr_witness == (1, 1, 1)
    rep_eu = verify_update_criteria(u, 1, 1, 1)
    assert not rep_eu.eu and rep_eu.eu_witness == (1, 1, 1)


def test_verify_update_criteria_lr_failure():
    # the only nonzero dual word of [4,3] parity has weight 4, too large for r=1
    u = to_update_code(catalog.single_parity(4))
    rpt = verify_update_criteria(u, 1, 1, 4)
    assert not rpt.lr and rpt.lr_failures == (0, 1, 2, 3)


def test_update_criteria_need_beta_below_delta(all_entries):
    for e in all_entries.values():
        u = to_update_code(e.code)
        if u.n + u.k > 16:
            continue
        for r in range(1, u.n):
            for beta in range(u.n + 1):
                for delta in range(u.n + 1):
                    if verify_update_criteria(u, r, beta, delta).passed:
                        assert beta < delta
