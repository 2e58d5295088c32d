import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rumple import core
from rumple.core import Magma, magma
from rumple.errors import (DimensionMismatch, EntryOutOfRange, NotAGroup,
                           NoSquareRoot, NotLeftQuasigroup, NotQuasigroup, NotRumple,
                           ParseError)
from tests.conftest import X41_ROWS


def brute_canonical(X):
    n = X.order
    best = None
    for p in itertools.permutations(range(n)):
        t = core.relabel(X, p).table.ravel().tolist()
        if best is None or t < best:
            best = t
    return best


def perm_tables(n):
    rows = list(itertools.permutations(range(n)))
    for choice in itertools.product(rows, repeat=n):
        yield Magma(np.array(choice))


@st.composite
def left_quasigroups(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    rows = [draw(st.permutations(range(n))) for _ in range(n)]
    return magma(rows)


@st.composite
def tables(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    flat = draw(st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))
    return magma(np.array(flat).reshape(n, n))


# -- construction -------------------------------------------------------------

def test_from_table_accepts_x41():
    X = core.from_table(4, X41_ROWS)
    assert X.order == 4 and X.rows() == X41_ROWS


def test_trivial_magma():
    X = core.from_table(1, [[0]])
    assert X.order == 1
    assert core.is_rumple(X) and core.is_latin_rumple(X) and core.is_both_sided_rumple(X)
    assert core.is_rack(X) and core.is_quandle(X)


def test_entry_out_of_range():
    with pytest.raises(EntryOutOfRange):
        core.from_table(2, [[0, 1], [0, 2]])
    with pytest.raises(EntryOutOfRange):
        core.from_table(2, [[-1, 1], [0, 1]])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        core.from_table(3, [[0, 1], [0, 1]])
    with pytest.raises(DimensionMismatch):
        core.from_table(2, [0, 1])


def test_magma_is_immutable(x41):
    with pytest.raises(ValueError):
        x41.table[0, 0] = 1


# -- quasigroup predicates ----------------------------------------------------

def test_left_quasigroup(x41):
    assert core.is_left_quasigroup(core.projection(5))
    assert core.is_left_quasigroup(x41)
    assert not core.is_left_quasigroup(magma([[0, 0], [1, 1]]))


def test_quasigroup(x42):
    assert core.is_quasigroup(x42)
    assert not core.is_quasigroup(core.projection(3))
    assert core.is_quasigroup(core.cyclic_group(3))


def test_divisions(x41):
    assert core.left_divide(x41, 1, 0) == 3
    assert core.right_divide(x41, 0, 1) == 2
    P = core.projection(4)
    assert all(core.left_divide(P, x, y) == y for x in range(4) for y in range(4))


def test_division_errors():
    with pytest.raises(NotLeftQuasigroup):
        core.left_divide(magma([[0, 0], [1, 1]]), 0, 1)
    with pytest.raises(NotQuasigroup):
        core.right_divide(core.projection(3), 0, 1)


@given(left_quasigroups())
def test_left_division_inverts_rows(X):
    D = core.left_division_table(X)
    n = X.order
    a = np.arange(n)
    assert np.array_equal(X.table[a[:, None], D], np.broadcast_to(a, (n, n)))


def test_right_division_is_column_inverse(x41):
    D = core.right_division_table(x41)
    for y in range(4):
        for x in range(4):
            assert x41(D[y, x], x) == y


# -- Rump identities ----------------------------------------------------------

def test_left_rump(x41):
    assert core.satisfies_left_rump(x41)
    assert core.satisfies_left_rump(core.projection(4))
    assert not core.satisfies_left_rump(core.cyclic_group(3))


def test_right_rump(x41, x42):
    assert core.satisfies_right_rump(x41)
    assert core.satisfies_right_rump(x42)
    for n in (2, 3, 4):
        assert not core.satisfies_right_rump(core.projection(n))


def brute_left_rump(X):
    n = X.order
    return all(X(X(x, y), X(x, z)) == X(X(y, x), X(y, z))
               for x in range(n) for y in range(n) for z in range(n))


@given(tables())
def test_left_rump_matches_brute_force(X):
    assert core.satisfies_left_rump(X) == brute_left_rump(X)


# -- squaring and square roots ------------------------------------------------

def test_squaring(x41):
    assert core.squaring_map(x41).tolist() == [0, 3, 2, 1]
    assert core.is_uniquely_2_divisible(x41)
    assert core.squaring_map(core.projection(3)).tolist() == [0, 1, 2]
    assert not core.is_uniquely_2_divisible(magma([[0, 1], [1, 0]]))


def test_square_root(x41, x42):
    assert core.square_root_iterative(x41, 1) == 3
    assert core.square_root_iterative(x42, 0) == 3
    assert x42(3, 3) == 0
    P = core.projection(5)
    assert all(core.square_root_iterative(P, c) == c for c in range(5))


def test_square_root_without_rump_identity():
    # rows are permutations but the Rump identity fails
    X = magma([[1, 0, 2], [0, 1, 2], [0, 1, 2]])
    assert not core.satisfies_left_rump(X)
    with pytest.raises(NoSquareRoot):
        core.square_root_iterative(X, 0)


def test_square_root_needs_left_quasigroup():
    with pytest.raises(NotLeftQuasigroup):
        core.square_root_iterative(magma([[0, 0], [1, 1]]), 0)


# -- structure predicates -----------------------------------------------------

def test_rumple_predicates(x41, tworeps):
    assert core.is_rumple(x41) and core.is_latin_rumple(x41) and core.is_both_sided_rumple(x41)
    assert core.is_rumple(tworeps) and not core.is_latin_rumple(tworeps)
    Z3 = core.cyclic_group(3)
    assert not (core.is_rumple(Z3) or core.is_latin_rumple(Z3) or core.is_both_sided_rumple(Z3))


def test_rack_family(x41):
    P = core.projection(4)
    assert core.is_rack(P) and core.is_quandle(P)
    assert core.is_2_reductive(P) and core.is_left_distributive(P)
    assert not core.is_rack(x41)


def test_conjugation_quandles():
    Q = core.conjugation_quandle(core.cyclic_group(4))
    assert Q == core.projection(4)
    D4 = core.conjugation_quandle(core.dihedral_group(4))
    assert core.is_rack(D4) and core.is_quandle(D4)
    assert core.satisfies_left_rump(D4)
    assert not core.satisfies_left_rump(core.conjugation_quandle(core.symmetric_group(3)))
    with pytest.raises(NotAGroup):
        core.conjugation_quandle(core.projection(3))


def test_group_builders():
    for G in (core.cyclic_group(6), core.dihedral_group(4), core.symmetric_group(3)):
        assert core.is_associative(G) and core.is_quasigroup(G)
        assert core.identity_element(G) == 0
    assert core.dihedral_group(4).order == 8


@settings(max_examples=200)
@given(left_quasigroups(4))
def test_two_of_three_imply_third(X):
    a = core.is_left_distributive(X)
    b = core.satisfies_left_rump(X)
    c = core.is_2_reductive(X)
    assert a + b + c != 2


def test_two_of_three_exhaustive_order3():
    for X in perm_tables(3):
        assert (core.is_left_distributive(X) + core.satisfies_left_rump(X)
                + core.is_2_reductive(X)) != 2


# -- Delta ---------------------------------------------------------------------

def test_delta_projection():
    P = core.projection(2)
    d = core.delta_map(P)
    assert all(tuple(d[x, y]) == (y, x) for x in range(2) for y in range(2))
    assert core.is_delta_bijective(P)


def test_delta_inverse(x41):
    d = core.delta_map(x41)
    E = core.delta_inverse(x41)
    for x in range(4):
        for y in range(4):
            u, v = d[x, y]
            assert tuple(E[u, v]) == (x, y)


def test_delta_inverse_needs_rumple():
    with pytest.raises(NotRumple):
        core.delta_inverse(core.cyclic_group(3))


def test_delta_bijective_iff_rumple_up_to_order_4():
    for n in (1, 2, 3, 4):
        for X in perm_tables(n):
            if core.satisfies_left_rump(X):
                assert core.is_delta_bijective(X) == core.is_uniquely_2_divisible(X)
                assert core.is_uniquely_2_divisible(X)


def test_all_order_2_tables_delta():
    for flat in itertools.product(range(2), repeat=4):
        X = magma(np.array(flat).reshape(2, 2))
        if core.is_rumple(X):
            assert core.is_delta_bijective(X)


# -- dual, opposite, isotopes -------------------------------------------------

def test_dual_self_dual(x41, x42):
    for X in (x41, x42):
        D = core.dual_rumple(X)
        assert core.is_rumple(D)
        assert core.find_isomorphism(D, X) is not None
        assert core.dual_rumple(D) == X
    assert core.dual_rumple(magma([[0]])) == magma([[0]])


def test_dual_of_latin_divisions(x42):
    D = core.dual_rumple(x42)
    assert core.is_latin_rumple(D)
    rd = core.right_division_table(D)
    sq = core.squaring_map(x42)
    for x in range(4):
        for y in range(4):
            # x /* y = y^2 / x^2
            assert rd[x, y] == core.right_divide(x42, sq[y], sq[x])


@pytest.mark.parametrize("rows", [[[1, 0, 3, 2], [3, 2, 1, 0], [1, 0, 3, 2], [3, 2, 1, 0]],
                                  [[0, 1, 3, 2], [2, 3, 1, 0], [1, 0, 2, 3], [3, 2, 0, 1]]])
def test_dual_left_division_and_roots(rows):
    X = magma(rows)
    D = core.dual_rumple(X)
    ld = core.left_division_table(D)
    root = np.argsort(core.squaring_map(X))
    sq = core.squaring_map(X)
    for x in range(4):
        assert D(X(x, x), X(x, x)) == x
        for y in range(4):
            assert ld[x, y] == root[X(x, sq[y])]


def test_dual_needs_rumple():
    with pytest.raises(NotRumple):
        core.dual_rumple(core.cyclic_group(3))


def test_opposite(x41):
    assert core.is_both_sided_rumple(core.opposite(x41))
    Z3 = core.cyclic_group(3)
    assert core.opposite(Z3) == Z3


def test_loop_isotopes(x41, x42):
    L = core.principal_loop_isotope(x41, 0, 0)
    one = x41(0, 0)
    assert all(L(x, x) == one for x in range(4))
    L2 = core.principal_loop_isotope(x42, 1, 1)
    assert all(L2(x, x) == x42(1, 1) for x in range(4))
    Z5 = core.cyclic_group(5)
    assert core.principal_loop_isotope(Z5, 0, 0) == Z5


def test_isotope_needs_quasigroup():
    with pytest.raises(NotQuasigroup):
        core.principal_loop_isotope(core.projection(3), 0, 0)


def test_latin_sigma_factorization(x41, x42):
    # sigma = R_ee L_e R_e^-1 for quasigroups with the left Rump identity
    for X in (x41, x42):
        t = X.table
        rd = core.right_division_table(X)
        for e in range(4):
            ee = t[e, e]
            for x in range(4):
                assert t[t[e, rd[x, e]], ee] == t[x, x]


# -- isomorphism ---------------------------------------------------------------

def test_isomorphism_examples(x41, x42, rng):
    assert core.find_isomorphism(x41, x42) is None
    p = rng.permutation(4)
    Y = core.relabel(x41, p)
    f = core.find_isomorphism(x41, Y)
    assert f is not None and core.is_isomorphism(x41, Y, f)


@settings(max_examples=60, deadline=None)
@given(tables(5), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(X, r):
    p = list(range(X.order))
    r.shuffle(p)
    assert core.canonical_form(core.relabel(X, p)) == core.canonical_form(X)


@settings(max_examples=60, deadline=None)
@given(tables(5))
def test_canonical_form_matches_brute_force(X):
    assert core.canonical_form(X).table.ravel().tolist() == brute_canonical(X)


@settings(max_examples=60, deadline=None)
@given(left_quasigroups(5), st.randoms(use_true_random=False))
def test_find_isomorphism_agrees_with_canonical_form(X, r):
    p = list(range(X.order))
    r.shuffle(p)
    Y = core.relabel(X, p)
    f = core.find_isomorphism(X, Y)
    assert f is not None and core.is_isomorphism(X, Y, f)


# -- .mag format ------------------------------------------------------------------

def test_mag_round_trip(x42):
    text = core.dumps_mag(x42)
    assert text.startswith("magma 4\n")
    assert core.loads_mag(text) == x42
    assert core.loads_mag(text + "\n\n") == x42


@pytest.mark.parametrize("text", [
    "", "magma\n", "magma x\n0\n", "magma 2\n0 1\n", "magma 2\n0 1\n1 0 1\n",
    "magma 2\n0 1\n1 2\n", "magma 2\n0 a\n1 0\n", "group 2\n0 1\n1 0\n",
    "magma 2\n0 1\n\n1 0\n", "magma 2\n0 1\n1 0\n0 1\n",
])
def test_mag_parse_errors(text):
    with pytest.raises(ParseError):
        core.loads_mag(text)


@settings(max_examples=50)
@given(tables(6))
def test_mag_property_round_trip(X):
    assert core.loads_mag(core.dumps_mag(X)) == X
