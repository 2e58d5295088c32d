import itertools

import numpy as np
import pytest

from rumple import core, extensions as ex
from rumple.affine import (AbelianGroup, aff_to_magma, affine_datum, endo_inverse,
                           is_affine, spectrum_admits, _apply)
from rumple.errors import BaseNotAffineLatin, InvalidExtension, RumpConditionFails
from rumple.permgroup import dis, is_abelian

A = [[0, 1], [1, 0]]
B = [[1, 0], [1, 1]]
Z22 = AbelianGroup([2, 2])


def test_trivial_base_recovers_affine():
    D = affine_datum([3], [[0]], [[2]], [1])
    E = ex.ExtensionDatum(D.group, ex.trivial_magma(), D.phi, D.psi,
                          D.c.reshape(1, 1, 1))
    assert ex.ext_to_magma(E) == aff_to_magma(D)
    E0 = ex.ExtensionDatum(Z22, ex.trivial_magma(), A, B, ex.zero_cocycle(Z22, ex.trivial_magma()))
    assert ex.ext_to_magma(E0) == aff_to_magma(affine_datum([2, 2], A, B, [0, 0]))


def test_zero_cocycle_product(x41):
    E = ex.ExtensionDatum(Z22, x41, A, B, ex.zero_cocycle(Z22, x41))
    assert ex.cocycle_condition(E)
    X = ex.ext_to_magma(E)
    assert X.order == 16 and core.is_latin_rumple(X)


@pytest.mark.parametrize("which", ["x41", "x42"])
def test_klein(which, request):
    F = request.getfixturevalue(which)
    E = ex.klein_extension(F)
    assert ex.cocycle_condition(E)
    X = ex.ext_to_magma(E)
    assert X.order == 16
    assert core.is_latin_rumple(X)
    assert not is_abelian(dis(X))
    assert not is_affine(X)
    from rumple.affine import affinize
    assert affinize(X) is None


def test_klein_needs_affine_latin_base():
    with pytest.raises(BaseNotAffineLatin):
        ex.klein_extension(ex.trivial_magma())
    with pytest.raises(BaseNotAffineLatin):
        ex.klein_extension(core.projection(3))


def test_alternative_theta_probe(x41):
    th = np.zeros((4, 4, 2), np.int64)
    th[np.arange(4), np.arange(4), :] = 1
    E = ex.ExtensionDatum(Z22, x41, A, B, th)
    basis = ex.solve_cocycles(Z22, x41, A, B)
    assert ex.cocycle_condition(E) == in_span(ex.theta_to_vector(th), basis, 2)
    assert ex.cocycle_condition(E) == core.satisfies_left_rump(ex.ext_to_magma(E))


def test_cocycle_needs_rump_pair(x41):
    E = ex.ExtensionDatum(Z22, x41, np.eye(2, dtype=int), B, ex.zero_cocycle(Z22, x41))
    with pytest.raises(RumpConditionFails):
        ex.cocycle_condition(E)
    with pytest.raises(RumpConditionFails):
        ex.solve_cocycles(Z22, x41, np.eye(2, dtype=int), B)


def test_invalid_data(x41):
    with pytest.raises(InvalidExtension):
        ex.ExtensionDatum(Z22, x41, A, B, np.zeros((3, 3, 2)))
    E = ex.ExtensionDatum(Z22, x41, A, np.zeros((2, 2), int), ex.zero_cocycle(Z22, x41))
    with pytest.raises(InvalidExtension):
        ex.ext_to_magma(E)


def in_span(v, basis, p):
    from rumple import modp
    if len(basis) == 0:
        return not np.any(v % p)
    M = np.array([ex.theta_to_vector(b) for b in basis])
    return modp.rank(np.vstack([M, v]), p) == modp.rank(M, p)


def test_solver_trivial_base():
    basis = ex.solve_cocycles(Z22, ex.trivial_magma(), A, B)
    assert len(basis) == 2


def test_solver_contains_klein_and_zero(x41):
    basis = ex.solve_cocycles(Z22, x41, A, B)
    assert in_span(ex.theta_to_vector(ex.klein_theta(x41)), basis, 2)
    assert in_span(np.zeros(32, np.int64), basis, 2)
    for b in basis:
        assert ex.cocycle_condition(ex.ExtensionDatum(Z22, x41, A, B, b))


def test_solver_matches_brute_force_z2():
    # |G| = 2, |F| <= 3: every theta, both directions
    G = AbelianGroup([2])
    for F in (ex.trivial_magma(), core.projection(2), core.magma([[1, 0], [1, 0]]),
              core.projection(3)):
        m = F.order
        for phi, psi in ((0, 1), ):
            basis = ex.solve_cocycles(G, F, [[phi]], [[psi]])
            for flat in itertools.product(range(2), repeat=m * m):
                th = np.array(flat).reshape(m, m, 1)
                E = ex.ExtensionDatum(G, F, [[phi]], [[psi]], th)
                ok = ex.cocycle_condition(E)
                assert ok == core.satisfies_left_rump(ex.ext_to_magma(E))
                assert ok == in_span(ex.theta_to_vector(th), basis, 2)


def test_random_theta_equivalence(x42, rng):
    for _ in range(30):
        th = rng.integers(0, 2, size=(4, 4, 2))
        E = ex.ExtensionDatum(Z22, x42, A, B, th)
        assert ex.cocycle_condition(E) == core.satisfies_left_rump(ex.ext_to_magma(E))


def test_left_division_formula(x42):
    E = ex.klein_extension(x42)
    X = ex.ext_to_magma(E)
    G, F = E.group, E.base
    m = F.order
    els = G.elements()
    psi_inv = endo_inverse(G, E.psi)
    ldiv = core.left_division_table(F)
    for i, j in itertools.product(range(X.order), repeat=2):
        a, x = divmod(i, m)
        b, y = divmod(j, m)
        u = ldiv[x, y]
        rhs = els[b] - _apply(G, E.phi, els[a]) - E.theta[x, u]
        c = _apply(G, psi_inv, rhs % G.moduli)
        assert core.left_divide(X, i, j) == int(G.index(c)) * m + u


def test_iterate_extensions():
    X, layers = ex.iterate_extensions([ex.affine_layer([2, 2], A, B, [0, 0])])
    assert layers == 1 and core.is_latin_rumple(X) and is_affine(X)
    Y, layers = ex.iterate_extensions([ex.affine_layer([2, 2], A, B, [0, 0]), "klein"])
    assert layers == 2 and Y.order == 16
    assert core.is_latin_rumple(Y) and not is_affine(Y)
    for Z in (X, Y):
        assert ex.nilpotent_order_ok(Z.order) and spectrum_admits(Z.order)
    with pytest.raises(InvalidExtension):
        ex.iterate_extensions(["bogus"])


def test_nilpotent_orders():
    assert ex.nilpotent_order_ok(4) and ex.nilpotent_order_ok(27 * 16)
    assert not ex.nilpotent_order_ok(8)


def test_json_round_trip(x41):
    E = ex.klein_extension(x41)
    F = ex.ExtensionDatum.from_json(E.to_json())
    assert ex.ext_to_magma(F) == ex.ext_to_magma(E)
    assert set(E.to_json()) == {"factors", "phi", "psi", "base", "theta"}


def test_witness_search(x41):
    res = ex.search_witnesses(Z22, x41, A, B, limit=64)
    assert res["dimension"] == len(ex.solve_cocycles(Z22, x41, A, B))
    assert res["scanned"] <= 64
    assert res["found"]["dis_nonabelian"] is not None
