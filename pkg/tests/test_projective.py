import pytest

from heckedual.coxeter import IncompleteContextError
from heckedual.laurent import ONE, V, LaurentPoly
from heckedual.projective import ProjectiveBasis
from helpers import kl, proj


def test_top_element_base_case():
    basis = proj("A:2")
    w0 = basis.ctx.longest_element()
    assert basis.element(w0) == basis.algebra.basis(w0)


def test_a1_hand_values():
    basis = proj("A:1")
    alg = basis.algebra
    # b(C_s) H_s = (H_s - v^-1) H_s = 1 - v H_s
    assert basis.element(0) == alg.unit() - alg.basis(1).scaled(V)
    assert basis.tilting_duality(1)  # b(C_s) H_{w0} = P_e
    assert basis.tilting_duality(0)  # trivial base case
    # C^e = P_e H_{w0}^-1 = b(C_s)
    assert basis.self_dual_quotient(0) == alg.b_twist(alg.c_gen(0))
    assert basis.self_dual_quotient(1) == alg.unit()


@pytest.mark.parametrize("spec", ["A:1", "A:2", "B:2"])
def test_pairing_matrix_is_identity(spec):
    basis = proj(spec)
    n = basis.ctx.size
    matrix = basis.pairing_matrix()
    for i in range(n):
        for j in range(n):
            assert matrix[i][j] == (ONE if i == j else LaurentPoly.zero())


def test_pairing_against_kl_elements():
    basis = proj("A:2")
    alg = basis.algebra
    for x in basis.ctx.elements():
        assert alg.ext_form(basis.element(x), basis.kl.element(x)) == ONE


@pytest.mark.parametrize("spec", ["A:3", "B:2"])
def test_upper_unitriangularity(spec):
    basis = proj(spec)
    ctx = basis.ctx
    for x in ctx.elements():
        px = basis.element(x)
        assert px.coeff(x) == ONE
        for y, p in px.items():
            if y == x:
                continue
            assert ctx.bruhat_leq(x, y) and y != x  # support strictly above x
            assert p.in_strict_positive()


@pytest.mark.parametrize("spec", ["A:2", "B:2"])
def test_self_dual_quotient(spec):
    basis = proj(spec)
    alg = basis.algebra
    w0 = basis.ctx.longest_element()
    assert basis.self_dual_quotient(w0) == alg.unit()
    for x in basis.ctx.elements():
        q = basis.self_dual_quotient(x)  # raises ConsistencyError if not d-fixed
        assert alg.mul(q, alg.basis(w0)) == basis.element(x)


@pytest.mark.parametrize("spec", ["A:2", "A:3", "B:2", "I2:5"])
def test_tilting_duality_exhaustive(spec):
    basis = proj(spec)
    for x in basis.ctx.elements():
        assert basis.tilting_duality(x)


def test_ascent_choice_is_immaterial():
    for spec in ("A:2", "B:2"):
        low = proj(spec)
        high = ProjectiveBasis(kl(spec), ascent_choice="max")
        for x in low.ctx.elements():
            assert low.element(x) == high.element(x)
    with pytest.raises(ValueError):
        ProjectiveBasis(kl("A:2"), ascent_choice="median")


def test_requires_complete_context():
    with pytest.raises(IncompleteContextError):
        ProjectiveBasis(kl("I2:inf", 6))


def test_snapshot_restore_round_trip():
    basis = proj("A:2")
    for x in basis.ctx.elements():
        basis.element(x)
    snap = basis.snapshot()
    fresh = ProjectiveBasis(kl("A:2"))
    fresh.restore(snap)
    for x in basis.ctx.elements():
        assert fresh.element(x) == basis.element(x)
    with pytest.raises(ValueError):
        fresh.restore({0: [[99, [[0, 1]]]]})
