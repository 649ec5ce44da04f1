import itertools
import random

import pytest

from heckedual.coxeter import OutOfWindowError
from heckedual.hecke import HeckeAlgebra
from heckedual.laurent import ONE, V, VINV, LaurentPoly
from helpers import algebra, context, gen


def random_sparse(alg, rng, max_terms=3):
    coords = {}
    for _ in range(rng.randint(1, max_terms)):
        x = rng.randrange(alg.ctx.size)
        p = LaurentPoly({rng.randint(-3, 3): rng.randint(-4, 4) for _ in range(2)})
        coords[x] = coords.get(x, LaurentPoly.zero()) + p
    return alg.element(coords)


def test_basis_and_unit():
    alg = algebra("A:2")
    assert alg.unit() == alg.basis(0)
    s1 = gen("A:2", 0)
    hs = alg.basis(s1)
    assert hs.support() == [s1] and hs.coeff(s1) == ONE
    assert alg.element({s1: LaurentPoly.zero()}).is_zero()


def test_mul_hs_examples():
    alg = algebra("A:2")
    s1 = gen("A:2", 0)
    hs = alg.basis(s1)
    # H_s^2 = 1 + (v^-1 - v) H_s
    assert alg.mul_hs(hs, 0, "left") == alg.unit() + hs.scaled(VINV - V)
    assert alg.mul_hs(alg.unit(), 0, "left") == hs
    # lengths add across distinct generators
    assert alg.mul_hs(alg.basis(s1), 1, "left") == alg.basis(
        context("A:2").element_of_word((1, 0)))


def test_mul_cs_examples():
    alg = algebra("A:2")
    s1 = gen("A:2", 0)
    cs = alg.c_gen(0)
    assert cs == alg.basis(s1) + alg.unit().scaled(V)
    assert alg.mul_cs(alg.unit(), 0, "left") == cs
    assert alg.mul_cs(alg.basis(s1), 0, "left") == alg.unit() + alg.basis(s1).scaled(VINV)
    assert alg.mul_cs(cs, 0, "left") == cs.scaled(V + VINV)


def test_mul_examples():
    alg = algebra("A:2")
    ctx = alg.ctx
    s1, s2 = gen("A:2", 0), gen("A:2", 1)
    assert alg.mul(alg.basis(s1), alg.basis(s2)) == alg.basis(ctx.element_of_word((0, 1)))
    rng = random.Random(7)
    for _ in range(5):
        a = random_sparse(alg, rng)
        assert alg.mul(a, alg.unit()) == a
        assert alg.mul(alg.unit(), a) == a
    # A1 hand computation: (H_s - v^-1) H_s = 1 - v H_s
    alg1 = algebra("A:1")
    hs = alg1.basis(1)
    assert alg1.mul(hs - alg1.unit().scaled(VINV), hs) == alg1.unit() - hs.scaled(V)


def test_mul_associative_exhaustive_a2():
    alg = algebra("A:2")
    basis = [alg.basis(x) for x in alg.ctx.elements()]
    for a, b, c in itertools.product(basis, repeat=3):
        assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))


def test_mul_associative_random_a3():
    alg = algebra("A:3")
    rng = random.Random(11)
    for _ in range(25):
        a, b, c = (random_sparse(alg, rng) for _ in range(3))
        assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))


def test_inverse_basis():
    alg = algebra("A:2")
    s1 = gen("A:2", 0)
    assert alg.inverse_basis(s1) == alg.basis(s1) + alg.unit().scaled(V - VINV)
    assert alg.inverse_basis(0) == alg.unit()
    for spec in ("A:2", "A:3", "B:2"):
        alg = algebra(spec)
        for x in alg.ctx.elements():
            assert alg.mul(alg.basis(x), alg.inverse_basis(x)) == alg.unit()
            assert alg.mul(alg.inverse_basis(x), alg.basis(x)) == alg.unit()


def test_inverse_basis_support_below_inverse():
    alg = algebra("A:3")
    ctx = alg.ctx
    for x in ctx.elements():
        for y in alg.inverse_basis(x).support():
            assert ctx.bruhat_leq(y, ctx.inverse(x))


def test_dualize_examples():
    alg = algebra("A:2")
    s1 = gen("A:2", 0)
    assert alg.dualize(alg.basis(s1)) == alg.basis(s1) + alg.unit().scaled(V - VINV)
    assert alg.dualize(alg.unit()) == alg.unit()
    assert alg.dualize(alg.c_gen(0)) == alg.c_gen(0)
    assert alg.dualize(alg.c_gen(1)) == alg.c_gen(1)


def test_dualize_is_ring_involution():
    alg = algebra("A:3")
    rng = random.Random(23)
    for _ in range(15):
        a, b = random_sparse(alg, rng), random_sparse(alg, rng)
        assert alg.dualize(alg.dualize(a)) == a
        assert alg.dualize(alg.mul(a, b)) == alg.mul(alg.dualize(a), alg.dualize(b))
        assert alg.dualize(a + b) == alg.dualize(a) + alg.dualize(b)


def test_b_twist():
    alg = algebra("A:2")
    s1 = gen("A:2", 0)
    assert alg.b_twist(alg.c_gen(0)) == alg.basis(s1) - alg.unit().scaled(VINV)
    assert alg.b_twist(alg.basis(s1)) == alg.basis(s1)
    rng = random.Random(31)
    for _ in range(15):
        a = random_sparse(alg, rng)
        assert alg.b_twist(alg.b_twist(a)) == a


def test_b_twist_is_ring_hom_and_commutes_with_dualize():
    alg = algebra("A:3")
    rng = random.Random(37)
    for _ in range(15):
        a, b = random_sparse(alg, rng), random_sparse(alg, rng)
        assert alg.b_twist(alg.mul(a, b)) == alg.mul(alg.b_twist(a), alg.b_twist(b))
        assert alg.b_twist(alg.dualize(a)) == alg.dualize(alg.b_twist(a))


def test_ext_form():
    alg = algebra("A:2")
    ctx = alg.ctx
    for x in ctx.elements():
        for y in ctx.elements():
            expected = ONE if x == y else LaurentPoly.zero()
            assert alg.ext_form(alg.basis(x), alg.basis(y)) == expected
    assert alg.ext_form(alg.c_gen(0), alg.unit()) == V
    rng = random.Random(41)
    for _ in range(10):
        a, b = random_sparse(alg, rng), random_sparse(alg, rng)
        assert alg.ext_form(a, b) == alg.ext_form(b, a)


def test_adjointness_random():
    alg = algebra("A:3")
    rng = random.Random(43)
    bcs = [alg.b_twist(alg.c_gen(s)) for s in range(3)]
    for _ in range(50):
        a, b = random_sparse(alg, rng), random_sparse(alg, rng)
        for s in range(3):
            assert alg.ext_form(alg.mul_cs(a, s, "left"), b) == \
                alg.ext_form(a, alg.mul_cs(b, s, "left"))
            assert alg.ext_form(alg.mul(bcs[s], a), b) == \
                alg.ext_form(a, alg.mul(bcs[s], b))


def test_t_basis_round_trip():
    alg = algebra("A:2")
    s1 = gen("A:2", 0)
    assert alg.to_t_basis(alg.basis(s1)) == {s1: V}
    assert alg.to_t_basis(alg.unit()) == {0: ONE}
    rng = random.Random(47)
    for _ in range(10):
        a = random_sparse(alg, rng)
        assert alg.from_t_basis(alg.to_t_basis(a)) == a


def test_element_arithmetic():
    alg = algebra("A:2")
    rng = random.Random(53)
    a, b = random_sparse(alg, rng), random_sparse(alg, rng)
    assert a - a == alg.zero()
    assert -(-a) == a
    assert (a + b) - b == a
    assert a.scaled(2) == a + a
    assert a * 2 == 2 * a == a + a
    assert a * ONE == a
    assert (a * b) == alg.mul(a, b)
    with pytest.raises(ValueError):
        a + algebra("A:1").unit()


def test_out_of_window_propagates():
    alg = algebra("I2:inf", bound=3)
    ctx = alg.ctx
    top = [x for x in ctx.elements() if ctx.length(x) == 3][0]
    s = next(iter(set(range(2)) - ctx.descents(top, "left")))
    with pytest.raises(OutOfWindowError):
        alg.mul_hs(alg.basis(top), s, "left")
    # products that stay inside the window still work
    down = next(iter(ctx.descents(top, "left")))
    alg.mul_hs(alg.basis(top), down, "left")


def test_json_round_trip():
    alg = algebra("A:2")
    rng = random.Random(59)
    for _ in range(5):
        a = random_sparse(alg, rng)
        obj = alg.to_json_obj(a)
        assert obj["basis"] == "H"
        assert alg.from_json_obj(obj) == a
    with pytest.raises(ValueError):
        alg.from_json_obj({"basis": "T", "terms": []})


def test_memo_refill_is_idempotent():
    fresh = HeckeAlgebra(context("A:2"))
    w0 = fresh.ctx.longest_element()
    first = fresh.inverse_basis(w0)
    fresh._inverse_memo.clear()
    assert fresh.inverse_basis(w0) == first
