"""Exact polynomial algebra: Laplacian, dimensions, Almansi splits.

Oracles: sympy recomputes Laplacians and nullspace dimensions from scratch;
hand-derived closed forms pin small decompositions.  Exact-mode polynomials
carry Fraction coefficients, so reassembly and annihilation checks demand
residual zero, not merely small.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from polyball.polyalg import (
    MultiPoly,
    almansi_reassemble,
    dim_H,
    dim_Hp,
    dim_P,
    harmonic_almansi,
    harmonic_basis,
    is_polyharmonic,
    polyharmonic_almansi,
    polyharmonic_basis,
    polyharmonic_split,
)

RNG = np.random.default_rng(112)


def random_homogeneous(n: int, m: int, rng) -> MultiPoly:
    """Random homogeneous polynomial with small rational coefficients."""
    total = MultiPoly.zero(n)
    got_term = False
    for exps in _exponents(n, m):
        if rng.random() < 0.6:
            c = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10)))
            if c:
                total = total + MultiPoly.monomial(n, exps, c)
                got_term = True
    if not got_term:
        total = MultiPoly.monomial(n, next(iter(_exponents(n, m))), 1)
    return total


def _exponents(n: int, m: int):
    if n == 1:
        yield (m,)
        return
    for head in range(m, -1, -1):
        for rest in _exponents(n - 1, m - head):
            yield (head,) + rest


def _sympy_poly(q: MultiPoly, symbols):
    expr = sympy.Integer(0)
    for exps, c in q.terms.items():
        if hasattr(c, "re"):  # exact Gaussian rational coefficient
            term = (sympy.Rational(c.re.numerator, c.re.denominator)
                    + sympy.I * sympy.Rational(c.im.numerator,
                                               c.im.denominator))
        else:
            term = sympy.nsimplify(c)
        for s, e in zip(symbols, exps):
            term *= s ** e
        expr += term
    return sympy.expand(expr)


# --------------------------------------------------------------------------
# arithmetic and text round-trip
# --------------------------------------------------------------------------

def test_multipoly_product_matches_hand_expansion():
    x1 = MultiPoly.variable(2, 0)
    x2 = MultiPoly.variable(2, 1)
    q = (x1 + x2) * (x1 + x2)
    want = x1 * x1 + MultiPoly.monomial(2, (1, 1), 2) + x2 * x2
    assert (q - want).coefficient_scale() == 0.0


def test_from_text_examples():
    q = MultiPoly.from_text("x1^2 - 2*x1 x2 + 3/4", n=2)
    assert q.terms[(2, 0)] == 1
    assert q.terms[(1, 1)] == -2
    assert q.terms[(0, 0)] == Fraction(3, 4)


def test_from_text_rejects_unknown_symbols_with_position():
    with pytest.raises(ValueError) as err:
        MultiPoly.from_text("x1 + y2", n=2)
    assert "y2" in str(err.value) or "position" in str(err.value)


def test_text_round_trip_is_exact():
    rng = np.random.default_rng(3)
    for n in (2, 3):
        for m in range(5):
            q = random_homogeneous(n, m, rng)
            again = MultiPoly.from_text(q.to_text(), n=n)
            assert (q - again).coefficient_scale() == 0.0


def test_laplacian_matches_sympy():
    rng = np.random.default_rng(17)
    for n in (2, 3):
        symbols = sympy.symbols(f"x1:{n + 1}")
        for m in (2, 3, 5):
            q = random_homogeneous(n, m, rng)
            got = _sympy_poly(q.laplacian(), symbols)
            want = sympy.expand(sum(sympy.diff(_sympy_poly(q, symbols),
                                               s, 2) for s in symbols))
            assert sympy.simplify(got - want) == 0


def test_evaluate_homogeneity_under_complex_phase():
    rng = np.random.default_rng(29)
    for n in (2, 3):
        for m in (1, 3, 4):
            q = random_homogeneous(n, m, rng)
            a = rng.uniform(-1, 1, n)
            phi = rng.uniform(0, 2 * np.pi)
            lhs = q.evaluate(np.exp(1j * phi) * a)
            rhs = np.exp(1j * m * phi) * q.evaluate(a)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=3, max_size=3),
       st.integers(0, 3))
def test_sum_then_evaluate_is_linear(coeffs, m):
    n = 2
    basis = [MultiPoly.monomial(n, (m - k, k), c)
             for k, c in enumerate(coeffs[:m + 1])]
    total = MultiPoly.zero(n)
    for b in basis:
        total = total + b
    point = np.array([0.3, -0.7])
    direct = sum(b.evaluate(point) for b in basis)
    assert total.evaluate(point) == pytest.approx(direct, abs=1e-12)


# --------------------------------------------------------------------------
# dimension formulas against sympy nullspaces
# --------------------------------------------------------------------------

def _nullity_of_laplacian_power(n: int, m: int, p: int) -> int:
    symbols = sympy.symbols(f"x1:{n + 1}")
    monos = list(_exponents(n, m))
    targets = list(_exponents(n, m - 2 * p)) if m - 2 * p >= 0 else []
    if not targets:
        return len(monos)
    rows = []
    for exps in monos:
        expr = sympy.Integer(1)
        for s, e in zip(symbols, exps):
            expr *= s ** e
        for _ in range(p):
            expr = sum(sympy.diff(expr, s, 2) for s in symbols)
        poly = sympy.Poly(expr, *symbols)
        rows.append([poly.coeff_monomial(
            sympy.prod([s ** e for s, e in zip(symbols, t)]))
            for t in targets])
    mat = sympy.Matrix(rows).T
    return len(monos) - mat.rank()


@pytest.mark.parametrize("n", [2, 3])
def test_dim_formulas_match_exact_nullspace(n):
    for m in range(9):
        assert dim_P(n, m) == len(list(_exponents(n, m)))
        assert dim_H(n, m) == _nullity_of_laplacian_power(n, m, 1)
        for p in (1, 2, 3):
            assert dim_Hp(n, m, p) == _nullity_of_laplacian_power(n, m, p)


def test_dim_Hp_truncates_to_dim_P_for_large_p():
    # once 2p exceeds m, every degree-m polynomial is p-harmonic
    assert dim_Hp(3, 4, 3) == dim_P(3, 4)
    assert dim_Hp(2, 5, 3) == dim_P(2, 5)


# --------------------------------------------------------------------------
# harmonic and polyharmonic bases
# --------------------------------------------------------------------------

@pytest.mark.parametrize("n,m", [(2, 0), (2, 3), (2, 6), (3, 2), (3, 4)])
def test_harmonic_basis_is_exactly_harmonic(n, m):
    basis = harmonic_basis(n, m)
    assert len(basis) == dim_H(n, m)
    for b in basis:
        assert b.laplacian().coefficient_scale() == 0.0


@pytest.mark.parametrize("n,m,p", [(2, 4, 2), (3, 5, 2), (2, 6, 3)])
def test_polyharmonic_basis_is_exactly_annihilated(n, m, p):
    basis = polyharmonic_basis(n, m, p)
    assert len(basis) == dim_Hp(n, m, p)
    for b in basis:
        out = b
        for _ in range(p):
            out = out.laplacian()
        assert out.coefficient_scale() == 0.0


def test_orthonormal_harmonic_basis_has_identity_gram():
    from polyball import quadrature

    n, m = 2, 4
    rule = quadrature.sphere_rule(n, quadrature.resolution_for_exactness(
        n, 2 * m))
    basis = harmonic_basis(n, m, orthonormal=True, rule=rule)
    vals = [b.eval_at(rule.nodes).astype(complex) for b in basis]
    gram = np.array([[quadrature.weighted_dot(rule, u, v) for v in vals]
                     for u in vals])
    np.testing.assert_allclose(gram, np.eye(len(basis)), atol=1e-12)


# --------------------------------------------------------------------------
# Almansi decompositions
# --------------------------------------------------------------------------

def test_harmonic_almansi_of_x1_squared():
    q = MultiPoly.from_text("x1^2", n=2)
    comps = harmonic_almansi(q)
    want0 = MultiPoly.from_text("1/2 x1^2 - 1/2 x2^2", n=2)
    want1 = MultiPoly.from_text("1/2", n=2)
    assert (comps[0] - want0).coefficient_scale() == 0.0
    assert (comps[1] - want1).coefficient_scale() == 0.0


def test_polyharmonic_almansi_of_x1_fourth_order_two():
    q = MultiPoly.from_text("x1^4", n=2)
    comps = polyharmonic_almansi(q, 2)
    radial_sq = MultiPoly.from_text("x1^2 + x2^2", n=2)
    want0 = q - radial_sq * radial_sq * MultiPoly.constant(2, Fraction(3, 8))
    assert (comps[0] - want0).coefficient_scale() == 0.0
    assert (comps[1] - MultiPoly.constant(2, Fraction(3, 8))
            ).coefficient_scale() == 0.0


def test_harmonic_almansi_reassembles_exactly():
    rng = np.random.default_rng(41)
    for n in (2, 3):
        for m in (3, 5, 8):
            q = random_homogeneous(n, m, rng)
            comps = harmonic_almansi(q)
            for c in comps:
                assert c.laplacian().coefficient_scale() == 0.0
            back = almansi_reassemble(comps, n, 1)
            assert (back - q).coefficient_scale() == 0.0


def test_polyharmonic_almansi_annihilates_and_reassembles():
    rng = np.random.default_rng(43)
    for n in (2, 3):
        for p in (2, 3):
            for m in (4, 7):
                q = random_homogeneous(n, m, rng)
                comps = polyharmonic_almansi(q, p)
                for c in comps:
                    out = c
                    for _ in range(p):
                        out = out.laplacian()
                    assert out.coefficient_scale() == 0.0
                back = almansi_reassemble(comps, n, p)
                assert (back - q).coefficient_scale() == 0.0


def test_almansi_uniqueness_by_perturbation():
    rng = np.random.default_rng(47)
    q = random_homogeneous(3, 6, rng)
    comps = harmonic_almansi(q)
    bump = harmonic_basis(3, comps[1].degree())[0] if comps[1].degree() >= 0 \
        else MultiPoly.constant(3, 1)
    perturbed = list(comps)
    perturbed[1] = perturbed[1] + bump
    back = almansi_reassemble(perturbed, 3, 1)
    assert (back - q).coefficient_scale() != 0.0


def test_polyharmonic_split_is_exact_direct_sum():
    rng = np.random.default_rng(53)
    for n in (2, 3):
        for p in (1, 2):
            m = 2 * p + 3
            q = random_homogeneous(n, m, rng)
            head, rest = polyharmonic_split(q, p)
            out = head
            for _ in range(p):
                out = out.laplacian()
            assert out.coefficient_scale() == 0.0
            radial = MultiPoly.from_text(
                " + ".join(f"x{i + 1}^2" for i in range(n)), n=n)
            radial_p = MultiPoly.constant(n, 1)
            for _ in range(p):
                radial_p = radial_p * radial
            back = head + radial_p * rest
            assert (back - q).coefficient_scale() == 0.0


def test_is_polyharmonic_classifies_simple_cases():
    x1 = MultiPoly.from_text("x1", n=2)
    r2 = MultiPoly.from_text("x1^2 + x2^2", n=2)
    assert is_polyharmonic(x1, 1)
    assert not is_polyharmonic(r2, 1)
    assert is_polyharmonic(r2, 2)


def test_polyharmonic_almansi_requires_homogeneous_input():
    q = MultiPoly.from_text("x1^2 + x1", n=2)
    with pytest.raises(ValueError):
        polyharmonic_almansi(q, 1)
