"""Invariant map: depth bounds, quotient factorization, gates, Kostant."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from loopstrata.exact import LaurentScalar, Scalar
from loopstrata.invmap import (
    SupportViolation,
    check_depth_bound,
    exponent_gate,
    invariant_system,
    kostant_jacobian,
    kostant_section_basis,
    kostant_slice_eval,
    q_full,
    q_lie,
    q_xr,
    standard_rep,
)
from loopstrata.linalg import rank
from loopstrata.mpfilt import LoopElement, jump_set, mp_quotient
from loopstrata.rootdata import build_root_datum
from loopstrata.vinberg import GradedElement, f_embed, is_nilpotent

from conftest import loop_datum, pt


def test_invariant_degrees():
    assert invariant_system(build_root_datum("A", 3)).degrees == (2, 3, 4)
    assert invariant_system(build_root_datum("C", 2)).degrees == (2, 4)
    assert invariant_system(build_root_datum("B", 3)).degrees == (2, 4, 6)
    d4 = invariant_system(build_root_datum("D", 4))
    assert d4.labels == ("p2", "p4", "p6", "pf") and d4.degrees == (2, 4, 6, 4)
    assert invariant_system(build_root_datum("G", 2)).degrees == (2, 6)


def test_q_full_spec_examples(a1):
    x = pt(F(1, 2))
    q = mp_quotient(a1, x, F(1, 2))
    z = GradedElement(q, {(0, 0): Scalar.one(), (1, 0): Scalar.one()})  # e + f t
    bp = q_full(f_embed(z))
    assert bp.report() == {"p2|1": "-1"}  # char poly l^2 - t
    e_only = GradedElement(q, {(1, 0): Scalar.one()})
    assert q_full(f_embed(e_only)).is_zero()
    assert q_full(LoopElement(a1, {})).is_zero()


def test_depth_bound_examples(a1):
    x = pt(F(1, 2))
    q = mp_quotient(a1, x, F(1, 2))
    z = GradedElement(q, {(0, 0): Scalar.one(), (1, 0): Scalar.one()})
    v = f_embed(z)
    assert check_depth_bound(a1, x, F(1, 2), v)
    # entry (2, 1): equality j = r*i
    assert q_full(v).min_defect(F(1, 2)) == 0
    # e + f t^3 is a k_{x,r+} perturbation: strict inequality
    e = f_embed(GradedElement(q, {(1, 0): Scalar.one()}))
    pert = e + LoopElement(a1, {F(3): a1.datum.basis_element(1)})
    assert q_full(pert).report() == {"p2|3": "-1"}
    assert q_full(pert).min_defect(F(1, 2)) > 0
    with pytest.raises(SupportViolation):
        check_depth_bound(a1, x, F(1, 2), LoopElement(a1, {F(0): a1.datum.basis_element(1)}))


def test_q_xr_well_defined_under_perturbation(a1, a2_twisted):
    rng = random.Random(23)
    from loopstrata.mpfilt import affine_root_spaces

    for d, x in ((a1, pt(F(1, 2))), (a2_twisted, pt(0))):
        for r in jump_set(d, x, 0, 1):
            q = mp_quotient(d, x, r)
            deep = [
                s
                for s in affine_root_spaces(d, r - 1, r + 2, include_upper=True)
                if d.pairing(s.alpha, x) + s.level > r
            ]
            for _ in range(8):
                coeffs = {e: rng.randint(-2, 2) for e in q.basis_entries()}
                z = GradedElement(
                    q, {e: Scalar.rational(c) for e, c in coeffs.items() if c}
                )
                base = q_xr(z)
                terms: dict = {}
                for s in deep:
                    for v in s.basis:
                        c = rng.randint(-1, 1)
                        if c:
                            terms[s.level] = terms.get(s.level, d.datum.zero()) + v.scale(c)
                pert = f_embed(z) + LoopElement(d, terms)
                assert q_full(pert).slice_equal_r(r).entries == base.entries


def test_specialization_square_untwisted(a1, a2):
    """t = 1 specialization of q_xr equals invariants of the specialized
    element, for split untwisted samples."""
    rng = random.Random(31)
    for d, x in ((a1, pt(F(1, 2))), (a2, pt(F(1, 3), F(1, 3)))):
        for r in jump_set(d, x, 0, 1):
            q = mp_quotient(d, x, r)
            for _ in range(6):
                coeffs = {e: rng.randint(-2, 2) for e in q.basis_entries()}
                z = GradedElement(
                    q, {e: Scalar.rational(c) for e, c in coeffs.items() if c}
                )
                bp = q_xr(z)
                specialized = f_embed(z).specialize_t1()
                direct = q_lie(d.datum, specialized)
                for label in direct:
                    total = Scalar.zero()
                    for (lbl, _j), val in bp.entries.items():
                        if lbl == label:
                            total = total + val
                    assert total == direct[label]


def test_unstable_fiber_equivalence(a1, a2_twisted):
    rng = random.Random(41)
    for d, x in ((a1, pt(F(1, 2))), (a2_twisted, pt(0))):
        for r in jump_set(d, x, 0, 1):
            q = mp_quotient(d, x, r)
            entries = q.basis_entries()
            if len(entries) <= 3:
                import itertools

                grids = [
                    {e: c for e, c in zip(entries, vals) if c}
                    for vals in itertools.product(range(-2, 3), repeat=len(entries))
                ]
            else:
                grids = [
                    {e: rng.randint(-2, 2) for e in entries} for _ in range(40)
                ]
            for coeffs in grids:
                z = GradedElement(
                    q, {e: Scalar.rational(c) for e, c in coeffs.items() if c}
                )
                assert is_nilpotent(z) == q_xr(z).is_zero()


def test_exponent_gate_examples(a1, a2_twisted):
    assert exponent_gate(a1, F(1, 2))  # 2 * 1/2 = 1
    assert not exponent_gate(a1, F(1, 3))
    # and the gated component is nilpotent: h_{1/3} at x = 1/3 is span{e}
    q = mp_quotient(a1, pt(F(1, 3)), F(1, 3))
    assert q.total_dim == 1
    z = GradedElement(q, {(0, 0): Scalar.one()})
    assert is_nilpotent(z)
    assert exponent_gate(a2_twisted, F(1, 4))  # 2 * 1/4 in (1/2)Z


def test_gate_false_forces_nilpotent_g2():
    g2 = loop_datum("G", 2)
    x = pt(F(1, 5), 0)
    r = F(1, 5)
    assert not exponent_gate(g2, r)
    q = mp_quotient(g2, x, r)
    assert q.total_dim > 0
    for e in q.basis_entries():
        assert is_nilpotent(GradedElement(q, {e: Scalar.one()}))


def test_scaling_homogeneity(a1):
    q = mp_quotient(a1, pt(F(1, 2)), F(1, 2))
    z = GradedElement(q, {(0, 0): Scalar.one(), (1, 0): Scalar.one()})
    c = Scalar.rational(F(3, 2))
    base = q_xr(z)
    scaled = q_xr(z.scale(c))
    for (lbl, j), val in base.entries.items():
        deg = base.system.degree_of(lbl)
        assert scaled.entries[(lbl, j)] == val * (c ** deg)


def test_kostant_slice(a1, a2):
    v, q0 = kostant_slice_eval(a1.datum, [0])
    assert q0["p2"].is_zero()
    v1, q1 = kostant_slice_eval(a1.datum, [1])
    assert q1["p2"] == Scalar.rational(-1)  # char poly l^2 - 1
    e, h, f, basis = kostant_section_basis(a2.datum)
    assert len(basis) == 2
    for b in basis:
        assert a2.datum.bracket(f, b).is_zero()


@pytest.mark.parametrize("rank_a", [1, 2, 3])
def test_kostant_jacobian_full_rank(rank_a):
    datum = build_root_datum("A", rank_a)
    rng = random.Random(rank_a)
    for _ in range(3):
        point = [Scalar.rational(F(rng.randint(-3, 3), rng.randint(1, 2))) for _ in range(rank_a)]
        jac = kostant_jacobian(datum, point)
        assert rank([tuple(r) for r in jac]) == rank_a


def test_pfaffian_squares_to_determinant():
    d4 = build_root_datum("D", 4)
    rng = random.Random(6)
    rep = standard_rep(d4)
    for _ in range(4):
        coeffs = {k: rng.randint(-2, 2) for k in rng.sample(range(d4.dim), 6)}
        from loopstrata.rootdata import LieElement

        v = LieElement(d4, {k: Scalar.rational(c) for k, c in coeffs.items() if c})
        vals = q_lie(d4, v)
        # det = e_8(eigenvalues) = c_8 of the char poly
        from loopstrata.invmap import _char_poly

        mat = [[Scalar.zero()] * 8 for _ in range(8)]
        for k, c in v.coeffs.items():
            for i in range(8):
                for j in range(8):
                    if rep[k][i][j]:
                        mat[i][j] = mat[i][j] + c * rep[k][i][j]
        det = _char_poly(mat, Scalar.zero())[7]
        assert vals["pf"] * vals["pf"] == det


def test_twisted_evaluation_lands_on_slice(d4_triality):
    x = pt(0, 0, 0, 0)
    for r in jump_set(d4_triality, x, 0, 1):
        q = mp_quotient(d4_triality, x, r)
        rng = random.Random(8)
        for _ in range(2):
            coeffs = {e: rng.randint(-1, 1) for e in q.basis_entries()}
            z = GradedElement(
                q, {e: Scalar.rational(c) for e, c in coeffs.items() if c}
            )
            bp = q_xr(z)  # raises if any entry leaves the slice
            for (lbl, j) in bp.entries:
                assert j == r * bp.system.degree_of(lbl)
