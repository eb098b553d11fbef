"""Strata: labels, destabilization, alignment, the base-case verifier."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from loopstrata.exact import Scalar
from loopstrata.linalg import rank
from loopstrata.mpfilt import (
    LeviSubdatum,
    LoopElement,
    jump_set,
    mp_quotient,
    restrict_quotient,
    sandwich_test,
)
from loopstrata.strata import (
    LeviLabel,
    NeedsConjugation,
    NotSemisimple,
    _exp_ad,
    align_lift,
    centralizer_label,
    deepening_lp,
    destabilize,
    gen_test,
    multi_align,
    stratum_of,
    unstable_test,
    verify_basecase,
)
from loopstrata.vinberg import (
    GradedElement,
    cartan_subspace,
    f_embed,
    is_semisimple,
    jordan_decompose,
)

from conftest import loop_datum, pt


def _running(a1):
    q = mp_quotient(a1, pt(F(1, 2)), F(1, 2))
    z = GradedElement(q, {(0, 0): Scalar.one(), (1, 0): Scalar.one()})
    e_only = GradedElement(q, {(1, 0): Scalar.one()})
    return q, z, e_only


def test_unstable_examples(a1):
    q, z, e_only = _running(a1)
    assert unstable_test(e_only)
    assert not unstable_test(z)
    assert unstable_test(GradedElement(q, {}))


def test_destabilize_examples(a1, a2):
    q, z, e_only = _running(a1)
    y = destabilize(e_only)
    assert a1.pairing((1,), y) == 1
    assert sandwich_test(a1, pt(F(1, 2)), y, F(1, 2))
    assert destabilize(GradedElement(q, {})) == pt(F(1, 2))
    # A2, x=0, r=0, z = e_{alpha_1}: an omega_1-direction deepens it
    q2 = mp_quotient(a2, pt(0, 0), 0)
    e1 = GradedElement.from_lie(
        q2, a2.datum.basis_element(a2.datum.root_index[(1, 0)])
    )
    y2 = destabilize(e1)
    assert a2.pairing((1, 0), y2) > 0
    assert sandwich_test(a2, pt(0, 0), y2, 0)
    with pytest.raises(ValueError):
        destabilize(z)  # not unstable


def test_destabilize_support_deepening_random(a2):
    rng = random.Random(15)
    x = pt(F(1, 3), F(1, 3))
    r = F(1, 3)
    q = mp_quotient(a2, x, r)
    count = 0
    for _ in range(30):
        coeffs = {e: rng.randint(-1, 1) for e in q.basis_entries()}
        z = GradedElement(q, {e: Scalar.rational(c) for e, c in coeffs.items() if c})
        if z.is_zero() or not unstable_test(z):
            continue
        try:
            y = destabilize(z)
        except NeedsConjugation:
            continue
        for (si, _vi) in z.coeffs:
            alpha = q.spaces[si].alpha
            assert a2.pairing(alpha, y) > a2.pairing(alpha, x)
        assert sandwich_test(a2, x, y, r)
        count += 1
    assert count >= 5


def test_deepening_lp_examples(a1):
    status, s0, _ = deepening_lp(a1, pt(0), 0)
    assert status == "optimal" and s0 == 0
    status, sh, _ = deepening_lp(a1, pt(F(1, 2)), F(1, 2))
    assert status == "optimal" and sh == F(1, 2)


def test_centralizer_labels_separate_tori(a1):
    q, z, _ = _running(a1)
    L, ram = centralizer_label(z)
    assert ram.dim_loop == 1 and ram.split_rank == 0
    q0 = mp_quotient(a1, pt(0), 0)
    h = GradedElement.from_lie(q0, a1.datum.cartan_element([1]))
    _L2, split = centralizer_label(h)
    assert split.dim_loop == 1 and split.split_rank == 1
    assert ram != split
    with pytest.raises(NotSemisimple):
        centralizer_label(GradedElement(q, {(1, 0): Scalar.one()}))


def test_label_conjugation_stability(a1):
    """h and e+f are conjugate semisimple elements of sl2 at level zero;
    their labels agree."""
    q0 = mp_quotient(a1, pt(0), 0)
    h = GradedElement.from_lie(q0, a1.datum.cartan_element([1]))
    ef = GradedElement.from_lie(
        q0, a1.datum.basis_element(0) + a1.datum.basis_element(1)
    )
    assert is_semisimple(ef)
    assert centralizer_label(h)[1] == centralizer_label(ef)[1]


def test_stratum_of_and_scaling(a1):
    q, z, e_only = _running(a1)
    assert stratum_of(e_only).is_diamond()
    assert stratum_of(GradedElement(q, {})).is_diamond()
    lbl = stratum_of(z)
    assert not lbl.is_diamond()
    for c in (2, F(-3, 2), 5):
        assert stratum_of(z.scale(Scalar.rational(c))) == lbl
    assert LeviLabel.diamond() > lbl


def test_stratum_jordan_invariance(a2):
    """z with nonzero nilpotent part has the stratum of its semisimple
    part."""
    q2 = mp_quotient(a2, pt(0, 0), 0)
    h = a2.datum.cartan_element([1, -1])
    e_theta = a2.datum.basis_element(a2.datum.root_index[(1, 1)])
    z = GradedElement.from_lie(q2, h + e_theta)
    zs, _ = jordan_decompose(z)
    assert stratum_of(z) == stratum_of(zs) == centralizer_label(zs)[1]


def test_a2_wall_levis_share_label(a2):
    """The two standard GL2-type Levi classes get one label: the walls of
    the Cartan are <alpha_1, z> = 0 at z = h1 + 2 h2 and symmetrically."""
    q = mp_quotient(a2, pt(0, 0), 0)
    wall1 = GradedElement.from_lie(q, a2.datum.cartan_element([1, 2]))
    wall2 = GradedElement.from_lie(q, a2.datum.cartan_element([2, 1]))
    l1 = centralizer_label(wall1)[1]
    l2 = centralizer_label(wall2)[1]
    assert l1 == l2
    assert l1.dim_loop == 4
    generic = GradedElement.from_lie(q, a2.datum.cartan_element([1, 3]))
    assert centralizer_label(generic)[1].dim_loop == 2


def test_gen_test_wall_example(a2):
    """Central elements of a GL2-type Levi: generic iff off the wall."""
    q = mp_quotient(a2, pt(0, 0), 0)
    wall = GradedElement.from_lie(q, a2.datum.cartan_element([1, 2]))
    L, lbl = centralizer_label(wall)
    assert lbl.dim_loop == 4
    assert gen_test(L, wall)  # generic central parameter
    # the center of L is a line; its wall point is zero, which pairs to
    # zero with every weight and fails genericity
    assert not gen_test(L, GradedElement(q, {}))
    # full datum: vacuously true on the zero element
    full = LeviSubdatum.full(a2, pt(0, 0))
    assert gen_test(full, GradedElement(q, {}))
    # a regular element is generic in the torus
    generic = GradedElement.from_lie(q, a2.datum.cartan_element([1, 3]))
    T, _ = centralizer_label(generic)
    assert gen_test(T, generic)
    # but a non-central element raises
    with pytest.raises(ValueError):
        gen_test(L, generic)


def test_semicontinuity_along_lines(a2):
    """dim Z at u=0 >= dim Z at sampled u != 0 along lines through a wall
    point, and the minimal-dimension (generic) label is unique."""
    q = mp_quotient(a2, pt(0, 0), 0)
    z0 = GradedElement.from_lie(q, a2.datum.cartan_element([1, 2]))  # alpha_1 wall
    z1 = GradedElement.from_lie(q, a2.datum.cartan_element([1, 1]))
    base_dim = centralizer_label(z0)[1].dim_loop
    assert base_dim == 4
    labels = []
    for u in (F(1), F(1, 2), F(2), F(-1), F(-1, 3), F(3)):
        z = z0 + z1.scale(Scalar.rational(u))
        lbl = centralizer_label(z)[1]
        assert lbl.dim_loop <= base_dim
        labels.append(lbl)
    min_dim = min(l.dim_loop for l in labels)
    generic = {l for l in labels if l.dim_loop == min_dim}
    assert len(generic) == 1  # one generic label; walls are the exceptions
    assert len(set(labels)) <= 2  # finitely many label values observed


def test_levi_compatibility_containment(a2):
    """For z inside a Levi sub-quotient, the ambient centralizer kernel
    contains the Levi-side centralizer kernel."""
    x = pt(0, 0)
    q = mp_quotient(a2, x, 0)
    wall = GradedElement.from_lie(q, a2.datum.cartan_element([1, 2]))
    L, lbl = centralizer_label(wall)  # GL2-type Levi
    assert lbl.dim_loop == 4
    z = GradedElement.from_lie(q, a2.datum.cartan_element([1, 0]))
    # z lies in L's quotient (it commutes with the wall element)
    assert a2.datum.bracket(z.to_lie(), wall.to_lie()).is_zero()
    Zz = LeviSubdatum(a2, (f_embed(z),), x, (F(0),))
    Zboth = LeviSubdatum(a2, (f_embed(z), f_embed(wall)), x, (F(0), F(0)))
    for s in jump_set(a2, x, 0, 1):
        amb = restrict_quotient(Zz, s)
        levi_side = restrict_quotient(Zboth, s)
        stacked = rank(list(amb.vectors) + list(levi_side.vectors))
        assert stacked == amb.dim  # containment of spans


def test_align_lift_trivial_and_conjugated(a1):
    q, z, _ = _running(a1)
    fz = f_embed(z)
    cap = F(5, 2)
    assert align_lift(z, fz, cap).terms == fz.terms
    # depth_cap = r: nothing to correct
    assert align_lift(z, fz, F(1, 2)).terms == fz.terms
    # explicit conjugation by exp(eps ad(h t))
    w = LoopElement(a1, {F(1): a1.datum.cartan_element([F(2, 5)])})
    g1 = _exp_ad(w, fz, pt(F(1, 2)), F(7, 2))
    g = align_lift(z, g1, F(7, 2))
    assert fz.bracket(g).truncate_value(pt(F(1, 2)), F(7, 2)).is_zero()


def test_multi_align(a2):
    x = pt(0, 0)
    q = mp_quotient(a2, x, 0)
    z1 = GradedElement.from_lie(q, a2.datum.cartan_element([1, 3]))  # regular
    z2 = GradedElement.from_lie(q, a2.datum.cartan_element([1, 0]))
    lifts = multi_align([z1, z2], F(2))
    assert len(lifts) == 2
    assert lifts[0].bracket(lifts[1]).is_zero()
    assert multi_align([], F(2)) == []
    single = multi_align([z1], F(2))
    assert single[0].terms == f_embed(z1).terms


def test_verify_basecase_a1_matrix(a1):
    for xc, r in ((F(0), F(0)), (F(1, 2), F(1, 2)), (F(1, 2), F(0))):
        rep = verify_basecase(a1, pt(xc), r, sample_size=8, seed=0)
        assert rep.passed(), rep.counterexamples
        assert rep.strata  # at least one stratum detected


def test_verify_basecase_detects_expected_strata(a1, a2):
    rep = verify_basecase(a1, pt(0), F(0), sample_size=8, seed=0)
    kinds = sorted(s["label"]["kind"] for s in rep.strata)
    assert kinds == ["diamond", "subdatum"]
    rep2 = verify_basecase(a2, pt(0, 0), F(0), sample_size=12, seed=0)
    assert rep2.passed()
    dims = sorted(
        s["label"].get("dim", 0) for s in rep2.strata if s["label"]["kind"] == "subdatum"
    )
    assert 2 in dims  # maximal torus stratum
    assert any(s["label"]["kind"] == "diamond" for s in rep2.strata)
