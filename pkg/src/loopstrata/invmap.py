"""The invariant-theory map q into the bigraded coefficient space C((t)).

Classical types evaluate the characteristic-polynomial coefficients of the
standard matrix representation (plus the Pfaffian for D); the exceptional
G2 uses traces of powers of the adjoint representation.  Twisted data are
evaluated through the split form's representation over Laurent scalars and
the bigrading is read off the exponents directly.

Conventions: det(lambda I - M) = lambda^N + sum_i (-1)^i p_i lambda^(N-i),
so p_i is the i-th elementary symmetric polynomial of the eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import LaurentScalar, Rat, Scalar
from .linalg import kernel_basis, solve
from .mpfilt import ApartmentPoint, LoopElement, TwistedLoopDatum
from .rootdata import LieElement, RootDatum, principal_sl2
from .vinberg import GradedElement, f_embed


class UnsupportedTypeForInvariants(ValueError):
    """No invariant evaluators for this Cartan type."""


class SupportViolation(ValueError):
    """Element presented outside the claimed filtration subspace."""


# ---------------------------------------------------------------------------
# standard representations by generator recursion


def _matrix(dim: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * dim for _ in range(dim)]


def _e_unit(dim, i, j, value=1):
    m = _matrix(dim)
    m[i][j] = Fraction(value)
    return m


def _mat_add(a, b, s=1):
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_comm(a, b):
    n = len(a)
    out = _matrix(n)
    for i in range(n):
        for k in range(n):
            if a[i][k]:
                for j in range(n):
                    if b[k][j]:
                        out[i][j] += a[i][k] * b[k][j]
    for i in range(n):
        for k in range(n):
            if b[i][k]:
                for j in range(n):
                    if a[k][j]:
                        out[i][j] -= b[i][k] * a[k][j]
    return out


def _generator_matrices(datum: RootDatum):
    t, l = datum.cartan_type, datum.rank
    if t == "A":
        dim = l + 1
        es = [_e_unit(dim, i, i + 1) for i in range(l)]
        fs = [_e_unit(dim, i + 1, i) for i in range(l)]
        return dim, es, fs
    if t == "D":
        dim = 2 * l
        pr = lambda i: 2 * l - 1 - i  # 0-indexed pairing i <-> 2l-1-i
        es, fs = [], []
        for i in range(l - 1):
            e = _mat_add(_e_unit(dim, i, i + 1), _e_unit(dim, pr(i + 1), pr(i)), -1)
            f = _mat_add(_e_unit(dim, i + 1, i), _e_unit(dim, pr(i), pr(i + 1)), -1)
            es.append(e)
            fs.append(f)
        # alpha_l = eps_{l-1} + eps_l
        e = _mat_add(_e_unit(dim, l - 2, pr(l - 1)), _e_unit(dim, l - 1, pr(l - 2)), -1)
        f = _mat_add(_e_unit(dim, pr(l - 1), l - 2), _e_unit(dim, pr(l - 2), l - 1), -1)
        es.append(e)
        fs.append(f)
        return dim, es, fs
    raise UnsupportedTypeForInvariants(f"no standard representation for {t}{l}")


def standard_rep(datum: RootDatum):
    """Matrices of every basis element in the defining representation,
    built from generator matrices by the same bracket recursion that
    pins automorphisms (cached on the datum)."""
    cached = getattr(datum, "_std_rep", None)
    if cached is not None:
        return cached
    if datum.parent is not None:
        parent_rep = standard_rep(datum.parent)
        dim = len(parent_rep[0])
        rep = []
        for vec in datum.parent_embedding:
            m = _matrix(dim)
            for k, c in vec.coeffs.items():
                m = _mat_add(m, parent_rep[k], c.rational_value())
            rep.append(m)
        datum._std_rep = rep
        return rep
    vdim, es, fs = _generator_matrices(datum)
    rep: list = [None] * datum.dim
    from .rootdata import _decompositions

    for i, k in enumerate(datum.simple_indices):
        rep[k] = es[i]
        rep[k + datum.n_positive] = fs[i]
        rep[datum.h_label(i)] = _mat_comm(es[i], fs[i])
    decomp = _decompositions(datum)
    for k in sorted(decomp, key=datum.height):
        s, dd = decomp[k]
        for (ks, kd, kt) in ((s, dd, k), (s + datum.n_positive, dd + datum.n_positive, k + datum.n_positive)):
            n = datum.bracket_basis(ks, kd)[kt]
            m = _mat_comm(rep[ks], rep[kd])
            rep[kt] = [[x / n for x in row] for row in m]
    datum._std_rep = rep
    return rep


# ---------------------------------------------------------------------------
# invariant systems


@dataclass(frozen=True)
class InvariantSystem:
    """Labels, degrees and evaluation mode of the fundamental invariants."""

    cartan_type: str
    rank: int
    labels: tuple[str, ...]
    degrees: tuple[int, ...]  # parallel to labels
    mode: str  # "charpoly" | "charpoly+pfaffian" | "adtrace"

    def degree_of(self, label: str) -> int:
        return self.degrees[self.labels.index(label)]


def invariant_system(datum: RootDatum) -> InvariantSystem:
    t, l = datum.cartan_type, datum.rank
    if t == "A":
        degs = tuple(range(2, l + 2))
        return InvariantSystem(t, l, tuple(f"p{d}" for d in degs), degs, "charpoly")
    if t in ("B", "C"):
        degs = tuple(range(2, 2 * l + 1, 2))
        return InvariantSystem(t, l, tuple(f"p{d}" for d in degs), degs, "charpoly")
    if t == "D":
        degs = tuple(range(2, 2 * l - 1, 2))
        return InvariantSystem(
            t, l, tuple(f"p{d}" for d in degs) + ("pf",), degs + (l,), "charpoly+pfaffian"
        )
    if t == "G":
        return InvariantSystem(t, l, ("tr2", "tr6"), (2, 6), "adtrace")
    raise UnsupportedTypeForInvariants(f"type {t}{l}")


@dataclass
class BigradedPoint:
    """Finitely many exact entries (invariant label, exponent) -> Scalar."""

    system: InvariantSystem
    entries: dict[tuple[str, Rat], Scalar]

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        return not self.entries

    def slice_equal_r(self, r: Rat) -> "BigradedPoint":
        r = Fraction(r)
        return BigradedPoint(
            self.system,
            {
                (lbl, j): v
                for (lbl, j), v in self.entries.items()
                if j == r * self.system.degree_of(lbl)
            },
        )

    def min_defect(self, r: Rat):
        """min over entries of j - r*deg; None when empty."""
        r = Fraction(r)
        vals = [j - r * self.system.degree_of(lbl) for (lbl, j) in self.entries]
        return min(vals) if vals else None

    def __eq__(self, other):
        return (
            isinstance(other, BigradedPoint)
            and self.system == other.system
            and self.entries == other.entries
        )

    def report(self) -> dict:
        return {
            f"{lbl}|{j}": v.render()
            for (lbl, j), v in sorted(self.entries.items(), key=lambda kv: (kv[0][0], kv[0][1]))
        }


# ---------------------------------------------------------------------------
# exact characteristic polynomial & Pfaffian over a commutative ring


def _char_poly(mat, zero):
    """Coefficients c_1..c_N with det(lambda I - M) = l^N + sum c_i l^(N-i),
    by the Faddeev-LeVerrier recursion (char 0)."""
    n = len(mat)

    def mat_mul(a, b):
        return [
            [
                _dot_sum((a[i][k], b[k][j]) for k in range(n)) for j in range(n)
            ]
            for i in range(n)
        ]

    def _dot_sum(pairs):
        total = zero
        for x, y in pairs:
            total = total + x * y
        return total

    def trace(a):
        t = zero
        for i in range(n):
            t = t + a[i][i]
        return t

    cs = []
    m = [row[:] for row in mat]
    aux = m
    for k in range(1, n + 1):
        ck = trace(aux) * Fraction(-1, k)
        cs.append(ck)
        if k == n:
            break
        shifted = [[aux[i][j] + (ck if i == j else zero) for j in range(n)] for i in range(n)]
        aux = mat_mul(m, shifted)
    return cs


def _pfaffian(a, zero):
    """Pfaffian of an antisymmetric matrix by recursive expansion."""
    n = len(a)
    if n == 0:
        return _one_like(zero)
    if n % 2 == 1:
        return zero

    def rec(rows_idx):
        if not rows_idx:
            return _one_like(zero)
        i = rows_idx[0]
        total = zero
        for pos in range(1, len(rows_idx)):
            j = rows_idx[pos]
            rest = [t for t in rows_idx[1:] if t != j]
            sign = Fraction(-1) ** (pos - 1)
            term = a[i][j] * sign * rec(rest)
            total = total + term
        return total

    return rec(list(range(n)))


def _one_like(zero):
    if isinstance(zero, LaurentScalar):
        return LaurentScalar.monomial(zero.n, 1, 0)
    return Scalar.one()


# ---------------------------------------------------------------------------
# evaluation


def _loop_matrix(v: LoopElement):
    """Matrix of a loop element in the split standard rep, over Laurent
    scalars in t^(1/n)."""
    d = v.d
    rep = standard_rep(d.datum)
    size = len(rep[0])
    n = d.n
    zero = LaurentScalar.zero(n)
    out = [[zero] * size for _ in range(size)]
    for level, vec in v.terms.items():
        for k, c in vec.coeffs.items():
            mk = rep[k]
            for i in range(size):
                row = mk[i]
                for j in range(size):
                    if row[j]:
                        out[i][j] = out[i][j] + LaurentScalar.monomial(n, c * row[j], level)
    return out


def _loop_ad_matrix(v: LoopElement):
    d = v.d
    datum = d.datum
    size = datum.dim
    n = d.n
    zero = LaurentScalar.zero(n)
    out = [[zero] * size for _ in range(size)]
    for level, vec in v.terms.items():
        for i, ci in vec.coeffs.items():
            for j in range(size):
                table = datum.bracket_basis(i, j)
                for k, m in table.items():
                    out[k][j] = out[k][j] + LaurentScalar.monomial(n, ci * m, level)
    return out


def q_full(v: LoopElement) -> BigradedPoint:
    """Evaluate the fundamental invariants on a finitely supported loop
    element, recording each Laurent coefficient at its exponent."""
    d = v.d
    system = invariant_system(d.datum)
    n = d.n
    zero = LaurentScalar.zero(n)
    entries: dict[tuple[str, Fraction], Scalar] = {}

    def record(label, laurent):
        for e in laurent.support():
            entries[(label, e)] = laurent.coefficient(e)

    if system.mode in ("charpoly", "charpoly+pfaffian"):
        mat = _loop_matrix(v)
        cs = _char_poly(mat, zero)
        for label, deg in zip(system.labels, system.degrees):
            if label == "pf":
                continue
            # p_i = (-1)^i c_i
            ci = cs[deg - 1]
            record(label, ci * (Fraction(-1) ** deg))
        if system.mode == "charpoly+pfaffian":
            size = len(mat)
            jm = [[mat[size - 1 - i][j] for j in range(size)] for i in range(size)]
            record("pf", _pfaffian(jm, zero))
    elif system.mode == "adtrace":
        mat = _loop_ad_matrix(v)
        size = len(mat)

        def mul(a, b):
            out = [[zero] * size for _ in range(size)]
            for i in range(size):
                for k in range(size):
                    if not a[i][k].is_zero():
                        for j in range(size):
                            if not b[k][j].is_zero():
                                out[i][j] = out[i][j] + a[i][k] * b[k][j]
            return out

        def trace(a):
            t = zero
            for i in range(size):
                t = t + a[i][i]
            return t

        m2 = mul(mat, mat)
        record("tr2", trace(m2))
        m4 = mul(m2, m2)
        record("tr6", trace(mul(m4, m2)))
    else:
        raise UnsupportedTypeForInvariants(system.mode)
    return BigradedPoint(system, entries)


def q_lie(datum: RootDatum, v: LieElement) -> dict[str, Scalar]:
    """Invariants of a plain finite-algebra element (no loop variable)."""
    system = invariant_system(datum)
    out: dict[str, Scalar] = {}
    if system.mode in ("charpoly", "charpoly+pfaffian"):
        rep = standard_rep(datum)
        size = len(rep[0])
        zero = Scalar.zero()
        mat = [[zero] * size for _ in range(size)]
        for k, c in v.coeffs.items():
            mk = rep[k]
            for i in range(size):
                for j in range(size):
                    if mk[i][j]:
                        mat[i][j] = mat[i][j] + c * mk[i][j]
        cs = _char_poly(mat, zero)
        for label, deg in zip(system.labels, system.degrees):
            if label == "pf":
                continue
            out[label] = cs[deg - 1] * (Fraction(-1) ** deg)
        if system.mode == "charpoly+pfaffian":
            jm = [[mat[size - 1 - i][j] for j in range(size)] for i in range(size)]
            out["pf"] = _pfaffian(jm, zero)
    elif system.mode == "adtrace":
        dim = datum.dim
        zero = Scalar.zero()
        mat = [[zero] * dim for _ in range(dim)]
        for i, ci in v.coeffs.items():
            for j in range(dim):
                for k, m in datum.bracket_basis(i, j).items():
                    mat[k][j] = mat[k][j] + ci * m

        def mul(a, b):
            o = [[zero] * dim for _ in range(dim)]
            for i in range(dim):
                for k in range(dim):
                    if not a[i][k].is_zero():
                        for j in range(dim):
                            if not b[k][j].is_zero():
                                o[i][j] = o[i][j] + a[i][k] * b[k][j]
            return o

        m2 = mul(mat, mat)
        out["tr2"] = sum((m2[i][i] for i in range(dim)), zero)
        m6 = mul(mul(m2, m2), m2)
        out["tr6"] = sum((m6[i][i] for i in range(dim)), zero)
    return out


def check_depth_bound(d: TwistedLoopDatum, x: ApartmentPoint, r: Rat, v: LoopElement) -> bool:
    """Verifier for the depth bound: every nonzero entry (i, j) of q(v)
    with v in k_{x,r} must satisfy j >= r*i."""
    if not v.in_filtration(x, Fraction(r)):
        raise SupportViolation(f"element not contained in k_(x,{r})")
    defect = q_full(v).min_defect(Fraction(r))
    return defect is None or defect >= 0


def q_xr(z: GradedElement) -> BigradedPoint:
    """The induced map on the quotient: the {j = r*i} part of q of the
    canonical lift (which is all of it, by the graded compatibility)."""
    full = q_full(f_embed(z))
    r = Fraction(z.r)
    sliced = full.slice_equal_r(r)
    if sliced.entries != full.entries:
        raise RuntimeError("canonical lift produced entries off the r-slice")
    return sliced


def exponent_gate(d: TwistedLoopDatum, r: Rat) -> bool:
    """True iff some invariant degree e has e*r in (1/n)Z; when false,
    every element of the graded component must be nilpotent."""
    r = Fraction(r)
    system = invariant_system(d.datum)
    return any((e * r * d.n).denominator == 1 for e in set(system.degrees))


# ---------------------------------------------------------------------------
# Kostant slice


def kostant_section_basis(datum: RootDatum):
    """(e, h, f) plus a basis of the centralizer of f."""
    e, h, f = principal_sl2(datum)
    dim = datum.dim
    rows = []
    for j in range(dim):
        col = datum.bracket(f, datum.basis_element(j))
        rows.append(col)
    # kernel of ad f: matrix rows indexed by image coordinate
    mat = [
        tuple(rows[j].coeffs.get(i, Scalar.zero()) for j in range(dim))
        for i in range(dim)
    ]
    ker = kernel_basis(mat, dim)
    basis = [LieElement(datum, {i: c for i, c in enumerate(v)}) for v in ker]
    assert len(basis) == datum.rank
    return e, h, f, basis


def kostant_slice_eval(datum: RootDatum, coeffs) -> tuple[LieElement, dict[str, Scalar]]:
    """e + sum c_k b_k over the centralizer basis of f, and its invariants."""
    e, _h, _f, basis = kostant_section_basis(datum)
    system = invariant_system(datum)
    if len(coeffs) != len(system.labels):
        raise ValueError(
            f"expected {len(system.labels)} slice coordinates, got {len(coeffs)}"
        )
    v = e
    for c, b in zip(coeffs, basis):
        v = v + b.scale(Scalar._lift(c))
    return v, q_lie(datum, v)


def kostant_jacobian(datum: RootDatum, point) -> list[list[Scalar]]:
    """Exact Jacobian of the slice invariants at the given coordinates,
    by univariate interpolation along each slice direction."""
    system = invariant_system(datum)
    nvar = len(system.labels)
    maxdeg = max(system.degrees)
    jac = [[Scalar.zero()] * nvar for _ in range(nvar)]
    for k in range(nvar):
        # values of each invariant along point + tau * e_k, tau = 0..maxdeg
        samples = []
        for tau in range(maxdeg + 1):
            shifted = list(point)
            shifted[k] = Scalar._lift(shifted[k]) + Scalar.rational(tau)
            _v, vals = kostant_slice_eval(datum, shifted)
            samples.append(vals)
        # interpolate: rows of the Vandermonde system give polynomial
        # coefficients; the linear one is the derivative at tau=0
        vander = [
            tuple(Scalar.rational(Fraction(tau**p)) for p in range(maxdeg + 1))
            for tau in range(maxdeg + 1)
        ]
        for row, label in enumerate(system.labels):
            rhs = tuple(s[label] for s in samples)
            sol = solve(list(vander), rhs)
            jac[row][k] = sol[1]
    return jac
