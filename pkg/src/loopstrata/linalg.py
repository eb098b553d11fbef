"""Exact dense linear algebra over Q(zeta_n), plus univariate polynomials.

Vectors are tuples of Scalar, matrices are tuples of row tuples.  Sizes
here are desk-scale (at most a few dozen), so plain Gaussian elimination
is the right tool.
"""

from __future__ import annotations

from .exact import Scalar

Vec = tuple[Scalar, ...]
Matrix = tuple[Vec, ...]


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(c: Scalar, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def zero_vec(m: int) -> Vec:
    return (Scalar.zero(),) * m


def mat_vec(m: Matrix, v: Vec) -> Vec:
    out = []
    for row in m:
        s = Scalar.zero()
        for x, y in zip(row, v):
            if not (x.is_zero() or y.is_zero()):
                s = s + x * y
        out.append(s)
    return tuple(out)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append(tuple(sum_scalars(x * y for x, y in zip(row, col) if not (x.is_zero() or y.is_zero())) for col in bt))
    return tuple(out)


def sum_scalars(items) -> Scalar:
    total = Scalar.zero()
    for x in items:
        total = total + x
    return total


def rref(rows: list[Vec]) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][col].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def rank(rows: list[Vec]) -> int:
    return len(rref(rows)[0])


def kernel_basis(rows: list[Vec], ncols: int) -> list[Vec]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Scalar.zero()] * ncols
        v[fc] = Scalar.one()
        for r, pc in zip(red, pivots):
            v[pc] = -r[fc]
        basis.append(tuple(v))
    return basis


def solve(rows: list[Vec], rhs: Vec):
    """One solution of M x = rhs, or None if inconsistent."""
    if not rows:
        return None if any(not y.is_zero() for y in rhs) else ()
    aug = [tuple(row) + (y,) for row, y in zip(rows, rhs)]
    red, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [Scalar.zero()] * ncols
    for r, pc in zip(red, pivots):
        x[pc] = r[-1]
    return tuple(x)


def span_contains(basis_rows: list[Vec], v: Vec) -> bool:
    if all(x.is_zero() for x in v):
        return True
    before = rank(list(basis_rows))
    return rank(list(basis_rows) + [v]) == before


# ---------------------------------------------------------------------------
# univariate polynomials over Scalar (ascending coefficients)


class ScalarPoly:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = [Scalar._lift(x) for x in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        object.__setattr__(self, "c", tuple(c))

    def __setattr__(self, *_):
        raise AttributeError("ScalarPoly is immutable")

    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other):
        return isinstance(other, ScalarPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other: "ScalarPoly") -> "ScalarPoly":
        n = max(len(self.c), len(other.c))
        a = list(self.c) + [Scalar.zero()] * (n - len(self.c))
        b = list(other.c) + [Scalar.zero()] * (n - len(other.c))
        return ScalarPoly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return ScalarPoly([-x for x in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "ScalarPoly") -> "ScalarPoly":
        if not self.c or not other.c:
            return ScalarPoly([])
        out = [Scalar.zero()] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if not x.is_zero():
                for j, y in enumerate(other.c):
                    if not y.is_zero():
                        out[i + j] = out[i + j] + x * y
        return ScalarPoly(out)

    def divmod(self, den: "ScalarPoly") -> tuple["ScalarPoly", "ScalarPoly"]:
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        num = list(self.c)
        q = [Scalar.zero()] * max(len(num) - len(den.c) + 1, 0)
        inv = den.c[-1].inverse()
        for k in range(len(num) - len(den.c), -1, -1):
            c = num[k + len(den.c) - 1] * inv
            q[k] = c
            if not c.is_zero():
                for i, d in enumerate(den.c):
                    num[k + i] = num[k + i] - c * d
        return ScalarPoly(q), ScalarPoly(num)

    def monic(self) -> "ScalarPoly":
        if self.is_zero():
            return self
        inv = self.c[-1].inverse()
        return ScalarPoly([inv * x for x in self.c])

    def derivative(self) -> "ScalarPoly":
        return ScalarPoly([i * x for i, x in enumerate(self.c)][1:])

    def gcd(self, other: "ScalarPoly") -> "ScalarPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def lcm(self, other: "ScalarPoly") -> "ScalarPoly":
        if self.is_zero() or other.is_zero():
            return ScalarPoly([])
        g = self.gcd(other)
        return (self * other).divmod(g)[0].monic()

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree() == 0

    def is_power_of_x(self) -> bool:
        return all(x.is_zero() for x in self.c[:-1]) and not self.is_zero()

    def squarefree_part(self) -> "ScalarPoly":
        return self.divmod(self.gcd(self.derivative()))[0].monic()

    def eval_poly(self, arg: "ScalarPoly", mod: "ScalarPoly") -> "ScalarPoly":
        """self(arg) reduced modulo mod."""
        acc = ScalarPoly([])
        for coeff in reversed(self.c):
            acc = (acc * arg + ScalarPoly([coeff])).divmod(mod)[1]
        return acc


def annihilator(apply_op, v: Vec) -> ScalarPoly:
    """Monic minimal polynomial of the operator on the cyclic space of v.

    ``apply_op`` maps a coordinate vector to a coordinate vector.
    """
    m = len(v)
    chain: list[Vec] = []
    echelon: list[Vec] = []  # rows [vector | combo coords]
    cur = v
    while True:
        k = len(chain)
        row = list(cur) + [Scalar.zero()] * (m + 2)
        row[m + k] = Scalar.one()
        # reduce against echelon rows
        for er in echelon:
            lead = next(i for i in range(m) if not er[i].is_zero())
            if not row[lead].is_zero():
                f = row[lead]
                row = [x - f * y for x, y in zip(row, er)]
        if all(row[i].is_zero() for i in range(m)):
            # dependency found: row[m:m+k+1] are combo coefficients
            coeffs = row[m : m + k + 1]
            return ScalarPoly(coeffs).monic()
        lead = next(i for i in range(m) if not row[i].is_zero())
        inv = row[lead].inverse()
        row = [inv * x for x in row]
        echelon.append(tuple(row))
        chain.append(cur)
        cur = apply_op(cur)
        if len(chain) > m:
            raise RuntimeError("annihilator failed to terminate")


def minimal_polynomial(apply_op, dim: int) -> ScalarPoly:
    """Monic minimal polynomial of a linear operator on Scalar^dim."""
    m = ScalarPoly([Scalar.one()])
    for i in range(dim):
        e = tuple(Scalar.one() if j == i else Scalar.zero() for j in range(dim))
        m = m.lcm(annihilator(apply_op, e))
        if m.degree() == dim:
            break
    return m
