"""Exact scalar arithmetic.

Three layers, all exact:

* rationals (``fractions.Fraction``, aliased ``Rat``),
* the cyclotomic field Q(zeta_n), elements stored as reduced residues
  modulo the n-th cyclotomic polynomial Phi_n,
* finite Laurent polynomials in t^(1/n) with cyclotomic coefficients.

One conductor n is fixed per computation session; values with different
conductors interact only when one of them is rational.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Rat = Fraction


class ConductorMismatch(ValueError):
    """Mixed cyclotomic conductors with neither operand rational."""


class DivisionByZero(ZeroDivisionError):
    """Exact division by the zero scalar."""


def parse_rat(text: str) -> Rat:
    """Parse a rational from a "p/q" or integer string."""
    return Fraction(text.strip())


def format_rat(q: Rat) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Exact division of integer polynomials (ascending coefficients),
    # den monic.  Used only to build Phi_n.
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 0)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending, monic, exact integers."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(num)


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_residues(n: int) -> tuple[tuple[Fraction, ...], ...]:
    # x^k mod Phi_n for k = phi(n) .. 2*phi(n)-2, each as a coefficient tuple.
    d = _phi(n)
    phi = cyclotomic_polynomial(n)
    rows: list[tuple[Fraction, ...]] = []
    # x^d = -(phi[0] + ... + phi[d-1] x^{d-1})
    cur = [Fraction(-phi[i]) for i in range(d)]
    rows.append(tuple(cur))
    for _ in range(d - 2):
        nxt = [Fraction(0)] + cur[: d - 1]
        top = cur[d - 1]
        if top:
            for i in range(d):
                nxt[i] -= top * phi[i]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


class Scalar:
    """An element of Q(zeta_n), the canonical residue modulo Phi_n.

    ``c`` has exactly phi(n) entries; conductor 1 means a plain rational.
    Instances are immutable and hashable.
    """

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        coeffs = tuple(Fraction(x) for x in coeffs)
        if len(coeffs) != _phi(n):
            raise ValueError(f"expected {_phi(n)} coefficients for conductor {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "c", coeffs)

    def __setattr__(self, *_):
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def rational(q) -> Scalar:
        return Scalar(1, (Fraction(q),))

    @staticmethod
    def zero(n: int = 1) -> Scalar:
        return Scalar(n, (Fraction(0),) * _phi(n))

    @staticmethod
    def one(n: int = 1) -> Scalar:
        return Scalar(n, (Fraction(1),) + (Fraction(0),) * (_phi(n) - 1))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def rational_value(self) -> Rat:
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return self.c[0]

    # -- coercion -----------------------------------------------------------

    @staticmethod
    def _coerce(a: "Scalar", b: "Scalar") -> tuple["Scalar", "Scalar"]:
        if a.n == b.n:
            return a, b
        if a.is_rational():
            return a._embed(b.n), b
        if b.is_rational():
            return a, b._embed(a.n)
        raise ConductorMismatch(f"conductors {a.n} and {b.n}")

    def _embed(self, n: int) -> Scalar:
        c = (self.c[0],) + (Fraction(0),) * (_phi(n) - 1)
        return Scalar(n, c)

    @staticmethod
    def _lift(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.rational(x)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> Scalar:
        other = Scalar._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Scalar._coerce(self, other)
        return Scalar(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(self.n, tuple(-x for x in self.c))

    def __sub__(self, other) -> Scalar:
        other = Scalar._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Scalar:
        return (-self) + other

    def __mul__(self, other) -> Scalar:
        other = Scalar._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Scalar._coerce(self, other)
        d = len(a.c)
        if d == 1:
            return Scalar(a.n, (a.c[0] * b.c[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        rows = _power_residues(a.n)
        for k in range(d, 2 * d - 1):
            t = prod[k]
            if t:
                row = rows[k - d]
                for i in range(d):
                    if row[i]:
                        out[i] += t * row[i]
        return Scalar(a.n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return Scalar(self.n, (1 / self.c[0],) + (Fraction(0),) * (len(self.c) - 1))
        # extended Euclid: u * self + v * Phi_n = 1 in Q[x]
        phi = [Fraction(x) for x in cyclotomic_polynomial(self.n)]
        r0, r1 = phi, list(self.c)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(x != 0 for x in r1):
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(q, s1))
        while r0 and r0[-1] == 0:
            r0.pop()
        if len(r0) != 1:
            raise DivisionByZero("not invertible modulo Phi_n")
        lead = r0[0]
        d = _phi(self.n)
        coeffs = [x / lead for x in s0] + [Fraction(0)] * d
        # s0 may exceed degree phi-1 in theory; reduce defensively
        out = Scalar(self.n, tuple(coeffs[:d]))
        for k in range(d, len(s0)):
            if coeffs[k]:
                out = out + Scalar(self.n, tuple(coeffs[k] if i == 0 else Fraction(0) for i in range(d))) * zeta_power(self.n, k)
        return out

    def __truediv__(self, other) -> Scalar:
        other = Scalar._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Scalar._coerce(self, other)
        return a * b.inverse()

    def __rtruediv__(self, other) -> Scalar:
        return Scalar._lift(other) / self

    def __pow__(self, k: int) -> Scalar:
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = Scalar._lift(other)
        if other is NotImplemented:
            return NotImplemented
        try:
            a, b = Scalar._coerce(self, other)
        except ConductorMismatch:
            return False
        return a.c == b.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.n, self.c))

    def __repr__(self):
        return f"Scalar({self.render()})"

    def render(self) -> str:
        """Textual form: rationals as p/q, otherwise a polynomial in z."""
        if self.is_rational():
            return format_rat(self.c[0])
        parts = []
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mon and abs(x) == 1:
                head = "-" if x < 0 else ""
                parts.append(f"{head}{mon}")
            else:
                parts.append(format_rat(x) + ("*" + mon if mon else ""))
        body = " + ".join(parts).replace("+ -", "- ")
        return f"{body} [z=zeta_{self.n}]"


def _frac_poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return q, num


def _frac_poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _frac_poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


@lru_cache(maxsize=None)
def zeta_power(n: int, k: int) -> Scalar:
    """zeta_n^k as a Scalar of conductor n; k may be any integer."""
    k %= n
    d = _phi(n)
    if k < d:
        return Scalar(n, tuple(Fraction(1) if i == k else Fraction(0) for i in range(d)))
    phi = cyclotomic_polynomial(n)
    coeffs = [Fraction(0)] * d
    coeffs[0] = Fraction(1)
    for _ in range(k):
        top = coeffs[d - 1]
        coeffs = [Fraction(0)] + coeffs[: d - 1]
        if top:
            for i in range(d):
                coeffs[i] -= top * phi[i]
    return Scalar(n, tuple(coeffs))


def embed_root_of_unity(k: int, n: int) -> Scalar:
    """Return zeta_n^k.  embed_root_of_unity(0, n) == 1."""
    return zeta_power(n, k)


class LaurentScalar:
    """A finite Laurent polynomial in t^(1/n) with Scalar coefficients.

    Exponents are rationals whose denominators divide n; no zero
    coefficients are stored.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        clean: dict[Fraction, Scalar] = {}
        for e, c in (terms or {}).items():
            e = Fraction(e)
            if n % e.denominator != 0:
                raise ValueError(f"exponent {e} not in (1/{n})Z")
            c = Scalar._lift(c)
            if not c.is_zero():
                clean[e] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("LaurentScalar is immutable")

    @staticmethod
    def monomial(n: int, coeff, exponent) -> LaurentScalar:
        return LaurentScalar(n, {Fraction(exponent): coeff})

    @staticmethod
    def zero(n: int = 1) -> LaurentScalar:
        return LaurentScalar(n, {})

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Fraction]:
        return sorted(self.terms)

    def coefficient(self, exponent) -> Scalar:
        return self.terms.get(Fraction(exponent), Scalar.zero())

    @staticmethod
    def _coerce(a: "LaurentScalar", b: "LaurentScalar"):
        if a.n != b.n:
            raise ConductorMismatch(f"Laurent conductors {a.n} and {b.n}")
        return a, b

    def __add__(self, other: "LaurentScalar") -> "LaurentScalar":
        a, b = LaurentScalar._coerce(self, other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e)
            terms[e] = c if s is None else s + c
        return LaurentScalar(a.n, terms)

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentScalar") -> "LaurentScalar":
        return self + (-other)

    def __mul__(self, other) -> "LaurentScalar":
        if isinstance(other, (int, Fraction, Scalar)):
            c0 = Scalar._lift(other)
            return LaurentScalar(self.n, {e: c * c0 for e, c in self.terms.items()})
        a, b = LaurentScalar._coerce(self, other)
        terms: dict[Fraction, Scalar] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = e1 + e2
                p = c1 * c2
                s = terms.get(e)
                terms[e] = p if s is None else s + p
        return LaurentScalar(a.n, terms)

    __rmul__ = __mul__

    def specialize_t1(self) -> Scalar:
        """Substitute t = 1."""
        total = Scalar.zero()
        for c in self.terms.values():
            total = total + c
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"LaurentScalar({self.render()})"

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            cs = c.render()
            if not c.is_rational():
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                parts.append(f"{cs}*t^({format_rat(e)})")
        return " + ".join(parts)
