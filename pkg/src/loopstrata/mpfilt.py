"""Twisted loop algebras as affine root decompositions, and Moy-Prasad data.

A twisted loop datum fixes (split datum, pinned sigma, conductor n).  The
loop algebra decomposes into affine root spaces h_alpha^i t^i indexed by a
restricted weight alpha of the fixed torus and a level i in (1/n)Z, where
h_alpha^i is the zeta^(n i)-eigenspace of sigma on the alpha weight space.
Everything downstream (subspaces k_{x,r}, quotients, jumps, twisted-Levi
restriction) is finite, exact bookkeeping over these families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Rat, Scalar, zeta_power
from .linalg import rref, solve
from .rootdata import LieElement, PinnedAutomorphism, RootDatum

Weight = tuple[int, ...]


@dataclass(frozen=True)
class ApartmentPoint:
    """A rational point of the apartment, as the values it takes on the
    restricted simple roots.  Extra trailing coordinates (central
    directions) are accepted and ignored."""

    coords: tuple[Rat, ...]

    @staticmethod
    def of(*coords) -> "ApartmentPoint":
        return ApartmentPoint(tuple(Fraction(c) for c in coords))


class TwistedLoopDatum:
    def __init__(self, datum: RootDatum, sigma: PinnedAutomorphism, n: int | None = None):
        if n is None:
            n = sigma.order
        if n <= 0 or n % sigma.order != 0:
            raise ValueError(f"n={n} must be a positive multiple of order(sigma)={sigma.order}")
        self.datum = datum
        self.sigma = sigma
        self.n = n
        perm = sigma.node_permutation
        seen: set[int] = set()
        orbits: list[tuple[int, ...]] = []
        for i in range(datum.rank):
            if i in seen:
                continue
            orb = [i]
            j = perm[i]
            while j != i:
                orb.append(j)
                j = perm[j]
            seen.update(orb)
            orbits.append(tuple(sorted(orb)))
        self.node_orbits = tuple(sorted(orbits))
        self.restricted_rank = len(self.node_orbits)
        self._families: dict[tuple[Weight, int], tuple[LieElement, ...]] | None = None
        self._family_solvers: dict[tuple[Weight, int], tuple] = {}

    # -- weights ------------------------------------------------------------

    def restrict_weight(self, w: Weight) -> Weight:
        return tuple(sum(w[j] for j in orb) for orb in self.node_orbits)

    def restriction_map(self) -> tuple[tuple[int, ...], ...]:
        """Matrix of X*(T_H) -> X*(T) in simple-root coordinates."""
        rows = []
        for orb in self.node_orbits:
            rows.append(tuple(1 if j in orb else 0 for j in range(self.datum.rank)))
        return tuple(rows)

    def label_weight(self, k: int) -> Weight:
        if self.datum.is_root_label(k):
            return self.restrict_weight(self.datum.roots[k])
        return (0,) * self.restricted_rank

    def pairing(self, alpha: Weight, x: ApartmentPoint) -> Rat:
        return sum(
            (Fraction(a) * x.coords[i] for i, a in enumerate(alpha)), Fraction(0)
        )

    def restricted_weight_norm2(self, alpha: Weight) -> Rat:
        """A Weyl-invariant quadratic form value on restricted weights,
        used only to canonicalize labels."""
        gram = self._restricted_gram()
        total = Fraction(0)
        for i, a in enumerate(alpha):
            for j, b in enumerate(alpha):
                total += Fraction(a * b) * gram[i][j]
        return total

    def _restricted_gram(self):
        cached = getattr(self, "_rgram", None)
        if cached is not None:
            return cached
        # Gram of the restricted simple roots under the parent form in
        # which every simple root of the simply-laced cover has length 2.
        lf = self.restricted_rank
        gram = [[Fraction(0)] * lf for _ in range(lf)]
        # derive from the restricted Cartan pairings: (a_J, a_I) =
        # C[I][J] * (a_I, a_I) / 2, fixing (a_I, a_I) from orbit sizes.
        C = self._restricted_cartan()
        diag = [Fraction(2, len(orb)) for orb in self.node_orbits]
        for i in range(lf):
            gram[i][i] = diag[i]
            for j in range(lf):
                if i != j:
                    gram[i][j] = C[i][j] * diag[i] / 2
        self._rgram = tuple(tuple(r) for r in gram)
        return self._rgram

    def _restricted_cartan(self):
        cached = getattr(self, "_rcartan", None)
        if cached is not None:
            return cached
        C = self.datum.cartan_matrix
        out = []
        for I, orbI in enumerate(self.node_orbits):
            row = []
            for J, orbJ in enumerate(self.node_orbits):
                row.append(sum(C[i][orbJ[0]] for i in orbI))
            out.append(tuple(row))
        self._rcartan = tuple(out)
        return self._rcartan

    # -- eigen-decomposition into affine families ----------------------------

    def families(self) -> dict[tuple[Weight, int], tuple[LieElement, ...]]:
        """Basis of h_alpha^(c/n) for each restricted weight alpha and
        sigma-eigenvalue class c in Z/n; only nonzero families stored."""
        if self._families is not None:
            return self._families
        d, sig, n = self.datum, self.sigma, self.n
        groups: dict[Weight, list[int]] = {}
        for k in range(d.dim):
            groups.setdefault(self.label_weight(k), []).append(k)
        fams: dict[tuple[Weight, int], list[LieElement]] = {}
        for alpha, labels in groups.items():
            remaining = set(labels)
            while remaining:
                k0 = min(remaining)
                orbit = [(k0, 1)]
                cur, csgn = k0, 1
                while True:
                    cur, s = sig.apply_basis(cur)
                    csgn *= s
                    if cur == k0:
                        closure = csgn
                        break
                    orbit.append((cur, csgn))
                for k, _ in orbit:
                    remaining.discard(k)
                m = len(orbit)
                for c in range(n):
                    # need zeta_n^(c m) == closure sign
                    if closure == 1:
                        if (c * m) % n != 0:
                            continue
                    else:
                        if n % 2 != 0 or (c * m) % n != n // 2:
                            continue
                    vec = d.zero()
                    for pos, (k, sgn) in enumerate(orbit):
                        coeff = zeta_power(n, (-c * pos) % n) * sgn
                        vec = vec + d.basis_element(k).scale(coeff)
                    fams.setdefault((alpha, c), []).append(vec)
        self._families = {key: tuple(v) for key, v in fams.items()}
        # sanity: sigma acts on each basis vector by zeta^c
        for (alpha, c), vecs in self._families.items():
            lam = zeta_power(n, c)
            for v in vecs:
                assert sig.apply(v) == v.scale(lam), (alpha, c)
        return self._families

    def _eigen_inverse(self):
        """Inverse of the change of basis from the Chevalley basis to the
        concatenated family eigenbasis (cached)."""
        cached = getattr(self, "_einv", None)
        if cached is not None:
            return cached
        dim = self.datum.dim
        order: list[tuple[tuple[Weight, int], int]] = []
        cols = []
        for key in sorted(self.families()):
            for i, v in enumerate(self.families()[key]):
                order.append((key, i))
                cols.append(v.dense())
        assert len(cols) == dim
        aug = []
        for i in range(dim):
            row = [cols[j][i] for j in range(dim)]
            row += [Scalar.one() if t == i else Scalar.zero() for t in range(dim)]
            aug.append(tuple(row))
        red, pivots = rref(aug)
        assert pivots == list(range(dim)), "eigenbasis is singular"
        einv = tuple(tuple(r[dim:]) for r in red)
        slices: dict[tuple[Weight, int], tuple[int, int]] = {}
        pos = 0
        for key in sorted(self.families()):
            ln = len(self.families()[key])
            slices[key] = (pos, ln)
            pos += ln
        self._einv = (einv, slices)
        return self._einv

    def eigen_coords(self, vec: LieElement) -> list[Scalar]:
        """Coordinates of an h-element in the concatenated eigenbasis."""
        einv, _slices = self._eigen_inverse()
        dim = self.datum.dim
        out = [Scalar.zero()] * dim
        for k, c in vec.coeffs.items():
            col = [einv[j][k] for j in range(dim)]
            for j in range(dim):
                if not col[j].is_zero():
                    out[j] = out[j] + c * col[j]
        return out

    def family_slice(self, alpha: Weight, c: int) -> tuple[int, int]:
        _einv, slices = self._eigen_inverse()
        return slices[(alpha, c % self.n)]

    def family_coords(self, alpha: Weight, c: int, vec: LieElement):
        """Coordinates of vec in the basis of family (alpha, c), or None if
        vec has components outside that family."""
        coords = self.eigen_coords(vec)
        start, ln = self.family_slice(alpha, c)
        block = coords[start : start + ln]
        for j, v in enumerate(coords):
            if not v.is_zero() and not (start <= j < start + ln):
                return None
        return tuple(block)

    def project_to_family(self, alpha: Weight, c: int, vec: LieElement) -> LieElement:
        """Component of vec lying in family (alpha, c)."""
        fam = self.families().get((alpha, c % self.n))
        if fam is None:
            return self.datum.zero()
        coords = self.eigen_coords(vec)
        start, ln = self.family_slice(alpha, c)
        acc = self.datum.zero()
        for j in range(ln):
            if not coords[start + j].is_zero():
                acc = acc + fam[j].scale(coords[start + j])
        return acc

    def decompose(self, vec: LieElement) -> list[tuple[Weight, int, LieElement]]:
        """Split an h-element into its (alpha, class) components."""
        coords = self.eigen_coords(vec)
        _einv, slices = self._eigen_inverse()
        out = []
        for key in sorted(slices):
            start, ln = slices[key]
            if any(not coords[start + j].is_zero() for j in range(ln)):
                fam = self.families()[key]
                acc = self.datum.zero()
                for j in range(ln):
                    if not coords[start + j].is_zero():
                        acc = acc + fam[j].scale(coords[start + j])
                out.append((key[0], key[1], acc))
        return out

    def __repr__(self):
        return (
            f"TwistedLoopDatum({self.datum.cartan_type}{self.datum.rank}, "
            f"order={self.sigma.order}, n={self.n})"
        )


@dataclass(frozen=True)
class AffineRootSpace:
    """The space h_alpha^i t^i: a restricted weight, a level with
    denominator dividing n, and an explicit eigenbasis."""

    alpha: Weight
    level: Rat
    basis: tuple[LieElement, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def report(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "level": str(self.level),
            "dim": self.dim,
            "basis": [v.render() for v in self.basis],
        }


def affine_root_spaces(
    d: TwistedLoopDatum, lo: Rat, hi: Rat, include_upper: bool = False
) -> list[AffineRootSpace]:
    """All nonzero affine root spaces with level in [lo, hi) (or [lo, hi])."""
    lo, hi = Fraction(lo), Fraction(hi)
    out = []
    for (alpha, c), basis in sorted(d.families().items()):
        # levels are c/n + Z
        base = Fraction(c, d.n)
        k0 = (lo - base).__ceil__()
        i = base + k0
        while i < hi or (include_upper and i == hi):
            out.append(AffineRootSpace(alpha, i, basis))
            i += 1
    out.sort(key=lambda s: (s.level, s.alpha))
    return out


@dataclass
class MPQuotient:
    """The quotient k_{x,r}/k_{x,r+}: exactly the affine root spaces on
    which the affine functional takes the value r."""

    d: TwistedLoopDatum
    x: ApartmentPoint
    r: Rat
    spaces: tuple[AffineRootSpace, ...]

    @property
    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces)

    def basis_entries(self) -> list[tuple[int, int]]:
        return [(i, j) for i, s in enumerate(self.spaces) for j in range(s.dim)]

    def report(self) -> dict:
        return {
            "x": [str(c) for c in self.x.coords],
            "r": str(self.r),
            "total_dim": self.total_dim,
            "spaces": [s.report() for s in self.spaces],
        }


def mp_quotient(d: TwistedLoopDatum, x: ApartmentPoint, r: Rat) -> MPQuotient:
    r = Fraction(r)
    spaces = []
    for (alpha, c), basis in sorted(d.families().items()):
        i = r - d.pairing(alpha, x)
        ni = i * d.n
        if ni.denominator != 1:
            continue
        if int(ni) % d.n != c:
            continue
        spaces.append(AffineRootSpace(alpha, i, basis))
    return MPQuotient(d, x, r, tuple(spaces))


def jump_set(d: TwistedLoopDatum, x: ApartmentPoint, lo: Rat, hi: Rat) -> list[Rat]:
    """All r in [lo, hi) with nonzero quotient."""
    lo, hi = Fraction(lo), Fraction(hi)
    vals: set[Fraction] = set()
    for (alpha, c), _basis in d.families().items():
        base = d.pairing(alpha, x) + Fraction(c, d.n)
        k0 = (lo - base).__ceil__()
        v = base + k0
        while v < hi:
            vals.add(v)
            v += 1
    return sorted(vals)


def _min_level_at_least(c: int, n: int, bound: Rat, strict: bool) -> Rat:
    """Smallest level congruent to c/n mod 1 that is >= bound (> if strict)."""
    base = Fraction(c, n)
    k = (bound - base).__ceil__()
    v = base + k
    if strict and v == bound:
        v += 1
    return v


def sandwich_test(d: TwistedLoopDatum, x: ApartmentPoint, y: ApartmentPoint, r: Rat) -> bool:
    """Whether k_{x,r+} <= k_{y,r+} <= k_{x,r}, decided family by family."""
    r = Fraction(r)
    for (alpha, c) in d.families():
        px, py = d.pairing(alpha, x), d.pairing(alpha, y)
        # k_{x,r+} subset k_{y,r+}: minimal level with px + i > r must satisfy py + i > r
        i1 = _min_level_at_least(c, d.n, r - px, strict=True)
        if not py + i1 > r:
            return False
        # k_{y,r+} subset k_{x,r}: minimal level with py + i > r must satisfy px + i >= r
        i2 = _min_level_at_least(c, d.n, r - py, strict=True)
        if not px + i2 >= r:
            return False
    return True


# ---------------------------------------------------------------------------
# loop elements


@dataclass
class LoopElement:
    """A finitely supported element of the twisted loop algebra:
    a map level -> h-vector, each vector in the matching eigenspace."""

    d: TwistedLoopDatum
    terms: dict[Rat, LieElement]

    def __post_init__(self):
        self.terms = {Fraction(i): v for i, v in self.terms.items() if not v.is_zero()}

    def validate(self) -> "LoopElement":
        for i, v in self.terms.items():
            ni = i * self.d.n
            if ni.denominator != 1:
                raise ValueError(f"level {i} not in (1/{self.d.n})Z")
            lam = zeta_power(self.d.n, int(ni) % self.d.n)
            if self.d.sigma.apply(v) != v.scale(lam):
                raise ValueError(f"component at level {i} not in the eigenspace")
        return self

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LoopElement") -> "LoopElement":
        terms = dict(self.terms)
        for i, v in other.terms.items():
            terms[i] = terms.get(i, self.d.datum.zero()) + v
        return LoopElement(self.d, terms)

    def __sub__(self, other: "LoopElement") -> "LoopElement":
        return self + other.scale(-1)

    def scale(self, c) -> "LoopElement":
        return LoopElement(self.d, {i: v.scale(c) for i, v in self.terms.items()})

    def bracket(self, other: "LoopElement") -> "LoopElement":
        terms: dict[Fraction, LieElement] = {}
        for i, v in self.terms.items():
            for j, w in other.terms.items():
                b = self.d.datum.bracket(v, w)
                if not b.is_zero():
                    k = i + j
                    terms[k] = terms.get(k, self.d.datum.zero()) + b
        return LoopElement(self.d, terms)

    def affine_components(self) -> list[tuple[Weight, Rat, LieElement]]:
        """Split into (alpha, level, vector) affine-root-space components."""
        out = []
        for i in sorted(self.terms):
            v = self.terms[i]
            groups: dict[Weight, dict[int, Scalar]] = {}
            for k, coeff in v.coeffs.items():
                groups.setdefault(self.d.label_weight(k), {})[k] = coeff
            for alpha in sorted(groups):
                out.append((alpha, i, LieElement(self.d.datum, groups[alpha])))
        return out

    def values(self, x: ApartmentPoint) -> list[Rat]:
        """Sorted distinct values <alpha, x> + i over the support."""
        return sorted({self.d.pairing(a, x) + i for a, i, _v in self.affine_components()})

    def value_component(self, x: ApartmentPoint, value: Rat) -> "LoopElement":
        value = Fraction(value)
        terms: dict[Fraction, LieElement] = {}
        for alpha, i, v in self.affine_components():
            if self.d.pairing(alpha, x) + i == value:
                terms[i] = terms.get(i, self.d.datum.zero()) + v
        return LoopElement(self.d, terms)

    def truncate_value(self, x: ApartmentPoint, cap: Rat) -> "LoopElement":
        """Drop all components with value > cap."""
        cap = Fraction(cap)
        terms: dict[Fraction, LieElement] = {}
        for alpha, i, v in self.affine_components():
            if self.d.pairing(alpha, x) + i <= cap:
                terms[i] = terms.get(i, self.d.datum.zero()) + v
        return LoopElement(self.d, terms)

    def in_filtration(self, x: ApartmentPoint, r: Rat, strict: bool = False) -> bool:
        for alpha, i, _v in self.affine_components():
            val = self.d.pairing(alpha, x) + i
            if val < r or (strict and val == r):
                return False
        return True

    def specialize_t1(self) -> LieElement:
        total = self.d.datum.zero()
        for v in self.terms.values():
            total = total + v
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({self.terms[i].render()})*t^({i})" for i in sorted(self.terms)
        )

    def __repr__(self):
        return f"LoopElement({self.render()})"


# ---------------------------------------------------------------------------
# twisted Levi subdata


@dataclass
class LeviSubdatum:
    """A twisted Levi realized as the joint centralizer of finitely many
    commuting semisimple loop elements (the empty list is the full group).

    ``affine_root_subset`` is available when every defining element is
    supported on the restricted Cartan: in that case the centralizer is a
    sum of whole affine root spaces and the subset lists their (alpha,
    class) keys.
    """

    d: TwistedLoopDatum
    elements: tuple[LoopElement, ...]
    x: ApartmentPoint
    values: tuple[Rat, ...]  # value of each defining element at x

    @staticmethod
    def full(d: TwistedLoopDatum, x: ApartmentPoint) -> "LeviSubdatum":
        return LeviSubdatum(d, (), x, ())

    def is_full(self) -> bool:
        return not self.elements

    def cartan_aligned(self) -> bool:
        zero = (0,) * self.d.restricted_rank
        for g in self.elements:
            for alpha, _i, _v in g.affine_components():
                if alpha != zero:
                    return False
        return True

    def affine_root_subset(self) -> frozenset[tuple[Weight, int]] | None:
        if not self.cartan_aligned():
            return None
        keys = []
        for (alpha, c), basis in self.d.families().items():
            ok = True
            for g in self.elements:
                for v in basis:
                    b = g.bracket(LoopElement(self.d, {Fraction(0): v}))
                    if not b.is_zero():
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                keys.append((alpha, c))
        return frozenset(keys)

    def loop_dimension(self) -> int:
        """k((t))-dimension: kernel dimensions summed over one value period."""
        jumps = jump_set(self.d, self.x, 0, 1)
        return sum(len(restrict_quotient(self, s).vectors) for s in jumps)


@dataclass
class QuotientSubspace:
    """A subspace of an MPQuotient, given by coordinate rows in the
    concatenated quotient basis."""

    quotient: MPQuotient
    vectors: tuple[tuple[Scalar, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)


def quotient_vector_to_loop(q: MPQuotient, coords) -> LoopElement:
    terms: dict[Fraction, LieElement] = {}
    pos = 0
    for s in q.spaces:
        for v in s.basis:
            c = coords[pos]
            pos += 1
            if not c.is_zero():
                terms[s.level] = terms.get(s.level, q.d.datum.zero()) + v.scale(c)
    return LoopElement(q.d, terms)


def loop_to_quotient_coords(q: MPQuotient, g: LoopElement):
    """Coordinates of a loop element in the quotient basis; None if it has
    components outside the value-r slice or outside the stored spaces."""
    d = q.d
    coords: list[Scalar] = []
    level_coords: dict[Fraction, list[Scalar]] = {
        i: d.eigen_coords(v) for i, v in g.terms.items()
    }
    consumed: dict[Fraction, LieElement] = {}
    for s in q.spaces:
        lc = level_coords.get(s.level)
        if lc is None:
            coords.extend([Scalar.zero()] * s.dim)
            continue
        c = int(s.level * d.n) % d.n
        start, ln = d.family_slice(s.alpha, c)
        block = lc[start : start + ln]
        coords.extend(block)
        if any(not b.is_zero() for b in block):
            fam = d.families()[(s.alpha, c)]
            acc = d.datum.zero()
            for j, b in enumerate(block):
                if not b.is_zero():
                    acc = acc + fam[j].scale(b)
            consumed[s.level] = consumed.get(s.level, d.datum.zero()) + acc
    if not (g - LoopElement(d, consumed)).is_zero():
        return None
    return tuple(coords)


def restrict_quotient(L: LeviSubdatum, r: Rat) -> QuotientSubspace:
    """The quotient of the Levi's own filtration at (x, r): the joint
    kernel of ad(g_i) on k_{x,r}/k_{x,r+}, one matrix row per image
    coordinate (Lemma-level identity: centralizer quotient = kernel)."""
    d, x = L.d, L.x
    q = mp_quotient(d, x, Fraction(r))
    nb = q.total_dim
    if nb == 0:
        return QuotientSubspace(q, ())
    rows: list[tuple[Scalar, ...]] = []
    basis_loops = []
    for s in q.spaces:
        for v in s.basis:
            basis_loops.append(LoopElement(d, {s.level: v}))
    for g, rv in zip(L.elements, L.values):
        target = mp_quotient(d, x, Fraction(r) + rv)
        cols = []
        for b in basis_loops:
            img = g.bracket(b)
            coords = loop_to_quotient_coords(target, img)
            if coords is None:
                raise RuntimeError("ad image escaped the expected quotient slice")
            cols.append(coords)
        # kernel rows: matrix with rows indexed by target coords
        for t in range(target.total_dim):
            rows.append(tuple(col[t] for col in cols))
    if not rows:
        ident = []
        for i in range(nb):
            ident.append(tuple(Scalar.one() if j == i else Scalar.zero() for j in range(nb)))
        return QuotientSubspace(q, tuple(ident))
    from .linalg import kernel_basis

    ker = kernel_basis(rows, nb)
    return QuotientSubspace(q, tuple(ker))


def levi_restrict(d: TwistedLoopDatum, L: LeviSubdatum, x: ApartmentPoint, r: Rat) -> QuotientSubspace:
    if L.d is not d:
        raise ValueError("Levi subdatum belongs to a different loop datum")
    if L.x != x:
        raise ValueError("Levi subdatum was built at a different apartment point")
    return restrict_quotient(L, r)
