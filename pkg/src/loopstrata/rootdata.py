"""Finite root systems with Chevalley bases and pinned diagram automorphisms.

Simply-laced types (A, D) are built directly: the structure-constant signs
come from a bimultiplicative sign cocycle on the root lattice determined by
a fixed orientation of the Dynkin diagram.  Non-simply-laced types (B, C,
G2) are realized as the fixed subalgebras of diagram automorphisms of a
simply-laced parent; orbit sums of the parent basis give an integral basis
of the folded algebra.  All structure constants are exact integers, and
negative root vectors are normalized so that [e_a, e_{-a}] is the coroot
of a for every positive root a.

Basis labels are integers: first all roots (positive block then the
matching negative block), then the simple coroots h_1..h_l.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Scalar

Root = tuple[int, ...]


class UnsupportedType(ValueError):
    """Cartan type/rank pair outside the supported range."""


class NotADiagramSymmetry(ValueError):
    """Node permutation that does not preserve the Cartan matrix."""


_CARTAN_BUILDERS = {}

EXPECTED_ROOT_COUNT = {
    "A": lambda l: l * (l + 1),
    "B": lambda l: 2 * l * l,
    "C": lambda l: 2 * l * l,
    "D": lambda l: 2 * l * (l - 1),
    "G": lambda l: 12,
}

MAX_RANK = 4


def _cartan_matrix_A(l: int):
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(l))
        for i in range(l)
    )


def _cartan_matrix_D(l: int):
    # chain 1..l-2, fork l-1 and l both attached to l-2
    m = [[0] * l for _ in range(l)]
    for i in range(l):
        m[i][i] = 2
    for i in range(l - 3):
        m[i][i + 1] = m[i + 1][i] = -1
    m[l - 3][l - 2] = m[l - 2][l - 3] = -1
    m[l - 3][l - 1] = m[l - 1][l - 3] = -1
    return tuple(tuple(row) for row in m)


def _edges(cartan) -> list[tuple[int, int]]:
    l = len(cartan)
    return [(i, j) for i in range(l) for j in range(i + 1, l) if cartan[i][j] != 0]


def _root_closure(cartan) -> list[Root]:
    """Positive roots in simple-root coordinates, by reflection closure.

    Sorted by height then coordinates, so simple roots come first.
    """
    l = len(cartan)
    simples = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(l):
                pairing = sum(beta[j] * cartan[i][j] for j in range(l))
                refl = tuple(
                    beta[j] - (pairing if j == i else 0) for j in range(l)
                )
                if all(x >= 0 for x in refl) and refl not in seen:
                    seen.add(refl)
                    nxt.append(refl)
        frontier = nxt
    return sorted(seen, key=lambda r: (sum(r), r))


@dataclass
class LieElement:
    """Sparse element of a Lie algebra in its Chevalley basis."""

    datum: "RootDatum"
    coeffs: dict[int, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k)
            out[k] = v if s is None else s + v
        return LieElement(self.datum, out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + other.scale(Scalar.rational(-1))

    def __neg__(self) -> "LieElement":
        return self.scale(Scalar.rational(-1))

    def scale(self, c) -> "LieElement":
        c = Scalar._lift(c)
        if c.is_zero():
            return LieElement(self.datum, {})
        return LieElement(self.datum, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and self.datum is other.datum and self.coeffs == other.coeffs

    def dense(self) -> tuple[Scalar, ...]:
        return tuple(
            self.coeffs.get(i, Scalar.zero()) for i in range(self.datum.dim)
        )

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            cs = c.render()
            if not c.is_rational():
                cs = f"({cs})"
            parts.append(f"{cs}*{self.datum.basis_label(k)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LieElement({self.render()})"


class RootDatum:
    """A root system plus Chevalley-basis structure constants.

    ``bracket_table[i][j]`` holds the integer coordinates of [b_i, b_j]
    in the basis; it is filled lazily per pair and memoized.
    """

    def __init__(self, type_letter, rank, cartan_matrix, positive_roots, coroots, constants_seed):
        self.cartan_type = type_letter
        self.rank = rank
        self.cartan_matrix = cartan_matrix
        pos = list(positive_roots)
        self.n_positive = len(pos)
        self.roots: tuple[Root, ...] = tuple(pos + [tuple(-x for x in r) for r in pos])
        self.root_index = {r: k for k, r in enumerate(self.roots)}
        # coroots[k]: coordinates of roots[k]^vee in the simple-coroot basis
        self.coroots: tuple[Root, ...] = tuple(
            list(coroots) + [tuple(-x for x in c) for c in coroots]
        )
        self.dim = len(self.roots) + rank
        self._bracket = constants_seed  # dict[(i, j)] -> dict[label, int]
        self.simple_indices = tuple(self.root_index[self._simple_root(i)] for i in range(rank))
        # filled by build_root_datum when a parent realization exists
        self.parent = None
        self.parent_embedding = None  # list: basis label -> parent LieElement

    def _simple_root(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    # -- label helpers ------------------------------------------------------

    def h_label(self, i: int) -> int:
        return len(self.roots) + i

    def is_root_label(self, k: int) -> bool:
        return k < len(self.roots)

    def negative_of(self, k: int) -> int:
        return (k + self.n_positive) % len(self.roots)

    def basis_label(self, k: int) -> str:
        if k < len(self.roots):
            r = self.roots[k]
            return "e[" + ",".join(str(x) for x in r) + "]"
        return f"h{k - len(self.roots) + 1}"

    def zero(self) -> LieElement:
        return LieElement(self, {})

    def basis_element(self, k: int) -> LieElement:
        return LieElement(self, {k: Scalar.one()})

    def cartan_element(self, coords) -> LieElement:
        return LieElement(
            self,
            {self.h_label(i): Scalar._lift(c) for i, c in enumerate(coords)},
        )

    def root_pairing(self, beta: Root, i: int) -> int:
        """<beta, alpha_i^vee> for a weight beta in simple-root coordinates."""
        return sum(beta[j] * self.cartan_matrix[i][j] for j in range(self.rank))

    def coroot_element(self, k: int) -> LieElement:
        return self.cartan_element(self.coroots[k])

    def height(self, k: int) -> int:
        return sum(self.roots[k])

    # -- brackets -----------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> dict[int, int]:
        """Integer coordinates of [b_i, b_j]."""
        key = (i, j)
        cached = self._bracket.get(key)
        if cached is not None:
            return cached
        res = self._compute_bracket(i, j)
        self._bracket[key] = res
        return res

    def _compute_bracket(self, i: int, j: int) -> dict[int, int]:
        nr = len(self.roots)
        if i >= nr and j >= nr:
            return {}
        if i >= nr:  # [h, e_b]
            b = self.roots[j]
            val = self.root_pairing(b, i - nr)
            return {j: val} if val else {}
        if j >= nr:
            res = self._compute_bracket(j, i)
            return {k: -v for k, v in res.items()}
        a, b = self.roots[i], self.roots[j]
        s = tuple(x + y for x, y in zip(a, b))
        if all(x == 0 for x in s):
            return {self.h_label(t): c for t, c in enumerate(self.coroots[i]) if c}
        k = self.root_index.get(s)
        if k is None:
            return {}
        rev = self._bracket.get((j, i))
        if rev is not None:
            return {t: -v for t, v in rev.items()}
        raise RuntimeError(f"missing structure constant for pair {a}, {b}")

    def structure_constant(self, a: Root, b: Root) -> int:
        """N_{a,b} where [e_a, e_b] = N_{a,b} e_{a+b}; requires a+b a root."""
        s = tuple(x + y for x, y in zip(a, b))
        k = self.root_index[s]
        res = self.bracket_basis(self.root_index[a], self.root_index[b])
        return res.get(k, 0)

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        out: dict[int, Scalar] = {}
        for i, ci in x.coeffs.items():
            for j, cj in y.coeffs.items():
                table = self.bracket_basis(i, j)
                if not table:
                    continue
                f = ci * cj
                for k, n in table.items():
                    add = f * n
                    s = out.get(k)
                    out[k] = add if s is None else s + add
        return LieElement(self, out)

    def killing_gram(self):
        """Gram matrix of the Killing form on the basis (cached)."""
        cached = getattr(self, "_killing", None)
        if cached is not None:
            return cached
        d = self.dim
        ad = [[self.bracket_basis(i, j) for j in range(d)] for i in range(d)]
        gram = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                tr = Fraction(0)
                for k in range(d):
                    row = ad[j][k]
                    for m, c in row.items():
                        back = ad[i][m].get(k)
                        if back:
                            tr += c * back
                gram[i][j] = gram[j][i] = tr
        self._killing = tuple(tuple(r) for r in gram)
        return self._killing

    def __repr__(self):
        return f"RootDatum({self.cartan_type}{self.rank}, {len(self.roots)} roots)"


# ---------------------------------------------------------------------------
# simply-laced construction


def _sign_cocycle(cartan):
    """Bimultiplicative sign on the root lattice: parity matrix S with
    eps(a, b) = (-1)^(a . S . b); S has ones on the diagonal and on edges
    (i, j) with i < j."""
    l = len(cartan)
    S = [[0] * l for _ in range(l)]
    for i in range(l):
        S[i][i] = 1
    for i, j in _edges(cartan):
        S[i][j] = 1
    return S


def _build_simply_laced(type_letter: str, rank: int) -> RootDatum:
    cartan = _cartan_matrix_A(rank) if type_letter == "A" else _cartan_matrix_D(rank)
    pos = _root_closure(cartan)
    S = _sign_cocycle(cartan)
    l = rank

    def eps(a: Root, b: Root) -> int:
        par = 0
        for i in range(l):
            if a[i]:
                for j in range(l):
                    if b[j] and S[i][j]:
                        par += a[i] * b[j]
        return -1 if par % 2 else 1

    datum = RootDatum(type_letter, rank, cartan, pos, list(pos), {})
    nr = len(datum.roots)
    table: dict[tuple[int, int], dict[int, int]] = {}
    # sign-normalize: e_{-a} carries an extra factor flip(a) = -eps(a,-a) = +1
    # chosen so that [e_a, e_{-a}] = a^vee for positive a.
    flip = [1] * nr
    for k in range(datum.n_positive):
        a = datum.roots[k]
        flip[k + datum.n_positive] = eps(a, tuple(-x for x in a))
    for i in range(nr):
        for j in range(nr):
            if i == j:
                continue
            a, b = datum.roots[i], datum.roots[j]
            s = tuple(x + y for x, y in zip(a, b))
            if all(x == 0 for x in s):
                c = eps(a, b) * flip[i] * flip[j]
                table[(i, j)] = {
                    datum.h_label(t): c * v for t, v in enumerate(datum.coroots[i]) if v
                }
            elif s in datum.root_index:
                k = datum.root_index[s]
                table[(i, j)] = {k: eps(a, b) * flip[i] * flip[j] * flip[k]}
            else:
                table[(i, j)] = {}
    datum._bracket.update(table)
    return datum


# ---------------------------------------------------------------------------
# pinned automorphisms


def _decompositions(datum: RootDatum) -> dict[int, tuple[int, int]]:
    """For each non-simple positive root index, a pair (simple index s,
    root index d) with roots[k] = roots[s] + roots[d]."""
    out = {}
    for k in range(datum.n_positive):
        r = datum.roots[k]
        if sum(r) == 1:
            continue
        for s in datum.simple_indices:
            rest = tuple(x - y for x, y in zip(r, datum.roots[s]))
            d = datum.root_index.get(rest)
            if d is not None:
                out[k] = (s, d)
                break
        else:
            raise RuntimeError(f"no simple decomposition for root {r}")
    return out


class PinnedAutomorphism:
    """A diagram automorphism acting monomially on the Chevalley basis.

    sigma(e_k) = sign[k] * e_{perm[k]}, sigma(h_i) = h_{node_perm(i)};
    the signs on simple generators are +1.
    """

    def __init__(self, datum: RootDatum, node_permutation: tuple[int, ...]):
        self.datum = datum
        self.node_permutation = node_permutation
        self.perm, self.sign = _extend_pinned(datum, node_permutation)
        self.order = self._compute_order()

    def _compute_order(self) -> int:
        d = self.datum.dim
        perm, sign = list(range(d)), [1] * d
        order = 0
        while True:
            sign = [s * self.sign[p] for s, p in zip(sign, perm)]
            perm = [self.perm[p] for p in perm]
            order += 1
            if perm == list(range(d)) and all(s == 1 for s in sign):
                return order
            if order > 6 * self.datum.dim:
                raise RuntimeError("automorphism order runaway")

    def apply(self, x: LieElement) -> LieElement:
        out: dict[int, Scalar] = {}
        for k, c in x.coeffs.items():
            t = self.perm[k]
            v = c if self.sign[k] == 1 else -c
            s = out.get(t)
            out[t] = v if s is None else s + v
        return LieElement(self.datum, out)

    def apply_basis(self, k: int) -> tuple[int, int]:
        return self.perm[k], self.sign[k]

    def is_identity(self) -> bool:
        return self.order == 1

    def fixed_subalgebra_dimension(self) -> int:
        d = self.datum.dim
        seen = [False] * d
        dim = 0
        for k in range(d):
            if seen[k]:
                continue
            orbit = [k]
            sgn = self.sign[k]
            t = self.perm[k]
            while t != k:
                orbit.append(t)
                sgn *= self.sign[t]
                t = self.perm[t]
            for o in orbit:
                seen[o] = True
            if sgn == 1:
                dim += 1
        return dim

    def __repr__(self):
        return f"PinnedAutomorphism(order={self.order}, nodes={self.node_permutation})"


def pinned_automorphism(datum: RootDatum, node_permutation) -> PinnedAutomorphism:
    """The unique Lie algebra automorphism fixing the pinning and inducing
    the given Dynkin-diagram symmetry."""
    node_permutation = tuple(node_permutation)
    l = datum.rank
    if sorted(node_permutation) != list(range(l)):
        raise NotADiagramSymmetry(f"not a permutation of {l} nodes: {node_permutation}")
    C = datum.cartan_matrix
    for i in range(l):
        for j in range(l):
            if C[node_permutation[i]][node_permutation[j]] != C[i][j]:
                raise NotADiagramSymmetry(
                    f"permutation {node_permutation} does not preserve the Cartan matrix"
                )
    sigma = PinnedAutomorphism(datum, node_permutation)
    _check_automorphism(datum, sigma)
    return sigma


def _extend_pinned(datum: RootDatum, node_perm) -> tuple[list[int], list[int]]:
    decomp = _decompositions(datum)
    nr = len(datum.roots)
    d = datum.dim
    perm = [-1] * d
    sign = [0] * d
    l = datum.rank

    def root_image(r: Root) -> Root:
        out = [0] * l
        for i, x in enumerate(r):
            out[node_perm[i]] = x
        return tuple(out)

    for i in range(l):
        perm[datum.h_label(i)] = datum.h_label(node_perm[i])
        sign[datum.h_label(i)] = 1
        si = datum.simple_indices[i]
        perm[si] = datum.simple_indices[node_perm[i]]
        sign[si] = 1
        perm[si + datum.n_positive] = datum.simple_indices[node_perm[i]] + datum.n_positive
        sign[si + datum.n_positive] = 1
    # extend over positive roots by height, then mirror computation for negatives
    order = sorted(decomp, key=datum.height)
    for k in order:
        s, dd = decomp[k]
        for (ks, kd, kt) in ((s, dd, k), (s + datum.n_positive, dd + datum.n_positive, k + datum.n_positive)):
            n_here = datum.bracket_basis(ks, kd)[kt]
            a_img, a_sgn = perm[ks], sign[ks]
            b_img, b_sgn = perm[kd], sign[kd]
            res = datum.bracket_basis(a_img, b_img)
            t_img = datum.root_index[root_image(datum.roots[kt])]
            n_img = res[t_img]
            val = a_sgn * b_sgn * n_img
            if val % n_here:
                raise RuntimeError("non-integral automorphism extension")
            q = val // n_here
            if q not in (1, -1):
                raise RuntimeError("automorphism extension produced |sign| != 1")
            perm[kt] = t_img
            sign[kt] = q
    return perm, sign


def _check_automorphism(datum: RootDatum, sigma: PinnedAutomorphism):
    d = datum.dim
    for i in range(d):
        for j in range(i + 1, d):
            lhs = sigma.apply(LieElement(datum, {k: Scalar.rational(v) for k, v in datum.bracket_basis(i, j).items()}))
            pi, si = sigma.apply_basis(i)
            pj, sj = sigma.apply_basis(j)
            rhs = LieElement(
                datum,
                {k: Scalar.rational(si * sj * v) for k, v in datum.bracket_basis(pi, pj).items()},
            )
            if lhs != rhs:
                raise RuntimeError(f"bracket not preserved at basis pair ({i}, {j})")


# ---------------------------------------------------------------------------
# folding


_FOLD_RECIPES = {
    # type -> (parent letter, parent rank, node permutation, folded node order)
    ("C", 2): ("A", 3, (2, 1, 0), ({0, 2}, {1})),
    ("B", 2): ("A", 3, (2, 1, 0), ({1}, {0, 2})),
    ("C", 3): ("A", 5, (4, 3, 2, 1, 0), ({0, 4}, {1, 3}, {2})),
    ("B", 3): ("D", 4, (0, 1, 3, 2), ({0}, {1}, {2, 3})),
    ("G", 2): ("D", 4, (2, 1, 3, 0), ({0, 2, 3}, {1})),
}


def _fold(type_letter: str, rank: int) -> RootDatum:
    pletter, prank, nperm, orbit_order = _FOLD_RECIPES[(type_letter, rank)]
    parent = _build_simply_laced(pletter, prank)
    sigma = pinned_automorphism(parent, nperm)
    orbits = [sorted(o) for o in orbit_order]
    lf = len(orbits)

    # folded Cartan matrix: C_F[I][J] = sum_{i in I} C_P[i][j0]
    CF = tuple(
        tuple(sum(parent.cartan_matrix[i][orbits[J][0]] for i in orbits[I]) for J in range(lf))
        for I in range(lf)
    )
    pos = _root_closure(CF)

    def restrict(r: Root) -> Root:
        return tuple(sum(r[j] for j in orbits[I]) for I in range(lf))

    # group parent roots by restriction
    by_restriction: dict[Root, list[int]] = {}
    for k, r in enumerate(parent.roots):
        by_restriction.setdefault(restrict(r), []).append(k)

    basis_in_parent: list[LieElement] = []
    coroots: list[Root] = []
    folded_roots_all = pos + [tuple(-x for x in r) for r in pos]
    for fr in folded_roots_all:
        orbit = by_restriction[fr]
        rep = orbit[0]
        vec = parent.basis_element(rep)
        total = parent.basis_element(rep)
        cur, csgn = rep, 1
        for _ in range(len(orbit) - 1):
            cur, s = sigma.apply_basis(cur)
            csgn *= s
            total = total + parent.basis_element(cur).scale(Scalar.rational(csgn))
        nxt, s = sigma.apply_basis(cur)
        if nxt != rep or csgn * s != 1:
            raise RuntimeError("orbit sum is not sigma-invariant")
        if sigma.apply(total) != total:
            raise RuntimeError("folded basis vector not fixed by sigma")
        basis_in_parent.append(total)
        # folded coroot: sum of parent coroots over the orbit, in h-bar coords
        acc = [0] * parent.rank
        for k in orbit:
            for t, c in enumerate(parent.coroots[k]):
                acc[t] += c
        coords = []
        for I in range(lf):
            vals = {acc[i] for i in orbits[I]}
            if len(vals) != 1:
                raise RuntimeError("folded coroot not orbit-constant")
            coords.append(vals.pop())
        coroots.append(tuple(coords))

    for I in range(lf):
        basis_in_parent.append(
            parent.cartan_element([1 if i in orbits[I] else 0 for i in range(parent.rank)])
        )

    datum = RootDatum(type_letter, lf, CF, pos, coroots[: len(pos)], {})
    nr = len(datum.roots)
    h_of_parent_node = {}
    for I in range(lf):
        for i in orbits[I]:
            h_of_parent_node[parent.h_label(i)] = I

    def express(elem: LieElement) -> dict[int, int]:
        """Coordinates of a sigma-invariant parent element in the folded basis."""
        out: dict[int, int] = {}
        remaining = dict(elem.coeffs)
        # Cartan part: parent h-coefficients must be orbit-constant
        h_acc: dict[int, list] = {}
        for k in list(remaining):
            if not parent.is_root_label(k):
                h_acc.setdefault(h_of_parent_node[k], []).append(remaining.pop(k))
        for I, vals in h_acc.items():
            if len(vals) != len(orbits[I]) or any(v != vals[0] for v in vals):
                raise RuntimeError("Cartan part not orbit-constant")
            q = vals[0].rational_value()
            if q.denominator != 1:
                raise RuntimeError("non-integral folded constant")
            out[datum.h_label(I)] = int(q)
        # root part: match against folded basis vectors
        while remaining:
            k = next(iter(remaining))
            fr = restrict(parent.roots[k])
            fk = datum.root_index[fr]
            base = basis_in_parent[fk]
            mult = remaining[k] / base.coeffs[k]
            q = mult.rational_value()
            if q.denominator != 1:
                raise RuntimeError("non-integral folded constant")
            for t, c in base.coeffs.items():
                have = remaining.pop(t, Scalar.zero())
                if not (have - mult * c).is_zero():
                    raise RuntimeError("parent bracket not in folded span")
            out[fk] = int(q)
        return out

    table: dict[tuple[int, int], dict[int, int]] = {}
    for i in range(nr):
        for j in range(nr):
            if i == j:
                continue
            pb = parent.bracket(basis_in_parent[i], basis_in_parent[j])
            table[(i, j)] = express(pb)
    datum._bracket.update(table)
    datum.parent = parent
    datum.parent_embedding = basis_in_parent
    return datum


# ---------------------------------------------------------------------------
# public constructors


def build_root_datum(type_letter: str, rank: int) -> RootDatum:
    """Construct the split root datum of the given Cartan type."""
    type_letter = type_letter.upper()
    if type_letter == "A" and 1 <= rank <= MAX_RANK:
        datum = _build_simply_laced("A", rank)
    elif type_letter == "D" and rank == 4:
        datum = _build_simply_laced("D", 4)
    elif (type_letter, rank) in _FOLD_RECIPES:
        datum = _fold(type_letter, rank)
    else:
        raise UnsupportedType(f"unsupported type {type_letter}{rank}")
    expected = EXPECTED_ROOT_COUNT[type_letter](rank)
    if len(datum.roots) != expected:
        raise RuntimeError(
            f"{type_letter}{rank}: built {len(datum.roots)} roots, expected {expected}"
        )
    return datum


def bracket(a: LieElement, b: LieElement) -> LieElement:
    if a.datum is not b.datum:
        raise ValueError("elements of different root data")
    return a.datum.bracket(a, b)


def principal_sl2(datum: RootDatum):
    """The principal sl2 triple (e, h, f): e is the sum of the pinned
    simple-root vectors, h the sum of positive coroots, f solved from
    [e, f] = h."""
    e = LieElement(datum, {k: Scalar.one() for k in datum.simple_indices})
    hc = [0] * datum.rank
    for k in range(datum.n_positive):
        for t, c in enumerate(datum.coroots[k]):
            hc[t] += c
    h = datum.cartan_element(hc)
    # [e, sum c_i f_i] = sum c_i h_i, so the f-coefficients are the
    # coordinates of h in the simple-coroot basis.
    f = LieElement(
        datum,
        {
            k + datum.n_positive: Scalar.rational(hc[i])
            for i, k in enumerate(datum.simple_indices)
        },
    )
    assert datum.bracket(e, f) == h
    assert datum.bracket(h, e) == e.scale(2)
    assert datum.bracket(h, f) == f.scale(-2)
    return e, h, f


def identity_automorphism(datum: RootDatum) -> PinnedAutomorphism:
    return pinned_automorphism(datum, tuple(range(datum.rank)))


DIAGRAM_SYMMETRIES = {
    # symbolic twist names accepted by configuration
    "none": lambda datum: tuple(range(datum.rank)),
    "flip": lambda datum: tuple(range(datum.rank - 1, -1, -1)),
    "swap": lambda datum: _d4_swap(datum),
    "triality": lambda datum: _d4_triality(datum),
}


def _d4_swap(datum: RootDatum):
    if (datum.cartan_type, datum.rank) != ("D", 4):
        raise NotADiagramSymmetry("'swap' twist requires type D4")
    return (0, 1, 3, 2)


def _d4_triality(datum: RootDatum):
    if (datum.cartan_type, datum.rank) != ("D", 4):
        raise NotADiagramSymmetry("'triality' twist requires type D4")
    return (2, 1, 3, 0)
