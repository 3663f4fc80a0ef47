"""Z2-gradings of E_N derived from verified involutions.

An order-2 automorphism phi splits E_N into its +1 and -1 eigenspaces; these
are the even and odd components of a grading, with projections
(a + phi(a))/2 and (a - phi(a))/2.  This module provides the projections,
degree tests, spanning sets of the components within a length filtration,
the index-set classification (which generators are eigenvectors, with
tail-aware finiteness), the canonical-type test, and an exact eigenvector
search inside the degree-one span.

All linear algebra is exact Gaussian elimination over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exterior import Element, Monomial, TruncationMismatch, generator, monomials_up_to
from .linmap import Endomorphism, NotAnInvolution, apply, invariant_family, is_involution

#: degree_of result for elements meeting both components.  Zero reports
#: degree 0 by convention (it lies in every component).
MIXED = "mixed"


class Grading:
    """A verified involution together with its eigenspace decomposition.

    `model` is set when the grading comes from a named homogeneous structure;
    `construction` carries constructor metadata used by equivalence
    certificates.  Classification and spanning sets are cached; the value
    semantics stay observably pure.
    """

    __slots__ = ("phi", "n", "model", "construction", "_inv", "_classification", "_spans")

    def __init__(self, phi: Endomorphism, model=None, construction: dict | None = None):
        self.phi = phi
        self.n = phi.n
        self.model = model
        self.construction = construction
        self._inv: dict[int, Element] | None = None
        self._classification = None
        self._spans: dict[tuple[int, int], list[Element]] = {}

    @property
    def invariants(self) -> dict[int, Element]:
        """The fixed family a_i = (e_i + phi(e_i))/2."""
        if self._inv is None:
            self._inv = invariant_family(self.phi)
        return self._inv

    def __repr__(self):
        tag = f", model={self.model.label}" if self.model is not None else ""
        return f"Grading(N={self.n}{tag})"


def from_involution(phi: Endomorphism, model=None, construction: dict | None = None) -> Grading:
    """Grading induced by a verified involution; raises NotAnInvolution otherwise."""
    if not phi.verified:
        raise ValueError("grading requires a verified endomorphism")
    if not is_involution(phi):
        raise NotAnInvolution("the map does not square to the identity")
    if construction is None:
        construction = phi.provenance
    return Grading(phi, model=model, construction=construction)


def project(g: Grading, a: Element, parity: int) -> Element:
    """Eigenprojection: (a + phi(a))/2 for parity 0, (a - phi(a))/2 for parity 1."""
    if a.n != g.n:
        raise TruncationMismatch(f"truncations differ: {g.n} vs {a.n}")
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    image = apply(g.phi, a)
    if parity == 0:
        return (a + image).scale(Fraction(1, 2))
    return (a - image).scale(Fraction(1, 2))


def degree_of(g: Grading, a: Element):
    """0 or 1 when a lies in a single component, MIXED otherwise; 0 for a = 0."""
    if a.is_zero():
        return 0
    image = apply(g.phi, a)
    if image == a:
        return 0
    if image == -a:
        return 1
    return MIXED


# -- exact row reduction over the monomial basis ------------------------------


def _lex_min_bits(el: Element) -> int:
    """Bits of the lexicographically smallest monomial present."""
    return min(el._terms, key=lambda b: Monomial(b).indices)


class _Echelon:
    """Row-echelon accumulator; pivot of a row = its lex-smallest monomial."""

    def __init__(self):
        self.rows: dict[int, Element] = {}

    def residual(self, v: Element) -> Element:
        """Reduce v against the stored rows; eliminating a pivot only ever
        introduces lexicographically larger monomials, so this terminates."""
        r = v
        while not r.is_zero():
            hits = [b for b in r._terms if b in self.rows]
            if not hits:
                break
            b = min(hits, key=lambda x: Monomial(x).indices)
            r = r - self.rows[b].scale(r._terms[b])
            assert b not in r._terms
        return r

    def insert(self, v: Element) -> bool:
        """Reduce and store; True if v was independent of the rows so far."""
        r = self.residual(v)
        if r.is_zero():
            return False
        pivot = _lex_min_bits(r)
        self.rows[pivot] = r.scale(Fraction(1, 1) / Fraction(r._terms[pivot]))
        return True

    def rank(self) -> int:
        return len(self.rows)


def check_independent(vs: list[Element]) -> bool:
    """Exact linear independence over the rationals; the empty list is independent."""
    if not vs:
        return True
    n = vs[0].n
    for v in vs:
        if v.n != n:
            raise TruncationMismatch("mixed truncations in independence check")
    ech = _Echelon()
    return all(ech.insert(v) for v in vs)


def rank_of(vs: list[Element]) -> int:
    ech = _Echelon()
    for v in vs:
        ech.insert(v)
    return ech.rank()


def homogeneous_spanning_set(g: Grading, parity: int, max_len: int) -> list[Element]:
    """Independent projections of the basis words of length <= max_len.

    Candidates are taken by length then lexicographically, and a projection is
    kept exactly when it is independent of the ones already kept (first list
    position wins ties).  The result spans the projection of the length
    filtration, in particular the component's intersection with it.
    """
    if max_len > g.n:
        raise ValueError(f"max_len {max_len} exceeds truncation {g.n}")
    key = (parity, max_len)
    cached = g._spans.get(key)
    if cached is not None:
        return list(cached)
    ech = _Echelon()
    out: list[Element] = []
    for mono in monomials_up_to(g.n, max_len):
        v = project(g, Element.monomial(mono, g.n), parity)
        if v.is_zero():
            continue
        if ech.insert(v):
            out.append(v)
    g._spans[key] = out
    return list(out)


# -- canonical type ------------------------------------------------------------


def is_canonical_type(g: Grading) -> bool:
    """True when every fixed element a_i is a combination of odd-length words.

    Equivalently the involution preserves the even/odd length split.  For a
    tail that genuinely covers indices, the tail's own a-pattern must be odd
    as well so the answer stays truthful beyond the truncation.
    """
    for a_i in g.invariants.values():
        if not a_i.even_part().is_zero():
            return False
    phi = g.phi
    if phi.tail_indices():
        if phi.tail.kind == "prefix_negation":
            # a_n = prefix * e_n, of length |prefix| + 1
            if (phi.tail.prefix.length + 1) % 2 == 0:
                return False
        # identity: a_n = e_n (odd); negation/parity_sign: a_n in {0, e_n}
    return True


# -- classification --------------------------------------------------------------


@dataclass(frozen=True)
class IndexSetDescriptor:
    """Finite explicit part plus the tail's contribution beyond the truncation.

    `tail` is one of 'none', 'all', 'evens', 'odds'; the set is infinite
    exactly when the tail contributes.
    """

    explicit: frozenset[int]
    tail: str = "none"

    @property
    def infinite(self) -> bool:
        return self.tail != "none"

    @property
    def empty(self) -> bool:
        return not self.explicit and self.tail == "none"

    def to_dict(self) -> dict:
        return {"explicit": sorted(self.explicit), "tail": self.tail}


@dataclass(frozen=True)
class ClassificationReport:
    """Which generators are eigenvectors, and the resulting structure type.

    type: '1' (every generator homogeneous), '2' (infinitely many are, some
    are not), '3' (finitely many, at least one), or 'empty_in_basis' (none in
    this basis).  s_case refines type 2 by the finiteness of I+, I-, J.
    """

    type: str
    s_case: str | None
    i_plus: IndexSetDescriptor
    i_minus: IndexSetDescriptor
    j: IndexSetDescriptor
    canonical: bool

    def to_dict(self) -> dict:
        return {
            "type": self.type,
            "s_case": self.s_case,
            "I_plus": self.i_plus.to_dict(),
            "I_minus": self.i_minus.to_dict(),
            "J": self.j.to_dict(),
            "canonical": self.canonical,
        }


def _s_case(ip_inf: bool, im_inf: bool, j_inf: bool) -> str | None:
    if ip_inf and im_inf:
        return "S1"
    if ip_inf and not im_inf:
        return "S3" if j_inf else "S2"
    if im_inf and not ip_inf:
        return "S5" if j_inf else "S4"
    return None


def classify_in_basis(g: Grading) -> ClassificationReport:
    """Partition 1..N into I+ (fixed), I- (negated), J (neither), tail-aware.

    The tail contributes membership beyond N only when it actually covers an
    index at the truncation; a fully explicit map carries no trustworthy
    information past N and classifies over 1..N alone.  A report of
    'empty_in_basis' together with an empty eigenvector search means "no
    homogeneous generator in the degree-one span at this truncation", never a
    claim about every basis.
    """
    if g._classification is not None:
        return g._classification
    phi = g.phi
    ip, im, jj = set(), set(), set()
    for i in range(1, g.n + 1):
        sign = phi.eigen_sign(i)
        if sign == 1:
            ip.add(i)
        elif sign == -1:
            im.add(i)
        else:
            jj.add(i)
    ip_tail = im_tail = j_tail = "none"
    if phi.tail_indices():
        kind = phi.tail.kind
        if kind == "identity":
            ip_tail = "all"
        elif kind == "negation":
            im_tail = "all"
        elif kind == "parity_sign":
            ip_tail, im_tail = "evens", "odds"
        else:
            j_tail = "all"
    dip = IndexSetDescriptor(frozenset(ip), ip_tail)
    dim = IndexSetDescriptor(frozenset(im), im_tail)
    dj = IndexSetDescriptor(frozenset(jj), j_tail)

    i_empty = dip.empty and dim.empty
    i_infinite = dip.infinite or dim.infinite
    if dj.empty:
        kind = "1"
    elif i_empty:
        kind = "empty_in_basis"
    elif i_infinite:
        kind = "2"
    else:
        kind = "3"
    s_case = _s_case(dip.infinite, dim.infinite, dj.infinite) if kind == "2" else None
    report = ClassificationReport(
        type=kind,
        s_case=s_case,
        i_plus=dip,
        i_minus=dim,
        j=dj,
        canonical=is_canonical_type(g),
    )
    g._classification = report
    return report


# -- eigenvectors in the degree-one span ------------------------------------------


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the solution space of rows . x = 0, exact, deterministic.

    Gaussian elimination with first-nonzero pivoting; each free column yields
    one basis vector with that coordinate set to 1.
    """
    mat = [row[:] for row in rows]
    pivots: list[tuple[int, int]] = []  # (row, col)
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append((r, c))
        r += 1
        if r == len(mat):
            break
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for pr, pc in pivots:
            vec[pc] = -mat[pr][free]
        basis.append(vec)
    return basis


def find_homogeneous_generators(g: Grading) -> tuple[list[Element], list[Element]]:
    """Bases of {v in span(e_1..e_N) : phi(v) = v} and {...: phi(v) = -v}.

    Solved exactly: the full image of v (all degrees) must equal +-v, so the
    system has one equation per monomial occurring in any generator image.
    Either space may be zero-dimensional.
    """
    n = g.n
    images = [g.phi.image(i) for i in range(1, n + 1)]
    row_keys = sorted(
        {b for img in images for b in img._terms} | {1 << i for i in range(n)},
        key=lambda b: Monomial(b).indices,
    )
    out: list[list[Element]] = []
    for sign in (1, -1):
        rows = []
        for bits in row_keys:
            row = []
            for i in range(n):
                coef = Fraction(images[i]._terms.get(bits, 0))
                if bits == 1 << i:
                    coef -= sign
                row.append(coef)
            rows.append(row)
        basis = _nullspace(rows, n)
        vectors = []
        for vec in basis:
            el = Element(n, {Monomial(1 << i): vec[i] for i in range(n) if vec[i]})
            vectors.append(el)
        out.append(vectors)
    return out[0], out[1]
