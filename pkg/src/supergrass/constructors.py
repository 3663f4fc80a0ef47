"""Named gradings and involutions of E_N.

Four families: the homogeneous models (every generator an eigenvector), the
shift construction `method1` (finitely many generators moved off their
eigenline by fixed odd elements), the prefix construction `method2`
(a common word e_1...e_{k+t} shifts every high generator), and triangular
maps (a single shifted generator) together with the abelian group they
generate.  Every constructor output is verified: it passes the relation
check and squares to the identity, or construction fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exterior import Element, Monomial, generator, word
from .grading import Grading, from_involution
from .linmap import Endomorphism, TailRule, compose, identity_map, is_involution, make_endomorphism, verify_relations

MODEL_KINDS = ("E_k", "E_kstar", "E_inf", "E_can")


class SpecViolation(ValueError):
    """A constructor argument violates one of its stated conditions."""


@dataclass(frozen=True)
class Model:
    """Tag of a homogeneous structure: E_k (first k even, rest odd),
    E_kstar (first k odd, rest even; k = 0 is the all-even structure),
    E_inf (sign alternating with the index), E_can (every generator odd)."""

    kind: str
    k: int | None = None

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.kind in ("E_k", "E_kstar"):
            if self.k is None or self.k < 0:
                raise ValueError(f"{self.kind} needs k >= 0")
        elif self.k is not None:
            raise ValueError(f"{self.kind} takes no parameter")

    @property
    def label(self) -> str:
        if self.kind == "E_k":
            return f"E_{self.k}"
        if self.kind == "E_kstar":
            return f"E_{self.k}*"
        return "E_inf" if self.kind == "E_inf" else "E_can"

    def degree(self, i: int) -> int:
        """Degree of e_i in this structure."""
        if self.kind == "E_k":
            return 0 if i <= self.k else 1
        if self.kind == "E_kstar":
            return 1 if i <= self.k else 0
        if self.kind == "E_inf":
            return 0 if i % 2 == 0 else 1
        return 1  # E_can

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.k is not None:
            d["k"] = self.k
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "Model":
        return cls(data["kind"], data.get("k"))


def e_k(k: int) -> Model:
    return Model("E_k", k)


def e_kstar(k: int) -> Model:
    return Model("E_kstar", k)


E_INF = Model("E_inf")
E_CAN = Model("E_can")


def homogeneous(model: Model, n: int) -> Grading:
    """The sign involution e_i -> (-1)^degree(e_i) e_i of the model."""
    if model.k is not None and model.k > n:
        raise ValueError(f"model parameter k={model.k} exceeds truncation {n}")
    if model.kind == "E_k":
        explicit = {i: generator(i, n) for i in range(1, model.k + 1)}
        tail = TailRule.negation()
    elif model.kind == "E_kstar":
        explicit = {i: -generator(i, n) for i in range(1, model.k + 1)}
        tail = TailRule.identity()
    elif model.kind == "E_inf":
        explicit = {}
        tail = TailRule.parity_sign()
    else:  # E_can
        explicit = {}
        tail = TailRule.negation()
    phi = verify_relations(make_endomorphism(explicit, tail, n))
    assert is_involution(phi)
    return from_involution(phi, model=model, construction={"kind": "homogeneous", "model": model})


# -- method 1: eigenline shifts by fixed odd elements --------------------------


@dataclass(frozen=True)
class Method1Spec:
    """Index data for the shift construction.

    i_plus / i_minus list generators fixed / negated outright; `shifts` maps
    each remaining index j to an element d_j with e_j -> -e_j + 2 d_j.  The
    three conditions on every d_j:

      (1) all words of odd length,
      (2) no word touches a shifted index,
      (3) every word has an even number of factors from the negated set.

    Conditions (2) and (3) make each d_j a fixed point of the map, which is
    what forces the square back to the identity.
    """

    i_plus: frozenset[int] = frozenset()
    i_minus: frozenset[int] = frozenset()
    shifts: Mapping[int, Element] = field(default_factory=dict)

    def __init__(self, i_plus=(), i_minus=(), shifts=None):
        object.__setattr__(self, "i_plus", frozenset(i_plus))
        object.__setattr__(self, "i_minus", frozenset(i_minus))
        object.__setattr__(self, "shifts", dict(shifts or {}))


def method1(spec: Method1Spec, n: int, tail: TailRule | None = None) -> Grading:
    """Involution from a Method1Spec; the tail (identity or negation) covers
    every index of 1..N not named by the spec, and all indices beyond N."""
    if tail is None:
        tail = TailRule.identity()
    if tail.kind not in ("identity", "negation"):
        raise SpecViolation("method1 tail must be identity or negation")
    jj = set(spec.shifts)
    for label, idxs in (("i_plus", spec.i_plus), ("i_minus", spec.i_minus), ("shifts", jj)):
        for i in idxs:
            if not 1 <= i <= n:
                raise SpecViolation(f"{label} index {i} out of range 1..{n}")
    if (spec.i_plus & spec.i_minus) or (jj & (spec.i_plus | spec.i_minus)):
        raise SpecViolation("index sets must be pairwise disjoint")

    # effective sign of every eigen index at the truncation
    sign = {}
    for i in range(1, n + 1):
        if i in jj:
            continue
        if i in spec.i_plus:
            sign[i] = 1
        elif i in spec.i_minus:
            sign[i] = -1
        else:
            sign[i] = 1 if tail.kind == "identity" else -1
    minus_set = {i for i, s in sign.items() if s == -1}

    for j, d in sorted(spec.shifts.items()):
        if d.n != n:
            raise SpecViolation(f"shift d_{j} has truncation {d.n}, expected {n}")
        if not d.even_part().is_zero():
            raise SpecViolation(f"condition (1) failed: d_{j} has even-length words")
        if d.support() & jj:
            raise SpecViolation(f"condition (2) failed: d_{j} touches a shifted index")
        for mono in d.monomials():
            if len(set(mono.indices) & minus_set) % 2:
                raise SpecViolation(
                    f"condition (3) failed: a word of d_{j} has an odd number of negated factors"
                )

    explicit: dict[int, Element] = {}
    for j, d in spec.shifts.items():
        explicit[j] = -generator(j, n) + 2 * d
    for i, s in sign.items():
        if (s == 1) != (tail.kind == "identity"):
            explicit[i] = generator(i, n).scale(s)

    phi = verify_relations(make_endomorphism(explicit, tail, n))
    assert is_involution(phi)
    construction = {"kind": "method1", "sign": sign, "shifts": dict(spec.shifts), "tail": tail}
    return from_involution(phi, construction=construction)


# -- method 2: a common prefix word shifts every high generator -------------------


def method2(k: int, t: int, n: int) -> Grading:
    """e_n fixed for n <= k, negated for k < n <= k+t, and
    e_n -> -e_n + 2 e_1...e_{k+t} e_n above, as a prefix-negation tail.

    t must be odd: the map then sends the prefix word to its negative, which
    is exactly what cancels the shift in the square.
    """
    if k < 0:
        raise SpecViolation("k must be >= 0")
    if t < 1 or t % 2 == 0:
        raise SpecViolation("t must be odd and >= 1")
    if k + t >= n:
        raise SpecViolation(f"k + t = {k + t} must stay below the truncation {n}")
    explicit: dict[int, Element] = {}
    for i in range(1, k + 1):
        explicit[i] = generator(i, n)
    for i in range(k + 1, k + t + 1):
        explicit[i] = -generator(i, n)
    prefix = Monomial.from_indices(range(1, k + t + 1))
    phi = verify_relations(make_endomorphism(explicit, TailRule.prefix_negation(prefix), n))
    assert is_involution(phi)
    return from_involution(phi, construction={"kind": "method2", "k": k, "t": t})


# -- triangular maps and the group they generate -----------------------------------


@dataclass(frozen=True)
class TriangularSpec:
    """One shifted generator: e_index -> -e_index + 2 p, everything else fixed.

    p must be odd-length and supported strictly above `index`."""

    index: int
    p: Element


def _check_triangular(spec: TriangularSpec, n: int, support_floor: int):
    if not 1 <= spec.index <= n:
        raise SpecViolation(f"index {spec.index} out of range 1..{n}")
    if spec.p.n != n:
        raise SpecViolation(f"p has truncation {spec.p.n}, expected {n}")
    if not spec.p.even_part().is_zero():
        raise SpecViolation("p must be a combination of odd-length words")
    if spec.p.support() & set(range(1, support_floor + 1)):
        raise SpecViolation(f"p must avoid indices 1..{support_floor}")


def _triangular_provenance(shifts: Mapping[int, Element], n: int) -> dict:
    sign = {i: 1 for i in range(1, n + 1) if i not in shifts}
    return {"kind": "method1", "sign": sign, "shifts": dict(shifts), "tail": TailRule.identity()}


def triangular(spec: TriangularSpec, n: int) -> Endomorphism:
    """Verified involution with the single shifted generator of the spec."""
    _check_triangular(spec, n, spec.index)
    explicit = {spec.index: -generator(spec.index, n) + 2 * spec.p}
    phi = verify_relations(make_endomorphism(explicit, TailRule.identity(), n))
    phi.provenance = _triangular_provenance({spec.index: spec.p}, n)
    if not is_involution(phi):
        raise SpecViolation("triangular map failed the involution check")
    return phi


def tau_group(specs: Sequence[TriangularSpec], n: int) -> list[Endomorphism]:
    """All 2^M products of the given triangular maps, indexed by subset bitmask.

    The specs must use indices 1..M with every p supported above M; the maps
    then fix each other's data, so the products commute pairwise and every
    one is an involution.  Bit i of the list position says whether T_{i+1}
    participates.
    """
    m = len(specs)
    if sorted(s.index for s in specs) != list(range(1, m + 1)):
        raise SpecViolation(f"specs must carry indices 1..{m} exactly")
    for s in specs:
        _check_triangular(s, n, m)
    by_index = {s.index: s for s in specs}
    out = []
    for mask in range(1 << m):
        chosen = [i + 1 for i in range(m) if mask >> i & 1]
        explicit = {i: -generator(i, n) + 2 * by_index[i].p for i in chosen}
        phi = verify_relations(make_endomorphism(explicit, TailRule.identity(), n))
        phi.provenance = _triangular_provenance({i: by_index[i].p for i in chosen}, n)
        assert is_involution(phi)
        out.append(phi)
    return out


def tau_element_by_composition(specs: Sequence[TriangularSpec], chosen: Sequence[int], n: int) -> Endomorphism:
    """The same subset product built by actual composition; cross-check path."""
    by_index = {s.index: s for s in specs}
    acc = identity_map(n)
    for i in sorted(chosen):
        acc = compose(acc, triangular(by_index[i], n))
    return acc


# -- pairwise swap ------------------------------------------------------------------


def swap_example(n: int) -> Endomorphism:
    """e_1 <-> e_2, e_3 <-> e_4, ...; no generator is an eigenvector."""
    if n % 2:
        raise ValueError("swap needs an even truncation")
    images = {}
    for i in range(1, n + 1, 2):
        images[i] = generator(i + 1, n)
        images[i + 1] = generator(i, n)
    phi = verify_relations(make_endomorphism(images, TailRule.identity(), n))
    assert is_involution(phi)
    return phi


# -- relation check for prefix-shifted families --------------------------------------


@dataclass(frozen=True)
class Type3RelationInstance:
    """Data (k, V, W) for images e_n -> -e_n + 2 e_1...e_k V_n + 2 W_n, n > k.

    Each V_n must avoid indices 1..k; each W_n must be odd-length.
    """

    k: int
    v: Mapping[int, Element]
    w: Mapping[int, Element]

    def __init__(self, k: int, v: Mapping[int, Element], w: Mapping[int, Element]):
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "v", dict(v))
        object.__setattr__(self, "w", dict(w))
        for idx, el in self.v.items():
            if el.support() & set(range(1, k + 1)):
                raise SpecViolation(f"V_{idx} touches an index <= {k}")
        for idx, el in self.w.items():
            if not el.even_part().is_zero():
                raise SpecViolation(f"W_{idx} has even-length words")


def verify_eq1(inst: Type3RelationInstance, pairs: Sequence[tuple[int, int]], n: int) -> bool:
    """Check e_1...e_k (V_p e_r + V_r e_p) = 2 e_1...e_k (V_p W_r + V_r W_p)
    for every listed pair; this is the compatibility the anticommutation
    relations force on such image families."""
    prefix = word(range(1, inst.k + 1), n)
    for p, r in pairs:
        if p <= inst.k or r <= inst.k:
            raise SpecViolation(f"pair ({p}, {r}) must lie above k = {inst.k}")
        vp = inst.v.get(p, Element.zero(n))
        vr = inst.v.get(r, Element.zero(n))
        wp = inst.w.get(p, Element.zero(n))
        wr = inst.w.get(r, Element.zero(n))
        lhs = prefix * (vp * generator(r, n) + vr * generator(p, n))
        rhs = 2 * prefix * (vp * wr + vr * wp)
        if lhs != rhs:
            return False
    return True
