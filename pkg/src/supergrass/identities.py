"""The free superalgebra on even/odd variables and graded identity checking.

Polynomials live in the free algebra over three sorts of variables: y (even),
z (odd) and x (unrestricted, for ungraded checks).  A polynomial is a graded
identity of a grading when every admissible substitution kills it.  Checking
works through characteristic-zero multilinearization: a polynomial is an
identity on a family of subspaces exactly when all of its multilinear pieces
are, and a multilinear piece vanishes on subspaces iff it vanishes on
spanning tuples.  The exhaustive mode here substitutes every tuple of
spanning vectors of the degree filtration, so its verdicts are complete for
the filtration described by (N, max_len) and are reported with those
parameters attached.

The randomized mode only ever falsifies: a `holds` from it is not
authoritative, and the seed is echoed for reproducibility.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from random import Random
from typing import Iterable, Mapping, NamedTuple

from .exterior import Element, _crossings, monomials_up_to, unit
from .grading import Grading, degree_of, homogeneous_spanning_set


class MissingAssignment(ValueError):
    """A variable of the polynomial has no assigned value."""


class ParityMismatch(ValueError):
    """An assigned element does not lie in the component its sort demands."""


class Variable(NamedTuple):
    """A sorted variable; sorts order alphabetically (x < y < z), which is the
    canonical variable order used for substitution grids and witnesses."""

    sort: str
    index: int

    def __str__(self):
        return f"{self.sort}{self.index}"


def y(i: int) -> Variable:
    return Variable("y", i)


def z(i: int) -> Variable:
    return Variable("z", i)


def x(i: int) -> Variable:
    return Variable("x", i)


def _check_variable(v: Variable):
    if v.sort not in ("x", "y", "z") or v.index < 1:
        raise ValueError(f"bad variable {v!r}")


Word = tuple[Variable, ...]


class SuperPolynomial:
    """Rational combination of words over sorted variables; zero-free store."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, int | Fraction] | None = None):
        tbl: dict[Word, int | Fraction] = {}
        if terms:
            for word_, coef in terms.items():
                word_ = tuple(word_)
                for v in word_:
                    _check_variable(v)
                if coef:
                    acc = tbl.get(word_)
                    if acc is None:
                        tbl[word_] = coef
                    else:
                        acc = acc + coef
                        if acc:
                            tbl[word_] = acc
                        else:
                            del tbl[word_]
        self._terms = tbl

    @classmethod
    def zero(cls) -> "SuperPolynomial":
        return cls()

    @classmethod
    def variable(cls, v: Variable) -> "SuperPolynomial":
        return cls({(v,): 1})

    @classmethod
    def word(cls, *vs: Variable) -> "SuperPolynomial":
        return cls({tuple(vs): 1})

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def variables(self) -> set[Variable]:
        return {v for w in self._terms for v in w}

    def terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(
            ((w, Fraction(c)) for w, c in self._terms.items()),
            key=lambda t: (len(t[0]), t[0]),
        )

    def is_multilinear(self) -> bool:
        """Every word uses each of the polynomial's variables exactly once."""
        vs = self.variables()
        return all(len(w) == len(vs) and set(w) == vs for w in self._terms)

    def __add__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        tbl = dict(self._terms)
        for w, c in other._terms.items():
            acc = tbl.get(w)
            if acc is None:
                tbl[w] = c
            else:
                acc = acc + c
                if acc:
                    tbl[w] = acc
                else:
                    del tbl[w]
        out = SuperPolynomial.zero()
        out._terms = tbl
        return out

    def __neg__(self):
        out = SuperPolynomial.zero()
        out._terms = {w: -c for w, c in self._terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "SuperPolynomial":
        if not c:
            return SuperPolynomial.zero()
        out = SuperPolynomial.zero()
        out._terms = {w: c * v for w, v in self._terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, SuperPolynomial):
            tbl: dict[Word, int | Fraction] = {}
            for wa, ca in self._terms.items():
                for wb, cb in other._terms.items():
                    w = wa + wb
                    c = ca * cb
                    acc = tbl.get(w)
                    if acc is None:
                        tbl[w] = c
                    else:
                        acc = acc + c
                        if acc:
                            tbl[w] = acc
                        else:
                            del tbl[w]
            out = SuperPolynomial.zero()
            out._terms = tbl
            return out
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        return f"SuperPolynomial({self})"

    def __str__(self):
        return format_polynomial(self)


def poly_commutator(p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    return p * q - q * p


# -- text format ----------------------------------------------------------------

_TERM_TOKEN = re.compile(r"([xyz])(\d+)$")
_COEF_TOKEN = re.compile(r"^-?\d+(/\d+)?$")


def format_polynomial(p: SuperPolynomial) -> str:
    """Render as `3/2 * y1 z2 y1` terms joined with +/-; parses back exactly."""
    if p.is_zero():
        return "0"
    chunks = []
    for word_, coef in p.terms():
        sign = "-" if coef < 0 else "+"
        mag = -coef if coef < 0 else coef
        vars_txt = " ".join(str(v) for v in word_)
        if not word_:
            body = str(mag)
        elif mag == 1:
            body = vars_txt
        else:
            body = f"{mag} * {vars_txt}"
        chunks.append((sign, body))
    sign, body = chunks[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


def parse_polynomial(text: str) -> SuperPolynomial:
    """Inverse of format_polynomial; accepts ASCII or U+2212 minus and an
    optional `*` between coefficient and word."""
    text = text.replace("−", "-").strip()
    if not text:
        raise ValueError("empty polynomial text")
    if text == "0":
        return SuperPolynomial.zero()
    # split into signed chunks
    chunks: list[tuple[int, str]] = []
    sign = 1
    buf = []
    i = 0
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        i = 1
    while i < len(text):
        ch = text[i]
        if ch in "+-":
            chunks.append((sign, "".join(buf)))
            sign = -1 if ch == "-" else 1
            buf = []
        else:
            buf.append(ch)
        i += 1
    chunks.append((sign, "".join(buf)))

    poly = SuperPolynomial.zero()
    for sgn, chunk in chunks:
        tokens = [t for t in chunk.replace("*", " ").split() if t]
        if not tokens:
            raise ValueError(f"empty term in {text!r}")
        coef = Fraction(sgn)
        if _COEF_TOKEN.match(tokens[0]):
            coef *= Fraction(tokens[0])
            tokens = tokens[1:]
        word_ = []
        for tok in tokens:
            m = _TERM_TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad variable token {tok!r}")
            word_.append(Variable(m.group(1), int(m.group(2))))
        poly = poly + SuperPolynomial({tuple(word_): coef})
    return poly


# -- multilinearization --------------------------------------------------------


def _signature(word_: Word) -> tuple:
    counts: dict[Variable, int] = {}
    for v in word_:
        counts[v] = counts.get(v, 0) + 1
    return tuple(sorted(counts.items()))


def _components(p: SuperPolynomial) -> list[SuperPolynomial]:
    """Multihomogeneous components: terms grouped by variable multiset."""
    groups: dict[tuple, dict[Word, Fraction]] = {}
    for w, c in p._terms.items():
        groups.setdefault(_signature(w), {})[w] = c
    return [SuperPolynomial(groups[sig]) for sig in sorted(groups)]


def _polarize(q: SuperPolynomial, v: Variable) -> SuperPolynomial:
    """Replace the degree-d variable v by d fresh ones and keep the part where
    each fresh variable occurs exactly once (sum over position bijections)."""
    degree = max(w.count(v) for w in q._terms)
    used = max((u.index for u in q.variables() if u.sort == v.sort), default=0)
    fresh = [Variable(v.sort, used + i + 1) for i in range(degree)]
    tbl: dict[Word, Fraction] = {}
    for w, c in q._terms.items():
        positions = [i for i, u in enumerate(w) if u == v]
        for perm in permutations(fresh):
            new = list(w)
            for pos, var in zip(positions, perm):
                new[pos] = var
            key = tuple(new)
            acc = tbl.get(key, 0) + c
            if acc:
                tbl[key] = acc
            else:
                tbl.pop(key, None)
    return SuperPolynomial(tbl)


def _renumber(q: SuperPolynomial) -> SuperPolynomial:
    """Canonical variable names: per sort, indices 1.. in canonical order."""
    mapping: dict[Variable, Variable] = {}
    counters: dict[str, int] = {}
    for v in sorted(q.variables()):
        counters[v.sort] = counters.get(v.sort, 0) + 1
        mapping[v] = Variable(v.sort, counters[v.sort])
    return SuperPolynomial({tuple(mapping[v] for v in w): c for w, c in q._terms.items()})


def multilinearize(p: SuperPolynomial) -> list[SuperPolynomial]:
    """Multilinear pieces equivalent to p for identity checking (char 0).

    Each multihomogeneous component is fully polarized; components that cancel
    to zero on the way are dropped.  p is an identity of a grading iff every
    returned piece is.
    """
    out = []
    for comp in _components(p):
        piece = comp
        while not piece.is_zero():
            rep = next(
                (v for v in sorted(piece.variables())
                 if any(w.count(v) >= 2 for w in piece._terms)),
                None,
            )
            if rep is None:
                break
            piece = _polarize(piece, rep)
        if not piece.is_zero():
            out.append(_renumber(piece))
    return out


# -- evaluation -----------------------------------------------------------------


def _check_sorts(assignment: Mapping[Variable, Element], variables: Iterable[Variable],
                 grading: Grading | None):
    for v in variables:
        if v not in assignment:
            raise MissingAssignment(f"no value for {v}")
    if grading is None:
        return
    for v in variables:
        el = assignment[v]
        if v.sort == "x" or el.is_zero():
            continue  # zero lies in every component
        want = 0 if v.sort == "y" else 1
        if degree_of(grading, el) != want:
            raise ParityMismatch(f"{v} requires a degree-{want} element")


def evaluate(p: SuperPolynomial, assignment: Mapping[Variable, Element],
             grading: Grading | None = None) -> Element:
    """Word-by-word substitution; with a grading, sorts are enforced first."""
    _check_sorts(assignment, p.variables(), grading)
    n = None
    for el in assignment.values():
        n = el.n if n is None else n
        if el.n != n:
            raise ValueError("assignment mixes truncations")
    if n is None:
        if grading is not None:
            n = grading.n
        else:
            raise ValueError("cannot infer the truncation from an empty assignment")
    total = Element.zero(n)
    for word_, coef in p._terms.items():
        acc = unit(n)
        for v in word_:
            acc = acc * assignment[v]
            if acc.is_zero():
                break
        total = total + acc.scale(coef)
    return total


# -- verdicts ---------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A falsifying substitution: re-evaluating it reproduces the value."""

    polynomial: SuperPolynomial
    assignment: dict[Variable, Element]
    value: Element

    def to_dict(self) -> dict:
        return {
            "polynomial": format_polynomial(self.polynomial),
            "assignment": {str(v): el.to_dict() for v, el in sorted(self.assignment.items())},
            "value": self.value.to_dict(),
        }


@dataclass(frozen=True)
class Verdict:
    """Outcome of an identity check, with the parameters it is relative to."""

    holds: bool
    mode: str
    n: int
    max_len: int
    witness: Witness | None = None
    trials: int | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "mode": self.mode,
            "parameters": {
                "N": self.n,
                "max_len": self.max_len,
                "trials": self.trials,
                "seed": self.seed,
            },
            "witness": self.witness.to_dict() if self.witness else None,
        }


# -- the exhaustive engine ----------------------------------------------------------


def _fast_commutator(a: Element, b: Element) -> Element:
    """[a, b] over the odd-length word pairs only.

    Exact: for basis words, m2 m1 = (-1)^(|m1||m2|) m1 m2, so every pair with
    an even-length factor cancels from ab - ba and each odd-odd pair
    contributes twice its product.
    """
    out: dict[int, int | Fraction] = {}
    a_odd = [(bits, c) for bits, c in a._terms.items() if bits.bit_count() & 1]
    if a_odd:
        b_odd = [(bits, c) for bits, c in b._terms.items() if bits.bit_count() & 1]
        for ba, ca in a_odd:
            for bb, cb in b_odd:
                if ba & bb:
                    continue
                coef = 2 * ca * cb
                if _crossings(ba, bb) & 1:
                    coef = -coef
                key = ba | bb
                acc = out.get(key)
                if acc is None:
                    out[key] = coef
                else:
                    acc = acc + coef
                    if acc:
                        out[key] = acc
                    else:
                        del out[key]
    return Element._raw(a.n, out)


def _pools(g: Grading, max_len: int) -> dict[str, list[Element]]:
    return {
        "y": homogeneous_spanning_set(g, 0, max_len),
        "z": homogeneous_spanning_set(g, 1, max_len),
        "x": [Element.monomial(m, g.n) for m in monomials_up_to(g.n, max_len)],
    }


def _word_eval(word_: Word, env: dict[Variable, Element], memo: dict[Word, Element]) -> Element:
    el = memo.get(word_)
    if el is None:
        el = _word_eval(word_[:-1], env, memo) * env[word_[-1]]
        memo[word_] = el
    return el


def _choose_inner(piece: SuperPolynomial, vars_: list[Variable]) -> Variable:
    """Substitution slot to iterate innermost: fewest middle occurrences wins,
    preferring the canonical-last variable so the scan order usually matches
    the witness order outright."""
    def middles(v: Variable) -> int:
        return sum(1 for w in piece._terms if w.index(v) not in (0, len(w) - 1))

    counts = {v: middles(v) for v in vars_}
    best = min(counts.values())
    if counts[vars_[-1]] == best:
        return vars_[-1]
    return next(v for v in vars_ if counts[v] == best)


def _scan(piece: SuperPolynomial, vars_: list[Variable], inner: Variable,
          pools: Mapping[str, list[Element]], n: int):
    """First nonzero substitution in product order (others in canonical order,
    inner fastest); None when the piece vanishes on the whole grid.

    For each outer assignment the piece collapses to a linear form
    c -> P c + c Q + sum_i U_i c W_i in the inner slot.  Two exact
    short-circuits keep the grids tractable: an empty form is skipped, and a
    commutator form [P, .] with P purely of even word length vanishes for
    every c because such P are central.
    """
    others = [v for v in vars_ if v != inner]
    splits = []
    for word_, coef in sorted(piece._terms.items(), key=lambda t: (len(t[0]), t[0])):
        i = word_.index(inner)
        splits.append((coef, word_[:i], word_[i + 1:]))
    inner_pool = pools[inner.sort]
    unit_el = unit(n)
    zero_el = Element.zero(n)

    for combo in product(*[pools[v.sort] for v in others]):
        env = dict(zip(others, combo))
        memo: dict[Word, Element] = {(): unit_el}
        p_sum = zero_el
        q_sum = zero_el
        middles: list[tuple[Element, Element]] = []
        for coef, pre, suf in splits:
            u = _word_eval(pre, env, memo)
            if u.is_zero():
                continue
            w = _word_eval(suf, env, memo)
            if w.is_zero():
                continue
            if not suf:
                p_sum = p_sum + u.scale(coef)
            elif not pre:
                q_sum = q_sum + w.scale(coef)
            else:
                middles.append((u.scale(coef), w))
        if not middles and q_sum == -p_sum:
            if p_sum.is_even():
                continue  # central: [p_sum, c] = 0 for every c
            for c in inner_pool:
                val = _fast_commutator(p_sum, c)
                if not val.is_zero():
                    return {**env, inner: c}, val
            continue
        for c in inner_pool:
            val = p_sum * c if p_sum else zero_el
            if q_sum:
                val = val + c * q_sum
            for u, w in middles:
                val = val + u * c * w
            if not val.is_zero():
                return {**env, inner: c}, val
    return None


def _grid_witness(piece: SuperPolynomial, g: Grading, pools: Mapping[str, list[Element]]):
    vars_ = sorted(piece.variables())
    if not vars_:
        value = evaluate(piece, {}, grading=g)
        return ({}, value) if not value.is_zero() else None
    inner = _choose_inner(piece, vars_)
    found = _scan(piece, vars_, inner, pools, g.n)
    if found is None or inner == vars_[-1]:
        return found
    # a witness exists; rescan in canonical order so the first one is reported
    return _scan(piece, vars_, vars_[-1], pools, g.n)


def _random_homogeneous(rng: Random, pool: list[Element], n: int) -> Element:
    if not pool:
        return Element.zero(n)
    vecs = rng.sample(pool, rng.randint(1, min(4, len(pool))))
    acc = Element.zero(n)
    for v in vecs:
        acc = acc + v.scale(rng.randint(-2, 2))
    return acc


def is_identity(p: SuperPolynomial, g: Grading, max_len: int,
                mode: str = "exhaustive_multilinear", trials: int = 100,
                seed: int | None = None) -> Verdict:
    """Check p against the grading over the degree <= max_len filtration.

    exhaustive_multilinear substitutes every spanning tuple into every
    multilinear piece; by multilinearity this is complete for the filtration,
    and the first falsifying tuple (in canonical variable / pool order)
    becomes the witness.  randomized only hunts for counterexamples.
    """
    if max_len > g.n:
        raise ValueError(f"parameter overflow: max_len {max_len} exceeds truncation {g.n}")
    if mode == "exhaustive_multilinear":
        pools = _pools(g, max_len)
        for piece in multilinearize(p):
            found = _grid_witness(piece, g, pools)
            if found is not None:
                assignment, value = found
                return Verdict(False, mode, g.n, max_len,
                               witness=Witness(piece, dict(assignment), value))
        return Verdict(True, mode, g.n, max_len)
    if mode == "randomized":
        used_seed = 0 if seed is None else seed
        rng = Random(used_seed)
        pools = _pools(g, max_len)
        vars_ = sorted(p.variables())
        for _ in range(trials):
            assignment = {v: _random_homogeneous(rng, pools[v.sort], g.n) for v in vars_}
            value = evaluate(p, assignment, grading=g)
            if not value.is_zero():
                return Verdict(False, mode, g.n, max_len, trials=trials, seed=used_seed,
                               witness=Witness(p, assignment, value))
        return Verdict(True, mode, g.n, max_len, trials=trials, seed=used_seed)
    raise ValueError(f"unknown mode {mode!r}")


# -- stock polynomials ---------------------------------------------------------------


def product_identity(m: int) -> SuperPolynomial:
    """The odd-variable word z1 z2 ... zm."""
    if m < 1:
        raise ValueError("need m >= 1")
    return SuperPolynomial.word(*(z(i) for i in range(1, m + 1)))


def graded_triple_commutator(parities: tuple[int, int, int]) -> SuperPolynomial:
    """[[v1, v2], v3] with each slot an even or odd variable per `parities`."""
    counters = {"y": 0, "z": 0}
    slots = []
    for par in parities:
        sort = "y" if par == 0 else "z"
        counters[sort] += 1
        slots.append(SuperPolynomial.variable(Variable(sort, counters[sort])))
    return poly_commutator(poly_commutator(slots[0], slots[1]), slots[2])


def graded_commutator_generators() -> list[SuperPolynomial]:
    """The eight parity patterns of the left-normed triple commutator."""
    return [graded_triple_commutator(p) for p in product((0, 1), repeat=3)]


def standard_polynomial(n: int) -> SuperPolynomial:
    """Alternating sum of all permutations of x1 ... xn."""
    if n < 2:
        raise ValueError("need n >= 2")
    tbl: dict[Word, int] = {}
    base = [x(i) for i in range(1, n + 1)]
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        tbl[tuple(base[i] for i in perm)] = sign
    return SuperPolynomial(tbl)


def _perm_sign(perm: tuple[int, ...]) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions & 1 else 1


# -- inclusion evidence ------------------------------------------------------------------


@dataclass(frozen=True)
class EvidenceReport:
    """Per-generator verdicts against one grading.

    All generators holding is evidence, at the stated truncation and
    filtration, that the ideal they generate is contained in the grading's
    identities; it is never a proof of equality of identity ideals.
    """

    entries: tuple[tuple[SuperPolynomial, Verdict], ...]
    n: int
    max_len: int

    @property
    def all_hold(self) -> bool:
        return all(v.holds for _, v in self.entries)

    def to_dict(self) -> dict:
        return {
            "N": self.n,
            "max_len": self.max_len,
            "all_hold": self.all_hold,
            "entries": [
                {"polynomial": format_polynomial(p), "verdict": v.to_dict()}
                for p, v in self.entries
            ],
        }


def inclusion_evidence(generators: Iterable[SuperPolynomial], g: Grading, max_len: int,
                       mode: str = "exhaustive_multilinear", trials: int = 100,
                       seed: int | None = None) -> EvidenceReport:
    """Run is_identity for every generator; vacuously all-hold when empty."""
    entries = tuple(
        (p, is_identity(p, g, max_len, mode=mode, trials=trials, seed=seed))
        for p in generators
    )
    return EvidenceReport(entries=entries, n=g.n, max_len=max_len)
