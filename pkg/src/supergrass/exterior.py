"""Exact arithmetic in the truncated Grassmann algebra E_N over the rationals.

E_N is the unital algebra on anticommuting generators e_1, ..., e_N
(e_i e_j = -e_j e_i, so e_i^2 = 0).  Its basis consists of the unit and the
squarefree sorted words e_{i1}...e_{ik} with i1 < ... < ik; we store a basis
word as a bitset (index i <-> bit i-1), which makes the canonical form free
and reduces products to integer operations.  Coefficients are exact
rationals; no floating point enters anywhere.

Truncation caveat: E_N has extra central elements near the top degree (any
monomial killed by all generators outside it commutes with everything).
Tests that model a statement about the infinite algebra should leave slack:
pick N at least two above the largest degree occurring in the test.  The
kernel itself does not enforce this; it is a contract for callers.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Union

Scalar = Union[int, Fraction]


class TruncationMismatch(ValueError):
    """Raised when an operation mixes elements of different truncations."""


def _as_scalar(c) -> Scalar:
    if isinstance(c, (int, Fraction)):
        return c
    raise TypeError(f"scalar must be int or Fraction, got {type(c).__name__}")


class Monomial:
    """A basis word, stored as a bitset of generator indices."""

    __slots__ = ("bits",)

    def __init__(self, bits: int):
        if bits < 0:
            raise ValueError("negative bitset")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "Monomial":
        bits = 0
        prev = 0
        for i in indices:
            if i <= prev:
                raise ValueError("indices must be strictly increasing and >= 1")
            bits |= 1 << (i - 1)
            prev = i
        return cls(bits)

    @property
    def indices(self) -> tuple[int, ...]:
        return _bits_to_indices(self.bits)

    @property
    def length(self) -> int:
        return self.bits.bit_count()

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __lt__(self, other):
        # lexicographic by index sequence, the file order
        return self.indices < other.indices

    def __repr__(self):
        return f"Monomial({self.indices!r})"

    def __str__(self):
        return _mono_str(self.bits)


ONE = Monomial(0)


def _bits_to_indices(bits: int) -> tuple[int, ...]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length())
        bits ^= low
    return tuple(out)


def _mono_str(bits: int) -> str:
    if bits == 0:
        return "1"
    return "".join(f"e{i}" for i in _bits_to_indices(bits))


def _crossings(a: int, b: int) -> int:
    """Number of pairs (i in a, j in b) with i > j."""
    total = 0
    while b:
        low = b & -b
        b ^= low
        total += (a >> low.bit_length()).bit_count()
    return total


def mono_mul(a: Monomial, b: Monomial):
    """Product of basis words: None if they share an index, else (sign, word).

    The sign is (-1)^c where c counts the transpositions needed to sort the
    concatenation, i.e. the pairs i in a, j in b with i > j.
    """
    if a.bits & b.bits:
        return None
    sign = -1 if _crossings(a.bits, b.bits) & 1 else 1
    return sign, Monomial(a.bits | b.bits)


class Element:
    """Sparse rational linear combination of basis words of E_N.

    Immutable in practice: all operations return fresh values, and no stored
    coefficient is ever zero, so structural equality is semantic equality.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        if n < 1:
            raise ValueError("truncation must be >= 1")
        self.n = n
        tbl: dict[int, Scalar] = {}
        if terms:
            limit = (1 << n) - 1
            for key, coef in terms.items():
                bits = key.bits if isinstance(key, Monomial) else Monomial.from_indices(key).bits
                if bits & ~limit:
                    raise ValueError(f"monomial {_mono_str(bits)} exceeds truncation {n}")
                coef = _as_scalar(coef)
                if coef:
                    acc = tbl.get(bits)
                    if acc is None:
                        tbl[bits] = coef
                    else:
                        acc = acc + coef
                        if acc:
                            tbl[bits] = acc
                        else:
                            del tbl[bits]
        self._terms = tbl

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Element":
        return cls(n)

    @classmethod
    def unit(cls, n: int, coef: Scalar = 1) -> "Element":
        return cls(n, {ONE: coef})

    @classmethod
    def monomial(cls, mono: Monomial, n: int, coef: Scalar = 1) -> "Element":
        return cls(n, {mono: coef})

    @classmethod
    def _raw(cls, n: int, tbl: dict[int, Scalar]) -> "Element":
        el = cls.__new__(cls)
        el.n = n
        el._terms = tbl
        return el

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Term list in lexicographic monomial order with Fraction coefficients."""
        items = [(Monomial(b), Fraction(c)) for b, c in self._terms.items()]
        items.sort(key=lambda t: t[0].indices)
        return items

    def coefficient(self, mono: Monomial | Iterable[int]) -> Fraction:
        bits = mono.bits if isinstance(mono, Monomial) else Monomial.from_indices(mono).bits
        return Fraction(self._terms.get(bits, 0))

    def monomials(self) -> Iterator[Monomial]:
        return (Monomial(b) for b in self._terms)

    def max_length(self) -> int:
        """Largest word length present (0 for the zero element)."""
        return max((b.bit_count() for b in self._terms), default=0)

    def support(self) -> set[int]:
        """Union of generator indices over all words with nonzero coefficient."""
        acc = 0
        for bits in self._terms:
            acc |= bits
        return set(_bits_to_indices(acc))

    def constant_term(self) -> Fraction:
        return Fraction(self._terms.get(0, 0))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Element"):
        if self.n != other.n:
            raise TruncationMismatch(f"truncations differ: {self.n} vs {other.n}")

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        tbl = dict(self._terms)
        for bits, coef in other._terms.items():
            acc = tbl.get(bits)
            if acc is None:
                tbl[bits] = coef
            else:
                acc = acc + coef
                if acc:
                    tbl[bits] = acc
                else:
                    del tbl[bits]
        return Element._raw(self.n, tbl)

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element._raw(self.n, {b: -c for b, c in self._terms.items()})

    def scale(self, c: Scalar) -> "Element":
        c = _as_scalar(c)
        if not c:
            return Element.zero(self.n)
        return Element._raw(self.n, {b: c * v for b, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element._raw(self.n, _mul_tables(self._terms, other._terms))
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c):
        c = _as_scalar(c)
        return self.scale(Fraction(1, 1) / c)

    # -- parity ------------------------------------------------------------

    def parity_split(self) -> tuple["Element", "Element"]:
        """(even, odd) by word length; their sum is the element itself."""
        ev: dict[int, Scalar] = {}
        od: dict[int, Scalar] = {}
        for bits, coef in self._terms.items():
            (od if bits.bit_count() & 1 else ev)[bits] = coef
        return Element._raw(self.n, ev), Element._raw(self.n, od)

    def even_part(self) -> "Element":
        return self.parity_split()[0]

    def odd_part(self) -> "Element":
        return self.parity_split()[1]

    def is_even(self) -> bool:
        """All words of even length (true for 0)."""
        return all(bits.bit_count() % 2 == 0 for bits in self._terms)

    def is_odd(self) -> bool:
        """All words of odd length (true for 0)."""
        return all(bits.bit_count() % 2 == 1 for bits in self._terms)

    def degree_part(self, length: int) -> "Element":
        """The component spanned by words of the given length."""
        return Element._raw(
            self.n, {b: c for b, c in self._terms.items() if b.bit_count() == length}
        )

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        return f"Element(N={self.n}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, coef in self.terms():
            s = _mono_str(mono.bits)
            if coef < 0:
                sign = "-"
                coef = -coef
            else:
                sign = "+"
            if coef == 1 and mono.bits:
                body = s
            elif mono.bits:
                body = f"{coef}*{s}"
            else:
                body = str(coef)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        """JSON form: {"N": n, "terms": [{"indices": [...], "coef": "p/q"}]}."""
        return {
            "N": self.n,
            "terms": [
                {"indices": list(m.indices), "coef": str(Fraction(c))}
                for m, c in self.terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Element":
        n = data["N"]
        terms = {}
        for entry in data["terms"]:
            mono = Monomial.from_indices(entry["indices"])
            coef = Fraction(entry["coef"])
            if mono in terms:
                raise ValueError(f"duplicate monomial {mono} in element data")
            terms[mono] = coef
        return cls(n, terms)


def _mul_tables(ta: dict, tb: dict) -> dict:
    out: dict[int, Scalar] = {}
    for ba, ca in ta.items():
        for bb, cb in tb.items():
            if ba & bb:
                continue
            coef = ca * cb
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
    return out


# -- convenience constructors ----------------------------------------------


def generator(i: int, n: int) -> Element:
    """The generator e_i inside E_n."""
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} out of range 1..{n}")
    return Element(n, {Monomial(1 << (i - 1)): 1})


def unit(n: int) -> Element:
    return Element.unit(n)


def zero(n: int) -> Element:
    return Element.zero(n)


def word(indices: Iterable[int], n: int, coef: Scalar = 1) -> Element:
    """The (possibly signed) product e_{i1}...e_{ik} for arbitrary index order."""
    acc = Element.unit(n, coef)
    for i in indices:
        acc = acc * generator(i, n)
    return acc


def monomials_up_to(n: int, max_len: int) -> Iterator[Monomial]:
    """All basis words of length <= max_len, by length then lexicographically."""
    for k in range(0, max_len + 1):
        for combo in combinations(range(1, n + 1), k):
            yield Monomial.from_indices(combo)


# -- commutators -------------------------------------------------------------


def commutator(a: Element, b: Element) -> Element:
    """[a, b] = ab - ba."""
    return a * b - b * a


def left_normed(xs: list[Element]) -> Element:
    """Left-normed commutator [[x1, x2], x3], ... folded over the list."""
    if len(xs) < 2:
        raise ValueError("left-normed commutator needs at least 2 arguments")
    acc = commutator(xs[0], xs[1])
    for x in xs[2:]:
        acc = commutator(acc, x)
    return acc


def parity_split(a: Element) -> tuple[Element, Element]:
    return a.parity_split()


def support(a: Element) -> set[int]:
    return a.support()
