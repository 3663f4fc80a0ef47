"""Endomorphisms and order-2 automorphisms of E_N given by generator images.

A map is specified by finitely many explicit images plus a tail rule that
covers every remaining index uniformly, so classification can report the
behaviour of the (conceptually infinite) index set truthfully while all
arithmetic stays at truncation N.  Generator images must have zero constant
term: every construction of interest maps the degree-one span into the span
of words of length >= 1, and length-based arguments (linearization, minimal
length) rely on it.

A map must pass verify_relations (images anticommute pairwise and square to
zero) before it can be applied; only verified maps extend to algebra
endomorphisms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .exterior import Element, Monomial, TruncationMismatch, generator, unit

TAIL_KINDS = ("identity", "negation", "prefix_negation", "parity_sign")


class RelationViolation(Exception):
    """Images fail e_i e_j + e_j e_i = 0; carries the offending pair and residual."""

    def __init__(self, i: int, j: int, residual: Element):
        self.i = i
        self.j = j
        self.residual = residual
        super().__init__(f"images of e{i}, e{j} violate anticommutation: residual {residual}")


class NotAnInvolution(Exception):
    """The map squares to something other than the identity."""


class TailRule:
    """Uniform image rule for all generator indices above the explicit range.

    Kinds: identity (e_n -> e_n), negation (e_n -> -e_n), prefix_negation
    (e_n -> -e_n + 2*m*e_n for a fixed word m below the tail range), and
    parity_sign (e_n -> e_n for even n, -e_n for odd n), which realises the
    alternating homogeneous structure.
    """

    __slots__ = ("kind", "prefix")

    def __init__(self, kind: str, prefix: Monomial | None = None):
        if kind not in TAIL_KINDS:
            raise ValueError(f"unknown tail kind {kind!r}")
        if kind == "prefix_negation":
            if prefix is None or prefix.bits == 0:
                raise ValueError("prefix_negation tail needs a nonempty prefix word")
        elif prefix is not None:
            raise ValueError(f"tail kind {kind!r} takes no prefix")
        self.kind = kind
        self.prefix = prefix

    @classmethod
    def identity(cls) -> "TailRule":
        return cls("identity")

    @classmethod
    def negation(cls) -> "TailRule":
        return cls("negation")

    @classmethod
    def prefix_negation(cls, prefix: Monomial) -> "TailRule":
        return cls("prefix_negation", prefix)

    @classmethod
    def parity_sign(cls) -> "TailRule":
        return cls("parity_sign")

    def image(self, i: int, n: int) -> Element:
        ei = generator(i, n)
        if self.kind == "identity":
            return ei
        if self.kind == "negation":
            return -ei
        if self.kind == "parity_sign":
            return ei if i % 2 == 0 else -ei
        return -ei + 2 * Element.monomial(self.prefix, n) * ei

    def eigen_sign(self, i: int) -> int | None:
        """+1/-1 when the tail makes e_i an eigenvector, None otherwise."""
        if self.kind == "identity":
            return 1
        if self.kind == "negation":
            return -1
        if self.kind == "parity_sign":
            return 1 if i % 2 == 0 else -1
        return None

    def __eq__(self, other):
        return (
            isinstance(other, TailRule)
            and self.kind == other.kind
            and self.prefix == other.prefix
        )

    def __repr__(self):
        if self.kind == "prefix_negation":
            return f"TailRule(prefix_negation, {self.prefix})"
        return f"TailRule({self.kind})"

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "prefix_negation":
            d["prefix"] = list(self.prefix.indices)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "TailRule":
        kind = data["kind"]
        if kind == "prefix_negation":
            return cls(kind, Monomial.from_indices(data["prefix"]))
        return cls(kind)


class Endomorphism:
    """Generator-image map on E_N: explicit images where given, the tail elsewhere.

    Immutable; `verified` is set only by verify_relations (or by constructors
    that run it).  `provenance` is construction metadata used for equivalence
    certificates; it never takes part in equality.
    """

    __slots__ = ("n", "explicit", "tail", "verified", "provenance", "_apply_cache")

    def __init__(self, n: int, explicit: Mapping[int, Element], tail: TailRule,
                 verified: bool = False, provenance: dict | None = None):
        self.n = n
        self.explicit = dict(explicit)
        self.tail = tail
        self.verified = verified
        self.provenance = provenance
        self._apply_cache: dict[int, Element] = {}

    # -- inspection ----------------------------------------------------------

    def image(self, i: int) -> Element:
        if not 1 <= i <= self.n:
            raise ValueError(f"generator index {i} out of range 1..{self.n}")
        img = self.explicit.get(i)
        if img is None:
            img = self.tail.image(i, self.n)
        return img

    def tail_indices(self) -> list[int]:
        """Indices in 1..N the tail actually covers."""
        return [i for i in range(1, self.n + 1) if i not in self.explicit]

    def is_fully_explicit(self) -> bool:
        return len(self.explicit) == self.n

    def eigen_sign(self, i: int) -> int | None:
        """+1/-1 when e_i is mapped to +-e_i exactly, None otherwise."""
        img = self.image(i)
        ei = generator(i, self.n)
        if img == ei:
            return 1
        if img == -ei:
            return -1
        return None

    def __eq__(self, other):
        # extensional on 1..N: tails compared only through materialized images
        if not isinstance(other, Endomorphism):
            return NotImplemented
        if self.n != other.n:
            return False
        return all(self.image(i) == other.image(i) for i in range(1, self.n + 1))

    __hash__ = None

    def __repr__(self):
        flag = "verified" if self.verified else "unverified"
        return f"Endomorphism(N={self.n}, explicit={sorted(self.explicit)}, tail={self.tail}, {flag})"

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "N": self.n,
            "explicit": {str(i): self.explicit[i].to_dict() for i in sorted(self.explicit)},
            "tail": self.tail.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Endomorphism":
        n = data["N"]
        explicit = {}
        for key, sub in data.get("explicit", {}).items():
            i = int(key)
            el = Element.from_dict(sub)
            if el.n != n:
                raise TruncationMismatch(f"image of e{i} has truncation {el.n}, expected {n}")
            explicit[i] = el
        tail = TailRule.from_dict(data["tail"])
        return make_endomorphism(explicit, tail, n)


def make_endomorphism(explicit: Mapping[int, Element], tail: TailRule, n: int) -> Endomorphism:
    """Unverified endomorphism; validates ranges, truncations and the tail constraint."""
    emap = dict(explicit)
    for i, img in emap.items():
        if not 1 <= i <= n:
            raise ValueError(f"explicit index {i} out of range 1..{n}")
        if img.n != n:
            raise TruncationMismatch(f"image of e{i} has truncation {img.n}, expected {n}")
        if img.constant_term():
            raise ValueError(f"image of e{i} has nonzero constant term")
    if tail.kind == "prefix_negation":
        if max(tail.prefix.indices) > n:
            raise ValueError("tail prefix exceeds truncation")
        uncovered = [i for i in range(1, n + 1) if i not in emap]
        if uncovered and max(tail.prefix.indices) >= min(uncovered):
            raise ValueError("tail prefix overlaps the range the tail applies to")
    return Endomorphism(n, emap, tail)


def identity_map(n: int) -> Endomorphism:
    phi = make_endomorphism({}, TailRule.identity(), n)
    phi.verified = True  # identity images trivially preserve the relations
    return phi


def verify_relations(phi: Endomorphism) -> Endomorphism:
    """Check phi(e_i)phi(e_j) + phi(e_j)phi(e_i) = 0 for all i <= j; mark verified.

    i = j checks that squares vanish.  Raises RelationViolation on the first
    offending pair, with the nonzero residual attached.
    """
    images = [phi.image(i) for i in range(1, phi.n + 1)]
    for i in range(phi.n):
        for j in range(i, phi.n):
            residual = images[i] * images[j] + images[j] * images[i]
            if not residual.is_zero():
                raise RelationViolation(i + 1, j + 1, residual)
    return Endomorphism(phi.n, phi.explicit, phi.tail, verified=True,
                        provenance=phi.provenance)


def substitute(a: Element, image_of: Callable[[int], Element], n: int) -> Element:
    """Multiplicative-linear extension: each word e_{i1}...e_{ik} maps to the
    product of the images, scaled by its coefficient."""
    out = Element.zero(n)
    for mono, coef in a.terms():
        acc = unit(n)
        for i in mono.indices:
            acc = acc * image_of(i)
            if acc.is_zero():
                break
        out = out + acc.scale(coef)
    return out


def apply(phi: Endomorphism, a: Element) -> Element:
    """Apply the induced algebra endomorphism to an element."""
    if not phi.verified:
        raise ValueError("endomorphism must pass verify_relations before application")
    if a.n != phi.n:
        raise TruncationMismatch(f"truncations differ: {phi.n} vs {a.n}")
    cache = phi._apply_cache
    out = Element.zero(phi.n)
    for mono, coef in a.terms():
        img = cache.get(mono.bits)
        if img is None:
            acc = unit(phi.n)
            for i in mono.indices:
                acc = acc * phi.image(i)
                if acc.is_zero():
                    break
            cache[mono.bits] = img = acc
        out = out + img.scale(coef)
    return out


def compose(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    """phi after psi, with fully explicit images on 1..N.

    Tails have no closed composition in general, so the composite materializes
    every image; at truncation the identity tail beyond N is vacuous.  The
    result is re-verified so the flag always witnesses an actual check.
    """
    if phi.n != psi.n:
        raise TruncationMismatch(f"truncations differ: {phi.n} vs {psi.n}")
    if not (phi.verified and psi.verified):
        raise ValueError("compose requires verified endomorphisms")
    explicit = {i: apply(phi, psi.image(i)) for i in range(1, phi.n + 1)}
    return verify_relations(make_endomorphism(explicit, TailRule.identity(), phi.n))


def equal(phi: Endomorphism, psi: Endomorphism) -> bool:
    """Extensional equality of images on 1..N."""
    if phi.n != psi.n:
        raise TruncationMismatch(f"truncations differ: {phi.n} vs {psi.n}")
    return phi == psi


def is_involution(phi: Endomorphism) -> bool:
    """True iff phi(phi(e_i)) = e_i for every i in 1..N."""
    if not phi.verified:
        raise ValueError("is_involution requires a verified endomorphism")
    return all(
        apply(phi, phi.image(i)) == generator(i, phi.n) for i in range(1, phi.n + 1)
    )


def invariant_family(phi: Endomorphism) -> dict[int, Element]:
    """The fixed elements a_i = (e_i + phi(e_i))/2, one per generator index.

    Each a_i is the even projection of e_i in the grading phi induces; the
    postcondition phi(a_i) = a_i is checked.
    """
    if not is_involution(phi):
        raise NotAnInvolution("invariant family is defined for involutions only")
    fam = {}
    for i in range(1, phi.n + 1):
        a_i = (generator(i, phi.n) + phi.image(i)).scale(Fraction(1, 2))
        if apply(phi, a_i) != a_i:
            raise NotAnInvolution(f"a_{i} is not fixed")  # unreachable for involutions
        fam[i] = a_i
    return fam


def linearize(phi: Endomorphism) -> Endomorphism:
    """Keep only the degree-1 part of every generator image.

    Degree-1 images pairwise anticommute and square to zero, so the result
    always verifies; when phi is an involution so is its linearization.
    """
    if not phi.verified:
        raise ValueError("linearize requires a verified endomorphism")
    explicit = {i: img.degree_part(1) for i, img in phi.explicit.items()}
    tail = phi.tail
    if tail.kind == "prefix_negation":
        tail = TailRule.negation()  # -e_n survives; the shifted word has length >= 2
    return verify_relations(make_endomorphism(explicit, tail, phi.n))
