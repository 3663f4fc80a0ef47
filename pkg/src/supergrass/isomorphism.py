"""Graded maps between gradings of E_N, and equivalence certificates.

A graded map is given by generator images in the target algebra that satisfy
the defining relations; it preserves degree when every homogeneous spanning
vector of the source lands in the matching component of the target.  A pair
of mutually inverse degree-preserving maps certifies that two gradings are
equivalent.

For gradings produced by the constructors, `standard_equivalence` builds the
certificate to the named homogeneous model explicitly (shift maps e_j -> e_j
-+ d_j composed with the index permutation onto the literal model) and
verifies it before returning.  No general decision procedure for graded
isomorphism is attempted: without construction metadata the answer is None.
"""

from __future__ import annotations

from .constructors import E_CAN, Model, e_k, e_kstar, homogeneous
from .exterior import Element, TruncationMismatch, generator
from .grading import Grading, degree_of, homogeneous_spanning_set
from .linmap import RelationViolation, substitute


class GradedMap:
    """Generator-image map between two gradings sharing a truncation."""

    __slots__ = ("source", "target", "images", "n", "_degree_ok")

    def __init__(self, source: Grading, target: Grading, images: dict[int, Element]):
        self.source = source
        self.target = target
        self.n = source.n
        self.images = dict(images)
        self._degree_ok: bool | None = None

    def image(self, i: int) -> Element:
        img = self.images.get(i)
        if img is None:
            raise ValueError(f"no image for generator index {i}")
        return img

    def apply(self, a: Element) -> Element:
        """Multiplicative-linear extension to arbitrary elements."""
        if a.n != self.n:
            raise TruncationMismatch(f"truncations differ: {self.n} vs {a.n}")
        return substitute(a, self.image, self.n)

    def __repr__(self):
        return f"GradedMap(N={self.n}, images on 1..{len(self.images)})"

    def to_images_dict(self) -> dict:
        return {str(i): self.images[i].to_dict() for i in sorted(self.images)}


def graded_map(source: Grading, target: Grading, images: dict[int, Element]) -> GradedMap:
    """Validated but not yet degree-checked map; images must anticommute
    pairwise and square to zero, else the multiplicative extension is ill
    defined on the relations."""
    if source.n != target.n:
        raise TruncationMismatch("source and target truncations differ")
    idx = sorted(images)
    if idx != list(range(1, source.n + 1)):
        raise ValueError(f"images must cover 1..{source.n}")
    for i in idx:
        if images[i].n != source.n:
            raise TruncationMismatch(f"image of e{i} has wrong truncation")
    for a in idx:
        for b in idx[a - 1:]:
            residual = images[a] * images[b] + images[b] * images[a]
            if not residual.is_zero():
                raise RelationViolation(a, b, residual)
    return GradedMap(source, target, images)


def identity_graded_map(g: Grading) -> GradedMap:
    return GradedMap(g, g, {i: generator(i, g.n) for i in range(1, g.n + 1)})


def permutation_graded_map(source: Grading, target: Grading, perm: dict[int, int]) -> GradedMap:
    """The map e_i -> e_{perm(i)}; a relabelling of generators."""
    images = {i: generator(perm[i], source.n) for i in range(1, source.n + 1)}
    return GradedMap(source, target, images)


def preserves_degree(f: GradedMap, max_len: int | None = None) -> bool:
    """True iff every source spanning vector of parity p maps into the target
    parity-p component (zero images are allowed; zero lies in everything).

    Checked on spanning sets, not on generators: a generator that is not
    homogeneous in the source carries no degree to preserve.
    """
    if f._degree_ok is not None and max_len is None:
        return f._degree_ok
    bound = f.n if max_len is None else max_len
    ok = True
    for parity in (0, 1):
        for v in homogeneous_spanning_set(f.source, parity, bound):
            img = f.apply(v)
            if img.is_zero():
                continue
            if degree_of(f.target, img) != parity:
                ok = False
                break
        if not ok:
            break
    if max_len is None:
        f._degree_ok = ok
    return ok


def is_graded_iso(f: GradedMap, g: GradedMap) -> bool:
    """True iff f and g preserve degree and invert each other on generators."""
    if f.n != g.n:
        raise TruncationMismatch("truncations differ")
    if not (preserves_degree(f) and preserves_degree(g)):
        return False
    for i in range(1, f.n + 1):
        ei = generator(i, f.n)
        if g.apply(f.image(i)) != ei or f.apply(g.image(i)) != ei:
            return False
    return True


# -- certificates for constructed gradings -------------------------------------


def _model_slot_permutation(model: Model, odd_indices: list[int], n: int) -> dict[int, int]:
    """Permutation sending the literal model's slots onto the given index
    pattern: odd slots onto the odd indices in increasing order, even slots
    onto the rest."""
    odd_sorted = sorted(odd_indices)
    even_sorted = [i for i in range(1, n + 1) if i not in set(odd_sorted)]
    perm = {}
    odd_it = iter(odd_sorted)
    even_it = iter(even_sorted)
    for i in range(1, n + 1):
        perm[i] = next(odd_it) if model.degree(i) == 1 else next(even_it)
    return perm


def _permute_element(a: Element, perm: dict[int, int], n: int) -> Element:
    return substitute(a, lambda i: generator(perm[i], n), n)


def _shift_certificate(g: Grading, sign: dict[int, int], shifts: dict[int, Element],
                       tail_kind: str) -> tuple[Model, GradedMap, GradedMap]:
    """Certificate between g and the homogeneous model matching its index
    pattern: f(e_j) = e_j - d_j on shifted indices, identity elsewhere, with
    a slot permutation tacked on so the source is the literal model."""
    n = g.n
    odd_pattern = sorted(set(shifts) | {i for i, s in sign.items() if s == -1})
    if tail_kind == "identity":
        model = e_kstar(len(odd_pattern))
    else:
        k = n - len(odd_pattern)
        model = E_CAN if k == 0 else e_k(k)
    base = homogeneous(model, n)

    f_images = {}
    g_images = {}
    for i in range(1, n + 1):
        ei = generator(i, n)
        d = shifts.get(i)
        f_images[i] = ei - d if d is not None else ei
        g_images[i] = ei + d if d is not None else ei

    perm = _model_slot_permutation(model, odd_pattern, n)
    inv = {v: k for k, v in perm.items()}
    f_total = graded_map(base, g, {i: f_images[perm[i]] for i in range(1, n + 1)})
    g_total = graded_map(g, base, {i: _permute_element(g_images[i], inv, n) for i in range(1, n + 1)})
    return model, f_total, g_total


def _prefix_certificate(g: Grading, k: int, t: int) -> tuple[Model, GradedMap, GradedMap]:
    """Certificate for the prefix construction: e_n -> e_n -+ e_1..e_{k+t} e_n
    above k+t, identity below; the index pattern already matches the literal
    model, so no permutation is needed."""
    n = g.n
    model = E_CAN if k == 0 else e_k(k)
    base = homogeneous(model, n)
    prefix = Element.monomial(g.phi.tail.prefix, n)
    f_images = {}
    g_images = {}
    for i in range(1, n + 1):
        ei = generator(i, n)
        if i <= k + t:
            f_images[i] = ei
            g_images[i] = ei
        else:
            f_images[i] = ei - prefix * ei
            g_images[i] = ei + prefix * ei
    return model, graded_map(base, g, f_images), graded_map(g, base, g_images)


def standard_equivalence(g: Grading):
    """(model, f, g_inv) for constructor-built gradings, None otherwise.

    f maps the literal model grading onto g and g_inv inverts it; the pair is
    checked with is_graded_iso before being returned.
    """
    meta = g.construction
    if not meta:
        return None
    kind = meta.get("kind")
    if kind == "homogeneous":
        model = meta["model"]
        f = identity_graded_map(g)
        g_inv = identity_graded_map(g)
    elif kind == "method1":
        model, f, g_inv = _shift_certificate(g, meta["sign"], meta["shifts"], meta["tail"].kind)
    elif kind == "method2":
        model, f, g_inv = _prefix_certificate(g, meta["k"], meta["t"])
    else:
        return None
    if not is_graded_iso(f, g_inv):
        raise RuntimeError(f"certificate for {model.label} failed verification")
    return model, f, g_inv


def certificate_to_dict(model: Model, f: GradedMap, g_inv: GradedMap, verified: bool = True) -> dict:
    return {
        "model": model.to_dict(),
        "f": f.to_images_dict(),
        "g": g_inv.to_images_dict(),
        "verified": verified,
    }


def certificate_from_dict(data: dict, target: Grading) -> tuple[Model, GradedMap, GradedMap]:
    """Rebuild certificate maps against a target grading; does not verify."""
    model = Model.from_dict(data["model"])
    base = homogeneous(model, target.n)
    f_images = {int(i): Element.from_dict(d) for i, d in data["f"].items()}
    g_images = {int(i): Element.from_dict(d) for i, d in data["g"].items()}
    return model, graded_map(base, target, f_images), graded_map(target, base, g_images)
