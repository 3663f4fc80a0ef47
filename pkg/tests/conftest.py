"""Shared test helpers: seeded random elements and the truncation slack rule."""

from fractions import Fraction
from random import Random

from supergrass.exterior import Element, Monomial, monomials_up_to


def slacked_n(max_degree: int) -> int:
    """Smallest truncation honouring the slack contract for a given test degree.

    Statements about the infinite algebra are only modelled faithfully when
    the truncation sits at least two above every degree the test touches.
    """
    return max_degree + 2


def random_element(rng: Random, n: int, max_terms: int = 5, max_len: int | None = None,
                   coef_bound: int = 3) -> Element:
    """Sparse random element with small rational coefficients."""
    if max_len is None:
        max_len = n
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        k = rng.randint(0, max_len)
        idx = tuple(sorted(rng.sample(range(1, n + 1), k)))
        num = rng.randint(-coef_bound, coef_bound)
        den = rng.randint(1, 3)
        terms[Monomial.from_indices(idx)] = terms.get(Monomial.from_indices(idx), 0) + Fraction(num, den)
    return Element(n, terms)


def random_nonzero_element(rng: Random, n: int, **kw) -> Element:
    while True:
        a = random_element(rng, n, **kw)
        if not a.is_zero():
            return a


def random_parity_element(rng: Random, n: int, parity: int, max_terms: int = 4,
                          max_len: int | None = None) -> Element:
    """Random element all of whose words have the given length parity."""
    if max_len is None:
        max_len = n
    pool = [m for m in monomials_up_to(n, max_len) if m.length % 2 == parity]
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        m = rng.choice(pool)
        terms[m] = terms.get(m, 0) + rng.randint(-3, 3)
    return Element(n, terms)
