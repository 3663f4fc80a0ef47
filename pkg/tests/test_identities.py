"""Free superalgebra, multilinearization, evaluation, identity verdicts."""

from fractions import Fraction
from itertools import product
from random import Random

import pytest

from supergrass.exterior import Element, generator, monomials_up_to, unit, word
from supergrass.grading import from_involution, homogeneous_spanning_set
from supergrass.constructors import E_CAN, E_INF, e_kstar, homogeneous, method1, Method1Spec, method2
from supergrass.identities import (
    EvidenceReport,
    MissingAssignment,
    ParityMismatch,
    SuperPolynomial,
    Variable,
    Verdict,
    evaluate,
    format_polynomial,
    graded_commutator_generators,
    graded_triple_commutator,
    inclusion_evidence,
    is_identity,
    multilinearize,
    parse_polynomial,
    poly_commutator,
    product_identity,
    standard_polynomial,
    x,
    y,
    z,
)


def e(i, n):
    return generator(i, n)


def naive_check(p, g, pools):
    """Brute force: substitute every tuple with plain evaluation."""
    vars_ = sorted(p.variables())
    for combo in product(*[pools[v.sort] for v in vars_]):
        assignment = dict(zip(vars_, combo))
        value = evaluate(p, assignment)
        if not value.is_zero():
            return assignment, value
    return None


def pools_of(g, max_len):
    return {
        "y": homogeneous_spanning_set(g, 0, max_len),
        "z": homogeneous_spanning_set(g, 1, max_len),
        "x": [Element.monomial(m, g.n) for m in monomials_up_to(g.n, max_len)],
    }


# -- polynomials and text format ----------------------------------------------


def test_word_and_product():
    p = SuperPolynomial.word(y(1), z(1)) * SuperPolynomial.variable(y(1))
    assert p == SuperPolynomial({(y(1), z(1), y(1)): 1})


def test_format_examples():
    p = SuperPolynomial({(y(1), z(2), y(1)): Fraction(3, 2)})
    assert format_polynomial(p) == "3/2 * y1 z2 y1"
    q = SuperPolynomial({(z(1), z(2)): 1, (z(2), z(1)): -1})
    assert format_polynomial(q) == "z1 z2 - z2 z1"


def test_parse_round_trip():
    texts = [
        "z1 z2",
        "3/2 * y1 z2 y1 + z1 - 2 * x3",
        "-y1 y2 + y2 y1",
        "5",
        "0",
    ]
    for text in texts:
        p = parse_polynomial(text)
        assert parse_polynomial(format_polynomial(p)) == p


def test_parse_accepts_unicode_minus_and_star():
    assert parse_polynomial("z1 z2 − z2 z1") == parse_polynomial("z1 z2 - z2 z1")
    assert parse_polynomial("3*y1") == parse_polynomial("3 y1")


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_polynomial("w1 z2")
    with pytest.raises(ValueError):
        parse_polynomial("z1 +")


# -- multilinearization -----------------------------------------------------------


def test_multilinearize_already_multilinear():
    p = product_identity(2)
    assert multilinearize(p) == [p]


def test_multilinearize_square():
    p = SuperPolynomial({(z(1), z(1)): 1})
    out = multilinearize(p)
    assert out == [SuperPolynomial({(z(1), z(2)): 1, (z(2), z(1)): 1})]


def test_multilinearize_triple_commutator_fixed():
    p = graded_triple_commutator((0, 1, 0))
    assert multilinearize(p) == [p]


def test_multilinearize_splits_components():
    p = SuperPolynomial({(y(1), y(1)): 1, (y(1), y(2)): 1})
    out = multilinearize(p)
    assert len(out) == 2
    assert SuperPolynomial({(y(1), y(2)): 1}) in out
    assert SuperPolynomial({(y(1), y(2)): 1, (y(2), y(1)): 1}) in out


def test_multilinearize_drops_vanishing_components():
    # y1*y1 - y1*y1 within one component
    p = SuperPolynomial({(y(1), y(1)): 1}) - SuperPolynomial({(y(1), y(1)): 1})
    assert multilinearize(p) == []


def test_square_detects_span_failure_that_tuples_miss():
    # tuple substitution alone is complete only for multilinear polynomials:
    # z1*z1 kills every single spanning vector of the odd part of the
    # alternating grading, yet fails on the span
    n = 4
    g = homogeneous(E_INF, n)
    square = SuperPolynomial({(z(1), z(1)): 1})
    pools = pools_of(g, 3)
    assert naive_check(square, g, pools) is None  # all v*v vanish
    combo = e(1, n) + word([2, 3], n)
    assert evaluate(square, {z(1): combo}) == 2 * word([1, 2, 3], n)  # span says no
    verdict = is_identity(square, g, 3)  # multilinearization catches it
    assert not verdict.holds


def test_pieces_holding_means_vanishing_on_span_combos():
    rng = Random(301)
    n = 5
    gradings = [homogeneous(E_CAN, n), homogeneous(e_kstar(1), n)]
    sorts = [y, z]
    for _ in range(10):
        tbl = {}
        for _ in range(rng.randint(1, 3)):
            w = tuple(sorts[rng.randint(0, 1)](rng.randint(1, 2)) for _ in range(rng.randint(1, 3)))
            tbl[w] = tbl.get(w, 0) + rng.randint(-2, 2)
        p = SuperPolynomial(tbl)
        g = gradings[rng.randint(0, len(gradings) - 1)]
        if not is_identity(p, g, 3).holds:
            continue
        pools = pools_of(g, 3)
        for _ in range(20):
            assignment = {}
            for v in sorted(p.variables()):
                pool = pools[v.sort]
                el = Element.zero(n)
                for vec in rng.sample(pool, min(3, len(pool))):
                    el = el + vec.scale(rng.randint(-2, 2))
                assignment[v] = el
            assert evaluate(p, assignment).is_zero()


# -- evaluation --------------------------------------------------------------------


def test_evaluate_simple_product():
    n = 4
    g = homogeneous(E_INF, n)
    val = evaluate(product_identity(2), {z(1): e(1, n), z(2): e(3, n)}, grading=g)
    assert val == word([1, 3], n)


def test_evaluate_missing_assignment():
    with pytest.raises(MissingAssignment):
        evaluate(product_identity(2), {z(1): e(1, 4)})


def test_evaluate_parity_checked():
    n = 4
    g = homogeneous(E_INF, n)
    with pytest.raises(ParityMismatch):
        evaluate(product_identity(2), {z(1): e(1, n), z(2): e(2, n)}, grading=g)


def test_evaluate_accepts_zero_anywhere():
    n = 4
    g = homogeneous(E_INF, n)
    val = evaluate(product_identity(2), {z(1): Element.zero(n), z(2): e(1, n)}, grading=g)
    assert val.is_zero()


def test_evaluate_rejects_random_parity_mismatches():
    rng = Random(303)
    n = 5
    g = homogeneous(E_INF, n)
    s0 = homogeneous_spanning_set(g, 0, 3)
    s1 = homogeneous_spanning_set(g, 1, 3)
    p = SuperPolynomial.word(y(1), z(1))
    for _ in range(50):
        wrong_y = rng.choice(s1)
        wrong_z = rng.choice(s0)
        with pytest.raises(ParityMismatch):
            evaluate(p, {y(1): wrong_y, z(1): rng.choice(s1)}, grading=g)
        with pytest.raises(ParityMismatch):
            evaluate(p, {y(1): rng.choice(s0), z(1): wrong_z}, grading=g)


def test_standard_polynomial_collapse():
    n = 6
    s3 = standard_polynomial(3)
    val = evaluate(s3, {x(1): e(1, n), x(2): e(2, n), x(3): e(3, n)})
    assert val == 6 * word([1, 2, 3], n)


# -- is_identity -----------------------------------------------------------------------


def test_z1z2_holds_on_e1star():
    g = homogeneous(e_kstar(1), 6)
    verdict = is_identity(product_identity(2), g, 4)
    assert verdict.holds
    assert verdict.mode == "exhaustive_multilinear"


def test_z1z2_witness_on_einf():
    n = 4
    g = homogeneous(E_INF, n)
    verdict = is_identity(product_identity(2), g, 2)
    assert not verdict.holds
    w = verdict.witness
    assert w.assignment == {z(1): e(1, n), z(2): e(3, n)}
    assert w.value == word([1, 3], n)
    assert evaluate(w.polynomial, w.assignment) == w.value


def test_commutator_of_evens_witness_on_einf():
    n = 4
    g = homogeneous(E_INF, n)
    p = poly_commutator(SuperPolynomial.variable(y(1)), SuperPolynomial.variable(y(2)))
    verdict = is_identity(p, g, 2)
    assert not verdict.holds
    assert verdict.witness.value == 2 * word([2, 4], n)
    assert verdict.witness.assignment == {y(1): e(2, n), y(2): e(4, n)}


def test_commutator_of_evens_holds_on_ecan():
    g = homogeneous(E_CAN, 6)
    p = poly_commutator(SuperPolynomial.variable(y(1)), SuperPolynomial.variable(y(2)))
    assert is_identity(p, g, 4).holds


def test_product_identity_threshold_on_e2star():
    n = 7
    g = homogeneous(e_kstar(2), n)
    assert is_identity(product_identity(3), g, 4).holds
    verdict = is_identity(product_identity(2), g, 4)
    assert not verdict.holds
    assert verdict.witness.value == word([1, 2], n)


def test_triple_commutators_hold_everywhere():
    shift = method1(Method1Spec(i_plus=range(2, 7), shifts={1: word([2, 3, 4], 6)}), 6)
    for g in (homogeneous(E_INF, 5), homogeneous(E_CAN, 5), shift, method2(0, 1, 5)):
        for parities in ((0, 0, 0), (1, 1, 1), (0, 1, 0)):
            assert is_identity(graded_triple_commutator(parities), g, min(3, g.n - 2)).holds


def test_max_len_overflow_rejected():
    g = homogeneous(E_CAN, 4)
    with pytest.raises(ValueError, match="overflow"):
        is_identity(product_identity(2), g, 5)


def test_degree_zero_polynomial():
    g = homogeneous(E_CAN, 4)
    p = SuperPolynomial({(): 2})
    verdict = is_identity(p, g, 2)
    assert not verdict.holds
    assert verdict.witness.value == Element.unit(4, 2)


def test_engine_matches_naive_on_randoms():
    rng = Random(307)
    n = 4
    gradings = [
        homogeneous(E_CAN, n),
        homogeneous(E_INF, n),
        homogeneous(e_kstar(1), n),
        method2(0, 1, n),
    ]
    sort_fns = [y, z, x]
    for _ in range(25):
        nvars = rng.randint(1, 3)
        vs = []
        counters = {"y": 0, "z": 0, "x": 0}
        for _ in range(nvars):
            fn = sort_fns[rng.randint(0, 2)]
            name = fn.__name__
            counters[name] += 1
            vs.append(fn(counters[name]))
        tbl = {}
        for perm in set(tuple(rng.sample(vs, len(vs))) for _ in range(3)):
            tbl[perm] = rng.randint(-2, 2)
        p = SuperPolynomial(tbl)
        if p.is_zero():
            continue
        g = gradings[rng.randint(0, len(gradings) - 1)]
        pools = pools_of(g, 2)
        naive = naive_check(p, g, pools)
        verdict = is_identity(p, g, 2)
        assert verdict.holds == (naive is None)
        if not verdict.holds:
            # same witness: the engine reports the first tuple in canonical order
            assert verdict.witness.assignment == naive[0]
            assert verdict.witness.value == naive[1]


def test_randomized_mode_finds_witness_and_echoes_seed():
    g = homogeneous(E_INF, 4)
    verdict = is_identity(product_identity(2), g, 2, mode="randomized", trials=50, seed=99)
    assert not verdict.holds
    assert verdict.seed == 99
    w = verdict.witness
    assert evaluate(w.polynomial, w.assignment) == w.value


def test_randomized_mode_is_reproducible():
    g = homogeneous(E_INF, 4)
    a = is_identity(product_identity(2), g, 2, mode="randomized", trials=50, seed=5)
    b = is_identity(product_identity(2), g, 2, mode="randomized", trials=50, seed=5)
    assert a.witness.assignment == b.witness.assignment


def test_verdict_serialization_shape():
    g = homogeneous(E_INF, 4)
    d = is_identity(product_identity(2), g, 2).to_dict()
    assert d["holds"] is False
    assert d["parameters"]["N"] == 4
    assert d["witness"]["polynomial"] == "z1 z2"
    assert d["witness"]["value"]["terms"][0]["indices"] == [1, 3]


# -- inclusion evidence --------------------------------------------------------------------


def test_inclusion_evidence_shift_grading():
    g = method1(Method1Spec(i_plus=range(2, 7), shifts={1: word([2, 3, 4], 6)}), 6)
    gens = graded_commutator_generators() + [product_identity(2)]
    report = inclusion_evidence(gens, g, 4)
    assert report.all_hold
    assert len(report.entries) == 9


def test_inclusion_evidence_z1z2_fails_on_ecan():
    g = homogeneous(E_CAN, 5)
    report = inclusion_evidence([product_identity(2)], g, 3)
    assert not report.all_hold
    _, verdict = report.entries[0]
    assert verdict.witness.value == 2 * word([1, 2], 5) or not verdict.witness.value.is_zero()


def test_inclusion_evidence_empty_is_vacuous():
    g = homogeneous(E_CAN, 4)
    assert inclusion_evidence([], g, 2).all_hold


def test_evidence_report_serialization():
    g = homogeneous(e_kstar(1), 5)
    report = inclusion_evidence([product_identity(2)], g, 3)
    d = report.to_dict()
    assert d["all_hold"] is True
    assert d["entries"][0]["polynomial"] == "z1 z2"
