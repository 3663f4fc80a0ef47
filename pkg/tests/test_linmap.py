"""Endomorphism construction, verification, involutions, linearization."""

import json
from random import Random

import pytest

from supergrass.exterior import Element, Monomial, generator, unit, word
from supergrass.linmap import (
    Endomorphism,
    NotAnInvolution,
    RelationViolation,
    TailRule,
    TruncationMismatch,
    apply,
    compose,
    equal,
    identity_map,
    invariant_family,
    is_involution,
    linearize,
    make_endomorphism,
    verify_relations,
)

from conftest import random_parity_element


def e(i, n):
    return generator(i, n)


def shift_map(n=6):
    """e1 -> -e1 + 2 e2e3e4, every other generator fixed."""
    return make_endomorphism({1: -e(1, n) + 2 * word([2, 3, 4], n)}, TailRule.identity(), n)


def swap_map(n=4):
    images = {}
    for i in range(1, n + 1, 2):
        images[i] = e(i + 1, n)
        images[i + 1] = e(i, n)
    return make_endomorphism(images, TailRule.identity(), n)


def double_negation_map(n=5):
    """e_n -> -e_n + 2 e1 e_n for n > 1, e_1 -> -e_1 (prefix-negation tail)."""
    return make_endomorphism(
        {1: -e(1, n)}, TailRule.prefix_negation(Monomial.from_indices([1])), n
    )


# -- construction ------------------------------------------------------------


def test_make_endomorphism_examples():
    phi = shift_map(6)
    assert phi.image(1) == -e(1, 6) + 2 * word([2, 3, 4], 6)
    assert phi.image(5) == e(5, 6)

    ident = make_endomorphism({}, TailRule.identity(), 4)
    assert all(ident.image(i) == e(i, 4) for i in range(1, 5))

    flip = make_endomorphism({}, TailRule.negation(), 4)
    assert all(flip.image(i) == -e(i, 4) for i in range(1, 5))


def test_constant_term_rejected():
    with pytest.raises(ValueError, match="constant term"):
        make_endomorphism({1: unit(4) + e(1, 4)}, TailRule.identity(), 4)


def test_index_out_of_range_rejected():
    with pytest.raises(ValueError):
        make_endomorphism({5: e(1, 4)}, TailRule.identity(), 4)


def test_truncation_mismatch_rejected():
    with pytest.raises(TruncationMismatch):
        make_endomorphism({1: e(1, 5)}, TailRule.identity(), 4)


def test_tail_prefix_overlap_rejected():
    # tail applies from index 2 on, but the prefix reaches index 3
    with pytest.raises(ValueError, match="overlaps"):
        make_endomorphism(
            {1: -e(1, 6)}, TailRule.prefix_negation(Monomial.from_indices([1, 3])), 6
        )


def test_tail_prefix_covered_by_explicit_ok():
    phi = make_endomorphism(
        {1: e(1, 6), 2: -e(2, 6)}, TailRule.prefix_negation(Monomial.from_indices([1, 2])), 6
    )
    assert phi.image(3) == -e(3, 6) + 2 * word([1, 2, 3], 6)


def test_parity_sign_tail():
    phi = make_endomorphism({}, TailRule.parity_sign(), 4)
    assert phi.image(1) == -e(1, 4)
    assert phi.image(2) == e(2, 4)
    assert phi.image(3) == -e(3, 4)
    assert phi.image(4) == e(4, 4)


# -- verify_relations ---------------------------------------------------------


def test_shift_map_verifies():
    phi = verify_relations(shift_map())
    assert phi.verified


def test_swap_map_verifies():
    assert verify_relations(swap_map()).verified


def test_odd_image_sum_verifies():
    phi = make_endomorphism({1: e(1, 4) + e(2, 4)}, TailRule.identity(), 4)
    assert verify_relations(phi).verified


def test_relation_violation_carries_witness():
    # e1 -> e1 + e2e3 has nonzero square
    phi = make_endomorphism({1: e(1, 4) + word([2, 3], 4)}, TailRule.identity(), 4)
    with pytest.raises(RelationViolation) as exc:
        verify_relations(phi)
    assert (exc.value.i, exc.value.j) == (1, 1)
    img = phi.image(1)
    assert exc.value.residual == img * img + img * img


def test_random_odd_images_always_verify():
    rng = Random(101)
    n = 6
    for _ in range(25):
        images = {}
        for i in range(1, n + 1):
            if rng.random() < 0.5:
                images[i] = random_parity_element(rng, n, 1)
        phi = make_endomorphism(images, TailRule.identity(), n)
        assert verify_relations(phi).verified


# -- apply ---------------------------------------------------------------------


def test_apply_hand_expansion():
    phi = verify_relations(shift_map(6))
    assert apply(phi, word([1, 5], 6)) == -word([1, 5], 6) + 2 * word([2, 3, 4, 5], 6)


def test_apply_fixes_unit():
    phi = verify_relations(shift_map(6))
    assert apply(phi, unit(6)) == unit(6)


def test_apply_swap_signs():
    phi = verify_relations(swap_map(4))
    assert apply(phi, word([1, 2], 4)) == -word([1, 2], 4)


def test_apply_requires_verified():
    with pytest.raises(ValueError):
        apply(shift_map(), e(1, 6))


def test_apply_is_homomorphism_random():
    rng = Random(103)
    n = 6
    phi = verify_relations(shift_map(n))
    from conftest import random_element

    for _ in range(40):
        a = random_element(rng, n)
        b = random_element(rng, n)
        assert apply(phi, a * b) == apply(phi, a) * apply(phi, b)


# -- compose / equal ------------------------------------------------------------


def test_swap_composed_with_itself_is_identity():
    phi = verify_relations(swap_map(4))
    assert equal(compose(phi, phi), identity_map(4))


def test_compose_with_identity():
    phi = verify_relations(shift_map(6))
    assert equal(compose(identity_map(6), phi), phi)
    assert equal(compose(phi, identity_map(6)), phi)


def test_equal_is_extensional_over_tails():
    n = 4
    a = make_endomorphism({}, TailRule.identity(), n)
    b = make_endomorphism({i: e(i, n) for i in range(1, n + 1)}, TailRule.negation(), n)
    assert equal(a, b)


# -- involutions -----------------------------------------------------------------


def test_identity_is_involution():
    assert is_involution(identity_map(4))


def test_double_negation_map_is_involution():
    phi = verify_relations(double_negation_map(5))
    assert is_involution(phi)


def test_unipotent_shift_is_not_involution():
    phi = verify_relations(
        make_endomorphism({1: e(1, 4) + word([1, 2, 3], 4)}, TailRule.identity(), 4)
    )
    assert not is_involution(phi)


# -- invariant family --------------------------------------------------------------


def test_invariant_family_shift_map():
    phi = verify_relations(shift_map(6))
    fam = invariant_family(phi)
    assert fam[1] == word([2, 3, 4], 6)
    for i in range(2, 7):
        assert fam[i] == e(i, 6)


def test_invariant_family_parity_sign():
    phi = verify_relations(make_endomorphism({}, TailRule.parity_sign(), 4))
    fam = invariant_family(phi)
    for i in range(1, 5):
        assert fam[i] == (e(i, 4) if i % 2 == 0 else Element.zero(4))


def test_invariant_family_double_negation():
    phi = verify_relations(double_negation_map(5))
    fam = invariant_family(phi)
    assert fam[1].is_zero()
    for i in range(2, 6):
        assert fam[i] == word([1, i], 5)


def test_invariant_family_rejects_non_involutions():
    phi = verify_relations(
        make_endomorphism({1: e(1, 4) + word([1, 2, 3], 4)}, TailRule.identity(), 4)
    )
    with pytest.raises(NotAnInvolution):
        invariant_family(phi)


# -- linearize ----------------------------------------------------------------------


def test_linearize_shift_map():
    phi = verify_relations(shift_map(6))
    lin = linearize(phi)
    assert lin.image(1) == -e(1, 6)
    for i in range(2, 7):
        assert lin.image(i) == e(i, 6)


def test_linearize_double_negation_is_negation_everywhere():
    phi = verify_relations(double_negation_map(5))
    lin = linearize(phi)
    for i in range(1, 6):
        assert lin.image(i) == -e(i, 5)


def test_linearize_fixes_homogeneous_maps():
    phi = verify_relations(make_endomorphism({}, TailRule.parity_sign(), 5))
    assert equal(linearize(phi), phi)


def test_linearize_idempotent():
    phi = verify_relations(shift_map(6))
    assert equal(linearize(linearize(phi)), linearize(phi))


def test_linearize_of_involution_is_involution():
    phi = verify_relations(double_negation_map(6))
    assert is_involution(phi)
    assert is_involution(linearize(phi))


def test_trivial_linearization_blocks_involution():
    # phi_l = id but phi != id forces phi**2 != id
    rng = Random(107)
    n = 6
    for _ in range(30):
        images = {}
        for i in range(1, n + 1):
            if rng.random() < 0.6:
                w = random_parity_element(rng, n, 0, max_terms=2, max_len=4)
                w = Element(n, {m: c for m, c in w.terms() if m.length >= 2})
                shifted = e(i, n) * (unit(n) + w)
                if shifted != e(i, n):
                    images[i] = shifted
        if not images:
            continue
        phi = verify_relations(make_endomorphism(images, TailRule.identity(), n))
        assert equal(linearize(phi), identity_map(n))
        assert not is_involution(phi)


# -- serialization ---------------------------------------------------------------------


def test_endomorphism_json_round_trip():
    for phi in (shift_map(6), swap_map(4), double_negation_map(5)):
        blob = json.dumps(phi.to_dict())
        back = Endomorphism.from_dict(json.loads(blob))
        assert equal(back, phi)


def test_endomorphism_json_tail_shape():
    d = double_negation_map(5).to_dict()
    assert d["tail"] == {"kind": "prefix_negation", "prefix": [1]}
    assert set(d["explicit"]) == {"1"}
