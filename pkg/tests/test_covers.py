"""Tests for permutation machinery and surface-cover search."""

import pytest
from hypothesis import given, settings, strategies

from gmsurf.covers import (
    BudgetExceededError,
    CoverCertificate,
    CoverSpec,
    ParityError,
    commutator,
    compose,
    cover_exists_bruteforce,
    cycle_type,
    canonical_perm,
    find_cover,
    identity_perm,
    inverse,
    is_transitive,
    parity_check,
    perm_from_cycle_lengths,
    seifert_parity,
    verify_cover,
    word_product,
)


# --- permutation primitives ---------------------------------------------------


def test_compose_applies_rightmost_first():
    p = (1, 2, 0)
    q = (0, 2, 1)
    assert compose(p, q) == tuple(p[q[i]] for i in range(3)) == (1, 0, 2)


def test_inverse_undoes_composition():
    p = (2, 0, 3, 1)
    assert compose(p, inverse(p)) == identity_perm(4)
    assert compose(inverse(p), p) == identity_perm(4)


def test_word_product_of_empty_word_is_identity():
    assert word_product([], 3) == identity_perm(3)


def test_word_product_multiplies_left_to_right_acting_right_first():
    p = (1, 0, 2)
    q = (0, 2, 1)
    assert word_product([p, q], 3) == compose(p, q)


def test_commutator_of_commuting_permutations_is_identity():
    p = (1, 0, 2, 3)
    q = (0, 1, 3, 2)
    assert commutator(p, q) == identity_perm(4)


def test_cycle_type_includes_fixed_points():
    assert cycle_type((1, 0, 2, 3)) == (2, 1, 1)
    assert cycle_type((1, 2, 0)) == (3,)
    assert cycle_type(identity_perm(4)) == (1, 1, 1, 1)


def test_perm_from_cycle_lengths_realizes_requested_type():
    perm = perm_from_cycle_lengths(5, [3, 2], [4, 2, 0, 1, 3])
    assert cycle_type(perm) == (3, 2)


def test_canonical_perm_uses_increasing_points():
    assert cycle_type(canonical_perm(4, [2, 2])) == (2, 2)
    assert canonical_perm(3, [3]) == (1, 2, 0)


def test_is_transitive_detects_orbits():
    swap01 = (1, 0, 2)
    swap12 = (0, 2, 1)
    assert is_transitive([swap01, swap12], 3)
    assert not is_transitive([swap01], 3)


# --- cover specifications --------------------------------------------------------


def test_spec_rejects_zero_genus():
    with pytest.raises(ValueError):
        CoverSpec(genus=0, alpha=2, boundary_degrees=((2,),))


def test_spec_rejects_mismatched_degree_sum():
    with pytest.raises(ValueError):
        CoverSpec(genus=1, alpha=3, boundary_degrees=((2,),))


def test_base_euler_characteristic():
    spec = CoverSpec(genus=2, alpha=1, boundary_degrees=((1,), (1,)))
    assert spec.base_euler == 2 - 4 - 2


# --- parity -----------------------------------------------------------------------


def test_parity_rejects_single_double_circle():
    assert not parity_check(CoverSpec(genus=1, alpha=2, boundary_degrees=((2,),)))


def test_parity_accepts_split_circles():
    assert parity_check(CoverSpec(genus=1, alpha=2, boundary_degrees=((1, 1),)))


def test_parity_accepts_degree_one_covers():
    for genus in (1, 2):
        for boundary in (1, 2):
            spec = CoverSpec(
                genus=genus, alpha=1, boundary_degrees=tuple(((1,),) * boundary)
            )
            assert parity_check(spec)


# --- finding covers ----------------------------------------------------------------


def test_find_cover_split_circles():
    spec = CoverSpec(genus=1, alpha=2, boundary_degrees=((1, 1),))
    cert = find_cover(spec)
    assert verify_cover(spec, cert) == []


def test_find_cover_three_cycle_as_commutator():
    spec = CoverSpec(genus=1, alpha=3, boundary_degrees=((3,),))
    cert = find_cover(spec)
    assert verify_cover(spec, cert) == []
    assert cycle_type(cert.all_z()[0]) == (3,)


def test_find_cover_rejects_parity_failure():
    with pytest.raises(ParityError):
        find_cover(CoverSpec(genus=1, alpha=2, boundary_degrees=((2,),)))


def test_find_cover_deterministic_per_seed():
    spec = CoverSpec(genus=1, alpha=4, boundary_degrees=((2, 2),))
    assert find_cover(spec, seed=3) == find_cover(spec, seed=3)


def test_relator_product_of_any_certificate_is_identity():
    spec = CoverSpec(genus=2, alpha=3, boundary_degrees=((3,), (1, 1, 1)))
    cert = find_cover(spec)
    word = [commutator(x, y) for x, y in zip(cert.x, cert.y)]
    word.extend(cert.all_z())
    assert word_product(word, spec.alpha) == identity_perm(spec.alpha)


# --- exhaustive existence oracle ------------------------------------------------------


def test_bruteforce_rejects_single_double_circle():
    assert not cover_exists_bruteforce(
        CoverSpec(genus=1, alpha=2, boundary_degrees=((2,),))
    )


def test_bruteforce_accepts_split_circles():
    assert cover_exists_bruteforce(
        CoverSpec(genus=1, alpha=2, boundary_degrees=((1, 1),))
    )


def test_bruteforce_accepts_trivial_cover():
    assert cover_exists_bruteforce(
        CoverSpec(genus=2, alpha=1, boundary_degrees=((1,),))
    )


def test_bruteforce_refuses_oversized_enumeration():
    spec = CoverSpec(genus=2, alpha=5, boundary_degrees=((5,), (5,)))
    with pytest.raises(BudgetExceededError):
        cover_exists_bruteforce(spec)


# --- certificate verification ----------------------------------------------------------


def test_verify_cover_flags_wrong_degree():
    spec = CoverSpec(genus=1, alpha=2, boundary_degrees=((1, 1),))
    cert = find_cover(spec)
    wrong = CoverCertificate(alpha=3, x=cert.x, y=cert.y, z=cert.z)
    assert verify_cover(spec, wrong)


def test_verify_cover_flags_wrong_cycle_type():
    spec = CoverSpec(genus=1, alpha=2, boundary_degrees=((2,),))
    cert = CoverCertificate(alpha=2, x=(identity_perm(2),), y=(identity_perm(2),), z=())
    assert any("cycle type" in v for v in verify_cover(spec, cert))


def test_verify_cover_flags_intransitive_action():
    spec = CoverSpec(genus=1, alpha=2, boundary_degrees=((1, 1),))
    cert = CoverCertificate(alpha=2, x=(identity_perm(2),), y=(identity_perm(2),), z=())
    assert any("transitive" in v for v in verify_cover(spec, cert))


def test_verify_cover_flags_non_permutation():
    spec = CoverSpec(genus=1, alpha=2, boundary_degrees=((1, 1),))
    cert = CoverCertificate(alpha=2, x=((0, 0),), y=(identity_perm(2),), z=())
    assert any("not a permutation" in v for v in verify_cover(spec, cert))


def boundary_partitions(alpha: int):
    def parts(n, cap):
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), 0, -1):
            for rest in parts(n - first, first):
                yield (first,) + rest

    return list(parts(alpha, alpha))


@settings(max_examples=60, deadline=None)
@given(
    strategies.integers(min_value=1, max_value=2),
    strategies.integers(min_value=1, max_value=2),
    strategies.integers(min_value=1, max_value=4),
    strategies.randoms(use_true_random=False),
)
def test_found_covers_always_verify_and_rederive_parity(genus, boundary, alpha, rng):
    degrees = tuple(rng.choice(boundary_partitions(alpha)) for _ in range(boundary))
    spec = CoverSpec(genus=genus, alpha=alpha, boundary_degrees=degrees)
    if not parity_check(spec):
        return
    cert = find_cover(spec)
    assert verify_cover(spec, cert) == []
    upstairs = sum(len(inner) for inner in degrees)
    assert (upstairs - alpha * spec.base_euler) % 2 == 0


# --- parity bookkeeping for fibered pieces ------------------------------------------------


def test_seifert_parity_even_degree_always_passes():
    for a, chi, k_sum in ((1, -1, 2), (3, -2, 5), (2, -1, 7)):
        assert seifert_parity(2, a, chi, k_sum)


def test_seifert_parity_odd_degree_cases():
    assert not seifert_parity(1, 1, -1, 2)
    assert seifert_parity(1, 2, -1, 2)
