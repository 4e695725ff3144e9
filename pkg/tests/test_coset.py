import math
from fractions import Fraction
from itertools import product

import pytest

from kscoset.affine import (
    SPIN_KINDS,
    SpinLabel,
    U1Charge,
    box_count,
    dominant_weights,
    rotate_su,
    vacuum_su,
)
from kscoset.coset import (
    BudgetExceededError,
    CosetField,
    CosetSpec,
    branching_weight,
    candidate_count,
    central_charge,
    conformal_weight_mod1,
    enumerate_fields,
    passes_selection_rules,
    passes_selection_rules_su,
    resolve_spectrum,
    stabilizer_order,
    stat_dim,
    u1_branching_weight,
    u1_coset_allowed,
    u1_coset_vacuum_pairs,
    vacuum_field,
    validate_field,
    vp_act,
    vp_group,
)
from kscoset.modular import h_spin, h_su, h_u1, qdim_su

# fields / group order / irreducible sectors, frozen from the brute-force
# pipeline oracle and cross-checked against hand congruence counting
GOLDEN = {
    (1, 1, 1): (24, 2, 12),
    (1, 1, 2): (48, 2, 24),
    (2, 1, 1): (144, 6, 24),
    (2, 2, 1): (1280, 16, 80),
    (1, 2, 2): (480, 6, 80),
    (3, 1, 1): (480, 12, 40),
    (1, 1, 3): (80, 2, 40),
    (3, 2, 1): (6000, 30, 200),
    (1, 2, 3): (1200, 6, 200),
}


def brute_force_allowed(spec):
    # independent reimplementation of the two congruences
    m, n, k = spec.m, spec.n, spec.k
    big = m + n
    half = m * n * big // 2
    out = []
    for lam0 in dominant_weights(big, k):
        for kind in SPIN_KINDS:
            eps = 1 if kind in ("spinor", "cospinor") else 0
            for lam1 in dominant_weights(m, n + k):
                for lam2 in dominant_weights(n, m + k):
                    for q in range(spec.u1_modulus):
                        c1 = (q + m * box_count(lam0) - big * box_count(lam1)
                              - eps * half) % (m * big) == 0
                        c2 = (q - n * box_count(lam0) + big * box_count(lam2)
                              - eps * half) % (n * big) == 0
                        if c1 and c2:
                            out.append((lam0.labels, kind, lam1.labels,
                                        lam2.labels, q))
    return out


@pytest.mark.parametrize("mnk", list(product(range(1, 5), repeat=3)))
def test_central_charge_exact_and_permutation_invariant(mnk):
    m, n, k = mnk
    c = central_charge(CosetSpec(m, n, k))
    assert c == Fraction(3 * m * n * k, m + n + k)
    for perm in ((m, k, n), (n, m, k), (n, k, m), (k, m, n), (k, n, m)):
        assert central_charge(CosetSpec(*perm)) == c


def test_spec_validation():
    with pytest.raises(ValueError):
        CosetSpec(0, 1, 1)
    with pytest.raises(ValueError):
        CosetSpec(1, 1, -2)


def test_spec_derived_factors():
    spec = CosetSpec(2, 1, 1)
    assert spec.big_rank == 3
    assert spec.spin_half_dim == 2
    assert spec.first_level == 2
    assert spec.second_level == 3
    assert spec.u1_modulus == 2 * 1 * 3 * 4


def test_vacuum_field_is_allowed():
    for mnk in GOLDEN:
        spec = CosetSpec(*mnk)
        assert passes_selection_rules(vacuum_field(spec), spec)


def test_validate_field_rejects_mismatched_labels():
    spec = CosetSpec(1, 1, 1)
    wrong = CosetField(
        vacuum_su(3, 1),  # wrong rank for m+n=2
        SpinLabel(1, "vacuum"),
        vacuum_su(1, 2),
        vacuum_su(1, 2),
        U1Charge(6, 0),
    )
    with pytest.raises(ValueError):
        validate_field(wrong, spec)
    with pytest.raises(ValueError):
        passes_selection_rules(wrong, spec)


def test_selection_rejects_bad_charge():
    spec = CosetSpec(2, 1, 1)
    f = vacuum_field(spec)
    bad = CosetField(f.lambda0, f.pi0, f.lambda1, f.lambda2, U1Charge(24, 1))
    assert not passes_selection_rules(bad, spec)


@pytest.mark.parametrize("mnk", [(1, 1, 1), (1, 1, 2), (2, 1, 1), (1, 2, 1)])
def test_enumeration_matches_brute_force(mnk):
    spec = CosetSpec(*mnk)
    got = [
        (f.lambda0.labels, f.pi0.kind, f.lambda1.labels, f.lambda2.labels,
         f.charge.value)
        for f in enumerate_fields(spec)
    ]
    assert got == brute_force_allowed(spec)


@pytest.mark.parametrize("mnk,expected", [(s, g[0]) for s, g in GOLDEN.items()])
def test_field_counts(mnk, expected):
    assert len(enumerate_fields(CosetSpec(*mnk))) == expected


def test_budget_error_names_count():
    spec = CosetSpec(1, 1, 1)
    with pytest.raises(BudgetExceededError, match="48"):
        enumerate_fields(spec, budget=10)
    assert candidate_count(CosetSpec(3, 3, 2)) == 16003008
    with pytest.raises(BudgetExceededError, match="16003008"):
        enumerate_fields(CosetSpec(3, 3, 2))


@pytest.mark.parametrize("mnk,expected", [(s, g[1]) for s, g in GOLDEN.items()])
def test_vp_group_orders(mnk, expected):
    assert vp_group(CosetSpec(*mnk)).order == expected


@pytest.mark.parametrize("level", range(1, 7))
def test_minimal_series_group_order_two(level):
    assert vp_group(CosetSpec(1, 1, level)).order == 2


def test_vp_group_identity_first():
    group = vp_group(CosetSpec(2, 1, 1))
    e = group.identity
    assert (e.j, e.i) == (0, 0)
    assert e.image == vacuum_field(group.spec)


@pytest.mark.parametrize("mnk", list(product(range(1, 3), repeat=3)))
def test_vp_group_laws(mnk):
    group = vp_group(CosetSpec(*mnk))
    elements = group.elements
    images = {w.image for w in elements}
    assert len(images) == group.order
    for w in elements:
        assert group.compose(w, group.identity) == w
        assert group.compose(w, group.inverse(w)) == group.identity
        for v in elements:
            wv = group.compose(w, v)
            assert wv in elements
            assert wv == group.compose(v, w)


def test_vp_element_orders_divide_group_order():
    for mnk in [(2, 1, 1), (2, 2, 1), (3, 2, 1)]:
        group = vp_group(CosetSpec(*mnk))
        for w in group.elements:
            power, order = w, 1
            while power != group.identity:
                power = group.compose(power, w)
                order += 1
                assert order <= group.order
            assert group.order % order == 0


@pytest.mark.parametrize("mnk", list(product(range(1, 4), repeat=3)))
def test_vp_images_allowed_and_weight_integral(mnk):
    spec = CosetSpec(*mnk)
    for w in vp_group(spec).elements:
        f = w.image
        assert passes_selection_rules(f, spec)
        grade = (h_su(f.lambda1) + h_su(f.lambda2) + h_u1(f.charge)) - (
            h_su(f.lambda0) + h_spin(f.pi0)
        )
        assert grade.denominator == 1
        assert grade >= 0


def test_vp_act_identity_and_image():
    spec = CosetSpec(2, 1, 1)
    group = vp_group(spec)
    vac = vacuum_field(spec)
    for w in group.elements:
        assert vp_act(group.identity, w.image, spec) == w.image
        assert vp_act(w, vac, spec) == w.image


def test_vp_action_preserves_selection_and_weight():
    spec = CosetSpec(2, 1, 1)
    group = vp_group(spec)
    for f in enumerate_fields(spec):
        h = conformal_weight_mod1(f, spec)
        for w in group.elements:
            g = vp_act(w, f, spec)
            assert passes_selection_rules(g, spec)
            assert conformal_weight_mod1(g, spec) == h


def test_vp_action_is_a_group_action():
    spec = CosetSpec(2, 2, 1)
    group = vp_group(spec)
    sample = enumerate_fields(spec)[::97]
    for f in sample:
        for w in group.elements[:5]:
            for v in group.elements[:5]:
                assert vp_act(w, vp_act(v, f, spec), spec) == vp_act(
                    group.compose(w, v), f, spec
                )


def test_vacuum_stabilizer_is_trivial():
    # distinct currents have distinct images, so only the identity fixes it
    for mnk in [(1, 1, 1), (2, 1, 1), (2, 2, 2)]:
        spec = CosetSpec(*mnk)
        assert stabilizer_order(vacuum_field(spec), spec) == 1


def test_branching_weight_rejects_disallowed_fields():
    spec = CosetSpec(1, 1, 1)
    f = vacuum_field(spec)
    bad = CosetField(f.lambda0, f.pi0, f.lambda1, f.lambda2, U1Charge(6, 1))
    with pytest.raises(ValueError):
        branching_weight(bad, spec)


@pytest.mark.parametrize("mnk", [(1, 1, 1), (1, 1, 2), (2, 1, 1), (2, 2, 1)])
def test_stat_dim_equals_qdim_product(mnk):
    spec = CosetSpec(*mnk)
    vac_weight = branching_weight(vacuum_field(spec), spec)
    assert vac_weight > 0
    for f in enumerate_fields(spec):
        ref = qdim_su(f.lambda0) * qdim_su(f.lambda1) * qdim_su(f.lambda2)
        assert stat_dim(f, spec) == pytest.approx(ref, abs=1e-8)
        assert branching_weight(f, spec) == pytest.approx(
            ref * vac_weight, abs=1e-8
        )


def test_conformal_weight_of_vacuum_and_currents_is_zero():
    for mnk in [(1, 1, 1), (2, 1, 1), (2, 2, 1)]:
        spec = CosetSpec(*mnk)
        assert conformal_weight_mod1(vacuum_field(spec), spec) == 0
        for w in vp_group(spec).elements:
            assert conformal_weight_mod1(w.image, spec) == 0


def test_conformal_weight_examples():
    # smallest coset: the twelve sectors carry known weights
    spec = CosetSpec(1, 1, 1)
    hs = sorted({conformal_weight_mod1(f, spec) for f in enumerate_fields(spec)})
    assert hs == [
        Fraction(0), Fraction(1, 24), Fraction(1, 6), Fraction(3, 8),
        Fraction(1, 2), Fraction(2, 3),
    ]


def test_su_subcoset_rules_on_generator_images():
    # one rotation upstairs pairs with a rotation of either subfactor
    for m, n, k in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (3, 2, 2)]:
        spec = CosetSpec(m, n, k)
        modulus = m * n * k * (m + n)
        lam0 = rotate_su(vacuum_su(m + n, k))
        first = passes_selection_rules_su(
            lam0,
            rotate_su(vacuum_su(m, k)),
            vacuum_su(n, k),
            U1Charge(modulus, n * k),
            spec,
        )
        second = passes_selection_rules_su(
            lam0,
            vacuum_su(m, k),
            rotate_su(vacuum_su(n, k)),
            U1Charge(modulus, -m * k),
            spec,
        )
        assert first and second
        assert passes_selection_rules_su(
            vacuum_su(m + n, k), vacuum_su(m, k), vacuum_su(n, k),
            U1Charge(modulus, 0), spec,
        )


def test_su_subcoset_rules_reject_shifted_charge():
    spec = CosetSpec(2, 1, 1)
    modulus = 2 * 1 * 1 * 3
    assert not passes_selection_rules_su(
        vacuum_su(3, 1), vacuum_su(2, 1), vacuum_su(1, 1),
        U1Charge(modulus, 1), spec,
    )
    with pytest.raises(ValueError):
        passes_selection_rules_su(
            vacuum_su(3, 2), vacuum_su(2, 1), vacuum_su(1, 1),
            U1Charge(modulus, 0), spec,
        )


@pytest.mark.parametrize("a,b", [(1, 1), (2, 4), (3, 6), (5, 7), (12, 20)])
def test_u1_coset_current_count_and_membership(a, b):
    currents = u1_coset_vacuum_pairs(a, b)
    g = math.gcd(a, b)
    assert len(currents) == 2 * g
    assert len(set(currents)) == 2 * g
    assert currents[0] == (0, 0, 0)
    for x, y, z in currents:
        assert u1_coset_allowed(x, y, z, a, b)
        # grade of every current is exactly zero
        grade = (
            h_u1(U1Charge(2 * a, x)) + h_u1(U1Charge(2 * b, y))
            - h_u1(U1Charge(2 * (a + b), z))
        )
        assert grade == 0


def test_u1_coset_example_triples():
    assert u1_coset_vacuum_pairs(1, 1) == ((0, 0, 0), (1, 1, 2))
    assert u1_coset_vacuum_pairs(2, 2) == (
        (0, 0, 0), (1, 1, 2), (2, 2, 4), (3, 3, 6)
    )


def test_u1_coset_vacuum_weight_closed_form():
    for a in range(1, 13):
        for b in range(1, 13):
            direct = u1_branching_weight(0, 0, 0, a, b)
            assert direct == pytest.approx(
                math.gcd(a, b) / math.sqrt(2 * a * b * (a + b)), abs=1e-9
            )


def test_u1_coset_selection_gate():
    with pytest.raises(ValueError):
        u1_branching_weight(1, 0, 0, 2, 4)
    assert u1_coset_allowed(1, 1, 2, 1, 1)
    assert not u1_coset_allowed(1, 0, 0, 1, 1)


@pytest.mark.parametrize("mnk,golden", list(GOLDEN.items()))
def test_resolved_spectrum_counts(mnk, golden):
    field_count, order, irreps = golden
    spectrum = resolve_spectrum(CosetSpec(*mnk))
    assert spectrum.field_count == field_count
    assert spectrum.vp_group_order == order
    assert spectrum.irrep_count == irreps
    assert sum(r.orbit_size for r in spectrum.rows) == field_count
    for row in spectrum.rows:
        assert row.orbit_size * row.stabilizer_order == order
        assert (mnk[0] + mnk[1]) % row.stabilizer_order == 0


def test_resolution_splits_fixed_points():
    # the smallest spec with genuine fixed points: twelve orbits of size 8
    # are fixed by an order-two current and split into two sectors each
    spectrum = resolve_spectrum(CosetSpec(2, 2, 2))
    assert spectrum.field_count == 6048
    assert spectrum.vp_group_order == 16
    assert len(spectrum.rows) == 384
    assert spectrum.irrep_count == 396
    split = [r for r in spectrum.rows if r.stabilizer_order > 1]
    assert len(split) == 12
    assert all(r.stabilizer_order == 2 and r.orbit_size == 8 for r in split)
    for row in split:
        assert row.representative.lambda1.labels == (2,)
        assert row.representative.lambda2.labels == (2,)


def test_resolved_spectrum_is_sorted_and_deterministic():
    spec = CosetSpec(2, 1, 1)
    first = resolve_spectrum(spec)
    second = resolve_spectrum(spec)
    assert first.rows == second.rows
    keys = [(r.h_mod1, r.dimension) for r in first.rows]
    assert keys == sorted(keys)
    assert first.rows[0].representative == vacuum_field(spec)
    assert first.rows[0].h_mod1 == 0
    assert first.rows[0].dimension == pytest.approx(1.0)


def test_stat_dim_constant_on_orbits():
    spec = CosetSpec(2, 1, 1)
    group = vp_group(spec)
    for f in enumerate_fields(spec)[::7]:
        d = stat_dim(f, spec)
        for w in group.elements:
            assert stat_dim(vp_act(w, f, spec), spec) == pytest.approx(d, abs=1e-9)
