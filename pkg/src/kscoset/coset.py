"""Primary fields of the Grassmannian coset and their identification.

A coset ``G(m, n, k)`` pairs su(m+n) at level k with 2mn free fermions over
the subalgebra su(m) x su(n) x u(1).  A candidate primary is a quintuple of
factor labels; two congruences on the torus charge cut the candidates down
to the allowed fields, a finite abelian group of simple currents (the
"vacuum pairs") identifies allowed fields in orbits, and orbits with a
nontrivial stabilizer split into that many irreducible sectors.  This module
implements each stage and the statistical weight attached to every field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .affine import (
    AffineWeight,
    SpinLabel,
    U1Charge,
    box_count,
    dominant_weights,
    rotate_spin,
    rotate_su,
    vacuum_charge,
    vacuum_spin,
    vacuum_su,
)
from .modular import (
    h_spin,
    h_su,
    h_u1,
    s_matrix_spin,
    s_matrix_su,
    s_matrix_u1,
)

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceededError",
    "CosetSpec",
    "CosetField",
    "VacuumPair",
    "VacuumPairGroup",
    "SpectrumRow",
    "ResolvedSpectrum",
    "central_charge",
    "vacuum_field",
    "validate_field",
    "passes_selection_rules",
    "passes_selection_rules_su",
    "enumerate_fields",
    "vp_group",
    "vp_act",
    "stabilizer_order",
    "branching_weight",
    "stat_dim",
    "conformal_weight_mod1",
    "u1_coset_vacuum_pairs",
    "u1_coset_allowed",
    "u1_branching_weight",
    "resolve_spectrum",
]

# Ceiling on candidate quintuples an enumeration may scan.
DEFAULT_BUDGET = 10**6


class BudgetExceededError(Exception):
    """Raised when an enumeration would scan more candidates than allowed."""


@dataclass(frozen=True)
class CosetSpec:
    """Parameters (m, n, k) of one Grassmannian coset, all positive."""

    m: int
    n: int
    k: int

    def __post_init__(self):
        for name in ("m", "n", "k"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")

    @property
    def big_rank(self) -> int:
        return self.m + self.n

    @property
    def spin_half_dim(self) -> int:
        return self.m * self.n

    @property
    def first_level(self) -> int:
        """Level of the su(m) subfactor."""
        return self.n + self.k

    @property
    def second_level(self) -> int:
        """Level of the su(n) subfactor."""
        return self.m + self.k

    @property
    def u1_modulus(self) -> int:
        return self.m * self.n * (self.m + self.n) * (self.m + self.n + self.k)


@dataclass(frozen=True)
class CosetField:
    """Candidate primary field: one label per chiral factor.

    ``lambda0`` lives in su(m+n) level k, ``pi0`` in so(2mn) level 1,
    ``lambda1`` in su(m) level n+k, ``lambda2`` in su(n) level m+k, and
    ``charge`` on the torus.  Hashable, so orbits can be set-valued.
    """

    lambda0: AffineWeight
    pi0: SpinLabel
    lambda1: AffineWeight
    lambda2: AffineWeight
    charge: U1Charge


@dataclass(frozen=True)
class VacuumPair:
    """One identification current, tagged by its canonical exponents.

    ``(j, i)`` is the lexicographically smallest exponent pair producing
    ``image``, the current's value on the vacuum field.
    """

    j: int
    i: int
    image: CosetField


def central_charge(spec: CosetSpec) -> Fraction:
    """Central charge 3mnk / (m + n + k), exact and symmetric in (m, n, k)."""
    return Fraction(3 * spec.m * spec.n * spec.k, spec.m + spec.n + spec.k)


def vacuum_field(spec: CosetSpec) -> CosetField:
    return CosetField(
        vacuum_su(spec.big_rank, spec.k),
        vacuum_spin(spec.spin_half_dim),
        vacuum_su(spec.m, spec.first_level),
        vacuum_su(spec.n, spec.second_level),
        vacuum_charge(spec.u1_modulus),
    )


def validate_field(field: CosetField, spec: CosetSpec) -> None:
    """Raise ValueError unless every component label belongs to the spec."""
    checks = (
        (field.lambda0.rank_n, spec.big_rank, "lambda0 rank"),
        (field.lambda0.level, spec.k, "lambda0 level"),
        (field.pi0.half_dim, spec.spin_half_dim, "pi0 half_dim"),
        (field.lambda1.rank_n, spec.m, "lambda1 rank"),
        (field.lambda1.level, spec.first_level, "lambda1 level"),
        (field.lambda2.rank_n, spec.n, "lambda2 rank"),
        (field.lambda2.level, spec.second_level, "lambda2 level"),
        (field.charge.modulus, spec.u1_modulus, "charge modulus"),
    )
    for got, want, what in checks:
        if got != want:
            raise ValueError(f"{what} mismatch for {spec}: expected {want}, got {got}")


def _spin_parity(pi0: SpinLabel) -> int:
    """1 for the two spinor sectors, 0 for vacuum and vector."""
    return 1 if pi0.kind in ("spinor", "cospinor") else 0


def passes_selection_rules(field: CosetField, spec: CosetSpec) -> bool:
    """Whether the quintuple is an allowed field of the coset.

    Two congruences tie the torus charge to the box counts, with an extra
    half-period offset when the fermion sector is a spinor:

        q + m r0 - (m+n) r1 - eps mn(m+n)/2 == 0  (mod m(m+n))
        q - n r0 + (m+n) r2 - eps mn(m+n)/2 == 0  (mod n(m+n))
    """
    validate_field(field, spec)
    m, n = spec.m, spec.n
    big = m + n
    eps = _spin_parity(field.pi0)
    twice_half = n * m * big
    if twice_half % 2:
        raise ArithmeticError(f"mn(m+n) = {twice_half} is odd; spec is inconsistent")
    half = twice_half // 2
    r0 = box_count(field.lambda0)
    r1 = box_count(field.lambda1)
    r2 = box_count(field.lambda2)
    q = field.charge.value
    return (q + m * r0 - big * r1 - eps * half) % (m * big) == 0 and (
        q - n * r0 + big * r2 - eps * half
    ) % (n * big) == 0


def passes_selection_rules_su(
    lambda0: AffineWeight,
    lambda1: AffineWeight,
    lambda2: AffineWeight,
    charge: U1Charge,
    spec: CosetSpec,
) -> bool:
    """Selection rules for the fermion-free subcoset of su(m+n) level k.

    Here all three su labels carry level k and the torus modulus is
    mnk(m+n); the congruences are the same as the full rules with the
    spinor offset absent.
    """
    m, n, k = spec.m, spec.n, spec.k
    big = m + n
    expect = (
        (lambda0.rank_n, big, "lambda0 rank"),
        (lambda0.level, k, "lambda0 level"),
        (lambda1.rank_n, m, "lambda1 rank"),
        (lambda1.level, k, "lambda1 level"),
        (lambda2.rank_n, n, "lambda2 rank"),
        (lambda2.level, k, "lambda2 level"),
        (charge.modulus, m * n * k * big, "charge modulus"),
    )
    for got, want, what in expect:
        if got != want:
            raise ValueError(f"{what} mismatch: expected {want}, got {got}")
    r0 = box_count(lambda0)
    r1 = box_count(lambda1)
    r2 = box_count(lambda2)
    q = charge.value
    return (q + m * r0 - big * r1) % (m * big) == 0 and (
        q - n * r0 + big * r2
    ) % (n * big) == 0


def candidate_count(spec: CosetSpec) -> int:
    """Number of label quintuples the enumeration must scan."""
    n_big = math.comb(spec.big_rank + spec.k - 1, spec.big_rank - 1)
    n_m = math.comb(spec.m + spec.first_level - 1, spec.m - 1)
    n_n = math.comb(spec.n + spec.second_level - 1, spec.n - 1)
    return n_big * 4 * n_m * n_n * spec.u1_modulus


@lru_cache(maxsize=None)
def _enumerate_fields_cached(spec: CosetSpec) -> tuple[CosetField, ...]:
    m, n = spec.m, spec.n
    big = m + n
    mod1, mod2 = m * big, n * big
    half = n * m * big // 2
    modulus = spec.u1_modulus
    out = []
    for lam0 in dominant_weights(big, spec.k):
        r0 = box_count(lam0)
        for kind in ("vacuum", "vector", "spinor", "cospinor"):
            pi0 = SpinLabel(spec.spin_half_dim, kind)
            eps = _spin_parity(pi0)
            for lam1 in dominant_weights(m, spec.first_level):
                res1 = (-m * r0 + big * box_count(lam1) + eps * half) % mod1
                for lam2 in dominant_weights(n, spec.second_level):
                    res2 = (n * r0 - big * box_count(lam2) + eps * half) % mod2
                    for q in range(res1, modulus, mod1):
                        if q % mod2 == res2:
                            out.append(
                                CosetField(lam0, pi0, lam1, lam2, U1Charge(modulus, q))
                            )
    return tuple(out)


def enumerate_fields(
    spec: CosetSpec, budget: int = DEFAULT_BUDGET
) -> tuple[CosetField, ...]:
    """All allowed fields of the coset, in lexicographic label order.

    Scans every candidate quintuple and keeps those passing the selection
    rules, so the candidate count is checked against ``budget`` first.
    """
    count = candidate_count(spec)
    if count > budget:
        raise BudgetExceededError(
            f"enumerating {spec} needs {count} candidate fields, over the "
            f"budget of {budget}; raise the budget to proceed"
        )
    return _enumerate_fields_cached(spec)


def _vp_image(spec: CosetSpec, j: int, i: int) -> CosetField:
    m, n, k = spec.m, spec.n, spec.k
    return CosetField(
        rotate_su(vacuum_su(m + n, k), j + i),
        rotate_spin(vacuum_spin(m * n), j * n + i * m),
        rotate_su(vacuum_su(m, n + k), j),
        rotate_su(vacuum_su(n, m + k), i),
        U1Charge(spec.u1_modulus, (n * j - m * i) * (m + n + k)),
    )


@dataclass(frozen=True)
class VacuumPairGroup:
    """The abelian group of identification currents of one coset.

    Elements are images of exponent pairs (j, i); the group law adds
    exponents.  Every element fixes the allowed-field set and preserves
    the coset conformal weight mod 1.
    """

    spec: CosetSpec
    elements: tuple[VacuumPair, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> VacuumPair:
        return self.elements[0]

    def _by_image(self) -> dict[CosetField, VacuumPair]:
        if "_image_map" not in self.__dict__:
            object.__setattr__(
                self, "_image_map", {w.image: w for w in self.elements}
            )
        return self.__dict__["_image_map"]

    def canonical(self, j: int, i: int) -> VacuumPair:
        """The group element whose image equals that of exponents (j, i)."""
        return self._by_image()[_vp_image(self.spec, j, i)]

    def compose(self, w: VacuumPair, v: VacuumPair) -> VacuumPair:
        return self.canonical(w.j + v.j, w.i + v.i)

    def inverse(self, w: VacuumPair) -> VacuumPair:
        return self.canonical(-w.j, -w.i)

    def act(self, w: VacuumPair, field: CosetField) -> CosetField:
        return vp_act(w, field, self.spec)


@lru_cache(maxsize=None)
def vp_group(spec: CosetSpec) -> VacuumPairGroup:
    """Build the identification group by scanning one period of exponents.

    Exponents (j, i) range over a box of side L = lcm(2, m(m+n), n(m+n)),
    which every component order divides, and pairs with equal images are
    merged.  The identity (image of (0, 0)) always comes first.
    """
    m, n = spec.m, spec.n
    big = m + n
    period = math.lcm(2, m * big, n * big)
    seen: dict[CosetField, VacuumPair] = {}
    for j in range(period):
        for i in range(period):
            image = _vp_image(spec, j, i)
            if image not in seen:
                seen[image] = VacuumPair(j, i, image)
    elements = tuple(sorted(seen.values(), key=lambda w: (w.j, w.i)))
    group = VacuumPairGroup(spec, elements)
    for w in elements:
        if not passes_selection_rules(w.image, spec):
            raise AssertionError(f"identification current {w} fails selection rules")
    return group


def vp_act(w: VacuumPair, field: CosetField, spec: CosetSpec) -> CosetField:
    """Apply an identification current to a field, componentwise."""
    m, n = spec.m, spec.n
    return CosetField(
        rotate_su(field.lambda0, w.j + w.i),
        rotate_spin(field.pi0, w.j * n + w.i * m),
        rotate_su(field.lambda1, w.j),
        rotate_su(field.lambda2, w.i),
        field.charge.shifted(w.image.charge.value),
    )


def stabilizer_order(field: CosetField, spec: CosetSpec) -> int:
    """Order of the subgroup of identification currents fixing the field."""
    validate_field(field, spec)
    group = vp_group(spec)
    return sum(1 for w in group.elements if vp_act(w, field, spec) == field)


@lru_cache(maxsize=None)
def _factor_smatrices(spec: CosetSpec):
    s_big = s_matrix_su(spec.big_rank, spec.k)
    s_f = s_matrix_spin(spec.spin_half_dim)
    s_one = s_matrix_su(spec.m, spec.first_level)
    s_two = s_matrix_su(spec.n, spec.second_level)
    s_tor = s_matrix_u1(spec.u1_modulus)
    idx_big = {w: p for p, w in enumerate(dominant_weights(spec.big_rank, spec.k))}
    idx_one = {w: p for p, w in enumerate(dominant_weights(spec.m, spec.first_level))}
    idx_two = {w: p for p, w in enumerate(dominant_weights(spec.n, spec.second_level))}
    return s_big, s_f, s_one, s_two, s_tor, idx_big, idx_one, idx_two


def branching_weight(field: CosetField, spec: CosetSpec) -> float:
    """Vacuum-module pairing of an allowed field, by its current-group sum.

    Sums, over the identification group, the product of numerator S-matrix
    entries against the conjugated denominator entries between the field's
    labels and the image labels of each current.  Real and positive on
    allowed fields.
    """
    validate_field(field, spec)
    if not passes_selection_rules(field, spec):
        raise ValueError(f"field is not allowed by the selection rules: {field}")
    s_big, s_f, s_one, s_two, s_tor, idx_big, idx_one, idx_two = _factor_smatrices(spec)
    total = 0j
    for w in vp_group(spec).elements:
        g = w.image
        numer = (
            s_big.entries[idx_big[field.lambda0], idx_big[g.lambda0]]
            * s_f.entries[field.pi0.index, g.pi0.index]
        )
        denom = (
            s_one.entries[idx_one[field.lambda1], idx_one[g.lambda1]]
            * s_two.entries[idx_two[field.lambda2], idx_two[g.lambda2]]
            * s_tor.entries[field.charge.value, g.charge.value]
        )
        total += numer * denom.conjugate()
    if abs(total.imag) > 1e-9:
        raise ArithmeticError(f"branching weight came out complex: {total}")
    return float(total.real)


@lru_cache(maxsize=None)
def _vacuum_branching_weight(spec: CosetSpec) -> float:
    return branching_weight(vacuum_field(spec), spec)


def stat_dim(field: CosetField, spec: CosetSpec) -> float:
    """Statistical dimension: branching weight over the vacuum's."""
    return branching_weight(field, spec) / _vacuum_branching_weight(spec)


def conformal_weight_mod1(field: CosetField, spec: CosetSpec) -> Fraction:
    """Coset conformal weight mod 1, exact: numerator h minus subalgebra h."""
    validate_field(field, spec)
    h = (
        h_su(field.lambda0)
        + h_spin(field.pi0)
        - h_su(field.lambda1)
        - h_su(field.lambda2)
        - h_u1(field.charge)
    )
    return h % 1


def u1_coset_vacuum_pairs(a: int, b: int) -> tuple[tuple[int, int, int], ...]:
    """Identification currents of the torus coset u1(2a) x u1(2b) / u1(2(a+b)).

    With g = gcd(a, b) there are exactly 2g of them:
    ((a/g) t, (b/g) t, ((a+b)/g) t) for t = 0 .. 2g-1, charges taken modulo
    their factor's modulus.
    """
    if a < 1 or b < 1:
        raise ValueError(f"moduli parameters must be >= 1, got a={a}, b={b}")
    g = math.gcd(a, b)
    return tuple(
        ((a // g) * t % (2 * a), (b // g) * t % (2 * b), ((a + b) // g) * t % (2 * (a + b)))
        for t in range(2 * g)
    )


def u1_coset_allowed(x: int, y: int, z: int, a: int, b: int) -> bool:
    """Selection rule of the torus coset: x + y - z divisible by 2 gcd(a, b)."""
    return (x + y - z) % (2 * math.gcd(a, b)) == 0


def u1_branching_weight(x: int, y: int, z: int, a: int, b: int) -> float:
    """Direct current-group sum of the torus-coset vacuum pairing."""
    if not u1_coset_allowed(x, y, z, a, b):
        raise ValueError(f"({x}, {y}, {z}) is not allowed in the ({a}, {b}) torus coset")
    sa = s_matrix_u1(2 * a).entries
    sb = s_matrix_u1(2 * b).entries
    sc = s_matrix_u1(2 * (a + b)).entries
    total = 0j
    for vx, vy, vz in u1_coset_vacuum_pairs(a, b):
        total += sa[x % (2 * a), vx] * sb[y % (2 * b), vy] * sc[z % (2 * (a + b)), vz].conjugate()
    if abs(total.imag) > 1e-9:
        raise ArithmeticError(f"torus branching weight came out complex: {total}")
    return float(total.real)


@dataclass(frozen=True)
class SpectrumRow:
    """One identification orbit of the resolved spectrum.

    ``dimension`` is the statistical dimension of the whole orbit class;
    each of the ``stabilizer_order`` resolved sectors carries an equal
    share ``dimension / stabilizer_order`` at conformal weight ``h_mod1``.
    """

    representative: CosetField
    orbit_size: int
    stabilizer_order: int
    dimension: float
    h_mod1: Fraction


@dataclass(frozen=True)
class ResolvedSpectrum:
    """Spectrum of one coset after identification and fixed-point splitting."""

    spec: CosetSpec
    rows: tuple[SpectrumRow, ...]
    field_count: int
    vp_group_order: int

    @property
    def irrep_count(self) -> int:
        return sum(row.stabilizer_order for row in self.rows)

    @property
    def central_charge(self) -> Fraction:
        return central_charge(self.spec)


def _field_key(field: CosetField):
    return (
        field.lambda0.labels,
        field.pi0.index,
        field.lambda1.labels,
        field.lambda2.labels,
        field.charge.value,
    )


def resolve_spectrum(spec: CosetSpec, budget: int = DEFAULT_BUDGET) -> ResolvedSpectrum:
    """Enumerate, identify, and split the full primary spectrum.

    Fields are grouped into orbits of the identification group; each orbit
    contributes one row whose stabilizer order says how many irreducible
    sectors it resolves into.  Orbit size times stabilizer order must equal
    the group order, and the conformal weight mod 1 must be constant along
    the orbit; both are asserted.  Rows are sorted by (h, dimension, label).
    """
    fields = enumerate_fields(spec, budget)
    group = vp_group(spec)
    rows = []
    visited: set[CosetField] = set()
    allowed = set(fields)
    for field in fields:
        if field in visited:
            continue
        orbit: set[CosetField] = set()
        stab = 0
        for w in group.elements:
            g = vp_act(w, field, spec)
            orbit.add(g)
            if g == field:
                stab += 1
        if not orbit <= allowed:
            raise AssertionError(f"identification left the allowed set at {field}")
        if stab * len(orbit) != group.order:
            raise AssertionError(
                f"orbit-stabilizer mismatch at {field}: "
                f"{stab} * {len(orbit)} != {group.order}"
            )
        h = conformal_weight_mod1(field, spec)
        for g in orbit:
            if conformal_weight_mod1(g, spec) != h:
                raise AssertionError(f"conformal weight varies along the orbit of {field}")
        visited |= orbit
        rows.append(
            SpectrumRow(
                representative=min(orbit, key=_field_key),
                orbit_size=len(orbit),
                stabilizer_order=stab,
                dimension=stat_dim(field, spec),
                h_mod1=h,
            )
        )
    rows.sort(key=lambda r: (r.h_mod1, r.dimension, _field_key(r.representative)))
    return ResolvedSpectrum(
        spec=spec,
        rows=tuple(rows),
        field_count=len(fields),
        vp_group_order=group.order,
    )
