"""Label bookkeeping for the chiral factors of a Grassmannian coset.

Three kinds of label appear: dominant weights of su(N) at level k (tuples of
Dynkin labels), the four sectors of so(2L) at level 1, and charges of a
rational torus boson.  This module enumerates them and implements the outer
symmetries used for field identification: the rotation of extended Dynkin
labels on su factors, and the order-two shift on spin factors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "AffineWeight",
    "SpinLabel",
    "U1Charge",
    "SPIN_KINDS",
    "dominant_weights",
    "vacuum_su",
    "vacuum_spin",
    "vacuum_charge",
    "box_count",
    "partition_rows",
    "rotate_su",
    "rotate_spin",
    "conjugate_su",
]

# Sector names of so(2L) level 1, in the fixed index order used by every
# S-matrix and enumeration in this package.
SPIN_KINDS = ("vacuum", "vector", "spinor", "cospinor")


@dataclass(frozen=True)
class AffineWeight:
    """Dominant weight of su(rank_n) at the given level.

    ``labels`` holds the Dynkin labels (a_1, ..., a_{N-1}); the affine label
    a_0 = level - sum(labels) is implicit and must be non-negative.  su(1)
    has an empty label tuple and a single weight per level.
    """

    rank_n: int
    level: int
    labels: tuple[int, ...]

    def __post_init__(self):
        if self.rank_n < 1:
            raise ValueError(f"rank_n must be >= 1, got {self.rank_n}")
        if self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")
        if len(self.labels) != self.rank_n - 1:
            raise ValueError(
                f"expected {self.rank_n - 1} Dynkin labels for su({self.rank_n}), "
                f"got {len(self.labels)}"
            )
        if any(a < 0 for a in self.labels):
            raise ValueError(f"Dynkin labels must be non-negative: {self.labels}")
        if sum(self.labels) > self.level:
            raise ValueError(
                f"labels {self.labels} exceed level {self.level} for su({self.rank_n})"
            )

    @property
    def affine_label(self) -> int:
        """The implicit zeroth label, level - sum(labels)."""
        return self.level - sum(self.labels)


@dataclass(frozen=True)
class SpinLabel:
    """One of the four level-1 sectors of so(2 * half_dim)."""

    half_dim: int
    kind: str

    def __post_init__(self):
        if self.half_dim < 1:
            raise ValueError(f"half_dim must be >= 1, got {self.half_dim}")
        if self.kind not in SPIN_KINDS:
            raise ValueError(f"kind must be one of {SPIN_KINDS}, got {self.kind!r}")

    @property
    def index(self) -> int:
        return SPIN_KINDS.index(self.kind)


@dataclass(frozen=True)
class U1Charge:
    """Charge of the rational torus boson with the given modulus.

    The stored value is always reduced into [0, modulus).
    """

    modulus: int
    value: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def shifted(self, delta: int) -> "U1Charge":
        return U1Charge(self.modulus, self.value + delta)


@lru_cache(maxsize=None)
def dominant_weights(rank_n: int, level: int) -> tuple[AffineWeight, ...]:
    """All dominant weights of su(rank_n) at the given level.

    Returned in lexicographic order of the label tuple, so the vacuum
    (all zeros) comes first.  The count is binomial(rank_n + level - 1,
    rank_n - 1).
    """
    if rank_n < 1:
        raise ValueError(f"rank_n must be >= 1, got {rank_n}")
    if level < 0:
        raise ValueError(f"level must be >= 0, got {level}")
    out = []
    for labels in itertools.product(range(level + 1), repeat=rank_n - 1):
        if sum(labels) <= level:
            out.append(AffineWeight(rank_n, level, labels))
    return tuple(out)


def vacuum_su(rank_n: int, level: int) -> AffineWeight:
    return AffineWeight(rank_n, level, (0,) * (rank_n - 1))


def vacuum_spin(half_dim: int) -> SpinLabel:
    return SpinLabel(half_dim, "vacuum")


def vacuum_charge(modulus: int) -> U1Charge:
    return U1Charge(modulus, 0)


def box_count(weight: AffineWeight) -> int:
    """Number of boxes of the Young diagram attached to the weight.

    Equals sum over j of j * a_j; congruences in this count drive both the
    selection rules and the behaviour of the label rotation.
    """
    return sum(j * a for j, a in enumerate(weight.labels, start=1))


def partition_rows(weight: AffineWeight) -> tuple[int, ...]:
    """Row lengths (lambda_1 >= ... >= lambda_N = 0) of the Young diagram."""
    rows = []
    tail = 0
    for a in reversed(weight.labels):
        tail += a
        rows.append(tail)
    rows.reverse()
    rows.append(0)
    return tuple(rows)


def rotate_su(weight: AffineWeight, power: int = 1) -> AffineWeight:
    """Rotate the extended Dynkin labels of an su weight.

    One application sends the vacuum to level * Lambda_1: the label at
    position i of the image is the label at position i-1 of the argument,
    indices mod N with position 0 the affine label.  Applying it N times is
    the identity, and the box count grows by the level mod N per step.
    """
    n = weight.rank_n
    ext = (weight.affine_label,) + weight.labels
    shift = power % n
    rotated = tuple(ext[(i - shift) % n] for i in range(n))
    return AffineWeight(n, weight.level, rotated[1:])


def rotate_spin(label: SpinLabel, power: int = 1) -> SpinLabel:
    """Apply the order-two shift of so(2L) level 1 ``power`` times.

    The odd power exchanges vacuum with vector and spinor with cospinor.
    """
    if power % 2 == 0:
        return label
    swap = {"vacuum": "vector", "vector": "vacuum",
            "spinor": "cospinor", "cospinor": "spinor"}
    return SpinLabel(label.half_dim, swap[label.kind])


def conjugate_su(weight: AffineWeight) -> AffineWeight:
    """Charge conjugation: reverse the Dynkin labels.  An involution."""
    return AffineWeight(weight.rank_n, weight.level, weight.labels[::-1])
