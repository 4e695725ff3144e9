"""Modular data of the chiral factors: conformal weights, S matrices, qdims.

Conformal weights are exact rationals throughout (``fractions.Fraction``);
S matrices are dense complex arrays built from closed-form expressions.  The
su family uses the Weyl-determinant form of the unitary S matrix; so(2L)
level 1 and the rational torus have explicit 4x4 and N x N formulas.

Row/column order of every S matrix follows the enumeration order of the
corresponding label module: ``dominant_weights`` for su, ``SPIN_KINDS`` for
spin, charges 0..N-1 for the torus.  Index 0 is always the vacuum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .affine import (
    SPIN_KINDS,
    AffineWeight,
    SpinLabel,
    U1Charge,
    dominant_weights,
    partition_rows,
)

__all__ = [
    "SMatrix",
    "h_su",
    "h_u1",
    "h_spin",
    "s_matrix_su",
    "s_matrix_u1",
    "s_matrix_spin",
    "qdim",
    "qdim_su",
]

# i**r without the phase noise of complex exponentiation.
_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


@dataclass(frozen=True)
class SMatrix:
    """Unitary, symmetric modular S matrix of one chiral factor.

    ``entries`` is a read-only complex square array whose first row (the
    vacuum row) is real; for the su and spin factors it is also positive.
    """

    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def unitarity_residual(self) -> float:
        s = self.entries
        return float(np.abs(s @ s.conj().T - np.eye(self.dimension)).max())

    def symmetry_residual(self) -> float:
        return float(np.abs(self.entries - self.entries.T).max())


def h_su(weight: AffineWeight) -> Fraction:
    """Conformal weight of an su primary, exact.

    Casimir over 2(N + k) in partition coordinates: with r the box count and
    lambda_i the row lengths,

        h = [N * (sum lambda_i^2 + 2 sum lambda_i (N - i) - r(N - 1)) - r^2]
            / [2 N (N + k)].
    """
    n = weight.rank_n
    if n == 1:
        return Fraction(0)
    rows = partition_rows(weight)
    r = sum(rows)
    quad = sum(x * x for x in rows)
    lin = sum(x * (n - i) for i, x in enumerate(rows, start=1))
    num = n * (quad + 2 * lin - r * (n - 1)) - r * r
    return Fraction(num, 2 * n * (n + weight.level))


def h_u1(charge: U1Charge) -> Fraction:
    """Conformal weight of a torus primary, exact.

    Uses the representative of the charge closest to zero (ties resolved
    upward), so this is the true lowest weight of the module:
    h = x^2 / (2N) with x in (-N/2, N/2].
    """
    n = charge.modulus
    x = charge.value % n
    if 2 * x > n:
        x -= n
    return Fraction(x * x, 2 * n)


def h_spin(label: SpinLabel) -> Fraction:
    """Conformal weight of an so(2L) level-1 sector, exact."""
    if label.kind == "vacuum":
        return Fraction(0)
    if label.kind == "vector":
        return Fraction(1, 2)
    return Fraction(label.half_dim, 8)


def _partition_shifted(weight: AffineWeight) -> tuple[int, ...]:
    """Strictly decreasing shifted rows l_i = lambda_i + N - i."""
    n = weight.rank_n
    rows = partition_rows(weight)
    return tuple(rows[i] + n - 1 - i for i in range(n))


@lru_cache(maxsize=None)
def s_matrix_su(rank_n: int, level: int) -> SMatrix:
    """Modular S matrix of su(rank_n) at the given level.

    Determinant form: with n = N + k, l the shifted rows and c = mean(l),

        S[a, b] = i^{N(N-1)/2} (N n^{N-1})^{-1/2}
                  * exp(2 pi i N c_a c_b / n)
                  * det[ exp(-2 pi i l_a[p] l_b[q] / n) ]_{p,q}.
    """
    weights = dominant_weights(rank_n, level)
    if rank_n == 1:
        return SMatrix(np.ones((1, 1), dtype=complex))
    n = rank_n + level
    ell = np.array([_partition_shifted(w) for w in weights], dtype=float)
    c = ell.sum(axis=1) / rank_n
    pref = _I_POW[(rank_n * (rank_n - 1) // 2) % 4] / math.sqrt(
        rank_n * n ** (rank_n - 1)
    )
    cross = np.einsum("ap,bq->abpq", ell, ell)
    dets = np.linalg.det(np.exp(-2j * np.pi * cross / n))
    phase = np.exp(2j * np.pi * rank_n * np.outer(c, c) / n)
    return SMatrix(pref * phase * dets)


@lru_cache(maxsize=None)
def s_matrix_u1(modulus: int) -> SMatrix:
    """Modular S matrix of the rational torus: S[x, y] = e^{-2 pi i xy/N} / sqrt(N)."""
    n = modulus
    x = np.arange(n)
    return SMatrix(np.exp(-2j * np.pi * np.outer(x, x) / n) / math.sqrt(n))


@lru_cache(maxsize=None)
def s_matrix_spin(half_dim: int) -> SMatrix:
    """Modular S matrix of so(2L) level 1 in the order of SPIN_KINDS.

    The spinor block carries sigma = i^{-L}: real for even L, imaginary for
    odd L (where the two spinor sectors are each other's conjugates).
    """
    sigma = _I_POW[(-half_dim) % 4]
    s = 0.5 * np.array(
        [
            [1, 1, 1, 1],
            [1, 1, -1, -1],
            [1, -1, sigma, -sigma],
            [1, -1, -sigma, sigma],
        ],
        dtype=complex,
    )
    return SMatrix(s)


def qdim(s: SMatrix, index: int) -> float:
    """Statistical dimension of the primary at ``index``: S[0, i] / S[0, 0].

    The ratio must come out real; a residual imaginary part above 1e-9
    raises, since that signals a broken S matrix rather than roundoff.
    """
    if not 0 <= index < s.dimension:
        raise IndexError(f"index {index} out of range for dimension {s.dimension}")
    ratio = s.entries[0, index] / s.entries[0, 0]
    if abs(ratio.imag) > 1e-9:
        raise ArithmeticError(f"qdim at index {index} is not real: {ratio}")
    return float(ratio.real)


def qdim_su(weight: AffineWeight) -> float:
    """Quantum dimension of an su primary by the sine product over root pairs.

    Independent of the S matrix: product over i < j of
    sin(pi (l_i - l_j) / n) / sin(pi (j - i) / n) with n = N + k.
    """
    n = weight.rank_n + weight.level
    ell = _partition_shifted(weight)
    out = 1.0
    for i in range(weight.rank_n):
        for j in range(i + 1, weight.rank_n):
            out *= math.sin(math.pi * (ell[i] - ell[j]) / n) / math.sin(
                math.pi * (j - i) / n
            )
    return out


def _spin_index(label: SpinLabel) -> int:
    return SPIN_KINDS.index(label.kind)
