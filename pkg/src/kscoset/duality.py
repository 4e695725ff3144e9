"""Level-rank duality check between a coset and its (m <-> k) partner.

The spectra of G(m, n, k) and G(k, n, m) match as sets of sectors: same
central charge, same number of irreducible sectors, and the same multiset
of (conformal weight mod 1, statistical dimension) pairs.  The fingerprint
built here captures exactly that data, and the report records the outcome
of each comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coset import (
    DEFAULT_BUDGET,
    CosetSpec,
    ResolvedSpectrum,
    resolve_spectrum,
)

__all__ = [
    "DIM_TOLERANCE",
    "Fingerprint",
    "CheckItem",
    "DualityReport",
    "dual_spec",
    "fingerprint",
    "fingerprint_of_spectrum",
    "compare_fingerprints",
    "check_duality",
]

# Statistical dimensions are compared after rounding to this precision.
DIM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Fingerprint:
    """Duality-invariant summary of one resolved spectrum.

    ``rows`` lists (h mod 1, dimension, multiplicity) with h exact, the
    dimension rounded to DIM_TOLERANCE, and multiplicity counting resolved
    sectors; rows are sorted and each fixed-point orbit contributes its
    stabilizer-order many sectors at the split dimension.
    """

    central_charge: Fraction
    irrep_count: int
    rows: tuple[tuple[Fraction, float, int], ...]


@dataclass(frozen=True)
class CheckItem:
    name: str
    equal: bool
    left: str
    right: str
    detail: str = ""


@dataclass(frozen=True)
class DualityReport:
    left: CosetSpec
    right: CosetSpec
    verdict: str
    checks: tuple[CheckItem, ...]

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def dual_spec(spec: CosetSpec) -> CosetSpec:
    """The level-rank partner: exchange m and k."""
    return CosetSpec(spec.k, spec.n, spec.m)


def fingerprint_of_spectrum(spectrum: ResolvedSpectrum) -> Fingerprint:
    """Collapse a resolved spectrum to its duality-invariant content."""
    counts: dict[tuple[Fraction, float], int] = {}
    for row in spectrum.rows:
        piece = round(row.dimension / row.stabilizer_order, 6)
        key = (row.h_mod1, piece)
        counts[key] = counts.get(key, 0) + row.stabilizer_order
    rows = tuple(sorted((h, d, mult) for (h, d), mult in counts.items()))
    return Fingerprint(
        central_charge=spectrum.central_charge,
        irrep_count=spectrum.irrep_count,
        rows=rows,
    )


def fingerprint(spec: CosetSpec, budget: int = DEFAULT_BUDGET) -> Fingerprint:
    return fingerprint_of_spectrum(resolve_spectrum(spec, budget))


def _rows_match(left, right) -> tuple[bool, str]:
    """Compare fingerprint rows, tolerating DIM_TOLERANCE in dimensions.

    Rows are grouped by exact h; within a group the dimension lists are
    sorted and compared pairwise, multiplicities expanded.
    """
    def by_h(rows):
        groups: dict[Fraction, list[float]] = {}
        for h, d, mult in rows:
            groups.setdefault(h, []).extend([d] * mult)
        return {h: sorted(ds) for h, ds in groups.items()}

    lg, rg = by_h(left), by_h(right)
    if lg.keys() != rg.keys():
        only_l = sorted(lg.keys() - rg.keys())
        only_r = sorted(rg.keys() - lg.keys())
        return False, f"weights only on one side: left {only_l}, right {only_r}"
    for h in sorted(lg):
        ld, rd = lg[h], rg[h]
        if len(ld) != len(rd):
            return False, f"sector count at h={h} differs: {len(ld)} vs {len(rd)}"
        for a, b in zip(ld, rd):
            if abs(a - b) > DIM_TOLERANCE:
                return False, f"dimension mismatch at h={h}: {a} vs {b}"
    return True, "all sectors matched"


def compare_fingerprints(
    left_spec: CosetSpec,
    right_spec: CosetSpec,
    left: Fingerprint,
    right: Fingerprint,
) -> DualityReport:
    checks = [
        CheckItem(
            "central_charge",
            left.central_charge == right.central_charge,
            str(left.central_charge),
            str(right.central_charge),
        ),
        CheckItem(
            "irrep_count",
            left.irrep_count == right.irrep_count,
            str(left.irrep_count),
            str(right.irrep_count),
        ),
    ]
    rows_equal, detail = _rows_match(left.rows, right.rows)
    checks.append(
        CheckItem(
            "spectrum_rows",
            rows_equal,
            str(len(left.rows)),
            str(len(right.rows)),
            detail,
        )
    )
    verdict = "PASS" if all(c.equal for c in checks) else "FAIL"
    return DualityReport(left_spec, right_spec, verdict, tuple(checks))


def check_duality(spec: CosetSpec, budget: int = DEFAULT_BUDGET) -> DualityReport:
    """Resolve both partners and compare their fingerprints."""
    other = dual_spec(spec)
    return compare_fingerprints(
        spec, other, fingerprint(spec, budget), fingerprint(other, budget)
    )
