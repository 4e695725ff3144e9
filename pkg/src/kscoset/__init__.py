"""Primary-field spectra of Grassmannian cosets.

The coset G(m, n, k) pairs su(m+n) at level k with 2mn free fermions over
su(m) x su(n) x u(1).  This package enumerates its allowed primary fields,
identifies them under the simple-current group, splits fixed points, and
certifies the level-rank duality G(m, n, k) = G(k, n, m) numerically.
"""

from .affine import (
    SPIN_KINDS,
    AffineWeight,
    SpinLabel,
    U1Charge,
    box_count,
    conjugate_su,
    dominant_weights,
    partition_rows,
    rotate_spin,
    rotate_su,
    vacuum_charge,
    vacuum_spin,
    vacuum_su,
)
from .coset import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    CosetField,
    CosetSpec,
    ResolvedSpectrum,
    SpectrumRow,
    VacuumPair,
    VacuumPairGroup,
    branching_weight,
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
from .duality import (
    DIM_TOLERANCE,
    CheckItem,
    DualityReport,
    Fingerprint,
    check_duality,
    compare_fingerprints,
    dual_spec,
    fingerprint,
    fingerprint_of_spectrum,
)
from .modular import (
    SMatrix,
    h_spin,
    h_su,
    h_u1,
    qdim,
    qdim_su,
    s_matrix_spin,
    s_matrix_su,
    s_matrix_u1,
)

__version__ = "0.1.0"
