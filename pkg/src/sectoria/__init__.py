"""Weighted means of sector matrices and numerical certification of their
Kantorovich-type reverse inequalities."""

from .certificate import Certificate
from .checker import (
    check_bakherad_equivalence,
    check_bhatia_kittaneh,
    check_det_corollary,
    check_det_proposition,
    check_det_weighted_note,
    check_hm_gm_am_psd,
    check_kantorovich_reverse_psd,
    check_lemma_suite,
    check_norm_corollary,
    check_norm_proposition,
    check_sv_corollary,
    check_tan_xie,
    check_theorem_reverse,
)
from .constants import BoundContext, bound_factor, kantorovich, spectral_bounds
from .ensembles import (
    EnsembleSpec,
    random_accretive_dissipative,
    random_psd,
    random_sector,
    random_unitary,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    NotAccretiveError,
    NotPSDError,
    NotSectorError,
    SectoriaError,
    SingularMatrixError,
)
from .maps import MapSpec, apply, check_choi
from .matrix_core import (
    cartesian_decompose,
    hermitian_eig,
    log_abs_det,
    loewner_leq,
    psd_power,
    singular_values,
    unitarily_invariant_norm,
)
from .means import (
    MeanResult,
    arithmetic_mean,
    geometric_mean_accretive,
    geometric_mean_psd,
    harmonic_mean,
)
from .sector import (
    SectorProfile,
    is_sector,
    numerical_range_boundary,
    sector_angle,
    sector_profile,
)

__version__ = "0.1.0"
