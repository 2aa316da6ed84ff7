"""Numerical laboratory for a weighted Hartree equation.

Exact rational arithmetic for admissible exponents and theorem windows,
a pseudospectral torus with singularity-aware weighted norms, a free
propagator and Duhamel machinery, Strang/Picard solvers for the nonlinear
flow, counterexample scans at the boundary of the admissible region, and
property-test oracles for the classical inequalities underneath it all.
"""

__version__ = "0.1.0"

from .admissibility import (
    AdmissiblePair,
    EquationParams,
    GammaWindow,
    TheoremReport,
    Verdict,
    check_theorem_below_L2,
    check_theorem_critical_Hs,
    critical_sobolev_index,
    energy_critical_p,
    format_rational,
    gamma_window,
    is_admissible,
    mass_critical_p,
    parse_rational,
    sample_admissible_pairs,
    scaling_exponent,
    sharpness_region_classify,
    verify_hls_exponents,
    verify_weighted_sobolev_exponents,
)
from .grid import Field, Grid, field_from_function, forward, inverse, riesz_convolve
from .norms import Divergent, is_divergent, mixed_LqLr, sobolev_Hs, strichartz_ratio, weighted_Lr
from .propagator import TimeSlab, duhamel_integral, evolve_free, free_snapshots
from .solver import (
    EvolutionResult,
    PicardResult,
    energy_diagnostic,
    evolve,
    mass,
    nonlinearity,
    picard_iterate,
    scaling_invariance_check,
    scattering_diagnostic,
    step_strang,
)
from .sharpness import (
    CarrierScan,
    WeightScan,
    build_annulus_packet,
    build_modulated_packet,
    carrier_growth_scan,
    smooth_bump,
    weight_divergence_scan,
)
from .ineq_lab import (
    Corpus,
    RatioReport,
    SampleSpec,
    hardy_check,
    hls_check,
    kato_yajima_check,
    make_corpus,
    make_pair_corpus,
    weighted_sobolev_check,
)
from .field_io import load_field, save_field

__all__ = [
    "AdmissiblePair",
    "CarrierScan",
    "Corpus",
    "Divergent",
    "EquationParams",
    "EvolutionResult",
    "Field",
    "GammaWindow",
    "Grid",
    "PicardResult",
    "RatioReport",
    "SampleSpec",
    "TheoremReport",
    "TimeSlab",
    "Verdict",
    "WeightScan",
    "__version__",
    "build_annulus_packet",
    "build_modulated_packet",
    "carrier_growth_scan",
    "check_theorem_below_L2",
    "check_theorem_critical_Hs",
    "critical_sobolev_index",
    "duhamel_integral",
    "energy_critical_p",
    "energy_diagnostic",
    "evolve",
    "evolve_free",
    "field_from_function",
    "format_rational",
    "forward",
    "free_snapshots",
    "gamma_window",
    "hardy_check",
    "hls_check",
    "inverse",
    "is_admissible",
    "is_divergent",
    "kato_yajima_check",
    "load_field",
    "make_corpus",
    "make_pair_corpus",
    "mass",
    "mass_critical_p",
    "mixed_LqLr",
    "nonlinearity",
    "parse_rational",
    "picard_iterate",
    "riesz_convolve",
    "sample_admissible_pairs",
    "save_field",
    "scaling_exponent",
    "scaling_invariance_check",
    "scattering_diagnostic",
    "sharpness_region_classify",
    "smooth_bump",
    "sobolev_Hs",
    "step_strang",
    "strichartz_ratio",
    "verify_hls_exponents",
    "verify_weighted_sobolev_exponents",
    "weight_divergence_scan",
    "weighted_Lr",
]
