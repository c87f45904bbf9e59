"""Best constants in second-order dilation invariant inequalities on cones.

The library computes, classifies, and independently verifies the best
constant c in

    integral |x|^alpha |Delta u|^2 dx  >=  c  integral |x|^(alpha-2) |grad u|^2 dx

over functions on the cone spanned by a spherical domain, vanishing near
the origin and infinity.  Closed forms and classification live in
:mod:`rellich_cone.params`; eigenvalue data in :mod:`rellich_cone.spectra`;
the change of variables to the cylinder in :mod:`rellich_cone.cylinder`;
discrete per-mode minimization in :mod:`rellich_cone.modes`; direct
x-space quadrature verification in :mod:`rellich_cone.xspace`; and the
command-line interface in :mod:`rellich_cone.cli`.
"""

from .config import Config, load_config, resolve_config
from .corpus import CorpusEntry, load_corpus
from .cylinder import (
    CylinderFunction,
    QuotientResult,
    cylinder_quotient,
    from_cylinder,
    poincare_xi,
    to_cylinder,
    xspace_equivalence_check,
)
from .errors import (
    ConvergenceError,
    DegenerateModeError,
    NoWitnessError,
    RellichConeError,
    SolverError,
    SpectrumError,
)
from .modes import (
    ModeMinimum,
    ModeProblem,
    decompose_and_bound,
    drift_bound_check,
    minimize_mode,
    phi,
    scaled_family_value,
    window_bound_check,
)
from .params import (
    ConstantReport,
    EqualityCertificate,
    Params,
    Regime,
    best_mode_constant,
    breaking_threshold_bound,
    classify,
    critical_constant,
    derive,
    mode_value,
    radial_constant,
)
from .profiles import (
    LineBump,
    RadialBump,
    RadialLogBump,
    SampledLineProfile,
    ScaledLineBump,
)
from .spectra import (
    DomainKind,
    DomainSpec,
    Spectrum,
    arc_spectrum,
    cap_spectrum,
    explicit_spectrum,
    full_sphere_spectrum,
    lambda_min,
    load_spectrum_file,
    spectrum_for,
)
from .xspace import (
    NoWitnessCertificate,
    RadialIdentityResult,
    WitnessResult,
    XTestFunction,
    radial_identity_check,
    symmetry_breaking_witness,
    weighted_integrals,
    weighted_quotient,
)

__version__ = "0.1.0"

__all__ = [
    "Config",
    "load_config",
    "resolve_config",
    "CorpusEntry",
    "load_corpus",
    "CylinderFunction",
    "QuotientResult",
    "cylinder_quotient",
    "from_cylinder",
    "poincare_xi",
    "to_cylinder",
    "xspace_equivalence_check",
    "ConvergenceError",
    "DegenerateModeError",
    "NoWitnessError",
    "RellichConeError",
    "SolverError",
    "SpectrumError",
    "ModeMinimum",
    "ModeProblem",
    "decompose_and_bound",
    "drift_bound_check",
    "minimize_mode",
    "phi",
    "scaled_family_value",
    "window_bound_check",
    "ConstantReport",
    "EqualityCertificate",
    "Params",
    "Regime",
    "best_mode_constant",
    "breaking_threshold_bound",
    "classify",
    "critical_constant",
    "derive",
    "mode_value",
    "radial_constant",
    "LineBump",
    "RadialBump",
    "RadialLogBump",
    "SampledLineProfile",
    "ScaledLineBump",
    "DomainKind",
    "DomainSpec",
    "Spectrum",
    "arc_spectrum",
    "cap_spectrum",
    "explicit_spectrum",
    "full_sphere_spectrum",
    "lambda_min",
    "load_spectrum_file",
    "spectrum_for",
    "NoWitnessCertificate",
    "RadialIdentityResult",
    "WitnessResult",
    "XTestFunction",
    "radial_identity_check",
    "symmetry_breaking_witness",
    "weighted_integrals",
    "weighted_quotient",
]
