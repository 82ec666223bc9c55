"""sidonlab: Sidon sets, additive bases of order 3, and deletion-method audits.

The package is organized around one pipeline and its supporting machinery:

* exact constructions of Sidon sets over Z_N (``sidoncore``),
* the elliptic-curve counting identity behind 3-term representations in the
  Ruzsa group and the quadric behind 3-term decompositions over Z_N
  (``curveoracle``, ``decomposer``),
* the random sequence model, lifting processes and obstruction families used
  by the deletion method (``randommodel``, ``deletionlab``, ``sunflower``),
* exact and Monte Carlo evaluation of the relevant expected values
  (``analysis``),
* a thin command line front door (``cli``).

All engines are deterministic: counting is exact integer arithmetic, sampling
is counter-based from an explicit seed, and float work is plain IEEE double.
"""

from .analysis import (
    NonConvergent,
    RatioReport,
    SumSpec,
    TauResult,
    check_lemma_ab,
    check_lemma_abab,
    exact_delta_Q,
    exact_expectation_Q,
    gamma_from_epsilon,
    get_pin,
    janson_threshold,
    load_pins,
    monte_carlo_family_mean,
    sigma,
    tau,
)
from .curveoracle import (
    CurveParams,
    QuadricParams,
    TorusCloud,
    curve_point_count,
    dyadic_box_coverage,
    enumerate_quadric,
    hasse_gap,
    hasse_slack,
    repeated_coordinate_count,
    special_rep4_count,
    torus_points,
    triple_rep_count,
    triple_rep_table,
)
from .decomposer import (
    Decomposition,
    LiftTarget,
    NoRepresentation,
    decompose3_ruzsa,
    decompose3_zn,
    decompose4_ruzsa,
    lift_to_interval,
)
from .deletionlab import (
    AuditResult,
    FamilySpec,
    UnsupportedKind,
    VectorFamily,
    b2_2_lift,
    b22_removals,
    destruction_audit,
    enumerate_family,
    find_kdsv,
    sidon_lift,
    sidon_removals,
)
from .numbertheory import (
    NotGenerator,
    NotPrime,
    PrimeNotFound,
    RangeError,
    crt_flatten,
    find_decomposition_prime,
    is_prime,
    primitive_root,
)
from .randommodel import (
    IntSeq,
    SampleConfig,
    contains,
    count_variance,
    expected_count,
    inclusion_probability,
    sample_sequence,
)
from .sidoncore import (
    EngineUnavailable,
    ModSet,
    NotOddPrime,
    RepProfile,
    SidonWitness,
    b2g_bound,
    basis_order_check,
    convolution_profile_array,
    erdos_turan_set,
    is_sidon,
    rep_profile,
    ruzsa_set,
)
from .sunflower import (
    SunflowerCert,
    find_classical_sunflower,
    find_vectorial_sunflower,
    is_vectorial_sunflower,
    set_h_embed,
)

__version__ = "0.1.0"

__all__ = [
    "NotPrime",
    "NotGenerator",
    "PrimeNotFound",
    "RangeError",
    "NotOddPrime",
    "EngineUnavailable",
    "NoRepresentation",
    "UnsupportedKind",
    "NonConvergent",
    "ModSet",
    "RepProfile",
    "SidonWitness",
    "CurveParams",
    "QuadricParams",
    "TorusCloud",
    "Decomposition",
    "LiftTarget",
    "SampleConfig",
    "IntSeq",
    "FamilySpec",
    "VectorFamily",
    "AuditResult",
    "SunflowerCert",
    "SumSpec",
    "TauResult",
    "RatioReport",
    "is_prime",
    "primitive_root",
    "crt_flatten",
    "find_decomposition_prime",
    "erdos_turan_set",
    "ruzsa_set",
    "is_sidon",
    "b2g_bound",
    "rep_profile",
    "convolution_profile_array",
    "basis_order_check",
    "curve_point_count",
    "hasse_gap",
    "hasse_slack",
    "triple_rep_count",
    "triple_rep_table",
    "repeated_coordinate_count",
    "special_rep4_count",
    "enumerate_quadric",
    "torus_points",
    "dyadic_box_coverage",
    "decompose3_ruzsa",
    "decompose4_ruzsa",
    "decompose3_zn",
    "lift_to_interval",
    "inclusion_probability",
    "contains",
    "sample_sequence",
    "expected_count",
    "count_variance",
    "enumerate_family",
    "sidon_removals",
    "b22_removals",
    "sidon_lift",
    "b2_2_lift",
    "destruction_audit",
    "find_kdsv",
    "find_classical_sunflower",
    "find_vectorial_sunflower",
    "is_vectorial_sunflower",
    "set_h_embed",
    "sigma",
    "tau",
    "check_lemma_ab",
    "check_lemma_abab",
    "gamma_from_epsilon",
    "exact_expectation_Q",
    "exact_delta_Q",
    "janson_threshold",
    "monte_carlo_family_mean",
    "load_pins",
    "get_pin",
    "__version__",
]
