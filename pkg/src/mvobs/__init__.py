"""Observables, spectral resolutions and their sum on finite MV-effect algebras."""

from .calculus import (
    OrderRelation,
    is_sharp_observable,
    multiple,
    obs_join,
    obs_meet,
    obs_sum,
    olson_compare,
    olson_leq,
    oracle_grid,
    sharp_inverse,
    sharpness_report,
    strong_unit_bound,
    sum_oracle,
    sum_probes,
    unit_question,
)
from .effect import (
    AlgebraProperties,
    ChainProduct,
    EffectAlgebra,
    TableAlgebra,
    boolean_algebra,
    check_properties,
    diamond,
    make_chain,
    make_product,
    make_table,
    mo2,
)
from .errors import AxiomError, DistributivityRequired, ObservableError, ResolutionError
from .observable import (
    Observable,
    compose,
    make_discrete,
    negate,
    neutral,
    one_minus,
    point_mass,
    question,
    scale,
)
from .spectral import SpectralResolution, eval_resolution, make_resolution, observable_of, resolution_of

__version__ = "0.1.0"
