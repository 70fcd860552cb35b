"""Balanced locally repairable codes from partial geometries.

The package builds binary codes whose parity checks are the lines of a
partial geometry, measures their local-repair behavior exactly, and
tabulates the rate bounds that govern which (repair degree,
alternativity) pairs are worth deploying.

Typical use:

    >>> import pgblrc
    >>> code = pgblrc.build_code(pgblrc.grid(2))
    >>> profile = pgblrc.repair_profile(code, mode="exhaustive")
    >>> (profile.r, profile.a, profile.delta, profile.balanced)
    (2, 2, 2, True)
"""

from .algebra import (
    BitMatrix,
    SUPPORTED_FIELD_ORDERS,
    SmallField,
    independent_row_indices,
    nullspace2,
    rank2,
    rref2,
    small_field,
    solve2,
)
from .bounds import (
    CatalogEntry,
    ESTIMATORS,
    GRID_FAMILY_KEY,
    RateBounds,
    bounds_table,
    bounds_table_csv,
    catalog,
    known_gq_parameters,
    rank_bounds,
    rate_lower,
    rate_lower_general,
    rate_upper,
    rate_upper_general,
    surviving_keys,
    vartheta,
)
from .code import (
    BlrcCode,
    DEFAULT_MDS_GUARD,
    build_code,
    encode,
    export_code,
    footprint,
    is_mds,
    rate,
    reconstruct,
)
from .errors import (
    DegenerateCodeError,
    GuardExceededError,
    IncidenceFileError,
    NotInformationSetError,
    NotLocallyRepairableError,
    PgValidationError,
)
from .geometry import (
    CLASS_GQ,
    CLASS_NET,
    CLASS_PROPER,
    CLASS_STEINER,
    IncidenceStructure,
    PgParams,
    dual,
    elliptic_quadric_gq,
    from_text,
    grid,
    hyperoval_gq,
    incidence_matrix,
    load,
    save,
    symplectic_gq,
    to_text,
    validate_pg,
)
from .repair import (
    AVAILABILITY_MODELS,
    AvailabilityReport,
    DEFAULT_SEARCH_GUARD,
    RepairOutcome,
    RepairProfile,
    RepairVector,
    alternativity,
    blocking_set,
    is_balanced,
    line_repair_sets,
    minimum_hitting_set,
    omega_r,
    overall_alternativity,
    overall_repair_degree,
    overall_tolerance,
    repair_degree,
    repair_profile,
    repair_symbol,
    simulate_availability,
    tolerance,
)

__version__ = "0.1.0"

__all__ = [
    "AVAILABILITY_MODELS",
    "AvailabilityReport",
    "BitMatrix",
    "BlrcCode",
    "CLASS_GQ",
    "CLASS_NET",
    "CLASS_PROPER",
    "CLASS_STEINER",
    "CatalogEntry",
    "DEFAULT_MDS_GUARD",
    "DEFAULT_SEARCH_GUARD",
    "DegenerateCodeError",
    "ESTIMATORS",
    "GRID_FAMILY_KEY",
    "GuardExceededError",
    "IncidenceFileError",
    "IncidenceStructure",
    "NotInformationSetError",
    "NotLocallyRepairableError",
    "PgParams",
    "PgValidationError",
    "RateBounds",
    "RepairOutcome",
    "RepairProfile",
    "RepairVector",
    "SUPPORTED_FIELD_ORDERS",
    "SmallField",
    "alternativity",
    "blocking_set",
    "bounds_table",
    "bounds_table_csv",
    "build_code",
    "catalog",
    "dual",
    "elliptic_quadric_gq",
    "encode",
    "export_code",
    "footprint",
    "from_text",
    "grid",
    "hyperoval_gq",
    "incidence_matrix",
    "independent_row_indices",
    "is_balanced",
    "is_mds",
    "known_gq_parameters",
    "line_repair_sets",
    "load",
    "minimum_hitting_set",
    "nullspace2",
    "omega_r",
    "overall_alternativity",
    "overall_repair_degree",
    "overall_tolerance",
    "rank2",
    "rank_bounds",
    "rate",
    "rate_lower",
    "rate_lower_general",
    "rate_upper",
    "rate_upper_general",
    "reconstruct",
    "repair_degree",
    "repair_profile",
    "repair_symbol",
    "rref2",
    "save",
    "simulate_availability",
    "small_field",
    "solve2",
    "surviving_keys",
    "symplectic_gq",
    "to_text",
    "validate_pg",
    "vartheta",
]
