"""Exact K-stability computations for toric test configurations.

Numbers come back as fractions.Fraction. Configurations are the same dicts
the command-line tool reads from JSON.
"""

from ._kstab import (
    KStabError,
    cm_degree,
    delta,
    df,
    ehrhart,
    embedding_threshold,
    family_threshold,
    fibration_expand,
    j_functional,
    minimum_norm,
    twisted_slope,
    verify_odaka_identity,
    volume,
)

__all__ = [
    "KStabError",
    "cm_degree",
    "delta",
    "df",
    "ehrhart",
    "embedding_threshold",
    "family_threshold",
    "fibration_expand",
    "j_functional",
    "minimum_norm",
    "twisted_slope",
    "verify_odaka_identity",
    "volume",
]
