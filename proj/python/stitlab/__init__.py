"""Simulation and analytics for STIT tessellations."""

from ._core import (
    StitlabError,
    Tessellation,
    from_json,
    last_birth_cdf,
    mean_internal_vertices,
    mecke,
    p1j,
    palm_samples,
    simulate,
    verify,
)

__all__ = [
    "StitlabError",
    "Tessellation",
    "from_json",
    "last_birth_cdf",
    "mean_internal_vertices",
    "mecke",
    "p1j",
    "palm_samples",
    "simulate",
    "verify",
]

__version__ = "0.1.0"
