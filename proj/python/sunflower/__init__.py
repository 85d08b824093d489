"""Sunflower search, bounds and N_beta substructure tools."""

from ._core import (
    SfAnswer,
    er_bound,
    exact_sf,
    find_sunflower,
    is_sunflower,
    nbeta_size,
    pad_family,
    run_suite,
    synth_beta,
    thm_bound,
)

__all__ = [
    "SfAnswer",
    "er_bound",
    "exact_sf",
    "find_sunflower",
    "is_sunflower",
    "nbeta_size",
    "pad_family",
    "run_suite",
    "synth_beta",
    "thm_bound",
]
