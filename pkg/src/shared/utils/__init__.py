"""Shared utilities"""
from .seeding import derive_seed, make_rng, rng_identifier

__all__ = ["derive_seed", "make_rng", "rng_identifier"]
