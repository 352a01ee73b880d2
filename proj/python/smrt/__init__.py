"""Spherical mean Radon transform: forward model, local inversion, exact oracle."""

from ._smrt import (
    Axis,
    ContractError,
    DimensionError,
    DomainError,
    Error,
    MeanField,
    NumericError,
    Phantom,
    RangeError,
    ValidationError,
    Volume,
    analytic_mean,
    compare,
    describe_qtable,
    eval_q,
    forward,
    oracle,
    oracle_value,
    q_moment,
    reconstruct,
    spherical_mean,
)

__all__ = [name for name in dir() if not name.startswith("_")]
