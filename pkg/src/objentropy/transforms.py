"""Value transforms and their change-of-variables corrections.

A transform v maps values elementwise; its derivative v' supplies the
log-Jacobian term sum(ln|v'(y_i)|) that converts a log-likelihood evaluated
on transformed residuals into a log-likelihood on the original data. The
Jacobian is always evaluated on observed values only.

Sums use numpy's pairwise reduction over arrays in flattened dataset order,
so results are bit-reproducible for a given input ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DomainViolation

TRANSFORM_KINDS = (
    "identity",
    "natural-log",
    "square-root",
    "reciprocal",
    "per-location-scale",
)

# Kinds whose domain is restricted to strictly positive inputs.
POSITIVE_DOMAIN_KINDS = frozenset({"natural-log", "square-root", "reciprocal"})


@dataclass(frozen=True)
class Transform:
    """A transform kind plus, for per-location-scale, the sigma_o map."""

    kind: str
    sigma_o: Mapping[str, float] | None = None

    def __post_init__(self) -> None:
        if self.kind not in TRANSFORM_KINDS:
            raise DomainViolation(
                f"unknown transform {self.kind!r}; expected one of "
                f"{TRANSFORM_KINDS}"
            )
        if self.kind == "per-location-scale" and self.sigma_o is None:
            raise DomainViolation(
                "per-location-scale requires per-location sigma_o values"
            )


def _require_positive(values: np.ndarray, kind: str) -> None:
    if values.size and values.min() <= 0:
        raise DomainViolation(
            f"{kind} transform requires strictly positive inputs; "
            f"minimum was {values.min()}"
        )


def _sigma_per_value(
    transform: Transform, locations: np.ndarray | None, size: int
) -> np.ndarray:
    if locations is None:
        raise DomainViolation(
            "per-location-scale requires the location key of every value"
        )
    locations = np.asarray(locations, dtype=object)
    if locations.size != size:
        raise DomainViolation(
            f"{locations.size} location keys for {size} values"
        )
    uniq, inverse = np.unique(locations, return_inverse=True)
    sigma_uniq = np.empty(uniq.size, dtype=np.float64)
    for i, loc in enumerate(uniq):
        try:
            sigma_uniq[i] = transform.sigma_o[loc]
        except KeyError:
            raise DomainViolation(f"no sigma_o for location {loc!r}") from None
    if sigma_uniq.min() <= 0:
        bad = uniq[int(np.argmin(sigma_uniq))]
        raise DomainViolation(
            f"sigma_o must be > 0 wherever used as a divisor; location "
            f"{bad!r} has sigma_o = {sigma_uniq.min()}"
        )
    return sigma_uniq[inverse]


def apply(
    transform: Transform,
    values: np.ndarray,
    locations: np.ndarray | None = None,
) -> np.ndarray:
    """Elementwise v(y) for the transform's kind.

    identity -> y; natural-log -> ln y; square-root -> sqrt(y);
    reciprocal -> 1/y; per-location-scale -> y / sigma_o(location).
    """
    v = np.asarray(values, dtype=np.float64)
    kind = transform.kind
    if kind == "identity":
        return v.copy()
    if kind == "natural-log":
        _require_positive(v, kind)
        return np.log(v)
    if kind == "square-root":
        _require_positive(v, kind)
        return np.sqrt(v)
    if kind == "reciprocal":
        _require_positive(v, kind)
        return 1.0 / v
    return v / _sigma_per_value(transform, locations, v.size)


def log_jacobian_sum(
    transform: Transform,
    observed: np.ndarray,
    locations: np.ndarray | None = None,
) -> float:
    """Sum over observations of ln|v'(y_i)|, in nats.

    identity -> 0; natural-log -> sum ln(1/y); square-root ->
    sum ln(1/(2 sqrt(y))); reciprocal -> sum ln(1/y^2);
    per-location-scale -> sum ln(1/sigma_o). Negative signs in derivatives
    are absorbed by the absolute value.
    """
    y = np.asarray(observed, dtype=np.float64)
    kind = transform.kind
    if kind == "identity":
        return 0.0
    if kind == "natural-log":
        _require_positive(y, kind)
        return float(-np.sum(np.log(y)))
    if kind == "square-root":
        _require_positive(y, kind)
        return float(-np.sum(np.log(2.0 * np.sqrt(y))))
    if kind == "reciprocal":
        _require_positive(y, kind)
        return float(-2.0 * np.sum(np.log(y)))
    sigma = _sigma_per_value(transform, locations, y.size)
    return float(-np.sum(np.log(sigma)))
