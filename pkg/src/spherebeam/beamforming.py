"""Conjugate weights and beam power evaluation.

Weights are the normalized conjugate of the desired channel, so the
response at the design target meets the Cauchy-Schwarz bound exactly.
Reductions run in element index order (via cumsum, never pairwise sums)
to keep sweep results reproducible against direct summation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelVector, channel_energy
from .errors import DegeneratePattern, DimensionMismatch, NoVisibleElements
from .geometry import SphericalPoint

DB_FLOOR = -300.0
"""dB value substituted for exactly-zero linear power."""


@dataclass(frozen=True, eq=False)
class BeamWeights:
    """Unit-norm weight vector tied to the focal point it was built for."""

    weights: np.ndarray
    focal: SphericalPoint

    def __post_init__(self):
        self.weights.setflags(write=False)

    def __len__(self) -> int:
        return self.weights.shape[0]


def conjugate_weights(h: ChannelVector) -> BeamWeights:
    """Matched-filter weights: conjugate of the channel, scaled to unit norm."""
    energy = channel_energy(h)
    if energy == 0.0:
        raise NoVisibleElements("no element has line of sight to the target")
    return BeamWeights(weights=np.conj(h.gains) / np.sqrt(energy), focal=h.target)


def beam_response(w: BeamWeights, h_probe: ChannelVector) -> float:
    """Coherent combined power |sum_k w_k h_k|^2, before any normalization."""
    if len(w) != len(h_probe):
        raise DimensionMismatch(
            f"weight length {len(w)} does not match channel length {len(h_probe)}"
        )
    s = np.cumsum(w.weights * h_probe.gains)[-1]
    return float(s.real * s.real + s.imag * s.imag)


def to_db(linear) -> np.ndarray:
    """10*log10 of linear power, with exact zeros pinned to the floor."""
    arr = np.asarray(linear, dtype=np.float64)
    out = np.full(arr.shape, DB_FLOOR)
    positive = arr > 0.0
    out[positive] = 10.0 * np.log10(arr[positive])
    return out


def normalize_pattern(raw, mode: str = "grid_max", *, reference: float | None = None):
    """Scale a non-negative pattern by a reference and return (linear, db).

    ``mode`` is ``"grid_max"`` (divide by the array maximum) or
    ``"focal_response"`` (divide by the caller-supplied ``reference``).
    """
    arr = np.asarray(raw, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("pattern is empty")
    if np.any(arr < 0.0):
        raise ValueError("pattern values must be non-negative")
    if mode == "grid_max":
        ref = float(np.max(arr))
        if ref == 0.0:
            raise DegeneratePattern("all-zero pattern has no maximum to normalize by")
    elif mode == "focal_response":
        if reference is None:
            raise ValueError("focal_response mode requires a reference value")
        ref = float(reference)
        if not ref > 0.0:
            raise ValueError(f"normalization reference must be positive, got {reference!r}")
    else:
        raise ValueError(f"unknown normalization mode {mode!r}")
    norm = arr / ref
    return norm, to_db(norm)
