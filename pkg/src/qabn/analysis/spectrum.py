"""Discrete Fourier spectrum of an I_m series."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """Full two-sided spectrum; frequencies in cycles per step (``numpy.fft.fftfreq`` order).

    Magnitudes use orthonormal scaling, so their squares sum to
    ``len(series) * variance``.
    """

    frequencies: np.ndarray
    magnitudes: np.ndarray

    def one_sided(self) -> tuple[np.ndarray, np.ndarray]:
        # rfft layout: bins 0..n//2, Nyquist included for even n
        n = len(self.frequencies)
        return np.fft.rfftfreq(n), self.magnitudes[: n // 2 + 1]

    def dominant(self, rel: float = 0.5) -> np.ndarray:
        """Non-negative frequencies whose magnitude is at least ``rel`` of the peak."""
        f, m = self.one_sided()
        if m.max() == 0:
            return np.array([])
        return f[m >= rel * m.max()]


def dft_spectrum(series) -> SpectrumReport:
    s = np.asarray(series, dtype=float)
    if len(s) < 2:
        raise DomainError("series needs at least two points")
    mags = np.abs(np.fft.fft(s - s.mean(), norm="ortho"))
    return SpectrumReport(np.fft.fftfreq(len(s)), mags)
