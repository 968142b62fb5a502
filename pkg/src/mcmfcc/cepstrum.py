"""Log filterbank energies and their cosine-transform cepstra."""

from dataclasses import dataclass

import numpy as np

DEFAULT_LOG_FLOOR = 1e-10


@dataclass(eq=False)
class CepstralMatrix:
    """Per-frame cepstral coefficients (L x K) for one channel."""

    coeffs: np.ndarray
    channel_index: int = 0

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.float64)
        if self.coeffs.ndim != 2:
            raise ValueError("coeffs must be a 2-D matrix")
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("coeffs must be finite")


def log_energies(energies, floor: float = DEFAULT_LOG_FLOOR) -> np.ndarray:
    """Natural log of the energies, floored to guard silent channels."""
    if floor <= 0.0:
        raise ValueError("floor must be positive")
    return np.log(np.maximum(np.asarray(energies, dtype=np.float64), floor))


def _dct_basis(k: int) -> np.ndarray:
    n = np.arange(k)[:, None]
    m = np.arange(k)[None, :]
    basis = np.cos(np.pi * n * (2 * m + 1) / (2 * k))
    basis[0] *= np.sqrt(1.0 / k)
    basis[1:] *= np.sqrt(2.0 / k)
    return basis


def dct2(x, channel_index: int = 0) -> CepstralMatrix:
    """Orthonormal DCT-II along each row, all coefficients retained.

    c[n] = a(n) * sum_k x[k] cos(pi*n*(2k+1)/(2K)) with a(0)=sqrt(1/K) and
    a(n>0)=sqrt(2/K), so the transform preserves row energy.
    """
    rows = np.atleast_2d(np.asarray(x, dtype=np.float64))
    k = rows.shape[1]
    if k < 1:
        raise ValueError("rows must have at least one column")
    return CepstralMatrix(rows @ _dct_basis(k).T, channel_index)
