"""Complex 1-D field primitives: DFT contract and the angular-frequency grid.

Conventions used throughout the package:
  * unit sample spacing, so frequencies are dimensionless radians/sample
  * unnormalized forward transform X[k] = sum_t x[t] exp(-i 2 pi k t / n)
  * inverse transform carries the 1/n factor, so idft(dft(x)) == x

All functions operate along the last axis, so a (batch, n) array of fields
works the same as a single length-n field.
"""

import numpy as np


def dft(field: np.ndarray) -> np.ndarray:
    """Forward DFT, unnormalized sum convention."""
    field = np.asarray(field, dtype=np.complex128)
    if field.shape[-1] == 0:
        raise ValueError("empty field")
    return np.fft.fft(field, axis=-1)


def idft(spectrum: np.ndarray) -> np.ndarray:
    """Inverse DFT including the 1/n factor; exact inverse of dft()."""
    spectrum = np.asarray(spectrum, dtype=np.complex128)
    if spectrum.shape[-1] == 0:
        raise ValueError("empty field")
    return np.fft.ifft(spectrum, axis=-1)


def angular_frequencies(n: int) -> np.ndarray:
    """DFT-ordered angular frequency grid for n samples at unit spacing.

    omega[k] = 2 pi k / n for k < ceil(n/2), and 2 pi (k - n) / n after,
    i.e. the standard bin order with the negative branch (Nyquist included)
    in the upper half.
    """
    if n < 1:
        raise ValueError("grid size must be >= 1")
    return 2.0 * np.pi * np.fft.fftfreq(n, d=1.0)


def l2_norm_sq(field: np.ndarray) -> float:
    """Total energy sum_t |E[t]|^2."""
    field = np.asarray(field)
    return float(np.sum(np.abs(field) ** 2))
