"""One propagation layer of the trainable NLSE cascade.

A layer applies the split-step pair

    D: E -> idft( dft(E) * exp(-(alpha/2) dz - i (beta2/2) omega^2 dz) )
    N: E -> E * exp(i gamma |E|^2 dz)

with trainable scalars (alpha, beta2, gamma) and fixed step dz. The backward
pass is hand-derived reverse mode in the Wirtinger convention: adjoint arrays
carry dL/d(conj E) per sample, parameter gradients are plain reals. For a
spectral multiplier H the input adjoint is the multiplier conj(H) in the same
transform convention.
"""

from dataclasses import dataclass, field

import numpy as np

from .fields import dft, idft


@dataclass
class LayerParams:
    """Trainable triple of one layer: attenuation, group-velocity dispersion,
    Kerr coefficient. Signs are unconstrained (gain / anomalous dispersion)."""

    alpha: float = 0.0
    beta2: float = 0.0
    gamma: float = 0.0

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta2, self.gamma)


@dataclass
class PropagationConfig:
    """Per-layer distance dz and layer count M (M == 0 is the classifier-only
    configuration: no cascade at all)."""

    delta_z: float = 1.0
    num_layers: int = 1

    def __post_init__(self):
        if not self.delta_z > 0:
            raise ValueError("delta_z must be positive")
        if self.num_layers < 0:
            raise ValueError("num_layers must be >= 0")


@dataclass
class LayerCache:
    """Forward intermediates kept for the backward pass (single use)."""

    field_in: np.ndarray
    post_dispersion: np.ndarray
    consumed: bool = field(default=False, compare=False)


def spectral_multiplier(alpha: float, beta2: float, delta_z: float,
                        omega: np.ndarray) -> np.ndarray:
    """exp(-(alpha/2) dz - i (beta2/2) omega^2 dz) on the DFT grid."""
    return np.exp(-0.5 * alpha * delta_z - 0.5j * beta2 * delta_z * omega ** 2)


def dispersion_step(field_in: np.ndarray, alpha: float, beta2: float,
                    delta_z: float, omega: np.ndarray) -> np.ndarray:
    """Linear step D: attenuation plus quadratic spectral phase."""
    field_in = np.asarray(field_in, dtype=np.complex128)
    if field_in.shape[-1] != omega.shape[-1]:
        raise ValueError(
            f"frequency grid length {omega.shape[-1]} does not match "
            f"field length {field_in.shape[-1]}")
    return idft(dft(field_in) * spectral_multiplier(alpha, beta2, delta_z, omega))


def nonlinear_step(field_in: np.ndarray, gamma: float,
                   delta_z: float) -> np.ndarray:
    """Nonlinear step N: self-phase modulation. Pure phase, |out| == |in|."""
    field_in = np.asarray(field_in, dtype=np.complex128)
    return field_in * np.exp(1j * gamma * delta_z * np.abs(field_in) ** 2)


def layer_forward(field_in: np.ndarray, params: LayerParams,
                  cfg: PropagationConfig, omega: np.ndarray
                  ) -> tuple[np.ndarray, LayerCache]:
    """D then N over one step dz; cache holds the input and post-D fields."""
    post_d = dispersion_step(field_in, params.alpha, params.beta2,
                             cfg.delta_z, omega)
    out = nonlinear_step(post_d, params.gamma, cfg.delta_z)
    return out, LayerCache(field_in=field_in, post_dispersion=post_d)


def layer_backward(cache: LayerCache, params: LayerParams,
                   cfg: PropagationConfig, omega: np.ndarray,
                   adjoint_out: np.ndarray
                   ) -> tuple[np.ndarray, tuple[float, float, float]]:
    """Reverse one layer: map dL/d(conj E_out) to dL/d(conj E_in) and return
    (dL/d_alpha, dL/d_beta2, dL/d_gamma).

    For batched caches the parameter gradients are summed over the batch.
    """
    if cache.consumed:
        raise RuntimeError("layer cache already consumed")
    cache.consumed = True

    dz = cfg.delta_z
    post_d = cache.post_dispersion
    adjoint_out = np.asarray(adjoint_out, dtype=np.complex128)

    # N backward. With B = A exp(i theta), theta = gamma dz |A|^2:
    #   adj_A = conj(adj_B) i gamma dz A^2 e^{i theta}
    #         + adj_B e^{-i theta} (1 - i gamma dz |A|^2)
    #   dL/dgamma = 2 dz sum |A|^2 Im[adj_B conj(B)]
    amp_sq = np.abs(post_d) ** 2
    phase = np.exp(1j * params.gamma * dz * amp_sq)
    out = post_d * phase
    d_gamma = 2.0 * dz * float(
        np.sum(amp_sq * np.imag(adjoint_out * np.conj(out))))
    coupling = 1j * params.gamma * dz
    adj_post = (np.conj(adjoint_out) * coupling * post_d ** 2 * phase
                + adjoint_out * np.conj(phase) * (1.0 - coupling * amp_sq))

    # D backward. Input adjoint via the conjugate multiplier; parameter
    # gradients pair the post-D field with its adjoint (beta2 spectrally,
    # through the 1/n Parseval factor of this transform convention).
    n = post_d.shape[-1]
    mult = spectral_multiplier(params.alpha, params.beta2, dz, omega)
    adj_spec = dft(adj_post)
    post_spec = dft(post_d)
    d_alpha = -dz * float(np.sum(np.real(adj_post * np.conj(post_d))))
    d_beta2 = -(dz / n) * float(
        np.sum(omega ** 2 * np.imag(adj_spec * np.conj(post_spec))))
    adjoint_in = idft(adj_spec * np.conj(mult))
    return adjoint_in, (d_alpha, d_beta2, d_gamma)
