"""
Free-particle Hermite-Gaussian basis

The basis is defined in the momentum representation as the z-Taylor
coefficients of the kernel (2/pi)^(1/4) exp(-p^2 + 2zp - z^2/2):

    psi_n(p, 0) = (2/pi)^(1/4) (2^n n!)^(-1/2) H_n(sqrt(2) p) exp(-p^2)

With this phase the momentum operator is P = +(a + a^+)/2 in the basis
(the sign is read off the recurrence, not imposed). Units: hbar = 1,
h0 = -d^2/dx^2 = p^2, so evolution in momentum space is exp(-i p^2 t).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Optional, Union

import numpy as np
import scipy.linalg

from .banded import BandedSymmetricMatrix
from .utils import InvalidParameterError, NumericalFailure

logger = logging.getLogger(__name__)

MOMENTUM_NORM = (2.0 / np.pi) ** 0.25
POSITION_NORM = (2.0 * np.pi) ** -0.25
GAUSS_HERMITE_MAX_ORDER = 200

# Alias: the momentum Jacobi matrix is a bandwidth-1 banded symmetric matrix.
JacobiMatrix = BandedSymmetricMatrix

ArrayLike = Union[float, complex, np.ndarray, list]


class NumericalRangeError(NumericalFailure):
    pass


class Representation(str, Enum):
    POSITION = "position"
    MOMENTUM = "momentum"


class LadderDirection(str, Enum):
    LOWER = "lower"
    RAISE = "raise"


class QuadratureKind(str, Enum):
    GAUSS_HERMITE = "gauss_hermite"
    TRAPEZOID_DECAYING = "trapezoid_decaying"


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    kind: QuadratureKind

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Apply the rule along the last axis of ``values``."""
        return np.asarray(values) @ self.weights


def _validate_index(n: int, name: str = "n") -> int:
    if int(n) != n or n < 0:
        raise InvalidParameterError(f"{name} must be a nonnegative integer, got {n}")
    return int(n)


def hermite_eval(n: int, u: ArrayLike) -> Union[float, np.ndarray]:
    """
    Physicists' Hermite polynomial H_n(u) by the three-term recurrence
    H_{n+1} = 2u H_n - 2n H_{n-1}.

    Raises:
        NumericalRangeError: if the value leaves double range
    """
    n = _validate_index(n)
    scalar = np.ndim(u) == 0
    u = np.asarray(u, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        h_prev = np.ones_like(u)
        h = 2.0 * u
        if n == 0:
            h = h_prev
        for k in range(1, n):
            h_prev, h = h, 2.0 * u * h - 2.0 * k * h_prev
    if not np.all(np.isfinite(h)):
        raise NumericalRangeError(
            f"H_{n}(u) overflows double precision for max|u|={np.max(np.abs(u)):.3g}; "
            "use normalized_hermite_table for large orders"
        )
    return float(h) if scalar else h


def normalized_hermite_table(n_max: int, u: ArrayLike) -> np.ndarray:
    """
    Rows phi_n(u) = H_n(u) / sqrt(2^n n!) for n = 0..n_max.

    The scaled recurrence never forms n! and accepts complex arguments.

    Returns:
        array of shape (n_max + 1, len(u))
    """
    n_max = _validate_index(n_max, "n_max")
    u = np.atleast_1d(np.asarray(u))
    table = np.empty((n_max + 1,) + u.shape, dtype=np.result_type(u, float))
    table[0] = 1.0
    if n_max >= 1:
        table[1] = np.sqrt(2.0) * u
    for n in range(1, n_max):
        table[n + 1] = np.sqrt(2.0 / (n + 1)) * u * table[n] - np.sqrt(n / (n + 1)) * table[n - 1]
    return table


def momentum_table(n_max: int, p: ArrayLike, t: float = 0.0) -> np.ndarray:
    """psi_0..psi_{n_max} sampled at momenta ``p`` and time ``t``."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    envelope = MOMENTUM_NORM * np.exp(-p ** 2) * np.exp(-1j * p ** 2 * t)
    return normalized_hermite_table(n_max, np.sqrt(2.0) * p) * envelope


def basis_momentum(n: int, p_grid: ArrayLike, t: float = 0.0) -> np.ndarray:
    n = _validate_index(n)
    return momentum_table(n, p_grid, t)[n]


def position_table(n_max: int, x: ArrayLike, t: float = 0.0) -> np.ndarray:
    """
    psi_0..psi_{n_max} in the position representation.

    Closed form of the Fourier transform of ``momentum_table``: with
    s = 1 + i t,

        psi_n(x, t) = (2 pi)^(-1/4) s^(-1/2) exp(-x^2 / 4s) q_n(x, t),
        q_0 = 1, q_1 = i x / s,
        q_{n+1} = sqrt(2/(n+1)) (i x / (sqrt(2) s)) q_n - sqrt(n/(n+1)) ((s - 2)/s) q_{n-1}
    """
    n_max = _validate_index(n_max, "n_max")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    s = 1.0 + 1j * t
    table = np.empty((n_max + 1,) + x.shape, dtype=complex)
    table[0] = 1.0
    if n_max >= 1:
        table[1] = 1j * x / s
    shift = 1j * x / (np.sqrt(2.0) * s)
    spread = (s - 2.0) / s
    for n in range(1, n_max):
        table[n + 1] = np.sqrt(2.0 / (n + 1)) * shift * table[n] - np.sqrt(n / (n + 1)) * spread * table[n - 1]
    envelope = POSITION_NORM * np.exp(-x ** 2 / (4.0 * s)) / np.sqrt(s)
    return table * envelope


def basis_position(n: int, x_grid: ArrayLike, t: float = 0.0) -> np.ndarray:
    n = _validate_index(n)
    return position_table(n, x_grid, t)[n]


def synthesize(coeffs: np.ndarray, points: ArrayLike, rep: Representation = Representation.POSITION,
               t: float = 0.0) -> np.ndarray:
    """Evaluate sum_n c_n psi_n at ``points`` in the requested representation."""
    coeffs = np.asarray(coeffs)
    n_max = len(coeffs) - 1
    if Representation(rep) is Representation.MOMENTUM:
        table = momentum_table(n_max, points, t)
    else:
        table = position_table(n_max, points, t)
    return coeffs @ table


def ladder_apply(direction: Union[LadderDirection, str], coeffs: np.ndarray,
                 extend: Optional[bool] = None) -> np.ndarray:
    """
    Apply a or a^+ to a coefficient vector with respect to {psi_n}.

    Lowering keeps the length (the top slot becomes zero, a psi_0 = 0).
    Raising appends one slot unless ``extend=False``, so that no component is
    lost to the truncation.
    """
    direction = LadderDirection(direction)
    coeffs = np.asarray(coeffs, dtype=complex)
    size = len(coeffs)
    if direction is LadderDirection.LOWER:
        out = np.zeros(size, dtype=complex)
        out[:-1] = np.sqrt(np.arange(1, size)) * coeffs[1:]
        return out
    if extend is None:
        extend = True
    out = np.zeros(size + 1, dtype=complex)
    out[1:] = np.sqrt(np.arange(1, size + 1)) * coeffs
    return out if extend else out[:size]


def ladder_matrix(direction: Union[LadderDirection, str], size: int) -> np.ndarray:
    """Dense truncation of a (or a^+) on span{psi_0..psi_{size-1}}."""
    lowering = np.diag(np.sqrt(np.arange(1, size)), k=1)
    return lowering if LadderDirection(direction) is LadderDirection.LOWER else lowering.T


def momentum_jacobi(n_max: int, sign: int = 1) -> JacobiMatrix:
    """
    Tridiagonal matrix of p_x on span{psi_0..psi_{n_max}}.

    P[n, n+1] = sign * sqrt(n+1)/2; ``sign=-1`` gives the mirrored
    convention P -> -P.
    """
    n_max = _validate_index(n_max, "n_max")
    if n_max < 1:
        raise InvalidParameterError("momentum_jacobi needs n_max >= 1")
    if sign not in (1, -1):
        raise InvalidParameterError("sign must be +1 or -1")
    upper = np.zeros((2, n_max + 1))
    upper[0, 1:] = sign * np.sqrt(np.arange(1, n_max + 1)) / 2.0
    return JacobiMatrix(upper)


def gauss_hermite(order: int) -> QuadratureRule:
    """
    Gauss-Hermite rule for the weight exp(-x^2).

    Nodes are eigenvalues of the Hermite Jacobi matrix (Golub-Welsch);
    weights use the Christoffel form sqrt(pi) / sum_k phi_k(x_i)^2, which is
    accurate for the tiny outer weights.
    """
    if int(order) != order or not 1 <= order <= GAUSS_HERMITE_MAX_ORDER:
        raise InvalidParameterError(f"order must be in 1..{GAUSS_HERMITE_MAX_ORDER}, got {order}")
    order = int(order)
    if order == 1:
        return QuadratureRule(np.zeros(1), np.array([np.sqrt(np.pi)]), QuadratureKind.GAUSS_HERMITE)
    off_diagonal = np.sqrt(np.arange(1, order) / 2.0)
    nodes = scipy.linalg.eigh_tridiagonal(np.zeros(order), off_diagonal, eigvals_only=True)
    nodes = 0.5 * (nodes - nodes[::-1])
    christoffel = np.sum(normalized_hermite_table(order - 1, nodes) ** 2, axis=0)
    weights = np.sqrt(np.pi) / christoffel
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(nodes, weights, QuadratureKind.GAUSS_HERMITE)


def trapezoid_rule(lo: float, hi: float, points: int) -> QuadratureRule:
    """Composite trapezoid rule, spectrally accurate for smooth decaying integrands."""
    if points < 2 or not hi > lo:
        raise InvalidParameterError(f"invalid trapezoid window [{lo}, {hi}] with {points} points")
    nodes = np.linspace(lo, hi, points)
    weights = np.full(points, (hi - lo) / (points - 1))
    weights[[0, -1]] *= 0.5
    return QuadratureRule(nodes, weights, QuadratureKind.TRAPEZOID_DECAYING)


def momentum_gram(weight: Callable[[np.ndarray], np.ndarray], n_max: int, order: int = 80) -> np.ndarray:
    """
    Matrix of <psi_m | w(p_x) | psi_n> = integral conj(psi_m(p)) w(p) psi_n(p) dp.

    With u = sqrt(2) p the integrand is phi_m(u) phi_n(u) w(u/sqrt(2)) exp(-u^2)
    up to 1/sqrt(pi), so the rule is exact for polynomial ``w`` of degree
    below 2*order - 2*n_max.
    """
    rule = gauss_hermite(order)
    table = normalized_hermite_table(n_max, rule.nodes)
    w = np.asarray(weight(rule.nodes / np.sqrt(2.0)), dtype=float) * rule.weights
    return (table * w) @ table.T / np.sqrt(np.pi)


@dataclass(frozen=True)
class UniformGrid:
    """Uniform x-grid including both ends; parsed from "min:max:points"."""
    x_min: float
    x_max: float
    points: int

    def __post_init__(self):
        if int(self.points) != self.points or self.points < 4:
            raise InvalidParameterError(f"grid needs at least 4 points, got {self.points}")
        if not self.x_max > self.x_min:
            raise InvalidParameterError(f"grid bounds must satisfy min < max, got {self.x_min}:{self.x_max}")

    @classmethod
    def parse(cls, text: str) -> "UniformGrid":
        try:
            lo, hi, points = text.split(":")
            return cls(float(lo), float(hi), int(points))
        except ValueError as e:
            raise InvalidParameterError(f"grid must look like min:max:points, got {text!r}") from e

    def __str__(self) -> str:
        return f"{self.x_min:g}:{self.x_max:g}:{self.points}"

    @cached_property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.points)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.points - 1)

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.points, d=self.dx)

    def integrate(self, values: np.ndarray) -> np.ndarray:
        return np.trapezoid(values, dx=self.dx, axis=-1)

    def inner(self, left: np.ndarray, right: np.ndarray) -> complex:
        return complex(self.integrate(np.conj(left) * right))

    def norm(self, values: np.ndarray) -> float:
        return float(np.sqrt(np.real(self.inner(values, values))))

    def derivative(self, values: np.ndarray, order: int = 1) -> np.ndarray:
        """
        FFT spectral derivative along the last axis.

        Valid for samples that decay to (numerically) zero at both ends.
        """
        values = np.asarray(values)
        k = self.wavenumbers.copy()
        if order % 2 and self.points % 2 == 0:
            k[self.points // 2] = 0.0
        result = np.fft.ifft((1j * k) ** order * np.fft.fft(values, axis=-1), axis=-1)
        return result.real if np.isrealobj(values) else result
