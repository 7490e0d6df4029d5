"""
Identity resolutions for the symmetry-transformed families

* xi_z = f(p)^{-1/2} psi_z: an ordinary measure omega_xi(x) dx dy with a
  polynomial density, obtained from the Gaussian-smoothing equation
      integral omega_xi(x) exp(-2 (x - p)^2) dx = (2 pi)^{-1/2} f(p).
* rho_z = f(p)^{1/2} psi_z: no measure exists; the resolution is a
  functional defined on the Fourier side through
      omega_rho~(t) = (2 pi)^{-1} sum_k (A_k / alpha_k) exp(-alpha_k |t| + t^2 / 8).

Moment identities (a_n = (n!)^{-1/2}, F_nk(x) = int dy exp(-x^2-y^2) conj(z)^n z^k):
    a_n a_k int omega_xi(x) F_nk(x) dx = S_nk
    a_n a_k omega_rho(F_nk)           = S^{-1}_nk
"""
import logging
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, prod
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import scipy.integrate
import scipy.special
from numpy.polynomial import Polynomial
from numpy.polynomial import hermite as H

from .basis import UniformGrid, gauss_hermite, trapezoid_rule
from .models import CheckResult, MomentEntry, MomentReport
from .symmetry import (PartialFractions, SymbolLike, as_symbol, partial_fractions, poly_from_alphas,
                       s_inverse_block, s_matrix, validate_symbol)
from .utils import InvalidParameterError, NumericalFailure

logger = logging.getLogger(__name__)

ADMISSIBLE_DECAY = 0.125 + 1e-3
NOISE_FLOOR = 1e-12
# scale of the smoothing kernel: exp(-2 (x - p)^2) is N(p, 1/4)
SMOOTHING_VARIANCE = Fraction(1, 4)
DEFAULT_PACKETS: Tuple[Tuple[float, float], ...] = ((-1.0, 0.7), (0.0, 1.0), (0.8, 0.5))
SAMPLE_GRID = UniformGrid(-20.0, 20.0, 1024)


class QuadratureError(NumericalFailure):
    pass


class AdmissibilityError(NumericalFailure):
    pass


@dataclass(frozen=True)
class XiDensity:
    """omega_xi(x) = poly(x); the measure is omega_xi(x) dx dy with z = x + i y."""
    poly: Polynomial
    # coefficients of pi * omega_xi, exact for exactly representable f
    exact_coefficients: Tuple[Fraction, ...]

    def __call__(self, x):
        return self.poly(x)

    @property
    def is_even(self) -> bool:
        return bool(np.all(self.poly.coef[1::2] == 0))

    @property
    def leading_coefficient(self) -> float:
        return float(self.poly.coef[-1])

    def minimum(self) -> float:
        """Global minimum over the real line (attained at a real critical point)."""
        if self.poly.degree() == 0:
            return float(self.poly.coef[0])
        critical = self.poly.deriv().roots()
        critical = critical[np.abs(critical.imag) < 1e-9].real
        return float(np.min(self.poly(critical)))

    def sign_status(self) -> str:
        return "positive" if self.minimum() > 0 else "signed"


@dataclass(frozen=True)
class RhoDensity:
    fractions: PartialFractions

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)[..., None]
        a, r = self.fractions.alphas, self.fractions.residues
        return np.sum(r / a * np.exp(-a * np.abs(t) + t ** 2 / 8.0), axis=-1) / (2.0 * np.pi)


class TestFunctionKind(str, Enum):
    HERMITE_GAUSSIAN = "hermite_gaussian"
    GRID_SAMPLES = "grid_samples"


@dataclass(frozen=True)
class TestFunctionSpec:
    """
    Argument of the functional omega_rho.

    ``hermite_gaussian``: F(x) = exp(-x^2) P(x) with P held as complex
    ascending coefficients (F_nk when built from (n, k)).
    ``grid_samples``: F sampled on a uniform grid.
    """
    __test__ = False

    kind: TestFunctionKind
    coefficients: Optional[np.ndarray] = None
    grid: Optional[UniformGrid] = None
    samples: Optional[np.ndarray] = None
    label: str = ""

    @classmethod
    def hermite_gaussian(cls, n: int, k: int) -> "TestFunctionSpec":
        return cls(TestFunctionKind.HERMITE_GAUSSIAN, reduction_polynomial(n, k).coef.astype(complex),
                   label=f"F_{n}{k}")

    @classmethod
    def gaussian_times(cls, coefficients: Sequence[complex], label: str = "") -> "TestFunctionSpec":
        return cls(TestFunctionKind.HERMITE_GAUSSIAN, np.asarray(coefficients, dtype=complex), label=label)

    @classmethod
    def grid_samples(cls, grid: UniformGrid, samples: np.ndarray, label: str = "") -> "TestFunctionSpec":
        samples = np.asarray(samples)
        if samples.shape != (grid.points,):
            raise InvalidParameterError(f"expected {grid.points} samples, got {samples.shape}")
        return cls(TestFunctionKind.GRID_SAMPLES, grid=grid, samples=samples, label=label)

    def sampled(self, grid: UniformGrid) -> "TestFunctionSpec":
        """The same test function as samples on ``grid``."""
        return TestFunctionSpec.grid_samples(grid, self.evaluate(grid.x), label=self.label)

    def evaluate(self, x) -> np.ndarray:
        if self.kind is TestFunctionKind.GRID_SAMPLES:
            return np.interp(x, self.grid.x, self.samples)
        return np.exp(-np.asarray(x) ** 2) * np.polynomial.polynomial.polyval(x, self.coefficients)

    @property
    def membership(self) -> str:
        """Gaussian-times-polynomial functions lie in the admissible class; samples are gated numerically."""
        return "satisfied" if self.kind is TestFunctionKind.HERMITE_GAUSSIAN else "unknown"


def _run_quad(func: Callable, lo: float, hi: float, **kwargs) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.integrate.IntegrationWarning)
        try:
            value, _ = scipy.integrate.quad(func, lo, hi, **kwargs)
        except scipy.integrate.IntegrationWarning as e:
            raise QuadratureError(f"adaptive quadrature did not converge: {e}") from e
    return value


def gaussian_moment(order: int, variance: Fraction = SMOOTHING_VARIANCE) -> Fraction:
    """E[Z^order] for Z ~ N(0, variance)."""
    if order % 2:
        return Fraction(0)
    j = order // 2
    return variance ** j * prod(range(2 * j - 1, 0, -2))


def solve_omega_xi(f: SymbolLike) -> XiDensity:
    """
    Polynomial omega_xi with E[omega_xi(p + Z)] = f(p) / pi, Z ~ N(0, 1/4).

    The system is triangular in the degree and is solved top-down in
    exact rational arithmetic.
    """
    f = validate_symbol(as_symbol(f))
    target = [Fraction(float(c)) for c in f.coef]
    degree = len(target) - 1
    solution = [Fraction(0)] * (degree + 1)
    for m in range(degree, -1, -1):
        # E[(p+Z)^j] contributes C(j, m) E[Z^(j-m)] p^m
        correction = sum(
            (solution[j] * comb(j, m) * gaussian_moment(j - m) for j in range(m + 1, degree + 1)),
            Fraction(0),
        )
        solution[m] = target[m] - correction
    poly = Polynomial([float(c) for c in solution]) / np.pi
    density = XiDensity(poly, tuple(solution))
    if density.sign_status() == "signed":
        logger.warning(f"omega_xi takes negative values (min {density.minimum():.4g}); the measure is signed")
    logger.info(f"omega_xi solved for symbol of degree {degree}")
    return density


def verify_smoothing_equation(density: XiDensity, f: SymbolLike, p_values: Sequence[float], order: int = 80) -> pd.DataFrame:
    """
    Relative residuals of int omega_xi(x) exp(-2 (x - p)^2) dx = (2 pi)^{-1/2} f(p).

    Multiplying both sides by exp(2 p^2) gives the form with the kernel
    exp(4 p x - 2 x^2); the shifted form is what gets integrated.
    """
    f = as_symbol(f)
    rule = gauss_hermite(order)
    p = np.asarray(p_values, dtype=float)
    shifted = p[:, None] + rule.nodes[None, :] / np.sqrt(2.0)
    lhs = density(shifted) @ rule.weights / np.sqrt(2.0)
    rhs = f(p) / np.sqrt(2.0 * np.pi)
    return pd.DataFrame({
        "p": p, "lhs": lhs, "rhs": rhs,
        "residual": np.abs(lhs - rhs) / np.abs(rhs),
    })


def build_rho_density(alphas: Sequence[float]) -> RhoDensity:
    return RhoDensity(partial_fractions(alphas))


def verify_reciprocal_symbol(density: RhoDensity, p_grid: Sequence[float]) -> pd.DataFrame:
    """
    pi int omega_rho~(t) exp(-t^2/8 + i p t) dt against 1/f(p), f built from the alphas.

    The t^2/8 factors cancel, leaving sum_k (A_k/alpha_k) int_0^inf exp(-alpha_k t) cos(p t) dt;
    p != 0 goes through the Fourier-integral rule of quad.
    """
    frac = density.fractions
    p_grid = np.asarray(p_grid, dtype=float)
    values = []
    for p in p_grid:
        total = 0.0
        for alpha, residue in zip(frac.alphas, frac.residues):
            if p == 0.0:
                integral = _run_quad(lambda t, a=alpha: np.exp(-a * t), 0.0, np.inf, epsabs=1e-13, epsrel=1e-12)
            else:
                integral = _run_quad(lambda t, a=alpha: np.exp(-a * t), 0.0, np.inf,
                                     weight="cos", wvar=abs(p), epsabs=1e-12, limlst=100)
            total += residue / alpha * integral
        values.append(total)
    values = np.asarray(values)
    target = 1.0 / poly_from_alphas(frac.alphas)(p_grid)
    return pd.DataFrame({"p": p_grid, "value": values, "target": target,
                         "residual": np.abs(values - target)})


def reduction_polynomial(n: int, k: int) -> Polynomial:
    """
    P_nk with int dy exp(-x^2 - y^2) conj(z)^n z^k = exp(-x^2) P_nk(x), z = x + i y.

    Real, with P_nk = P_kn and parity (-1)^(n+k).
    """
    if min(n, k) < 0:
        raise InvalidParameterError("n and k must be nonnegative")
    coef = np.zeros(n + k + 1)
    for a in range(n + 1):
        for b in range(k + 1):
            m = a + b
            if m % 2:
                continue
            # (-i)^a i^b = (-1)^a i^m
            phase = (-1) ** (a + m // 2)
            coef[n + k - m] += comb(n, a) * comb(k, b) * phase * scipy.special.gamma((m + 1) / 2.0)
    return Polynomial(coef)


def check_reduction_identity(n_max: int, order: int = 60) -> float:
    """Max deviation between P_nk and direct y-quadrature at a few x, relative to the moment scale."""
    rule = gauss_hermite(order)
    x = np.array([-1.3, -0.4, 0.0, 0.6, 1.7])
    worst = 0.0
    for n in range(n_max + 1):
        for k in range(n_max + 1):
            z = x[:, None] + 1j * rule.nodes[None, :]
            direct = (np.conj(z) ** n * z ** k) @ rule.weights
            closed = reduction_polynomial(n, k)(x)
            scale = np.sqrt(scipy.special.factorial(n) * scipy.special.factorial(k))
            worst = max(worst, float(np.max(np.abs(direct - closed)) / scale))
    return worst


def moment_matrix_xi(density: XiDensity, n_max: int, order: int = 80) -> np.ndarray:
    """a_n a_k int int omega_xi(x) exp(-|z|^2) conj(z)^n z^k dx dy by 2D Gauss-Hermite."""
    order = max(order, n_max + density.poly.degree() // 2 + 1)
    rule = gauss_hermite(order)
    x, y = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
    weights = (np.outer(rule.weights, rule.weights) * density(x)).ravel()
    z = (x + 1j * y).ravel()
    powers = np.empty((n_max + 1, z.size), dtype=complex)
    powers[0] = 1.0
    for n in range(n_max):
        powers[n + 1] = powers[n] * z / np.sqrt(n + 1)
    return ((np.conj(powers) * weights) @ powers.T).real


def moment_matrix_rho(density: RhoDensity, n_max: int) -> np.ndarray:
    lhs = np.zeros((n_max + 1, n_max + 1))
    for n in range(n_max + 1):
        for k in range(n, n_max + 1):
            if (n + k) % 2:
                continue
            value = eval_functional_rho(density, TestFunctionSpec.hermite_gaussian(n, k)).real
            lhs[n, k] = lhs[k, n] = value / np.sqrt(scipy.special.factorial(n) * scipy.special.factorial(k))
    return lhs


def _fourier_hermite_gaussian(coefficients: np.ndarray) -> np.ndarray:
    """
    Ascending coefficients Q of F~(t) = Q(t) exp(-t^2/4) for F = exp(-x^2) P(x).

    int x^m exp(-x^2 + i x t) dx = (i/2)^m sqrt(pi) H_m(t/2) exp(-t^2/4).
    """
    total = Polynomial([0j])
    for m, c in enumerate(coefficients):
        if c == 0:
            continue
        hermite_m = Polynomial(H.herm2poly(np.eye(m + 1)[m]))
        total = total + c * (0.5j) ** m * np.sqrt(np.pi) * hermite_m(Polynomial([0.0, 0.5]))
    return np.asarray(total.coef, dtype=complex)


def fourier_transform_samples(F: TestFunctionSpec, t: np.ndarray) -> np.ndarray:
    """F~(t) = int F(x) exp(i x t) dx by the trapezoid rule on the sample grid."""
    grid = F.grid
    return grid.integrate(F.samples[None, :] * np.exp(1j * np.outer(t, grid.x)))


def decay_exponent(t: np.ndarray, transform: np.ndarray) -> float:
    """Least-squares beta in log|F~(t)| ~ c - beta t^2 over samples above the noise floor."""
    magnitude = np.abs(transform)
    mask = magnitude > NOISE_FLOOR * magnitude.max()
    if mask.sum() < 3:
        raise AdmissibilityError("transform has fewer than three samples above the noise floor")
    slope, _ = np.polyfit(t[mask] ** 2, np.log(magnitude[mask]), 1)
    return float(-slope)


def _sampled_transform(F: TestFunctionSpec, t_points: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Half-line nodes t >= 0, the symmetric nodes and F~ on the symmetric nodes."""
    t_max = min(np.pi / F.grid.dx, 60.0)
    t = np.linspace(0.0, t_max, t_points)
    symmetric = np.concatenate([-t[:0:-1], t])
    return t, symmetric, fourier_transform_samples(F, symmetric)


def admissibility_report(F: TestFunctionSpec, t_points: int = 801) -> dict:
    """
    Membership of F in the class omega_rho is defined on.

    Sampled functions are admitted when |F~(t)| decays at least like
    exp(-ADMISSIBLE_DECAY t^2), so that F~ outpaces the exp(t^2/8) growth
    of omega_rho~.
    """
    if F.membership == "satisfied":
        return {"label": F.label, "membership": "satisfied", "decay_exponent": None, "admissible": True}
    _, symmetric, transform = _sampled_transform(F, t_points)
    beta = decay_exponent(symmetric, transform)
    admissible = beta >= ADMISSIBLE_DECAY
    return {"label": F.label, "membership": "satisfied" if admissible else "violated",
            "decay_exponent": beta, "admissible": admissible}


def eval_functional_rho(density: RhoDensity, F: TestFunctionSpec, t_points: int = 801) -> complex:
    """
    omega_rho(F) = int omega_rho~(t) F~(t) dt.

    Hermite-Gaussian arguments have F~ = Q(t) exp(-t^2/4) in closed form and
    leave (2 pi)^{-1} sum_k (A_k/alpha_k) int exp(-alpha_k |t| - t^2/8) Q(t) dt;
    the odd part of Q integrates to zero.

    Raises:
        AdmissibilityError: sampled F whose transform does not outpace exp(t^2/8)
    """
    frac = density.fractions
    if F.kind is TestFunctionKind.HERMITE_GAUSSIAN:
        q = _fourier_hermite_gaussian(F.coefficients)
        even = Polynomial(np.where(np.arange(len(q)) % 2 == 0, q, 0))
        total = 0j
        for alpha, residue in zip(frac.alphas, frac.residues):
            parts = []
            for component in (even.coef.real, even.coef.imag):
                if not np.any(component):
                    parts.append(0.0)
                    continue
                poly = Polynomial(component)
                parts.append(_run_quad(lambda t, a=alpha, P=poly: np.exp(-a * t - t * t / 8.0) * P(t),
                                       0.0, np.inf, epsabs=1e-11, epsrel=1e-10, limit=200))
            total += residue / alpha * 2.0 * complex(parts[0], parts[1])
        return total / (2.0 * np.pi)

    t, symmetric, transform = _sampled_transform(F, t_points)
    beta = decay_exponent(symmetric, transform)
    if beta < ADMISSIBLE_DECAY:
        raise AdmissibilityError(
            f"|F~(t)| decays like exp(-{beta:.4f} t^2), slower than the required exp(-{ADMISSIBLE_DECAY} t^2)"
        )
    floor = NOISE_FLOOR * np.abs(transform).max()
    total = 0j
    for half in (transform[t_points - 1::-1], transform[t_points - 1:]):
        above = np.nonzero(np.abs(half) > floor)[0]
        last = int(above[-1]) + 1 if above.size else 1
        last = max(last, 3)
        integrand = density(t[:last]) * half[:last]
        total += scipy.integrate.simpson(integrand, x=t[:last])
    return total


def _report(suite: str, alphas: Sequence[float], lhs: np.ndarray, rhs: np.ndarray,
            certificates: Optional[dict] = None) -> MomentReport:
    """Residuals are |lhs - rhs| / max(1, |rhs|)."""
    residual = np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs))
    size = lhs.shape[0]
    entries = [
        MomentEntry(n=n, k=k, lhs=float(lhs[n, k]), rhs=float(rhs[n, k]), residual=float(residual[n, k]))
        for n in range(size) for k in range(size)
    ]
    return MomentReport(suite=suite, alphas=[float(a) for a in alphas], n_max=size - 1,
                        max_residual=float(residual.max()), entries=entries,
                        certificates=certificates or {})


def moment_check_xi(alphas: Sequence[float], n_max: int, order: int = 80) -> MomentReport:
    """a_n a_k int d(mu_xi) |Phi|^2 conj(z)^n z^k against S_nk; empty alphas means f = 1."""
    if n_max > 30:
        raise InvalidParameterError("moment_check_xi supports n_max <= 30")
    f = as_symbol(alphas)
    density = solve_omega_xi(f)
    lhs = moment_matrix_xi(density, n_max, order)
    rhs = s_matrix(f, n_max).to_dense()
    report = _report("xi", alphas, lhs, rhs, {"omega_xi_sign": density.sign_status()})
    logger.info(f"xi moments n_max={n_max}: max residual {report.max_residual:.3e}")
    return report


def moment_check_rho(alphas: Sequence[float], n_max: int, tolerance: float = 1e-6) -> MomentReport:
    """a_n a_k omega_rho(F_nk) against the certified block of S^{-1}."""
    if n_max > 12:
        raise InvalidParameterError("moment_check_rho supports n_max <= 12")
    density = build_rho_density(alphas)
    lhs = moment_matrix_rho(density, n_max)
    inverse = s_inverse_block(alphas, n_max + 1, tolerance)
    report = _report("rho", alphas, lhs, inverse.matrix, {"s_inverse": inverse.certificate()})
    logger.info(f"rho moments n_max={n_max}: max residual {report.max_residual:.3e}")
    return report


def functional_properties(density: RhoDensity, n_max: int = 8) -> dict:
    """
    Hermitian symmetry, linearity and positivity of omega_rho on F_nk.

    Returns max deviations for the first two and min omega_rho(F_nn).
    """
    values = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for n in range(n_max + 1):
        for k in range(n_max + 1):
            values[n, k] = eval_functional_rho(density, TestFunctionSpec.hermite_gaussian(n, k))
    hermitian = float(np.max(np.abs(values - values.conj().T)))
    linearity = 0.0
    a, b = 0.3 - 1.1j, 2.0 + 0.4j
    for n in range(n_max + 1):
        for k in range(n_max - 1):
            p = reduction_polynomial(n, k).coef
            q = reduction_polynomial(n, k + 2).coef
            combined = np.zeros(max(len(p), len(q)), dtype=complex)
            combined[: len(p)] += a * p
            combined[: len(q)] += b * q
            value = eval_functional_rho(density, TestFunctionSpec.gaussian_times(combined))
            expected = a * values[n, k] + b * values[n, k + 2]
            linearity = max(linearity, float(abs(value - expected) / max(1.0, abs(expected))))
    positivity = float(min(values[n, n].real for n in range(n_max + 1)))
    return {"hermitian": hermitian, "linearity": linearity, "positivity_min": positivity}


def _packet(p: np.ndarray, center: float, width: float) -> np.ndarray:
    return np.exp(-((p - center) ** 2) / (2.0 * width ** 2) + 0.5j * center * p)


def smeared_resolution_check(f: SymbolLike, packets: Sequence[Tuple[float, float]] = DEFAULT_PACKETS,
                             window: float = 10.0, points: int = 241,
                             p_points: int = 801) -> Tuple[np.ndarray, np.ndarray]:
    """
    int omega_xi(x) <g|xi_z><xi_z|h> dx dy against <g|h> for Gaussian packets g, h in p.

    |<psi_p|psi_z>| = (2/pi)^{1/4} exp(-(p - x)^2) with phase exp(i (2 y p - x y)),
    so each overlap is a Fourier integral in p.

    Returns:
        (lhs, rhs) Gram matrices over the packets
    """
    f = validate_symbol(as_symbol(f))
    density = solve_omega_xi(f)
    p_rule = trapezoid_rule(-window, window, p_points)
    p = p_rule.nodes
    g = np.array([_packet(p, c, w) for c, w in packets])
    rhs = (np.conj(g) * p_rule.weights) @ g.T
    xy = trapezoid_rule(-window, window, points)
    weighted = np.conj(g) * p_rule.weights / np.sqrt(f(p))
    lhs = np.zeros_like(rhs)
    for x, wx in zip(xy.nodes, xy.weights):
        magnitude = (2.0 / np.pi) ** 0.25 * np.exp(-((p - x) ** 2))
        phase = np.exp(1j * (2.0 * np.outer(xy.nodes, p) - x * xy.nodes[:, None]))
        overlaps = (magnitude * phase) @ weighted.T        # <g|xi_z> for all y
        lhs += wx * density(x) * (np.conj(overlaps).T * xy.weights) @ overlaps
    return lhs.T, rhs


def density_frame_xi(density: XiDensity, x: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame({"x": x, "omega_xi": density(x)})


def density_frame_rho(density: RhoDensity, t: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame({"t": t, "omega_rho": density(t)})


def xi_checks(alphas: Sequence[float], n_max: int, order: int, tolerance: float) -> List[CheckResult]:
    """Definition-1 suite: smoothing equation, closed-form facts, moments and the weak resolution."""
    f = as_symbol(alphas)
    density = solve_omega_xi(f)
    p_values = np.linspace(-3.0, 3.0, 20)
    smoothing = verify_smoothing_equation(density, f, p_values, order)
    free = moment_check_xi([], min(n_max, 20), order)
    moments = moment_check_xi(alphas, n_max, order)
    lhs, rhs = smeared_resolution_check(f)
    return [
        CheckResult.compare("omega_xi_smoothing_equation",
                            "int omega_xi(x) exp(4px - 2x^2) dx = (2 pi)^-1/2 f(p) exp(2p^2)",
                            smoothing["residual"].max(), 1e-10),
        CheckResult.compare("omega_xi_even_leading",
                            "omega_xi even with leading coefficient 1/pi",
                            abs(density.leading_coefficient * np.pi - 1.0) + (0.0 if density.is_even else 1.0),
                            1e-12),
        CheckResult.compare("reduction_identity",
                            "int dy exp(-x^2-y^2) conj(z)^n z^k = exp(-x^2) P_nk(x)",
                            check_reduction_identity(min(n_max, 10)), 1e-10),
        CheckResult.compare("free_measure_moments", "a_n a_k int dxdy/pi |Phi|^2 conj(z)^n z^k = delta_nk",
                            free.max_residual, min(tolerance, 1e-10)),
        CheckResult.compare("xi_moments", "a_n a_k int d(mu_xi) |Phi|^2 conj(z)^n z^k = S_nk",
                            moments.max_residual, tolerance),
        CheckResult.compare("xi_smeared_resolution",
                            "int d(mu_xi) <g|xi_z><xi_z|h> = <g|h> for Gaussian packets",
                            np.max(np.abs(lhs - rhs)), 1e-6),
    ]


def rho_checks(alphas: Sequence[float], n_max: int, tolerance: float, p_max: float = 5.0) -> List[CheckResult]:
    """Definition-2 suite: Fourier reconstruction of 1/f, functional moments and sampled arguments."""
    n_max = min(n_max, 8)
    density = build_rho_density(alphas)
    reciprocal = verify_reciprocal_symbol(density, np.linspace(-p_max, p_max, 101))
    moments = moment_check_rho(alphas, n_max)
    props = functional_properties(density, min(n_max, 4))
    corner = TestFunctionSpec.hermite_gaussian(0, 0)
    sampled = corner.sampled(SAMPLE_GRID)
    admissibility = admissibility_report(sampled)
    sampled_gap = (abs(eval_functional_rho(density, sampled) - eval_functional_rho(density, corner))
                   if admissibility["admissible"] else np.inf)
    return [
        CheckResult.compare("one_over_f_reconstruction",
                            "pi int omega_rho~(t) exp(-t^2/8 + ipt) dt = 1/f(p)",
                            reciprocal["residual"].max(), 1e-8),
        CheckResult.compare("rho_moments", "a_n a_k omega_rho(Phi z^n, Phi z^k) = S^-1_nk",
                            moments.max_residual, tolerance),
        CheckResult.compare("rho_hermitian", "omega_rho(F_nk) = conj omega_rho(F_kn)",
                            props["hermitian"], 1e-10),
        CheckResult.compare("rho_linearity", "omega_rho linear in the second argument",
                            props["linearity"], 1e-8),
        CheckResult.compare("rho_positivity", "omega_rho(F_nn) > 0",
                            0.0 if props["positivity_min"] > 0 else np.inf, 0.0),
        CheckResult.compare("rho_sampled_argument",
                            "omega_rho(F_00) from grid samples = closed form (admissible samples)",
                            sampled_gap, 1e-5),
    ]
