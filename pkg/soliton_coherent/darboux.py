"""
Crum-Darboux transformation of the free particle into an N-soliton Hamiltonian

Transformation functions u_j = cosh(alpha_j x + c_j) for odd j and
sinh(alpha_j x + c_j) for even j (alphas increasing) give a nodeless
Wronskian W = W(u_1, ..., u_N) and

    V1 = -2 d^2/dx^2 ln W,    L psi = W(u_1, ..., u_N, psi) / W,
    L^+ L = prod_k (h0 + alpha_k^2),    L h0 = h1 L.

Every determinant is evaluated with column j scaled by exp(-|alpha_j x + c_j|),
so nothing overflows on wide grids; the scale factors cancel in every ratio.
Derivatives of a determinant with rows (r_1 < ... < r_N) of derivative
orders are sums of determinants with one r_i raised by one.

The continuum is phi_p = N_p^{-1} L psi_p with psi_p = (2 pi)^{-1/2} exp(i p x)
and N_p^2 = prod_k (p^2 + alpha_k^2); L^+ acts spectrally,
L^+ phi = int dp N_p psi_p <phi_p|phi>.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Dict, List, Optional, Protocol, Tuple, Union, runtime_checkable

import numpy as np
import pandas as pd

from .basis import (QuadratureRule, UniformGrid, momentum_table, position_table,
                    trapezoid_rule)
from .config import Config
from .models import CheckResult, SolitonSpec
from .symmetry import poly_from_alphas, s_inverse_block, s_matrix
from .utils import InvalidParameterError, NumericalFailure

logger = logging.getLogger(__name__)

# relative size of the projection onto the edge of the p window
SPECTRAL_EDGE_TOLERANCE = 1e-8


class ConstructionError(NumericalFailure):
    pass


class SpectralQuadratureError(NumericalFailure):
    pass


@runtime_checkable
class AnalyticState(Protocol):
    """A state whose x-derivatives are known exactly."""

    def derivatives(self, x: np.ndarray, order: int) -> np.ndarray:
        """Rows d^r psi / dx^r, r = 0..order, sampled at ``x``."""
        ...


@dataclass(frozen=True)
class PlaneWave:
    """psi_p(x, t) = (2 pi)^{-1/2} exp(i p x - i p^2 t)"""
    p: float
    t: float = 0.0

    def derivatives(self, x: np.ndarray, order: int) -> np.ndarray:
        wave = np.exp(1j * (self.p * np.asarray(x) - self.p ** 2 * self.t)) / np.sqrt(2.0 * np.pi)
        return np.array([(1j * self.p) ** r * wave for r in range(order + 1)])


def momentum_apply(coeffs: np.ndarray) -> np.ndarray:
    """P c on coefficients; the result is one entry longer so that nothing is truncated."""
    size = len(coeffs)
    out = np.zeros(size + 1, dtype=complex)
    out[1:] += np.sqrt(np.arange(1, size + 1)) / 2.0 * coeffs
    out[: size - 1] += np.sqrt(np.arange(1, size)) / 2.0 * coeffs[1:]
    return out


@dataclass(frozen=True)
class BasisCombination:
    """sum_n coeffs[n] psi_n(x, t); d/dx acts as i P on the coefficients."""
    coeffs: Tuple[complex, ...]
    t: float = 0.0

    @classmethod
    def single(cls, n: int, t: float = 0.0) -> "BasisCombination":
        coeffs = np.zeros(n + 1, dtype=complex)
        coeffs[n] = 1.0
        return cls(tuple(coeffs), t)

    def derivatives(self, x: np.ndarray, order: int) -> np.ndarray:
        current = np.asarray(self.coeffs, dtype=complex)
        table = position_table(len(current) - 1 + order, x, self.t)
        rows = []
        for _ in range(order + 1):
            rows.append(current @ table[: len(current)])
            current = 1j * momentum_apply(current)
        return np.array(rows)


@dataclass(frozen=True)
class HyperbolicSeed:
    """Transformation function u_j with its time phase exp(i alpha^2 t)."""
    alpha: float
    shift: float
    is_cosh: bool
    t: float = 0.0

    def derivatives(self, x: np.ndarray, order: int) -> np.ndarray:
        theta = self.alpha * np.asarray(x) + self.shift
        phase = np.exp(1j * self.alpha ** 2 * self.t)
        rows = []
        for r in range(order + 1):
            even = (r % 2 == 0) == self.is_cosh
            rows.append(self.alpha ** r * (np.cosh(theta) if even else np.sinh(theta)) * phase)
        return np.array(rows)


def transformation_function(spec: SolitonSpec, j: int, t: float = 0.0) -> HyperbolicSeed:
    """u_j, counted from 1."""
    if not 1 <= j <= spec.order:
        raise InvalidParameterError(f"transformation function index {j} outside 1..{spec.order}")
    return HyperbolicSeed(spec.alphas[j - 1], spec.shifts[j - 1], is_cosh=(j % 2 == 1), t=t)


def _shift_expand(rows: Tuple[int, ...], order: int) -> Counter:
    """Row sets (with multiplicities) of the order-th derivative of a row-set determinant."""
    terms = Counter({rows: 1})
    for _ in range(order):
        expanded = Counter()
        for current, count in terms.items():
            for i in range(len(current)):
                raised = current[i] + 1
                if i + 1 < len(current) and current[i + 1] == raised:
                    continue
                expanded[current[:i] + (raised,) + current[i + 1:]] += count
        terms = expanded
    return terms


class CrumTransform:
    """Scaled Wronskian determinants of the transformation functions on fixed samples."""

    def __init__(self, spec: SolitonSpec, x: np.ndarray):
        self.spec = spec
        self.x = np.asarray(x, dtype=float)
        self.alphas = np.asarray(spec.alphas)
        theta = np.outer(self.x, self.alphas) + np.asarray(spec.shifts)
        decay = np.exp(-2.0 * np.abs(theta))
        self._scaled_cosh = 0.5 * (1.0 + decay)
        self._scaled_sinh = 0.5 * np.sign(theta) * (1.0 - decay)
        self._is_cosh = np.arange(spec.order) % 2 == 0
        self._dets: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], np.ndarray] = {}
        self._check_nodeless()

    @property
    def order(self) -> int:
        return self.spec.order

    def column_values(self, r: int) -> np.ndarray:
        """Scaled u_j^{(r)} for all j, shape (points, N)."""
        use_cosh = self._is_cosh == (r % 2 == 0)
        return np.where(use_cosh, self._scaled_cosh, self._scaled_sinh) * self.alphas ** r

    def det(self, rows: Tuple[int, ...], columns: Optional[Tuple[int, ...]] = None) -> np.ndarray:
        columns = tuple(range(self.order)) if columns is None else columns
        key = (rows, columns)
        if key not in self._dets:
            if not rows:
                self._dets[key] = np.ones_like(self.x)
            else:
                stacked = np.stack([self.column_values(r)[:, columns] for r in rows], axis=1)
                self._dets[key] = np.linalg.det(stacked)
        return self._dets[key]

    def wronskian(self, order: int = 0) -> np.ndarray:
        """Scaled d^order W / dx^order."""
        base = tuple(range(self.order))
        return sum(count * self.det(rows) for rows, count in _shift_expand(base, order).items())

    def _check_nodeless(self):
        w = self.wronskian(0)
        if np.any(np.sign(w) != np.sign(w[0])) or np.min(np.abs(w)) < 1e-280:
            raise ConstructionError(
                f"Wronskian vanishes on the grid for alphas={list(self.spec.alphas)}; "
                "the cosh/sinh alternation needs strictly increasing alphas"
            )

    @cached_property
    def potential(self) -> np.ndarray:
        w0, w1, w2 = (self.wronskian(m) for m in range(3))
        return -2.0 * (w2 / w0 - (w1 / w0) ** 2)

    @cached_property
    def coefficients(self) -> np.ndarray:
        """b_k(x) of L = sum_k b_k d^k/dx^k, rows k = 0..N (b_N = 1)."""
        n = self.order
        full = tuple(range(n + 1))
        w = self.wronskian(0)
        return np.array([
            (-1) ** (n + k) * self.det(full[:k] + full[k + 1:]) / w for k in range(n + 1)
        ])

    def _extended_det(self, rows: Tuple[int, ...], psi: np.ndarray) -> np.ndarray:
        """Scaled W-type determinant with the unscaled psi derivatives as last column."""
        n = self.order
        total = 0
        for i, r in enumerate(rows):
            total = total + (-1) ** (i + n) * psi[r] * self.det(rows[:i] + rows[i + 1:])
        return total

    def apply(self, psi_derivatives: np.ndarray, order: int = 0) -> np.ndarray:
        """
        Rows d^m (L psi)/dx^m, m = 0..order, from the rows of psi derivatives
        (at least N + order + 1 of them).
        """
        n = self.order
        if len(psi_derivatives) < n + order + 1:
            raise InvalidParameterError(f"need {n + order + 1} derivative rows, got {len(psi_derivatives)}")
        base = tuple(range(n + 1))
        numerator = [
            sum(count * self._extended_det(rows, psi_derivatives) for rows, count in _shift_expand(base, m).items())
            for m in range(order + 1)
        ]
        w = [self.wronskian(m) for m in range(order + 1)]
        result = []
        for m in range(order + 1):
            value = numerator[m] - sum(comb(m, j) * w[j] * result[m - j] for j in range(1, m + 1))
            result.append(value / w[0])
        return np.array(result)

    def bound_state_shapes(self) -> np.ndarray:
        """W(u without u_i)/W(u), rows i = 1..N (unnormalized, real)."""
        n = self.order
        w = self.wronskian(0)
        rows = tuple(range(n - 1))
        shapes = []
        for i in range(n):
            columns = tuple(j for j in range(n) if j != i)
            theta = self.alphas[i] * self.x + self.spec.shifts[i]
            shapes.append(self.det(rows, columns) / w * np.exp(-np.abs(theta)))
        return np.array(shapes)


@lru_cache(maxsize=16)
def crum_transform(spec: SolitonSpec, grid: UniformGrid) -> CrumTransform:
    logger.debug(f"building Crum transform for alphas={list(spec.alphas)} on {grid}")
    return CrumTransform(spec, grid.x)


def default_grid() -> UniformGrid:
    return UniformGrid.parse(Config.GRID)


def normalization(spec: SolitonSpec, p) -> np.ndarray:
    """N_p = prod_k (p^2 + alpha_k^2)^{1/2}"""
    p2 = np.asarray(p, dtype=float)[..., None] ** 2
    return np.sqrt(np.prod(p2 + np.asarray(spec.alphas) ** 2, axis=-1))


def soliton_potential(spec: SolitonSpec, grid: UniformGrid, t: float = 0.0) -> np.ndarray:
    """V1 = -2 (ln W)''; the phases exp(i alpha_j^2 t) factor out of W, so V1 does not depend on t."""
    return crum_transform(spec, grid).potential


PsiInput = Union[AnalyticState, np.ndarray]


def state_derivatives(psi: PsiInput, grid: UniformGrid, order: int) -> np.ndarray:
    if isinstance(psi, AnalyticState):
        return psi.derivatives(grid.x, order)
    samples = np.asarray(psi)
    return np.array([samples] + [grid.derivative(samples, r) for r in range(1, order + 1)])


def apply_L(spec: SolitonSpec, psi: PsiInput, grid: UniformGrid, order: int = 0) -> np.ndarray:
    """
    L psi on the grid; exact derivatives for analytic states, spectral ones for samples.

    With ``order > 0`` returns the rows d^m (L psi), m = 0..order.
    """
    crum = crum_transform(spec, grid)
    values = crum.apply(state_derivatives(psi, grid, spec.order + order), order)
    return values if order else values[0]


def apply_h1(spec: SolitonSpec, samples: np.ndarray, grid: UniformGrid) -> np.ndarray:
    return -grid.derivative(samples, 2) + soliton_potential(spec, grid) * samples


def apply_f_h1(spec: SolitonSpec, samples: np.ndarray, grid: UniformGrid) -> np.ndarray:
    """prod_k (h1 + alpha_k^2) applied to samples."""
    result = np.asarray(samples)
    for alpha in spec.alphas:
        result = apply_h1(spec, result, grid) + alpha ** 2 * result
    return result


def phi_p_table(spec: SolitonSpec, p: np.ndarray, grid: UniformGrid, t: float = 0.0) -> np.ndarray:
    """phi_p(x, t) for every p (rows) via L exp(ipx) = exp(ipx) sum_k b_k (ip)^k."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    b = crum_transform(spec, grid).coefficients
    symbol = sum(np.outer((1j * p) ** k, b[k]) for k in range(spec.order + 1))
    waves = np.exp(1j * (np.outer(p, grid.x) - (p ** 2 * t)[:, None])) / np.sqrt(2.0 * np.pi)
    return waves * symbol / normalization(spec, p)[:, None]


def phi_p(spec: SolitonSpec, p: float, grid: UniformGrid, t: float = 0.0) -> np.ndarray:
    return phi_p_table(spec, [p], grid, t)[0]


def continuum_residual(spec: SolitonSpec, p: float, grid: UniformGrid, interior: float = 0.9) -> float:
    """max |(h1 - p^2) phi_p| / max |phi_p| on the interior, with exact derivatives."""
    rows = apply_L(spec, PlaneWave(p), grid, order=2)
    residual = -rows[2] + soliton_potential(spec, grid) * rows[0] - p ** 2 * rows[0]
    mask = np.abs(grid.x) <= interior * max(abs(grid.x_min), abs(grid.x_max))
    return float(np.max(np.abs(residual[mask])) / np.max(np.abs(rows[0])))


@dataclass
class ContinuumBasis:
    """phi_p sampled on the x grid for the nodes of a p-trapezoid rule."""
    spec: SolitonSpec
    grid: UniformGrid
    rule: QuadratureRule

    @cached_property
    def table(self) -> np.ndarray:
        return phi_p_table(self.spec, self.rule.nodes, self.grid)

    @cached_property
    def norms(self) -> np.ndarray:
        return normalization(self.spec, self.rule.nodes)

    def project(self, samples: np.ndarray) -> np.ndarray:
        """<phi_p|phi> by x-trapezoid, for one state or a stack of states."""
        samples = np.atleast_2d(samples)
        weights = np.full(self.grid.points, self.grid.dx)
        weights[[0, -1]] *= 0.5
        return (samples * weights) @ np.conj(self.table).T

    def synthesize(self, amplitudes: np.ndarray, kernel: str = "free") -> np.ndarray:
        """
        int dp K_p(x) amplitudes(p) by p-trapezoid, with K_p = psi_p ("free")
        or K_p = phi_p ("soliton").
        """
        amplitudes = np.atleast_2d(amplitudes) * self.rule.weights
        if kernel == "free":
            waves = np.exp(1j * np.outer(self.rule.nodes, self.grid.x)) / np.sqrt(2.0 * np.pi)
            return amplitudes @ waves
        return amplitudes @ self.table


@lru_cache(maxsize=8)
def continuum_basis(spec: SolitonSpec, grid: UniformGrid, p_max: float = Config.P_MAX,
                    p_points: int = Config.P_POINTS) -> ContinuumBasis:
    return ContinuumBasis(spec, grid, trapezoid_rule(-p_max, p_max, p_points))


def _check_edges(amplitudes: np.ndarray, scale: np.ndarray):
    edges = np.max(np.abs(amplitudes[:, [0, -1]]), axis=1)
    bad = edges > SPECTRAL_EDGE_TOLERANCE * np.maximum(scale, 1e-300)
    if np.any(bad):
        raise SpectralQuadratureError(
            f"spectral amplitude has not decayed at the p-window edge ({edges.max():.3e}); widen the p window"
        )


def apply_L_plus(spec: SolitonSpec, phi: np.ndarray, grid: UniformGrid,
                 basis: Optional[ContinuumBasis] = None) -> np.ndarray:
    """L^+ phi = int dp N_p psi_p <phi_p|phi>; accepts one state or a stack."""
    basis = basis or continuum_basis(spec, grid)
    phi = np.atleast_2d(phi)
    amplitudes = basis.project(phi)
    _check_edges(amplitudes, np.array([grid.norm(row) for row in phi]))
    result = basis.synthesize(amplitudes * basis.norms, kernel="free")
    return result if result.shape[0] > 1 else result[0]


def bound_states(spec: SolitonSpec, grid: UniformGrid, t: float = 0.0) -> np.ndarray:
    """
    Normalized phi_{-i}, i = 1..N (rows), times exp(i alpha_i^2 t).

    Each row is real at t = 0 with its largest sample positive.
    """
    shapes = crum_transform(spec, grid).bound_state_shapes()
    states = []
    for alpha, shape in zip(spec.alphas, shapes):
        peak = np.max(np.abs(shape))
        if max(abs(shape[0]), abs(shape[-1])) > 1e-6 * peak:
            raise ConstructionError(f"bound state for alpha={alpha} has not decayed at the grid ends")
        shape = shape / grid.norm(shape)
        shape = shape * np.sign(shape[np.argmax(np.abs(shape))])
        states.append(shape * np.exp(1j * alpha ** 2 * t))
    return np.array(states)


def rayleigh_quotients(spec: SolitonSpec, grid: UniformGrid) -> np.ndarray:
    states = bound_states(spec, grid)
    return np.array([grid.inner(s, apply_h1(spec, s, grid)).real for s in states])


def transformed_basis(spec: SolitonSpec, n_max: int, grid: UniformGrid, t: float = 0.0) -> np.ndarray:
    """phi_n = L psi_n for n = 0..n_max (rows), exact derivatives."""
    return np.array([apply_L(spec, BasisCombination.single(n, t), grid) for n in range(n_max + 1)])


def _spectral_family(spec: SolitonSpec, n_max: int, grid: UniformGrid, power: int, t: float) -> np.ndarray:
    basis = continuum_basis(spec, grid)
    amplitudes = momentum_table(n_max, basis.rule.nodes, t) / basis.norms ** power
    return basis.synthesize(amplitudes, kernel="soliton")


def eta_family(spec: SolitonSpec, n_max: int, grid: UniformGrid, t: float = 0.0) -> np.ndarray:
    """eta_n = int dp N_p^{-1} phi_p <psi_p|psi_n>, rows n = 0..n_max."""
    return _spectral_family(spec, n_max, grid, 1, t)


def xi1_family(spec: SolitonSpec, n_max: int, grid: UniformGrid, t: float = 0.0) -> np.ndarray:
    """xi_n = int dp phi_p <psi_p|psi_n>, rows n = 0..n_max."""
    return _spectral_family(spec, n_max, grid, 0, t)


def eta_n(spec: SolitonSpec, n: int, grid: UniformGrid, t: float = 0.0) -> np.ndarray:
    if n > 20:
        raise InvalidParameterError("eta_n supports n <= 20")
    return eta_family(spec, n, grid, t)[n]


def xi1_n(spec: SolitonSpec, n: int, grid: UniformGrid, t: float = 0.0) -> np.ndarray:
    if n > 20:
        raise InvalidParameterError("xi1_n supports n <= 20")
    return xi1_family(spec, n, grid, t)[n]


def smeared_orthonormality(spec: SolitonSpec, grid: UniformGrid, center: float = 0.7,
                           width: float = 0.6) -> float:
    """|int |int g(p) phi_p dp|^2 dx - int |g|^2 dp| for a Gaussian packet g."""
    basis = continuum_basis(spec, grid)
    g = np.exp(-((basis.rule.nodes - center) ** 2) / (2.0 * width ** 2))
    packet = basis.synthesize(g, kernel="soliton")[0]
    return abs(grid.norm(packet) ** 2 - float(basis.rule.integrate(np.abs(g) ** 2)))


def gram(grid: UniformGrid, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """<left_n|right_k> over rows, by x-trapezoid."""
    weights = np.full(grid.points, grid.dx)
    weights[[0, -1]] *= 0.5
    return (np.conj(left) * weights) @ right.T


def _relative_norms(grid: UniformGrid, difference: np.ndarray, reference: np.ndarray) -> np.ndarray:
    return np.array([grid.norm(d) / grid.norm(r) for d, r in zip(difference, reference)])


def check_factorization(spec: SolitonSpec, n_max: int, grid: Optional[UniformGrid] = None) -> pd.DataFrame:
    """
    Per-n relative residuals of (L^+ L - f(h0)) psi_n, (L L^+ - f(h1)) phi_n
    and (L h0 - h1 L) psi_n.
    """
    if n_max > 12:
        raise InvalidParameterError("check_factorization supports n_max <= 12")
    grid = grid or default_grid()
    degree = 2 * spec.order
    f = poly_from_alphas(spec.alphas)
    s = s_matrix(f, n_max + degree).to_dense()
    psi = position_table(n_max, grid.x)
    phi = transformed_basis(spec, n_max, grid)
    g0_psi = s[:, : n_max + 1].T @ position_table(n_max + degree, grid.x)

    lplus_l = apply_L_plus(spec, phi, grid)
    lplus_l = np.atleast_2d(lplus_l)
    first = _relative_norms(grid, lplus_l - g0_psi, psi)

    l_lplus = np.array([apply_L(spec, row, grid) for row in lplus_l])
    f_h1 = np.array([apply_f_h1(spec, row, grid) for row in phi])
    second = _relative_norms(grid, l_lplus - f_h1, phi)

    potential = soliton_potential(spec, grid)
    third = []
    for n in range(n_max + 1):
        # h0 psi_n = -psi_n'' = P^2 on coefficients
        coeffs = np.zeros(n + 1, dtype=complex)
        coeffs[n] = 1.0
        h0_coeffs = momentum_apply(momentum_apply(coeffs))
        l_h0 = apply_L(spec, BasisCombination(tuple(h0_coeffs)), grid)
        rows = apply_L(spec, BasisCombination.single(n), grid, order=2)
        h1_l = -rows[2] + potential * rows[0]
        third.append(grid.norm(l_h0 - h1_l) / grid.norm(psi[n]))
    frame = pd.DataFrame({"n": np.arange(n_max + 1), "lplus_l": first, "l_lplus": second,
                          "intertwining": np.array(third)})
    logger.info(f"factorization residuals up to n={n_max}: "
                f"{frame[['lplus_l', 'l_lplus', 'intertwining']].max().max():.3e}")
    return frame


def verify_darboux(spec: SolitonSpec, n_max: int, tolerance: float = Config.TOL_DARBOUX,
                   grid: Optional[UniformGrid] = None) -> List[CheckResult]:
    grid = grid or default_grid()
    n_gram = min(n_max, 8)
    f = poly_from_alphas(spec.alphas)
    alphas = np.asarray(spec.alphas)
    potential = soliton_potential(spec, grid)

    factorization = check_factorization(spec, min(n_max, 10), grid)
    phi = transformed_basis(spec, max(n_gram, 10), grid)
    eta = eta_family(spec, n_gram, grid)
    xi1 = xi1_family(spec, n_gram, grid)
    s = s_matrix(f, max(n_gram, 2 * spec.order)).to_dense()[: n_gram + 1, : n_gram + 1]
    s_inv = s_inverse_block(f, n_gram + 1).matrix
    identity = np.eye(n_gram + 1)

    phi_gram = gram(grid, phi[: n_gram + 1], phi[: n_gram + 1])
    bio = gram(grid, eta, phi[: n_gram + 1])
    xi_gram = gram(grid, xi1, xi1)
    eta_gram = gram(grid, eta, eta)
    eta_norms = np.sqrt(np.real(np.diag(eta_gram)))

    bound = bound_states(spec, grid)
    bound_gram = gram(grid, bound, bound)
    bound_phi = gram(grid, bound, phi)
    rayleigh = rayleigh_quotients(spec, grid)
    annihilated = np.atleast_2d(apply_L_plus(spec, bound, grid))
    seeds = [transformation_function(spec, j) for j in range(1, spec.order + 1)]
    seed_residual = max(
        float(np.max(np.abs(apply_L(spec, u, grid))) / np.max(np.abs(u.derivatives(grid.x, 0))))
        for u in seeds
    )

    n_matrix = min(n_max, 6)
    s_big = s_matrix(f, n_matrix + 2 * spec.order).to_dense()
    phi_big = transformed_basis(spec, n_matrix + 2 * spec.order, grid)
    g1_phi = np.array([apply_f_h1(spec, phi_big[n], grid) for n in range(n_matrix + 1)])
    expected = s_big[:, : n_matrix + 1].T @ phi_big
    matrix_identity = _relative_norms(grid, g1_phi - expected, phi_big[: n_matrix + 1])

    continuum = max(continuum_residual(spec, p, grid) for p in (0.0, 0.5, 1.0, 2.5))
    edges = max(abs(potential[0]), abs(potential[-1]))

    scale = np.maximum(1.0, np.abs(s))
    return [
        CheckResult.compare("potential_decay", "V1 -> 0 at the grid ends", edges, 1e-8),
        CheckResult.compare("factorization_lplus_l", "L^+ L = f(h0)",
                            factorization["lplus_l"].max(), tolerance),
        CheckResult.compare("factorization_l_lplus", "L L^+ = f(h1)",
                            factorization["l_lplus"].max(), tolerance),
        CheckResult.compare("intertwining", "L h0 = h1 L", factorization["intertwining"].max(), 1e-5),
        CheckResult.compare("phi_gram", "<phi_n|phi_k>_1 = <psi_n|g0|psi_k>_0 = S_nk",
                            np.max(np.abs(phi_gram - s) / scale), tolerance),
        CheckResult.compare("biorthogonality", "<eta_k|phi_n>_1 = delta_kn",
                            np.max(np.abs(bio - identity)), tolerance),
        CheckResult.compare("xi_orthonormality", "<xi_n|xi_k>_1 = delta_nk",
                            np.max(np.abs(xi_gram - identity)), tolerance),
        CheckResult.compare("eta_gram", "<eta_n|eta_k>_1 = S^-1_nk",
                            np.max(np.abs(eta_gram - s_inv)), 1e-3),
        CheckResult.compare("eta_bounded", "||eta_n||_1 <= prod_k alpha_k^-1",
                            max(0.0, float(np.max(eta_norms) * np.prod(alphas) - 1.0)), 1e-9),
        CheckResult.compare("bound_orthonormality", "<phi_-i|phi_-j> = delta_ij",
                            np.max(np.abs(bound_gram - np.eye(spec.order))), 1e-8),
        CheckResult.compare("kernel_orthogonality", "<phi_-i|phi_n> = 0", np.max(np.abs(bound_phi)), 1e-8),
        CheckResult.compare("rayleigh_quotients", "<phi_-i|h1|phi_-i> = -alpha_i^2",
                            np.max(np.abs(rayleigh + alphas ** 2)), tolerance),
        CheckResult.compare("kernel_annihilation", "L^+ phi_-i = 0",
                            max(grid.norm(row) for row in annihilated), tolerance),
        CheckResult.compare("seed_annihilation", "L u_j = 0", seed_residual, 1e-10),
        CheckResult.compare("transformed_matrix", "g1 phi_n = sum_k S_kn phi_k",
                            np.max(matrix_identity), tolerance),
        CheckResult.compare("continuum_eigenfunction", "h1 phi_p = p^2 phi_p", continuum, tolerance),
        CheckResult.compare("continuum_smeared_orthonormality", "<phi_q|phi_p>_1 = delta(q - p)",
                            smeared_orthonormality(spec, grid), 1e-4),
    ]
