"""
Symmetry operator g0 = f(p_x)

f0(x) = prod_k (x^2 + alpha_k^2) with leading coefficient 1. The matrix of
g0 in the Hermite-Gaussian basis is S = f(P) with P the momentum Jacobi
matrix; S^{-1} is defined as the entrywise limit of inverses of growing
truncations and is returned with a convergence certificate.
"""
import logging
from dataclasses import dataclass, field
from typing import List, NamedTuple, Sequence, Union

import numpy as np
import pandas as pd
import scipy.sparse
from numpy.polynomial import Polynomial

from .banded import BandedSymmetricMatrix
from .basis import momentum_gram, momentum_jacobi
from .config import Config
from .utils import InvalidParameterError, NumericalFailure

logger = logging.getLogger(__name__)

DEGENERACY_THRESHOLD = 1e-6
INITIAL_INVERSE_SIZE = 40

SymbolLike = Union[Polynomial, Sequence[float]]


class ConditioningError(NumericalFailure):
    pass


class ConvergenceError(NumericalFailure):
    """Truncated inverses did not settle before the size cap."""

    def __init__(self, message: str, previous: np.ndarray, current: np.ndarray):
        super().__init__(message)
        self.previous = previous
        self.current = current


@dataclass(frozen=True)
class PartialFractions:
    """1/f0(x) = sum_k residues[k] / (x^2 + alphas[k]^2)"""
    alphas: np.ndarray
    residues: np.ndarray

    def evaluate(self, x) -> np.ndarray:
        x2 = np.asarray(x, dtype=float)[..., None] ** 2
        return np.sum(self.residues / (x2 + self.alphas ** 2), axis=-1)

    def to_dict(self) -> dict:
        return {"alphas": [float(a) for a in self.alphas], "residues": [float(r) for r in self.residues]}


@dataclass(frozen=True)
class InverseBlock:
    """Leading block of S^{-1} with the doubling-size certificate."""
    matrix: np.ndarray
    tolerance: float
    sizes: List[int] = field(default_factory=list)
    differences: List[float] = field(default_factory=list)

    @property
    def achieved(self) -> float:
        return self.differences[-1] if self.differences else 0.0

    def certificate(self) -> dict:
        return {
            "sizes": list(self.sizes),
            "differences": list(self.differences),
            "achieved": self.achieved,
            "tolerance": self.tolerance,
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.matrix, columns=[f"k{j}" for j in range(self.matrix.shape[1])])


class RieszGrams(NamedTuple):
    rho: np.ndarray    # <rho_n|rho_k> = S_nk
    xi: np.ndarray     # <xi_n|xi_k> = S^{-1}_nk
    cross: np.ndarray  # <xi_n|rho_k> = delta_nk


def validate_alphas(alphas: Sequence[float]) -> np.ndarray:
    """Return the alphas sorted increasingly, rejecting nonpositive or repeated values."""
    alphas = np.sort(np.asarray(alphas, dtype=float).ravel())
    if alphas.size == 0:
        raise InvalidParameterError("at least one alpha is required")
    if not np.all(np.isfinite(alphas)) or np.any(alphas <= 0):
        raise InvalidParameterError(f"alphas must be finite and strictly positive, got {alphas.tolist()}")
    if np.any(np.diff(alphas) == 0):
        raise InvalidParameterError(f"alphas must be pairwise distinct, got {alphas.tolist()}")
    return alphas


def poly_from_alphas(alphas: Sequence[float]) -> Polynomial:
    """Expanded prod_k (x^2 + alpha_k^2)."""
    f = Polynomial([1.0])
    for alpha in validate_alphas(alphas):
        f = f * Polynomial([alpha ** 2, 0.0, 1.0])
    return f


def as_symbol(f: SymbolLike) -> Polynomial:
    """Accept either a Polynomial or a sequence of alphas; no alphas means f = 1."""
    if isinstance(f, Polynomial):
        return f
    if len(f) == 0:
        return Polynomial([1.0])
    return poly_from_alphas(f)


def validate_symbol(f: Polynomial) -> Polynomial:
    coef = np.asarray(f.coef, dtype=float)
    coef = np.trim_zeros(coef, "b") if np.any(coef) else np.zeros(1)
    if len(coef) % 2 == 0:
        raise InvalidParameterError(f"symbol must be an even polynomial, got degree {len(coef) - 1}")
    if np.any(coef[1::2] != 0):
        raise InvalidParameterError("symbol must be even: odd coefficients are nonzero")
    if coef[-1] <= 0 or coef[0] <= 0:
        raise InvalidParameterError("symbol must be strictly positive on the real line")
    roots = Polynomial(coef[::2]).roots()
    # a positive real root in x^2 is a real zero of f
    if np.any((np.abs(roots.imag) < 1e-12) & (roots.real >= 0)):
        raise InvalidParameterError("symbol has real zeros")
    return Polynomial(coef)


def partial_fractions(alphas: Sequence[float]) -> PartialFractions:
    """
    Residues A_k = 1 / prod_{j != k} (alpha_j^2 - alpha_k^2).

    Raises:
        ConditioningError: if two alphas are closer than 1e-6
    """
    alphas = validate_alphas(alphas)
    gaps = np.diff(alphas)
    if gaps.size and gaps.min() < DEGENERACY_THRESHOLD:
        raise ConditioningError(f"alphas nearly degenerate (min gap {gaps.min():.3g}); residues ill-conditioned")
    squares = alphas ** 2
    residues = np.array([
        1.0 / np.prod(np.delete(squares, k) - squares[k]) for k in range(len(alphas))
    ])
    return PartialFractions(alphas, residues)


def s_matrix(f: SymbolLike, n_max: int, jacobi_sign: int = 1) -> BandedSymmetricMatrix:
    """
    Leading (n_max+1) block of f(P).

    P is built with n_max + deg f extra rows, so every returned entry equals
    the corresponding entry of the infinite matrix.
    """
    f = validate_symbol(as_symbol(f))
    degree = f.degree()
    if n_max < degree:
        raise InvalidParameterError(f"n_max={n_max} is below the degree {degree} of the symbol")
    if degree == 0:
        return BandedSymmetricMatrix(np.full((1, n_max + 1), f.coef[0]))
    size = n_max + degree + 1
    jacobi = momentum_jacobi(size - 1, sign=jacobi_sign).to_sparse()
    identity = scipy.sparse.identity(size, format="csr")
    result = f.coef[-1] * identity
    for c in f.coef[-2::-1]:
        result = result @ jacobi + c * identity
    block = result[: n_max + 1, : n_max + 1]
    logger.debug(f"S built from f of degree {degree} at size {size}")
    return BandedSymmetricMatrix.from_sparse(block, degree)


def s_inverse_block(f: SymbolLike, block: int, tolerance: float = 1e-6,
                    size_cap: int = Config.INVERSE_SIZE_CAP) -> InverseBlock:
    """
    Leading block x block of S^{-1} from truncations of size M, 2M, 4M, ...

    Stops when two successive blocks differ by at most ``tolerance`` in max
    norm. ``size_cap`` must allow at least two truncations.

    Raises:
        InvalidParameterError: ``size_cap`` below twice the starting size
        ConvergenceError: no agreement before ``size_cap``; carries the last two iterates
    """
    f = validate_symbol(as_symbol(f))
    if int(block) != block or block < 1:
        raise InvalidParameterError(f"block must be a positive integer, got {block}")
    if f.degree() == 0:
        return InverseBlock(np.eye(block) / f.coef[0], tolerance, [block], [0.0])
    size = max(INITIAL_INVERSE_SIZE, 4 * block, f.degree() + 1)
    if size_cap < 2 * size:
        raise InvalidParameterError(
            f"size_cap={size_cap} leaves no room for two truncations starting at size {size}"
        )
    sizes, differences = [], []
    previous = older = None
    while size <= size_cap:
        truncated = s_matrix(f, size - 1)
        current = truncated.solve(np.eye(size)[:, :block])[:block]
        current = 0.5 * (current + current.T)
        sizes.append(size)
        if previous is not None:
            difference = float(np.max(np.abs(current - previous)))
            differences.append(difference)
            logger.debug(f"S^-1 block {block}: size {size}, change {difference:.3e}")
            if difference <= tolerance:
                logger.info(f"S^-1 block {block} certified at size {size} (change {difference:.2e})")
                return InverseBlock(current, tolerance, sizes, differences)
        older, previous = previous, current
        size *= 2
    raise ConvergenceError(
        f"S^-1 block {block} did not reach tolerance {tolerance:g} below size cap {size_cap}",
        older, previous,
    )


def riesz_grams(f: SymbolLike, n_max: int, order: int = 200) -> RieszGrams:
    """
    Gram matrices of rho_n = f(p)^{1/2} psi_n and xi_n = f(p)^{-1/2} psi_n,
    by momentum quadrature.
    """
    f = validate_symbol(as_symbol(f))
    rho = momentum_gram(f, n_max, order)
    xi = momentum_gram(lambda p: 1.0 / f(p), n_max, order)
    # f^{-1/2} f^{1/2} = 1 pointwise
    cross = momentum_gram(np.ones_like, n_max, order)
    return RieszGrams(rho, xi, cross)
