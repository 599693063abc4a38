"""
Linearized Polynomials as F2-Linear Maps

Purpose: Represent maps x -> sum c_t x^(2^{j_t}) on GF(2^n) as packed bit
matrices, compute kernels, and derive the quadratic-form rank r_{alpha,beta}
from the kernel of

    phi_{alpha,beta}(x) = alpha^{2^{3k}} x^{2^{6k}} + beta^{2^{3k}} x^{2^{4k}}
                          + beta^{2^{2k}} x^{2^{2k}} + alpha x

Matrices are stored column-wise: column j is the image of the basis element
x^j as an n-bit word. Elimination works on those words directly (XOR basis
keyed by leading bit); `batch_kernel_dims` runs the same elimination for every
beta at once with numpy.
"""

import functools
import logging
from dataclasses import dataclass
from typing import Optional

import galois
import numpy as np

from kasami_welch.errors import DegenerateInputError, VerificationError
from kasami_welch.field_core import (
    FieldElement,
    FieldSpec,
    ParamSet,
    field_for,
    frob,
    frob_table,
    mul,
    mul_array,
)

logger = logging.getLogger(__name__)

Term = tuple[FieldElement, int]


@dataclass(frozen=True, eq=False)
class LinearMap2:
    """An F2-linear endomorphism of GF(2^n).

    Attributes:
        field: Field the map acts on
        columns: columns[j] = image of x^j, packed as an n-bit int
        terms: Monomial provenance (coefficient, frobenius power) if built from one
    """

    field: FieldSpec
    columns: tuple[int, ...]
    terms: Optional[tuple[Term, ...]] = None

    @property
    def matrix(self) -> np.ndarray:
        """n x n uint8 matrix with entry (i, j) = bit i of column j."""
        n = self.field.n
        cols = np.array(self.columns, dtype=np.int64)
        return ((cols[None, :] >> np.arange(n)[:, None]) & 1).astype(np.uint8)

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = 0
        j = 0
        while x:
            if x & 1:
                acc ^= self.columns[j]
            x >>= 1
            j += 1
        return acc

    def evaluate_terms(self, x: FieldElement) -> FieldElement:
        """Evaluate the monomial form directly (requires provenance terms)."""
        if self.terms is None:
            raise DegenerateInputError("Map has no monomial provenance")
        acc = 0
        for coeff, j in self.terms:
            acc ^= mul(self.field, coeff, frob(self.field, x, j))
        return acc

    def is_zero(self) -> bool:
        return not any(self.columns)


@dataclass(frozen=True)
class RankRecord:
    """Kernel dimension and quadratic-form rank of one (alpha, beta) pair."""

    alpha: FieldElement
    beta: FieldElement
    kernel_dim_f2: int
    rank: int


# ==================== Construction ====================


def monomial_map(field: FieldSpec, terms: list[Term]) -> LinearMap2:
    """Build x -> sum coeff * x^(2^j) from (coeff, j) terms (j reduced mod n)."""
    n = field.n
    basis = 1 << np.arange(n, dtype=np.int64)
    cols = np.zeros(n, dtype=np.int64)
    normalized = []
    for coeff, j in terms:
        j %= n
        normalized.append((coeff, j))
        if coeff == 0:
            continue
        images = frob_table(field, j)[basis]
        cols ^= mul_array(field, coeff, images)
    return LinearMap2(field=field, columns=tuple(int(c) for c in cols), terms=tuple(normalized))


def phi_terms(params: ParamSet, alpha: FieldElement, beta: FieldElement) -> list[Term]:
    field = field_for(params)
    k = params.k
    return [
        (frob(field, alpha, 3 * k), 6 * k),
        (frob(field, beta, 3 * k), 4 * k),
        (frob(field, beta, 2 * k), 2 * k),
        (alpha, 0),
    ]


def phi_map(params: ParamSet, alpha: FieldElement, beta: FieldElement) -> LinearMap2:
    """The linearized polynomial phi_{alpha,beta} as an F2-linear map."""
    return monomial_map(field_for(params), phi_terms(params, alpha, beta))


# ==================== Kernels ====================


def gf2_rank(columns: tuple[int, ...]) -> int:
    """Rank of packed column words over F2 (XOR basis by leading bit)."""
    basis: dict[int, int] = {}
    for col in columns:
        v = col
        while v:
            lead = v.bit_length() - 1
            pivot = basis.get(lead)
            if pivot is None:
                basis[lead] = v
                break
            v ^= pivot
    return len(basis)


def kernel_dim(linear_map: LinearMap2) -> int:
    """F2-dimension of the null space (0 <= result <= n)."""
    if linear_map.is_zero():
        return linear_map.field.n
    return linear_map.field.n - gf2_rank(linear_map.columns)


def kernel_basis(linear_map: LinearMap2) -> list[FieldElement]:
    """F2 basis of the kernel as field elements (galois GF2 null space)."""
    n = linear_map.field.n
    gf2_matrix = galois.GF2(linear_map.matrix)
    null = gf2_matrix.null_space()
    basis = []
    for row in np.asarray(null, dtype=np.int64):
        basis.append(int(sum(int(bit) << i for i, bit in enumerate(row[:n]))))
    return basis


def kernel_span(linear_map: LinearMap2) -> list[FieldElement]:
    """Every kernel element, from the basis."""
    span = [0]
    for b in kernel_basis(linear_map):
        span += [x ^ b for x in span]
    return sorted(span)


# ==================== Ranks ====================


def allowed_ranks(params: ParamSet) -> frozenset[int]:
    """Possible r_{alpha,beta} for nonzero pairs by the parity of s."""
    s = params.s
    if params.s_even:
        return frozenset({s, s - 2, s - 4, s - 6})
    return frozenset({s - 1, s - 3})


def rank_from_kernel(params: ParamSet, kdim: int) -> int:
    if kdim % params.d != 0:
        raise VerificationError(
            f"Kernel dimension {kdim} is not a multiple of d={params.d}",
            params=params.as_tuple(),
        )
    return params.s - kdim // params.d


def rank_of(params: ParamSet, alpha: FieldElement, beta: FieldElement) -> RankRecord:
    """Rank r_{alpha,beta} = s - dim ker(phi_{alpha,beta}) / d.

    Raises:
        DegenerateInputError: For (alpha, beta) = (0, 0)
        VerificationError: If the rank falls outside the possible set (non-degenerate params)
    """
    if alpha == 0 and beta == 0:
        raise DegenerateInputError("Rank is undefined for (0, 0)", params=params.as_tuple())
    kdim = kernel_dim(phi_map(params, alpha, beta))
    rank = rank_from_kernel(params, kdim)
    if rank not in allowed_ranks(params):
        if params.code_degenerate:
            logger.warning("Rank %d outside expected set for (%d, %d)", rank, alpha, beta)
        else:
            raise VerificationError(
                f"Rank {rank} of ({alpha}, {beta}) is outside {sorted(allowed_ranks(params))}",
                params=params.as_tuple(),
            )
    return RankRecord(alpha=alpha, beta=beta, kernel_dim_f2=kdim, rank=rank)


@functools.lru_cache(maxsize=4)
def _beta_columns(params: ParamSet) -> np.ndarray:
    """Table (q, n): column j of the beta part of phi_{0,beta} for every beta."""
    field = field_for(params)
    n, k = params.n, params.k
    basis = 1 << np.arange(n, dtype=np.int64)
    e4 = frob_table(field, 4 * k)[basis]
    e2 = frob_table(field, 2 * k)[basis]
    b3 = frob_table(field, 3 * k)
    b2 = frob_table(field, 2 * k)
    cols = mul_array(field, b3[:, None], e4[None, :]) ^ mul_array(field, b2[:, None], e2[None, :])
    cols.setflags(write=False)
    return cols


def _alpha_columns(params: ParamSet, alpha: FieldElement) -> np.ndarray:
    field = field_for(params)
    terms = [(frob(field, alpha, 3 * params.k), 6 * params.k), (alpha, 0)]
    return np.array(monomial_map(field_for(params), terms).columns, dtype=np.int64)


def batch_kernel_dims(params: ParamSet, alpha: FieldElement) -> np.ndarray:
    """Kernel dimensions of phi_{alpha,beta} for every beta in GF(2^n) at once.

    Returns:
        int64 array indexed by beta
    """
    n = params.n
    cols = _beta_columns(params) ^ _alpha_columns(params, alpha)[None, :]
    basis = np.zeros_like(cols)
    for j in range(n):
        v = cols[:, j].copy()
        for b in range(n - 1, -1, -1):
            has_bit = ((v >> b) & 1).astype(bool)
            pivot = basis[:, b]
            take = has_bit & (pivot == 0)
            reduce = has_bit & (pivot != 0)
            basis[take, b] = v[take]
            v[take] = 0
            v[reduce] ^= pivot[reduce]
    return n - np.count_nonzero(basis, axis=1).astype(np.int64)


def batch_ranks(params: ParamSet, alpha: FieldElement) -> np.ndarray:
    """Ranks for every beta (entry for beta = 0 is meaningless when alpha = 0)."""
    kdims = batch_kernel_dims(params, alpha)
    if np.any(kdims % params.d):
        raise VerificationError(
            f"Kernel dimension not a multiple of d={params.d} for alpha={alpha}",
            params=params.as_tuple(),
        )
    return params.s - kdims // params.d
