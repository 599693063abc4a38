"""
Cyclic Codes C1 and C2

Purpose: Build the binary cyclic codes of length l = 2^n - 1

    C1 = { (Tr(alpha pi^{i e1} + beta pi^{i e2}))_i }
    C2 = { (Tr(alpha pi^{i e1} + beta pi^{i e2} + gamma pi^i))_i }

with e1 = 2^{3k} + 1, e2 = 2^k + 1, and count their weights either from the
exponential sums (weight = 2^{n-1} - value / 2) or from the codewords
themselves. Also: cyclotomic cosets, minimal polynomials over F2 (galois)
and the punctured code C1' of length (2^n - 1) / (2^d + 1).
"""

import functools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Literal, Optional

import galois
import numpy as np

from kasami_welch.distributions import theorem1_table, theorem2_table
from kasami_welch.errors import DegenerateInputError, ParameterError, VerificationError
from kasami_welch.exp_sums import s_lemma2_histogram, t_histogram
from kasami_welch.field_core import (
    FieldElement,
    FieldSpec,
    ParamSet,
    coset_representative,
    field_for,
    mul,
    power,
    trace_sequence,
)
from kasami_welch.guards import check_size_guard, get_size_guard
from kasami_welch.parallel import map_reduce_histograms, split_range

logger = logging.getLogger(__name__)

CodeName = Literal["C1", "C2"]
WeightStrategy = Literal["via_sums", "direct"]


@dataclass(frozen=True)
class CosetRecord:
    representative: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True, eq=False)
class Codeword:
    """One codeword of C1 (two coefficients) or C2 (three coefficients).

    Attributes:
        params: Parameter set
        bits: uint8 array of length 2^n - 1
        coeffs: (alpha, beta) or (alpha, beta, gamma); None for shifted words
    """

    params: ParamSet
    bits: np.ndarray
    coeffs: Optional[tuple[FieldElement, ...]] = None

    @property
    def weight(self) -> int:
        return int(self.bits.sum())

    @property
    def code(self) -> Optional[CodeName]:
        if self.coeffs is None:
            return None
        return "C1" if len(self.coeffs) == 2 else "C2"


@dataclass
class WeightDistribution:
    """Hamming weight -> number of codewords.

    Attributes:
        params: Parameter set
        code: C1, C2 or C1' (punctured)
        length: Code length
        dimension: Dimension over F2 (total = 2^dimension)
        entries: weight -> count, ascending
        strategy: How the counts were obtained
        unreliable: Set for degenerate parameters on the via_sums path
    """

    params: ParamSet
    code: str
    length: int
    dimension: int
    entries: dict[int, int]
    strategy: str
    unreliable: bool = False

    def __post_init__(self) -> None:
        self.entries = {w: c for w, c in sorted(self.entries.items()) if c}

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def get(self, weight: int) -> int:
        return self.entries.get(weight, 0)


# ==================== Cosets and Minimal Polynomials ====================


def cyclotomic_coset(n: int, e: int) -> CosetRecord:
    """2-cyclotomic coset {e 2^j mod 2^n - 1}."""
    order = (1 << n) - 1
    e %= order
    members = {e}
    x = (2 * e) % order
    while x not in members:
        members.add(x)
        x = (2 * x) % order
    return CosetRecord(representative=coset_representative(n, e), members=tuple(sorted(members)))


@functools.lru_cache(maxsize=None)
def galois_field(n: int, modulus: int) -> type[galois.FieldArray]:
    """galois GF(2^n) with the same modulus and primitive element as make_field(n)."""
    return galois.GF(2**n, irreducible_poly=galois.Poly.Int(modulus), primitive_element=2)


def minimal_poly(field: FieldSpec, e: int) -> galois.Poly:
    """Minimal polynomial of pi^{-e} over F2.

    Built as prod (x + pi^{-e 2^j}) over the coset of e; every coefficient
    must land in F2.

    Raises:
        VerificationError: If a coefficient is not in F2 or the result is reducible
    """
    GF = galois_field(field.n, field.modulus)
    coset = cyclotomic_coset(field.n, e)
    roots = GF([power(field, field.pi, -member) for member in coset.members])
    coeffs = galois.Poly.Roots(roots).coeffs.view(np.ndarray).astype(np.int64)
    if np.any(coeffs > 1):
        raise VerificationError(f"Minimal polynomial of pi^-{e} has coefficients outside F2")
    poly = galois.Poly(coeffs, field=galois.GF2)
    if not poly.is_irreducible():
        raise VerificationError(f"Minimal polynomial of pi^-{e} is reducible: {poly}")
    return poly


def code_dimension(params: ParamSet, code: CodeName) -> int:
    """F2-dimension from the distinct cosets of the defining exponents."""
    exponents = [params.e1, params.e2] + ([1] if code == "C2" else [])
    cosets = {c.representative: c for c in (cyclotomic_coset(params.n, e) for e in exponents)}
    return sum(c.size for c in cosets.values())


def check_polynomial(params: ParamSet, code: CodeName) -> galois.Poly:
    """Product of the minimal polynomials over the distinct cosets (degree = dimension)."""
    field = field_for(params)
    exponents = [params.e1, params.e2] + ([1] if code == "C2" else [])
    reps = sorted({coset_representative(params.n, e) for e in exponents})
    product = galois.Poly.One(galois.GF2)
    for rep in reps:
        product *= minimal_poly(field, rep)
    return product


# ==================== Codewords ====================


def _exponents(params: ParamSet, code: CodeName) -> tuple[int, ...]:
    return (params.e1, params.e2, 1) if code == "C2" else (params.e1, params.e2)


def codeword(
    params: ParamSet,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: Optional[FieldElement] = None,
) -> Codeword:
    """Codeword of C1 (gamma None) or C2."""
    coeffs = (alpha, beta) if gamma is None else (alpha, beta, gamma)
    code: CodeName = "C1" if gamma is None else "C2"
    bits = trace_sequence(field_for(params), coeffs, _exponents(params, code))
    return Codeword(params=params, bits=bits, coeffs=coeffs)


def cyclic_shift(word: Codeword, steps: int = 1) -> Codeword:
    """Shift left: bit i of the result is bit i + steps of the input."""
    return Codeword(params=word.params, bits=np.roll(word.bits, -steps), coeffs=None)


def shifted_coefficients(params: ParamSet, coeffs: tuple[FieldElement, ...]) -> tuple[int, ...]:
    """Coefficients of the codeword that equals the one-step shift."""
    field = field_for(params)
    factors = [power(field, field.pi, e) for e in _exponents(params, "C2")]
    return tuple(mul(field, c, f) for c, f in zip(coeffs, factors))


def shift_closure_holds(params: ParamSet, coeffs: tuple[FieldElement, ...]) -> bool:
    word = codeword(params, *coeffs)
    shifted = codeword(params, *shifted_coefficients(params, coeffs))
    return bool(np.array_equal(cyclic_shift(word).bits, shifted.bits))


# ==================== Weight Distributions ====================


@functools.lru_cache(maxsize=8)
def coefficient_words(params: ParamSet, exponent: int) -> np.ndarray:
    """q x l bit matrix: row c is Tr(c pi^{i exponent})."""
    field = field_for(params)
    rows = np.stack([trace_sequence(field, (c,), (exponent,)) for c in range(params.q)])
    rows.setflags(write=False)
    return rows


def _pair_weights(left: np.ndarray, right: np.ndarray) -> Counter:
    """Weights of left[a] ^ right[b] for all a, b: |x| + |y| - 2 <x, y>."""
    wl = left.sum(axis=1, dtype=np.int64)
    wr = right.sum(axis=1, dtype=np.int64)
    inner = np.rint(left.astype(np.float64) @ right.astype(np.float64).T).astype(np.int64)
    weights = wl[:, None] + wr[None, :] - 2 * inner
    values, counts = np.unique(weights, return_counts=True)
    return Counter({int(v): int(c) for v, c in zip(values, counts)})


def _divide_out(params: ParamSet, counts: Counter, multiplicity: int) -> dict[int, int]:
    """Codeword counts from coefficient-tuple counts; each codeword repeats multiplicity times."""
    if any(c % multiplicity for c in counts.values()):
        raise VerificationError(
            f"Weight counts not divisible by kernel size {multiplicity}", params=params.as_tuple()
        )
    return {w: c // multiplicity for w, c in counts.items()}


def direct_weights_chunk(params: ParamSet, bounds: tuple[int, int]) -> Counter:
    """C2 weights for gamma in [start, stop), all (alpha, beta)."""
    a_words = coefficient_words(params, params.e1)
    b_words = coefficient_words(params, params.e2)
    g_words = coefficient_words(params, 1)
    counts: Counter = Counter()
    for gamma in range(*bounds):
        counts.update(_pair_weights(a_words ^ g_words[gamma][None, :], b_words))
    return counts


def _via_sums(params: ParamSet, code: CodeName, threads: int, allow_large: bool) -> Counter:
    half = 1 << (params.n - 1)
    if code == "C1":
        strategy = "walsh" if params.n <= 12 else "rank_fast"
        values = t_histogram(params, strategy, threads=threads, allow_large=allow_large)
    else:
        values = s_lemma2_histogram(params, threads=threads, allow_large=allow_large)
    weights: Counter = Counter()
    for value, count in values.items():
        weights[half - value // 2] += count
    return weights


def weight_distribution(
    params: ParamSet,
    code: CodeName = "C1",
    strategy: WeightStrategy = "via_sums",
    threads: int = 1,
    allow_large: bool = False,
) -> WeightDistribution:
    """Weight distribution of C1 or C2.

    via_sums counts coefficient tuples through T (C1) or S (C2); direct
    computes the weight of every codeword. When the coefficient map is not
    injective (degenerate params) direct divides out the kernel so every
    codeword is counted once, and via_sums is flagged unreliable.

    Raises:
        ParameterError: Unknown code or strategy
        SizeGuardError: direct beyond its guard
    """
    if code not in ("C1", "C2"):
        raise ParameterError(f"Unknown code '{code}'; expected C1 or C2")
    dimension = code_dimension(params, code)
    length = params.q - 1
    tuples = 2 * params.n if code == "C1" else 3 * params.n

    if strategy == "via_sums":
        return WeightDistribution(
            params=params,
            code=code,
            length=length,
            dimension=dimension,
            entries=dict(_via_sums(params, code, threads, allow_large)),
            strategy=strategy,
            unreliable=dimension != tuples,
        )
    if strategy != "direct":
        raise ParameterError(f"Unknown weight strategy '{strategy}'; expected via_sums or direct")

    check_size_guard(get_size_guard("weights", f"direct:{code}"), params.n, allow_large=allow_large)
    logger.info("Direct weight enumeration %s n=%d k=%d", code, params.n, params.k)
    if code == "C1":
        counts = _pair_weights(
            coefficient_words(params, params.e1), coefficient_words(params, params.e2)
        )
    else:
        worker = functools.partial(direct_weights_chunk, params)
        counts = map_reduce_histograms(worker, split_range(params.q, 4 * max(1, threads)), threads)

    return WeightDistribution(
        params=params,
        code=code,
        length=length,
        dimension=dimension,
        entries=_divide_out(params, counts, 1 << (tuples - dimension)),
        strategy=strategy,
    )


def punctured_length(params: ParamSet) -> int:
    return (params.q - 1) // ((1 << params.d) + 1)


def punctured_C1_weights(
    params: ParamSet, strategy: str = "reindex", allow_large: bool = False
) -> WeightDistribution:
    """Weights of C1' (first (2^n - 1)/(2^d + 1) coordinates of C1), n/d even.

    reindex applies A'_i = A_{(2^d+1) i} to the full C1 distribution; direct
    truncates every enumerated codeword.

    Raises:
        DegenerateInputError: n/d odd
        VerificationError: A full-code weight not divisible by 2^d + 1
    """
    if not params.s_even:
        raise DegenerateInputError("Punctured code needs n/d even", params=params.as_tuple())
    factor = (1 << params.d) + 1
    length = punctured_length(params)

    if strategy == "reindex":
        full = weight_distribution(params, "C1", "via_sums", allow_large=allow_large)
        bad = [w for w in full.entries if w % factor]
        if bad:
            raise VerificationError(
                f"Weights {bad} not divisible by {factor}", params=params.as_tuple()
            )
        entries = {w // factor: c for w, c in full.entries.items()}
        return WeightDistribution(
            params, "C1'", length, full.dimension, entries, strategy, full.unreliable
        )
    if strategy != "direct":
        raise ParameterError(f"Unknown punctured strategy '{strategy}'; expected reindex or direct")

    check_size_guard(get_size_guard("weights", "direct:C1"), params.n, allow_large=allow_large)
    a_words = coefficient_words(params, params.e1)
    b_words = coefficient_words(params, params.e2)
    counts = _pair_weights(
        np.ascontiguousarray(a_words[:, :length]), np.ascontiguousarray(b_words[:, :length])
    )
    dimension = code_dimension(params, "C1")
    return WeightDistribution(
        params=params,
        code="C1'",
        length=length,
        dimension=dimension,
        entries=_divide_out(params, counts, 1 << (2 * params.n - dimension)),
        strategy=strategy,
    )


def weight_table_rows(params: ParamSet, code: CodeName) -> list[tuple[int, int, int]]:
    """(value, weight, multiplicity) rows of the closed-form tables."""
    table = theorem1_table(params) if code == "C1" else theorem2_table(params)
    half = 1 << (params.n - 1)
    return [(value, half - value // 2, count) for value, count in table.items()]
