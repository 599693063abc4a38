"""
Binary Field Arithmetic GF(2^n)

Purpose: Exact arithmetic in GF(2^n) over a fixed primitive element, trace maps,
and the (n, k) parameter validation shared by every other module.

Representation:
- Elements are plain ints: bit i is the coefficient of x^i in the residue
- Multiplication and powers go through exp/log tables (numpy arrays)
- The modulus is the smallest primitive polynomial (galois search), then
  re-verified by the table build (no repeated power of pi)
- Trace to F_2 is a parity: Tr(a) = parity(a & trace_word)

Vectorized helpers (`mul_array`, `power_table`, `parity`) operate on whole
numpy arrays of elements and are what the enumeration modules use.
"""

import functools
import logging
import math
import time
from dataclasses import dataclass
from typing import Optional, Union

import galois
import numpy as np

from kasami_welch.errors import FieldError, ParameterError

logger = logging.getLogger(__name__)

FieldElement = int

MAX_DEGREE = 24
ArrayLike = Union[int, np.ndarray]


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """A concrete GF(2^n) with fixed modulus and primitive element.

    Attributes:
        n: Extension degree
        modulus: Degree-n primitive polynomial as an (n+1)-bit mask
        pi: Residue class of the indeterminate (the primitive element)
        exp_table: exp_table[i] = pi^i for 0 <= i < 2^n - 1
        log_table: log_table[a] = i with pi^i = a; log_table[0] = -1
        trace_word: Bit i holds Tr(x^i), so Tr(a) = parity(a & trace_word)
    """

    n: int
    modulus: int
    pi: FieldElement
    exp_table: np.ndarray
    log_table: np.ndarray
    trace_word: int

    @property
    def q(self) -> int:
        """Field size 2^n."""
        return 1 << self.n

    @property
    def order(self) -> int:
        """Multiplicative group order 2^n - 1."""
        return (1 << self.n) - 1

    def elements(self) -> np.ndarray:
        """All field elements 0 .. 2^n - 1 as an int64 array."""
        return np.arange(self.q, dtype=np.int64)

    def __repr__(self) -> str:
        return f"FieldSpec(n={self.n}, modulus={element_to_poly(self.modulus)})"


@dataclass(frozen=True)
class ParamSet:
    """Validated Kasami-Welch parameters (n, k) with derived constants.

    Attributes:
        n, k: Field degree and exponent parameter
        d: gcd(n, k)
        q0: 2^d
        s: n / d
        d_prime: gcd(n, 2k); equals 2d exactly when s is even
        m: n / 2 for even n, else None
        mu: (-1)^(m/d) when s is even, else None. For n even with s odd
            (e.g. (6, 2), (10, 2)) m/d is not an integer, so mu is None
            there as well; no table for s odd uses it.
        sequence_valid: k is also outside {n/6, 5n/6}
        code_degenerate: some defining cyclotomic coset is short or two coincide
    """

    n: int
    k: int
    d: int
    q0: int
    s: int
    d_prime: int
    m: Optional[int]
    mu: Optional[int]
    sequence_valid: bool
    code_degenerate: bool

    @property
    def q(self) -> int:
        return 1 << self.n

    @property
    def s_even(self) -> bool:
        return self.s % 2 == 0

    @property
    def e1(self) -> int:
        """The exponent 2^{3k} + 1."""
        return (1 << (3 * self.k)) + 1

    @property
    def e2(self) -> int:
        """The exponent 2^k + 1."""
        return (1 << self.k) + 1

    @property
    def label(self) -> str:
        return f"{self.n}/{self.k}"

    def as_tuple(self) -> tuple[int, int]:
        return (self.n, self.k)


# ==================== Field Construction ====================


def element_to_poly(mask: int) -> str:
    """Render a coefficient mask as a polynomial string, e.g. 0x13 -> 'x^4 + x + 1'."""
    if mask == 0:
        return "0"
    terms = []
    for i in range(mask.bit_length() - 1, -1, -1):
        if (mask >> i) & 1:
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
    return " + ".join(terms)


def _mulx(values: np.ndarray, n: int, modulus: int) -> np.ndarray:
    """Multiply every element of `values` by x, reducing modulo `modulus`."""
    shifted = values << 1
    overflow = (shifted >> n) & 1
    return shifted ^ (overflow * modulus)


def _mul_constant(values: np.ndarray, c: int, n: int, modulus: int) -> np.ndarray:
    """Multiply an element array by a fixed element with n shift-and-add passes."""
    acc = np.zeros_like(values)
    term = values.copy()
    for i in range(n):
        if (c >> i) & 1:
            acc ^= term
        term = _mulx(term, n, modulus)
    return acc


def _select_modulus(n: int) -> int:
    if n == 1:
        return 0b11
    poly = galois.primitive_poly(2, n, method="min")
    return int(poly)


def _mulx_scalar(a: int, n: int, modulus: int) -> int:
    a <<= 1
    return a ^ modulus if (a >> n) & 1 else a


def _build_exp_table(n: int, modulus: int) -> np.ndarray:
    order = (1 << n) - 1
    block = 1 << ((n + 1) // 2)
    first = np.empty(min(block, order), dtype=np.int64)
    current = 1
    for i in range(first.size):
        first[i] = current
        current = _mulx_scalar(current, n, modulus)
    # current == pi^block; extend block by block
    chunks = [first]
    filled = first.size
    while filled < order:
        nxt = _mul_constant(chunks[-1], current, n, modulus)
        chunks.append(nxt[: order - filled])
        filled += chunks[-1].size
    return np.concatenate(chunks)


def _trace_word(n: int, exp_table: np.ndarray, log_table: np.ndarray) -> int:
    order = (1 << n) - 1
    word = 0
    for i in range(n):
        a = 1 << i
        acc = 0
        log_a = int(log_table[a])
        for j in range(n):
            acc ^= int(exp_table[(log_a << j) % order])
        if acc not in (0, 1):
            raise FieldError(f"Trace of x^{i} left the prime field: {acc}")
        word |= acc << i
    return word


@functools.lru_cache(maxsize=None)
def make_field(n: int) -> FieldSpec:
    """Construct GF(2^n) deterministically.

    Args:
        n: Extension degree, 1 <= n <= 24

    Returns:
        Immutable FieldSpec (cached per n)

    Raises:
        FieldError: If n is out of range or the modulus fails the primitivity check
    """
    if not isinstance(n, int) or not 1 <= n <= MAX_DEGREE:
        raise FieldError(f"Extension degree must be in [1, {MAX_DEGREE}], got {n}")

    started = time.perf_counter()
    modulus = _select_modulus(n)
    logger.info("GF(2^%d) modulus: %s", n, element_to_poly(modulus))

    exp_table = _build_exp_table(n, modulus)
    order = (1 << n) - 1
    if exp_table.size != order or np.unique(exp_table).size != order or exp_table.min() < 1:
        raise FieldError(f"Modulus {element_to_poly(modulus)} is not primitive")

    log_table = np.full(1 << n, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(order, dtype=np.int64)
    exp_table.setflags(write=False)
    log_table.setflags(write=False)

    field = FieldSpec(
        n=n,
        modulus=modulus,
        pi=int(exp_table[1 % order]),
        exp_table=exp_table,
        log_table=log_table,
        trace_word=_trace_word(n, exp_table, log_table),
    )
    logger.debug("GF(2^%d) tables built in %.3fs", n, time.perf_counter() - started)
    return field


# ==================== Scalar Arithmetic ====================


def _check(field: FieldSpec, a: FieldElement) -> None:
    if not 0 <= a < field.q:
        raise FieldError(f"Element {a} is not in GF(2^{field.n})")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a ^ b


def mul(field: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    _check(field, a)
    _check(field, b)
    if a == 0 or b == 0:
        return 0
    idx = (int(field.log_table[a]) + int(field.log_table[b])) % field.order
    return int(field.exp_table[idx])


def power(field: FieldSpec, a: FieldElement, e: int) -> FieldElement:
    """Compute a^e for any integer e (reduced mod 2^n - 1 for nonzero a).

    Raises:
        FieldError: For 0 raised to a negative power
    """
    _check(field, a)
    if a == 0:
        if e < 0:
            raise FieldError("Inverse of zero (0 raised to a negative power)")
        return 1 if e == 0 else 0
    idx = (int(field.log_table[a]) * e) % field.order
    return int(field.exp_table[idx])


def inv(field: FieldSpec, a: FieldElement) -> FieldElement:
    if a == 0:
        raise FieldError("Inverse of zero")
    return power(field, a, -1)


def frob(field: FieldSpec, a: FieldElement, j: int) -> FieldElement:
    """Frobenius a -> a^(2^j); j is reduced mod n."""
    return power(field, a, 1 << (j % field.n))


def trace(field: FieldSpec, a: FieldElement, d: int = 1) -> FieldElement:
    """Relative trace Tr^n_d(a) = sum of a^(2^{d i}) for i < n/d.

    Raises:
        FieldError: If d does not divide n
    """
    if d < 1 or field.n % d != 0:
        raise FieldError(f"Trace target degree {d} does not divide n={field.n}")
    _check(field, a)
    if d == 1:
        return int(parity(a & trace_mask(field)))
    acc = 0
    for i in range(field.n // d):
        acc ^= frob(field, a, d * i)
    return acc


def subfield(field: FieldSpec, d: int) -> list[FieldElement]:
    """Sorted elements of the subfield GF(2^d) inside GF(2^n)."""
    if d < 1 or field.n % d != 0:
        raise FieldError(f"GF(2^{d}) is not a subfield of GF(2^{field.n})")
    step = field.order // ((1 << d) - 1)
    members = {0} | {int(field.exp_table[(step * j) % field.order]) for j in range((1 << d) - 1)}
    return sorted(members)


def trace_mask(field: FieldSpec) -> int:
    """n-bit word tau with Tr(a) = parity(a & tau)."""
    return field.trace_word


# ==================== Vectorized Arithmetic ====================


def parity(values: ArrayLike) -> ArrayLike:
    """Bit parity of ints or int arrays (up to 64-bit words)."""
    v = values
    for shift in (32, 16, 8, 4, 2, 1):
        v = v ^ (v >> shift)
    return v & 1


def mul_array(field: FieldSpec, a: ArrayLike, b: ArrayLike) -> np.ndarray:
    """Elementwise product of element arrays (broadcasting)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    la = field.log_table[a]
    lb = field.log_table[b]
    out = field.exp_table[(la + lb) % field.order]
    return np.where((a == 0) | (b == 0), 0, out).astype(np.int64)


def power_table(field: FieldSpec, e: int) -> np.ndarray:
    """Array of x^e for every x in the field, indexed by x."""
    if e < 0:
        raise FieldError("power_table with a negative exponent includes the inverse of zero")
    if e == 0:
        return np.ones(field.q, dtype=np.int64)
    xs = field.elements()
    idx = (field.log_table[xs[1:]] * (e % field.order)) % field.order
    out = np.empty(field.q, dtype=np.int64)
    out[0] = 0
    out[1:] = field.exp_table[idx]
    return out


def frob_table(field: FieldSpec, j: int) -> np.ndarray:
    return power_table(field, 1 << (j % field.n))


@functools.lru_cache(maxsize=None)
def _dual_table(n: int) -> np.ndarray:
    field = make_field(n)
    words = np.zeros(n, dtype=np.int64)
    for j in range(n):
        basis_j = 1 << j
        w = 0
        for i in range(n):
            w |= trace(field, mul(field, 1 << i, basis_j)) << i
        words[j] = w
    table = np.zeros(field.q, dtype=np.int64)
    for j in range(n):
        half = 1 << j
        table[half : 2 * half] = table[:half] ^ words[j]
    table.setflags(write=False)
    return table


def dual_table(field: FieldSpec) -> np.ndarray:
    """Array w with Tr(a * u) = parity(a & w[u]) for all a, u."""
    return _dual_table(field.n)


def trace_sequence(
    field: FieldSpec, coeffs: tuple[FieldElement, ...], exponents: tuple[int, ...]
) -> np.ndarray:
    """Bits Tr(sum c_j * pi^{lambda e_j}) for lambda = 0 .. 2^n - 2 (uint8 array)."""
    lam = np.arange(field.order, dtype=np.int64)
    acc = np.zeros(field.order, dtype=np.int64)
    for c, e in zip(coeffs, exponents):
        if c == 0:
            continue
        powers = field.exp_table[(lam * (e % field.order)) % field.order]
        acc ^= mul_array(field, c, powers)
    return parity(acc & field.trace_word).astype(np.uint8)


# ==================== Parameters ====================


def coset_size(n: int, e: int) -> int:
    """Size of the 2-cyclotomic coset of e modulo 2^n - 1."""
    order = (1 << n) - 1
    e %= order
    x = (e * 2) % order
    size = 1
    while x != e:
        x = (x * 2) % order
        size += 1
    return size


def coset_representative(n: int, e: int) -> int:
    order = (1 << n) - 1
    e %= order
    return min((e << j) % order for j in range(n)) if order > 1 else 0


def _code_degenerate(n: int, k: int) -> bool:
    e1 = (1 << (3 * k)) + 1
    e2 = (1 << k) + 1
    reps = [coset_representative(n, e) for e in (e1, e2, 1)]
    sizes = [coset_size(n, e) for e in (e1, e2, 1)]
    return any(size < n for size in sizes) or len(set(reps)) < 3


def validate_params(n: int, k: int) -> ParamSet:
    """Validate (n, k) and derive all constants.

    Raises:
        ParameterError: n outside [1, 24], k outside [1, n-1], or k in {n/4, n/2, 3n/4}

    Example:
        >>> p = validate_params(8, 1)
        >>> (p.d, p.s, p.d_prime, p.m, p.mu)
        (1, 8, 2, 4, 1)
    """
    if not 1 <= n <= MAX_DEGREE:
        raise ParameterError(f"n must be in [1, {MAX_DEGREE}]", params=(n, k))
    if not 1 <= k <= n - 1:
        raise ParameterError("k must satisfy 1 <= k <= n-1", params=(n, k))
    for num, label in ((1, "n/4"), (2, "n/2"), (3, "3n/4")):
        if 4 * k == num * n:
            raise ParameterError(f"k = {label} is excluded", params=(n, k))

    d = math.gcd(n, k)
    s = n // d
    d_prime = math.gcd(n, 2 * k)
    m = n // 2 if n % 2 == 0 else None
    mu = (-1) ** (m // d) if s % 2 == 0 and m is not None else None
    sequence_valid = 6 * k != n and 6 * k != 5 * n
    degenerate = _code_degenerate(n, k)
    if degenerate:
        logger.warning("(n, k) = (%d, %d) is code-degenerate; closed-form tables not certified", n, k)
    return ParamSet(
        n=n,
        k=k,
        d=d,
        q0=1 << d,
        s=s,
        d_prime=d_prime,
        m=m,
        mu=mu,
        sequence_valid=sequence_valid,
        code_degenerate=degenerate,
    )


def field_for(params: ParamSet) -> FieldSpec:
    return make_field(params.n)
