"""
k-wise independent hash functions V -> {0, ..., r-1}.

Polynomial construction over Z_q: a uniformly random polynomial of degree k-1 is evaluated
at x and reduced mod q, then mod r. q is the smallest prime >= max(domain, 4 r^2), so the final
reduction moves each residue probability less than 1/q <= 1/(4 r^2) away from 1/r.

Encoding layout (bit-exact, big-endian):
    k           4 bits
    ceil(log2 q) 6 bits
    ceil(log2 r) 6 bits
    k coefficients, ceil(log2 q) bits each
The decoder is told the public (domain, range) pair, recomputes q and checks the header.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from bitstring import BitReader, Bits, ceil_log2, join_fields, to_bits
from errors import DomainError, HashDecodeError

HEADER_BITS = 16
_K_BITS = 4
_LOG_BITS = 6
MAX_K = (1 << _K_BITS) - 1


def _is_prime(value: int) -> bool:
    if value < 2:
        return False
    if value % 2 == 0:
        return value == 2
    divisor = 3
    while divisor * divisor <= value:
        if value % divisor == 0:
            return False
        divisor += 2
    return True


@lru_cache(maxsize=None)
def next_prime(value: int) -> int:
    candidate = max(2, value)
    while not _is_prime(candidate):
        candidate += 1
    return candidate


def field_modulus(domain_size: int, range_size: int) -> int:
    return next_prime(max(domain_size, 4 * range_size * range_size))


def evaluate_batch(coefficients: np.ndarray, xs: Sequence[int], q: int, range_size: int) -> np.ndarray:
    """h(x) for every coefficient row (one function each) and every point (columns)"""
    if q >= 1 << 31:
        raise DomainError(f"batch evaluation needs q < 2^31 to stay within int64, got {q}")
    points = np.asarray(xs, dtype=np.int64)[None, :]
    acc = np.zeros((coefficients.shape[0], points.shape[1]), dtype=np.int64)
    for column in range(coefficients.shape[1] - 1, -1, -1):
        acc = (acc * points + coefficients[:, column][:, None]) % q
    return acc % range_size


@dataclass(frozen=True)
class HashFn:
    """One member of the family: coefficients a_0..a_{k-1} of a polynomial over Z_q"""

    k: int
    q: int
    coefficients: Tuple[int, ...]
    domain_size: int
    range_size: int

    def eval(self, x: int) -> int:
        if not 0 <= x < self.domain_size:
            raise DomainError(f"{x} is outside the hash domain 0..{self.domain_size - 1}")
        acc = 0
        for a in reversed(self.coefficients):
            acc = (acc * x + a) % self.q
        return acc % self.range_size

    __call__ = eval

    def eval_many(self, xs: Sequence[int]) -> np.ndarray:
        points = np.asarray(xs, dtype=np.int64)
        if points.size and (points.min() < 0 or points.max() >= self.domain_size):
            raise DomainError(f"points outside the hash domain 0..{self.domain_size - 1}")
        return evaluate_batch(np.asarray([self.coefficients], dtype=np.int64), points, self.q, self.range_size)[0]

    @property
    def coefficient_bits(self) -> int:
        return ceil_log2(self.q)

    @property
    def encoded_length(self) -> int:
        return HEADER_BITS + self.k * self.coefficient_bits


def sample_hash(k: int, domain_size: int, range_size: int, rng: np.random.Generator) -> HashFn:
    if not 1 <= k <= MAX_K:
        raise DomainError(f"independence order must lie in 1..{MAX_K}, got {k}")
    if domain_size < 1 or range_size < 1:
        raise DomainError(f"domain and range sizes must be positive, got {domain_size}, {range_size}")
    q = field_modulus(domain_size, range_size)
    coefficients = tuple(int(a) for a in rng.integers(0, q, size=k))
    return HashFn(k=k, q=q, coefficients=coefficients, domain_size=domain_size, range_size=range_size)


def encode(h: HashFn) -> Bits:
    width = h.coefficient_bits
    header = to_bits(h.k, _K_BITS) + to_bits(width, _LOG_BITS) + to_bits(ceil_log2(h.range_size), _LOG_BITS)
    return header + join_fields(h.coefficients, width)


def decode(bits: Bits, domain_size: int, range_size: int) -> HashFn:
    if len(bits) < HEADER_BITS:
        raise HashDecodeError(f"hash encoding needs at least {HEADER_BITS} bits, got {len(bits)}")
    if set(bits) - {"0", "1"}:
        raise HashDecodeError("hash encoding contains characters other than 0 and 1")

    reader = BitReader(bits)
    k = reader.read(_K_BITS)
    width = reader.read(_LOG_BITS)
    range_bits = reader.read(_LOG_BITS)

    q = field_modulus(domain_size, range_size)
    if k == 0:
        raise HashDecodeError("independence order 0 in header")
    if width != ceil_log2(q) or range_bits != ceil_log2(range_size):
        raise HashDecodeError(
            f"header (log q={width}, log r={range_bits}) does not match domain {domain_size}, range {range_size}"
        )
    expected = HEADER_BITS + k * width
    if len(bits) != expected:
        kind = "truncated" if len(bits) < expected else "oversized"
        raise HashDecodeError(f"{kind} hash encoding: {len(bits)} bits, expected {expected}")

    coefficients = tuple(reader.read(width) for _ in range(k))
    if any(a >= q for a in coefficients):
        raise HashDecodeError(f"coefficient outside Z_{q}")
    return HashFn(k=k, q=q, coefficients=coefficients, domain_size=domain_size, range_size=range_size)
