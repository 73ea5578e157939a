"""
Monte-Carlo estimators over the polynomial hash family.

Hash functions are sampled in bulk as a (trials, k) coefficient matrix and evaluated with a
vectorized Horner scheme, which draws coefficients exactly like sample_hash does.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from errors import DomainError
from hashing.hash_family import MAX_K, evaluate_batch, field_modulus


@dataclass(frozen=True)
class FrequencyEstimate:
    """Observed frequency of an event next to the probability it is compared with"""

    successes: int
    trials: int
    reference: float

    @property
    def rate(self) -> float:
        return self.successes / self.trials

    @property
    def sigma(self) -> float:
        p = min(max(self.reference, 0.0), 1.0)
        return math.sqrt(p * (1.0 - p) / self.trials)

    def at_least_reference(self, sigmas: float = 3.0) -> bool:
        return self.rate >= self.reference - sigmas * self.sigma

    def near_reference(self, sigmas: float = 3.0, slack: float = 0.0) -> bool:
        return abs(self.rate - self.reference) <= sigmas * self.sigma + slack


def sample_coefficients(rng: np.random.Generator, trials: int, k: int, q: int) -> np.ndarray:
    return rng.integers(0, q, size=(trials, k), dtype=np.int64)


def residue_probability(q: int, range_size: int, y: int) -> float:
    """Pr[(v mod q) mod r = y] for v uniform on Z_q"""
    return len(range(y, q, range_size)) / q


def modular_bias_bound(k: int, range_size: int, q: int) -> float:
    return k * range_size / q


def lemma1_bound(range_size: int) -> float:
    return 3.0 / (4.0 * range_size * range_size)


def lemma1_bucket_cap(domain_size: int, range_size: int) -> float:
    return 4.0 * (2.0 + (domain_size - 2) / range_size)


def lemma1_estimate(
    domain_size: int,
    range_size: int,
    x: int,
    x_prime: int,
    y: int,
    trials: int,
    rng: np.random.Generator,
    k: int = 3,
) -> FrequencyEstimate:
    """
    Frequency of h(x) = h(x') = y together with |H(y)| <= 4(2 + (|X|-2)/|Y|),
    compared against 3 / (4|Y|^2).
    """
    if x == x_prime:
        raise DomainError("the hash-pair estimate needs two distinct points")
    if trials < 1:
        raise DomainError(f"trials must be positive, got {trials}")
    if not (0 <= x < domain_size and 0 <= x_prime < domain_size and 0 <= y < range_size):
        raise DomainError("points or target value outside the hash domain/range")
    if not 1 <= k <= MAX_K:
        raise DomainError(f"independence order must lie in 1..{MAX_K}, got {k}")

    q = field_modulus(domain_size, range_size)
    values = evaluate_batch(sample_coefficients(rng, trials, k, q), range(domain_size), q, range_size)
    hits = values == y
    bucket_sizes = hits.sum(axis=1)
    event = hits[:, x] & hits[:, x_prime] & (bucket_sizes <= lemma1_bucket_cap(domain_size, range_size))
    return FrequencyEstimate(successes=int(event.sum()), trials=trials, reference=lemma1_bound(range_size))


def joint_frequency(
    k: int,
    domain_size: int,
    range_size: int,
    xs: Sequence[int],
    ys: Sequence[int],
    trials: int,
    rng: np.random.Generator,
) -> FrequencyEstimate:
    """
    Frequency of h(x_i) = y_i for all i. The reference is the exact probability under the
    construction, which differs from the ideal 1/|Y|^len(xs) only by the reduction bias.
    """
    if len(xs) != len(ys) or len(set(xs)) != len(xs):
        raise DomainError("need distinct points and one target value per point")
    if len(xs) > k:
        raise DomainError(f"a {k}-wise family says nothing about {len(xs)} points jointly")
    q = field_modulus(domain_size, range_size)
    values = evaluate_batch(sample_coefficients(rng, trials, k, q), xs, q, range_size)
    event = np.all(values == np.asarray(ys, dtype=np.int64)[None, :], axis=1)
    reference = float(np.prod([residue_probability(q, range_size, y) for y in ys]))
    return FrequencyEstimate(successes=int(event.sum()), trials=trials, reference=reference)
