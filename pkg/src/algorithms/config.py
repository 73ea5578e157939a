"""
Parameters shared by the triangle algorithms.

All logarithms are base 2. Exponent prescriptions that fall outside [0, 1] at small n are
clamped and the clamp is reported alongside the value.
"""

import math
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional, Tuple

from errors import ConfigurationError

DEFAULT_C_STOP = 4.0
DEFAULT_C_REP_FIND = 4.0
DEFAULT_C_REP_LIST = 3.0
DEFAULT_DELTA = 0.1


def log2n(n: int) -> float:
    return math.log2(n) if n > 1 else 0.0


def clamp_eps(value: float) -> Tuple[float, bool]:
    clamped = min(1.0, max(0.0, value))
    return clamped, clamped != value


def validate_eps(eps: float) -> float:
    if not 0.0 <= eps <= 1.0:
        raise ConfigurationError(f"eps must lie in [0, 1], got {eps}")
    return float(eps)


def finding_eps(n: int) -> Tuple[float, bool]:
    """eps with n^eps = n^(1/3) / (log n)^(2/3)"""
    if n < 2:
        return 0.0, True
    log_n = math.log2(n)
    return clamp_eps(1.0 / 3.0 - (2.0 / 3.0) * math.log2(log_n) / log_n)


def listing_eps(n: int) -> Tuple[float, bool]:
    """eps with n^eps = n^(1/2) / (log n)^2"""
    if n < 2:
        return 0.0, True
    log_n = math.log2(n)
    return clamp_eps(0.5 - 2.0 * math.log2(log_n) / log_n)


def auto_m_bar(n: int, eps: float) -> float:
    """Smallest threshold for which most nodes are good with high probability"""
    return max(1.0, math.sqrt(54.0 * n ** (1.0 + eps) * log2n(n)))


def x_probability(n: int, eps: float) -> float:
    return 1.0 / (9.0 * n**eps)


def a3_round_cap(n: int, eps: float, c_stop: float = DEFAULT_C_STOP) -> int:
    return math.ceil(c_stop * (n ** (1.0 - eps) + n ** ((1.0 + eps) / 2.0) * log2n(n)))


def finding_repetitions(delta: float, c_rep: float = DEFAULT_C_REP_FIND) -> int:
    if not 0.0 < delta < 1.0:
        raise ConfigurationError(f"failure probability delta must lie in (0, 1), got {delta}")
    return max(1, math.ceil(c_rep * math.log2(1.0 / delta)))


def listing_repetitions(n: int, c_rep: float = DEFAULT_C_REP_LIST) -> int:
    return max(1, math.ceil(c_rep * log2n(n)))


@dataclass(frozen=True)
class AlgoConfig:
    """Algorithm knobs; None means derived from n by the algorithm that uses it"""

    eps: Optional[float] = None
    m_bar: Optional[float] = None
    c_stop: float = DEFAULT_C_STOP
    c_rep_find: float = DEFAULT_C_REP_FIND
    c_rep_list: float = DEFAULT_C_REP_LIST
    delta: float = DEFAULT_DELTA
    log_base: int = 2

    def __post_init__(self):
        if self.eps is not None:
            validate_eps(self.eps)
        if self.m_bar is not None and self.m_bar <= 0:
            raise ConfigurationError(f"m_bar must be positive, got {self.m_bar}")
        if self.c_stop <= 0 or self.c_rep_find <= 0 or self.c_rep_list <= 0:
            raise ConfigurationError("algorithm constants must be positive")
        if not 0.0 < self.delta < 1.0:
            raise ConfigurationError(f"failure probability delta must lie in (0, 1), got {self.delta}")
        if self.log_base != 2:
            raise ConfigurationError("only base-2 logarithms are supported")

    def m_bar_for(self, n: int, eps: float) -> float:
        return self.m_bar if self.m_bar is not None else auto_m_bar(n, eps)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AlgoConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown algorithm settings: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
