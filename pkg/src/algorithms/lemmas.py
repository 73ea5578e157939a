"""
Offline trials of the probabilistic claims behind the light-triangle pass.

Both trials sample X exactly as AlgorithmA3 does (each vertex independently with probability
1/(9 n^eps)) and then evaluate the claim centrally with numpy on the whole graph.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from algorithms.config import auto_m_bar, log2n, validate_eps, x_probability
from data.features import DeltaIndex, classify_heavy, common_neighbor_matrix
from data.models import Graph, Triangle
from errors import DomainError

RANDOM_HALVES = 4


def sample_x(n: int, eps: float, rng: np.random.Generator) -> np.ndarray:
    """Boolean membership vector of X"""
    return rng.random(n) < x_probability(n, eps)


def chernoff_x_bound(n: int, eps: float) -> float:
    return 2.0 / 9.0 * n ** (1.0 - eps)


def light_triangles(g: Graph, eps: float) -> List[Triangle]:
    return sorted(classify_heavy(g, eps).light)


def lemma2_trial(g: Graph, eps: float, seed: int, light: Optional[Sequence[Triangle]] = None) -> np.ndarray:
    """
    For every light triangle (in sorted order), whether all three of its edges fall in
    Delta(X) for one sample of X. Pass `light` to reuse a precomputed triangle list.
    """
    validate_eps(eps)
    triangles = light_triangles(g, eps) if light is None else list(light)
    x_mask = sample_x(g.n, eps, np.random.default_rng(seed))
    delta = DeltaIndex(g, np.flatnonzero(x_mask).tolist())
    return np.array([delta.contains_triangle(t) for t in triangles], dtype=bool)


def s_set_sizes(g: Graph, delta: np.ndarray, u_mask: np.ndarray) -> np.ndarray:
    """sizes[j, k] = |{l in U : {j, l} in Delta(X), {k, l} in E}|"""
    adjacency = g.adjacency_matrix.astype(np.int32)
    weighted = delta.astype(np.int32) * u_mask.astype(np.int32)[None, :]
    return weighted @ adjacency.T


def not_good_nodes(g: Graph, delta: np.ndarray, u_mask: np.ndarray, m_bar: float) -> np.ndarray:
    """Nodes of U having more than m_bar neighbors k in U with |S(j, k)| > m_bar"""
    sizes = s_set_sizes(g, delta, u_mask)
    in_u_edges = g.adjacency_matrix & u_mask[None, :] & u_mask[:, None]
    t_sizes = ((sizes > m_bar) & in_u_edges).sum(axis=1)
    return u_mask & (t_sizes > m_bar)


def recursion_sequence(g: Graph, delta: np.ndarray, m_bar: float) -> List[np.ndarray]:
    """U sets of the listing loop, from U = V until U is empty or stops shrinking"""
    u_mask = np.ones(g.n, dtype=bool)
    sequence = []
    while u_mask.any():
        sequence.append(u_mask)
        remaining = not_good_nodes(g, delta, u_mask, m_bar)
        if remaining.sum() == u_mask.sum():
            break
        u_mask = remaining
    return sequence


@dataclass(frozen=True)
class Lemma3Trial:
    x_size: int
    x_within_chernoff: bool
    tested_sets: int
    worst_fraction: float
    good_majority: bool
    pair_bound_holds: bool
    recursion_length: int


def lemma3_trial(g: Graph, eps: float, m_bar: Optional[float], seed: int) -> Lemma3Trial:
    """
    One sample of X, tested against U = V, a few random halves of V and the U sequence the
    listing loop itself would visit. Records the worst fraction of not-good nodes, whether it
    stayed within |U|/2 everywhere, and whether every pair in Delta(X) has fewer than
    27 n^eps log n common neighbors.
    """
    validate_eps(eps)
    n = g.n
    threshold = auto_m_bar(n, eps)
    if m_bar is None:
        m_bar = threshold
    if m_bar < threshold:
        raise DomainError(f"m_bar={m_bar} is below sqrt(54 n^(1+eps) log n)={threshold:.2f}")

    rng = np.random.default_rng(seed)
    x_mask = sample_x(n, eps, rng)
    delta = DeltaIndex(g, np.flatnonzero(x_mask).tolist()).matrix

    halves = []
    for _ in range(RANDOM_HALVES):
        u_mask = np.zeros(n, dtype=bool)
        u_mask[rng.choice(n, size=max(1, n // 2), replace=False)] = True
        halves.append(u_mask)
    recursion = recursion_sequence(g, delta, m_bar)
    tested = [np.ones(n, dtype=bool)] + halves + recursion

    worst = 0.0
    good_majority = True
    for u_mask in tested:
        size = int(u_mask.sum())
        bad = int(not_good_nodes(g, delta, u_mask, m_bar).sum())
        worst = max(worst, bad / size)
        good_majority &= bad <= size / 2

    pair_limit = 27.0 * n**eps * log2n(n)
    upper = np.triu(delta, k=1)
    pair_bound_holds = bool(np.all(common_neighbor_matrix(g)[upper] < pair_limit))

    x_size = int(x_mask.sum())
    return Lemma3Trial(
        x_size=x_size,
        x_within_chernoff=x_size <= chernoff_x_bound(n, eps),
        tested_sets=len(tested),
        worst_fraction=worst,
        good_majority=good_majority,
        pair_bound_holds=pair_bound_holds,
        recursion_length=len(recursion),
    )
