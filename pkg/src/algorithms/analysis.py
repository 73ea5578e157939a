"""
Offline checks of a listing-loop run against its trace.

For every pass t the trace gives U_t (nodes that recorded the pass) and the good nodes U'_t.
Every triangle with three edges in Delta(X) and three vertices in U_t must then be
    a: listed through some S(j, k) of size at most m_bar containing its third vertex
    b: listed through T(j) of a good vertex j
    c: left entirely inside U_t minus U'_t, for the next pass
and types a and b must appear in the output.
"""

from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, FrozenSet, List, Optional, Set

import numpy as np

from algorithms.lemmas import s_set_sizes
from congest.engine import RunReport
from data.features import DeltaIndex, enumerate_triangles
from data.models import Graph, Triangle
from errors import DomainError


@dataclass(frozen=True)
class PassSets:
    iteration: int
    u: FrozenSet[int]
    good: FrozenSet[int]


@dataclass(frozen=True)
class LoopTrace:
    x_members: FrozenSet[int]
    passes: List[PassSets]


def iteration_sets(report: RunReport, stage: int = 0) -> LoopTrace:
    """Rebuild X and the (U_t, U'_t) sequence of one listing-loop stage from the node traces"""
    x_members: Set[int] = set()
    u: Dict[int, Set[int]] = {}
    good: Dict[int, Set[int]] = {}
    for v, events in enumerate(report.traces):
        for event in events:
            if event.get("stage") != stage:
                continue
            if event["event"] == "x_flag" and event["in_x"]:
                x_members.add(v)
            elif event["event"] == "iteration":
                u.setdefault(event["iteration"], set()).add(v)
                if event["good"]:
                    good.setdefault(event["iteration"], set()).add(v)
    passes = [PassSets(t, frozenset(u[t]), frozenset(good.get(t, ()))) for t in sorted(u)]
    return LoopTrace(x_members=frozenset(x_members), passes=passes)


def classify_triangle(
    triangle: Triangle,
    u: FrozenSet[int],
    good: FrozenSet[int],
    s_sizes: np.ndarray,
    s_members: np.ndarray,
    m_bar: float,
) -> Optional[str]:
    """
    Type of a triangle inside U with three Delta(X) edges, or None if it fits none of them.
    s_sizes[j, k] = |S(j, k)| and s_members[j, l] says whether {j, l} is in Delta(X) with l in U.
    """
    if not set(triangle) <= u:
        raise DomainError(f"{triangle} is not inside U")
    for j, k, l in permutations(triangle.vertices):
        if s_sizes[j, k] <= m_bar and s_members[j, l]:
            return "a"
    for j, k, _ in permutations(triangle.vertices):
        if j in good and s_sizes[j, k] > m_bar:
            return "b"
    if not set(triangle) & good:
        return "c"
    return None


@dataclass
class TrichotomyCheck:
    passes: int = 0
    checked: int = 0
    counts: Dict[str, int] = field(default_factory=lambda: {"a": 0, "b": 0, "c": 0})
    unclassified: List[Triangle] = field(default_factory=list)
    missing: List[Triangle] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.unclassified and not self.missing


def check_trichotomy(g: Graph, report: RunReport, stage: int = 0, m_bar: Optional[float] = None) -> TrichotomyCheck:
    """
    Classify every Delta(X) triangle inside each U_t of one listing-loop stage. Meant for runs
    of a single listing loop, whose output is exactly that stage's output.
    """
    trace = iteration_sets(report, stage)
    if m_bar is None:
        m_bar = report.stages[stage].parameters["m_bar"]
    delta = DeltaIndex(g, trace.x_members)
    candidates = delta.triangles(enumerate_triangles(g))

    check = TrichotomyCheck(passes=len(trace.passes))
    for pass_sets in trace.passes:
        u_mask = np.zeros(g.n, dtype=bool)
        u_mask[sorted(pass_sets.u)] = True
        s_sizes = s_set_sizes(g, delta.matrix, u_mask)
        s_members = delta.matrix & u_mask[None, :]
        for triangle in sorted(candidates):
            if not set(triangle) <= pass_sets.u:
                continue
            check.checked += 1
            kind = classify_triangle(triangle, pass_sets.u, pass_sets.good, s_sizes, s_members, m_bar)
            if kind is None:
                check.unclassified.append(triangle)
                continue
            check.counts[kind] += 1
            if kind in ("a", "b") and triangle not in report.output:
                check.missing.append(triangle)
    return check


def u_halves(trace: LoopTrace) -> bool:
    """Whether at most half of U stayed behind in every pass"""
    return all(len(p.u - p.good) <= len(p.u) / 2 for p in trace.passes)
