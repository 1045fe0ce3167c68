"""Finiteness of special subgroups via the classification of finite Coxeter groups.

An irreducible diagram is matched against the classified list (A_n, B_n,
D_n, E6, E7, E8, F4, H3, H4, I2(m)); anything else, including any pair of
infinite order, generates an infinite group.  A general subset is finite
iff every component of its Coxeter graph (edges where m != 2) is.
"""

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Optional

from .system import CoxeterSystem, coxeter_graph_components


@dataclass(frozen=True)
class FiniteTypeLabel:
    """One irreducible finite factor, e.g. A3, B4 or I2(5)."""

    family: str
    rank: int
    dihedral_order: Optional[int] = None

    def order(self) -> int:
        n = self.rank
        if self.family == "A":
            return factorial(n + 1)
        if self.family == "B":
            return 2 ** n * factorial(n)
        if self.family == "D":
            return 2 ** (n - 1) * factorial(n)
        if self.family == "I2":
            return 2 * self.dihedral_order
        return {"E6": 51840, "E7": 2903040, "E8": 696729600,
                "F4": 1152, "H3": 120, "H4": 14400}[self.family]

    def __str__(self):
        if self.family == "I2":
            return f"I2({self.dihedral_order})"
        if self.family in ("A", "B", "D"):
            return f"{self.family}{self.rank}"
        return self.family


@dataclass(frozen=True)
class FinitenessVerdict:
    """Finiteness of a special subgroup, with its irreducible factors when finite."""

    finite: bool
    factors: tuple
    order: Optional[int]

    def describe(self) -> str:
        if not self.finite:
            return "infinite"
        factors = "*".join(str(f) for f in self.factors) if self.factors else "1"
        return f"finite order={self.order} factors={factors}"


def classify_irreducible(sys_: CoxeterSystem, A) -> Optional[FiniteTypeLabel]:
    """Classify one irreducible subset; None means infinite type.

    A must be a single component of its own Coxeter graph (the graph with
    edges where m != 2).
    """
    A = sys_.subset(A)
    if not A:
        raise ValueError("the empty subset is not irreducible")
    if coxeter_graph_components(sys_, A) != (A,):
        raise ValueError(f"{sys_.names_of(A)} is not irreducible")
    n = len(A)
    if n == 1:
        return FiniteTypeLabel("A", 1)
    for i, j in itertools.combinations(A, 2):
        if sys_.order(i, j) is None:
            return None
    if n == 2:
        # Irreducibility rules out m = 2, so this is a genuine dihedral pair.
        return FiniteTypeLabel("I2", 2, dihedral_order=sys_.order(A[0], A[1]))

    edges = [(i, j, sys_.order(i, j)) for i, j in itertools.combinations(A, 2)
             if sys_.order(i, j) != 2]
    if len(edges) != n - 1:
        return None  # the Coxeter graph has a circuit
    deg = {v: 0 for v in A}
    for i, j, _ in edges:
        deg[i] += 1
        deg[j] += 1
    if max(deg.values()) > 3:
        return None
    branch = [v for v in A if deg[v] == 3]
    heavy = [(m, (i, j)) for i, j, m in edges if m > 3]
    if len(branch) > 1 or len(heavy) > 1:
        return None

    if branch:
        if heavy:
            return None
        arms = sorted(_arm_lengths(branch[0], edges))
        if arms[:2] == [1, 1]:
            return FiniteTypeLabel("D", n)
        if arms == [1, 2, 2]:
            return FiniteTypeLabel("E6", 6)
        if arms == [1, 2, 3]:
            return FiniteTypeLabel("E7", 7)
        if arms == [1, 2, 4]:
            return FiniteTypeLabel("E8", 8)
        return None

    # A path.  Read its edge labels end to end.
    labels = _path_labels(A, edges, deg)
    if not heavy:
        return FiniteTypeLabel("A", n)
    m, (i, j) = heavy[0]
    terminal = deg[i] == 1 or deg[j] == 1
    if m == 4:
        if terminal:
            return FiniteTypeLabel("B", n)
        if labels == (3, 4, 3):
            return FiniteTypeLabel("F4", 4)
        return None
    if m == 5 and terminal:
        if labels in ((5, 3), (3, 5)):
            return FiniteTypeLabel("H3", 3)
        if labels in ((5, 3, 3), (3, 3, 5)):
            return FiniteTypeLabel("H4", 4)
    return None


def _arm_lengths(center, edges):
    adj = {}
    for i, j, _ in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    lengths = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return lengths


def _path_labels(A, edges, deg):
    adj = {v: [] for v in A}
    order = {}
    for i, j, m in edges:
        adj[i].append(j)
        adj[j].append(i)
        order[(i, j)] = order[(j, i)] = m
    start = min(v for v in A if deg[v] == 1)
    labels, prev, cur = [], None, start
    while True:
        nxt = [u for u in adj[cur] if u != prev]
        if not nxt:
            break
        labels.append(order[(cur, nxt[0])])
        prev, cur = cur, nxt[0]
    return tuple(labels)


def is_finite(sys_: CoxeterSystem, A) -> FinitenessVerdict:
    """Split A into Coxeter-graph components and classify each factor."""
    A = sys_.subset(A)
    factors = []
    for comp in coxeter_graph_components(sys_, A):
        label = classify_irreducible(sys_, comp)
        if label is None:
            return FinitenessVerdict(finite=False, factors=(), order=None)
        factors.append(label)
    order = 1
    for f in factors:
        order *= f.order()
    return FinitenessVerdict(finite=True, factors=tuple(factors), order=order)
