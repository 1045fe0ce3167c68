"""Ends, Dunwoody decompositions, FA subgroups, and virtual freeness.

Everything here reads off the presentation diagram.  The number of ends is
decided by a finite case check; the Dunwoody decomposition repeatedly
splits vertices over complete subsets generating finite subgroups until
none separates; maximal FA special subgroups are the maximal cliques;
virtual freeness reduces to every maximal clique spanning a finite group
plus chordality of the diagram.
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .finite_type import FinitenessVerdict, is_finite
from .gog import GogVertex, VisualGoG, reduce, renumber, split_vertex
from .system import (
    CoxeterSystem,
    diagram_components,
    find_induced_circuit,
    maximal_cliques,
    separates_within,
    subset_key,
)


class EndsClass(Enum):
    ZERO = "zero-ended"
    TWO = "two-ended"
    INFINITE = "infinitely-many-ended"
    ONE = "one-ended"


@dataclass(frozen=True)
class EndsVerdict:
    kind: EndsClass
    witness: object = None

    def describe(self, sys_: CoxeterSystem) -> str:
        if self.kind is EndsClass.ZERO:
            return f"zero-ended witness={self.witness.describe()}"
        if self.kind is EndsClass.TWO:
            x, y, H = self.witness
            hs = ",".join(sys_.names_of(H))
            return (
                f"two-ended witness=x={sys_.names[x]} y={sys_.names[y]} H={{{hs}}}"
            )
        if self.kind is EndsClass.INFINITE:
            ws = ",".join(sys_.names_of(self.witness))
            return f"infinitely-many-ended witness={{{ws}}}"
        return "one-ended (by elimination)"


def two_ended_witness(sys_: CoxeterSystem, A) -> Optional[tuple]:
    """(x, y, H) with A = {x,y} + H, m(x,y) infinite, <H> finite, all cross
    labels 2; or None.  Such an A generates an infinite dihedral times
    finite group, the only two-ended shape."""
    A = sys_.subset(A)
    for x, y in itertools.combinations(A, 2):
        if sys_.order(x, y) is not None:
            continue
        H = tuple(h for h in A if h not in (x, y))
        if not is_finite(sys_, H).finite:
            continue
        if all(sys_.order(h, z) == 2 for h in H for z in (x, y)):
            return (x, y, H)
    return None


def _infinite_ends_witness(sys_: CoxeterSystem) -> Optional[tuple]:
    """Canonically least complete separating subset spanning a finite group."""
    comps = diagram_components(sys_, sys_.generators)
    if len(comps) > 1:
        return ()
    for r in range(1, sys_.rank - 1):
        found = [
            B
            for B in itertools.combinations(sys_.generators, r)
            if sys_.is_complete(B)
            and separates_within(sys_, sys_.generators, B)
            and is_finite(sys_, B).finite
        ]
        if found:
            return min(found, key=subset_key)
    return None


def ends(sys_: CoxeterSystem) -> EndsVerdict:
    """Classify the number of ends of W: 0, 2, infinitely many, or 1.

    The two-ended test runs before the infinitely-many-ended search since
    a two-ended group also has a finite complete separating subset (for
    the infinite dihedral group the empty one), so the order matters.
    """
    fv: FinitenessVerdict = is_finite(sys_, sys_.generators)
    if fv.finite:
        return EndsVerdict(EndsClass.ZERO, witness=fv)
    two = two_ended_witness(sys_, sys_.generators)
    if two is not None:
        return EndsVerdict(EndsClass.TWO, witness=two)
    inf = _infinite_ends_witness(sys_)
    if inf is not None:
        return EndsVerdict(EndsClass.INFINITE, witness=inf)
    return EndsVerdict(EndsClass.ONE)


def _dunwoody_separator(sys_: CoxeterSystem, label) -> Optional[tuple]:
    """Canonically least complete B with <B> finite separating the diagram on label."""
    for r in range(len(label) - 1):
        found = [
            B
            for B in itertools.combinations(label, r)
            if sys_.is_complete(B)
            and separates_within(sys_, label, B)
            and is_finite(sys_, B).finite
        ]
        if found:
            return min(found, key=subset_key)
    return None


def visual_dunwoody(sys_: CoxeterSystem) -> VisualGoG:
    """Split over finite subgroups until no vertex group splits further.

    Starting from the single-vertex decomposition, repeatedly take the
    first vertex whose label admits a complete finite-subgroup separator,
    split it over the canonically least such subset, and reduce.  Every
    resulting vertex group is finite or one-ended, which is the terminal
    property.  Output ids are renumbered for stable serialization.
    """
    g = VisualGoG(vertices=(GogVertex("v0", sys_.generators),), edges=())
    while True:
        progress = False
        for v in g.vertices:
            B = _dunwoody_separator(sys_, v.label)
            if B is None:
                continue
            g = reduce(split_vertex(sys_, g, v.id, B))
            progress = True
            break
        if not progress:
            break
    return renumber(g)


def maximal_fa(sys_: CoxeterSystem) -> tuple:
    """Subsets generating the maximal FA special subgroups: the maximal cliques.

    A special subgroup acts on a tree without a global fixed point exactly
    when its diagram has a separating subset, and any incomplete diagram
    has one (drop a non-adjacent pair, what is left separates it).  Since
    Coxeter groups have finite abelianization there are no surjections to
    the integers to worry about, so FA comes down to completeness and the
    maximal FA subgroups are spanned by the maximal cliques.
    """
    return maximal_cliques(sys_)


@dataclass(frozen=True)
class VirtuallyFree:
    answer: bool
    witness: Optional[VisualGoG] = None
    reason: Optional[str] = None

    def describe(self, sys_: CoxeterSystem) -> str:
        return "yes" if self.answer else f"no ({self.reason})"


def _free_witness(sys_: CoxeterSystem, g: VisualGoG, vid: str) -> VisualGoG:
    """Split vertex vid down to cliques; assumes the diagram on its label is
    chordal with all cliques spanning finite groups.

    Each round removes the least generator x whose star is proper: the
    splitting subset is the part of st(x) adjacent to one component K of
    the complement, which is complete by chordality, and both sides of the
    split are strictly smaller.  Disconnected labels split over nothing.
    """
    work = [vid]
    while work:
        cur = work.pop()
        label = g.vertex_label(cur)
        if sys_.is_complete(label):
            continue
        if len(diagram_components(sys_, label)) > 1:
            B = ()
        else:
            adj = {a: set() for a in label}
            for a, b in sys_.diagram_edges(label):
                adj[a].add(b)
                adj[b].add(a)
            x = next(a for a in label if adj[a] | {a} != set(label))
            star = adj[x] | {x}
            outside = tuple(a for a in label if a not in star)
            K = diagram_components(sys_, outside)[0]
            B = tuple(
                a for a in sorted(star) if any(sys_.order(a, k) is not None for k in K)
            )
        before = {v.id for v in g.vertices}
        g = split_vertex(sys_, g, cur, B)
        work.extend(v.id for v in g.vertices if v.id not in before)
    return g


def is_virtually_free(sys_: CoxeterSystem) -> VirtuallyFree:
    """W is virtually free iff every maximal clique of the diagram spans a
    finite group and the diagram is chordal.  Positive answers come with a
    decomposition into finite vertex groups; negative answers name the
    infinite clique subgroup or the induced circuit that obstructs."""
    for C in maximal_cliques(sys_):
        if not is_finite(sys_, C).finite:
            names = " ".join(sys_.names_of(C))
            return VirtuallyFree(False, reason=f"infinite simplex subgroup: {names}")
    cycle = find_induced_circuit(sys_)
    if cycle is not None:
        names = " ".join(sys_.names_of(cycle))
        return VirtuallyFree(False, reason=f"induced 4-circuit: {names}")
    g = VisualGoG(vertices=(GogVertex("v0", sys_.generators),), edges=())
    g = _free_witness(sys_, g, "v0")
    return VirtuallyFree(True, witness=renumber(reduce(g)))


def vs_candidates(sys_: CoxeterSystem) -> tuple:
    """Inclusion-maximal subsets A whose special subgroup splits over no
    proper subset spanning a finite or two-ended group inside A's diagram."""

    def qualifies(A):
        for r in range(len(A)):
            for B in itertools.combinations(A, r):
                if not separates_within(sys_, A, B):
                    continue
                if is_finite(sys_, B).finite or two_ended_witness(sys_, B) is not None:
                    return False
        return True

    out = []
    for r in range(sys_.rank, 0, -1):
        for A in itertools.combinations(sys_.generators, r):
            if any(set(A) <= set(big) for big in out):
                continue
            if qualifies(A):
                out.append(A)
    return tuple(sorted(out, key=subset_key))
