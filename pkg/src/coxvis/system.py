"""Coxeter systems given by their presentation diagrams.

A system is a finite ordered generating set S together with the symmetric
order matrix m(s,t) of the defining relations (st)^m(s,t) = 1.  Pairs with
no declared relation have m = infinity, so the presentation diagram (an
edge labeled m(s,t) whenever m(s,t) is finite) carries all the data.  The
graph substrate lives here: connected components, separating subsets,
maximal cliques, chordality, and DOT export.

Everything is immutable after construction and every operation is a pure
function, so the module is safe to use from multiple threads.
"""

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

# A generator subset is always a sorted tuple of generator indices; a
# sorted tuple serializes canonically and can be used as a dict key.
Subset = tuple

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    """Malformed input document.  Carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class CoxeterSystem:
    """A finitely generated Coxeter system (W, S).

    ``names`` lists the generators in declared order; ``pairs`` holds the
    finite entries of the order matrix as (i, j, m) triples with i < j and
    m >= 2.  Absent pairs have infinite order and the diagonal is 1.
    """

    names: tuple
    pairs: tuple

    @staticmethod
    def build(names, relations=()) -> "CoxeterSystem":
        """Construct and validate a system from names and (a, b, m) triples.

        ``a`` and ``b`` may be names or indices.  Duplicate relations are
        tolerated when they agree and rejected when they conflict.
        """
        names = tuple(names)
        if not names:
            raise ValueError("a system needs at least one generator")
        seen = set()
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"invalid generator name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            seen.add(name)
        index = {name: i for i, name in enumerate(names)}
        orders = {}
        for a, b, m in relations:
            i = index[a] if isinstance(a, str) else int(a)
            j = index[b] if isinstance(b, str) else int(b)
            if not 0 <= i < len(names) or not 0 <= j < len(names):
                raise ValueError(f"relation ({a},{b}) references an unknown generator")
            if i == j:
                raise ValueError(f"relation on ({names[i]},{names[i]}): the diagonal is fixed at 1")
            if not isinstance(m, int) or m < 2:
                raise ValueError(f"order m({names[i]},{names[j]})={m!r} must be an integer >= 2")
            key = (min(i, j), max(i, j))
            if key in orders and orders[key] != m:
                raise ValueError(
                    f"conflicting orders for ({names[key[0]]},{names[key[1]]}): "
                    f"{orders[key]} and {m}"
                )
            orders[key] = m
        pairs = tuple((i, j, orders[(i, j)]) for i, j in sorted(orders))
        return CoxeterSystem(names=names, pairs=pairs)

    @cached_property
    def index(self) -> dict:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def _orders(self) -> dict:
        return {(i, j): m for i, j, m in self.pairs}

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def generators(self) -> Subset:
        return tuple(range(len(self.names)))

    def order(self, i: int, j: int):
        """m(i, j): 1 on the diagonal, None for infinity."""
        if i == j:
            return 1
        key = (i, j) if i < j else (j, i)
        return self._orders.get(key)

    def gen_index(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def subset(self, spec) -> Subset:
        """Normalize names, indices, or a whitespace-separated string to a sorted index tuple."""
        if isinstance(spec, str):
            spec = spec.split()
        members = set()
        for item in spec:
            members.add(self.gen_index(item) if isinstance(item, str) else int(item))
        for i in members:
            if not 0 <= i < self.rank:
                raise ValueError(f"generator index {i} out of range")
        return tuple(sorted(members))

    def names_of(self, A) -> tuple:
        return tuple(self.names[i] for i in A)

    def diagram_edges(self, within=None):
        """Presentation-diagram edges (i, j) with i < j, optionally restricted to a subset."""
        if within is None:
            return [(i, j) for i, j, _ in self.pairs]
        inside = set(within)
        return [(i, j) for i, j, _ in self.pairs if i in inside and j in inside]

    def neighbors(self, i: int, within=None) -> Subset:
        inside = None if within is None else set(within)
        out = []
        for a, b, _ in self.pairs:
            if a == i and (inside is None or b in inside):
                out.append(b)
            elif b == i and (inside is None or a in inside):
                out.append(a)
        return tuple(sorted(out))

    def is_complete(self, A) -> bool:
        """True when every pair in A is joined by a diagram edge (finite order)."""
        return all(self.order(i, j) is not None for i, j in itertools.combinations(A, 2))


def subset_key(A: Subset):
    """Canonical sort key for generator subsets: cardinality, then lexicographic."""
    return (len(A), A)


def parse_system(text: str) -> CoxeterSystem:
    """Parse the line-oriented presentation format.

    The first effective line is ``gens <name> <name> ...``; each following
    line is ``m <name> <name> <k>`` with an integer k >= 2.  ``#`` starts a
    comment and blank lines are skipped.  Unlisted pairs get order infinity.
    """
    names = None
    index = {}
    orders = {}
    order_lines = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if names is None:
            if toks[0] != "gens":
                raise ParseError(line_no, f"expected 'gens' line, got {toks[0]!r}")
            if len(toks) < 2:
                raise ParseError(line_no, "'gens' line declares no generators")
            names = []
            for tok in toks[1:]:
                if not _NAME_RE.match(tok):
                    raise ParseError(line_no, f"invalid generator name {tok!r}")
                if tok in index:
                    raise ParseError(line_no, f"duplicate generator name {tok!r}")
                index[tok] = len(names)
                names.append(tok)
            continue
        if toks[0] != "m":
            raise ParseError(line_no, f"expected 'm' line, got {toks[0]!r}")
        if len(toks) != 4:
            raise ParseError(line_no, "'m' line needs exactly: m <name> <name> <k>")
        a, b, k = toks[1], toks[2], toks[3]
        for tok in (a, b):
            if tok not in index:
                raise ParseError(line_no, f"undeclared generator {tok!r}")
        try:
            m = int(k)
        except ValueError:
            raise ParseError(line_no, f"order {k!r} is not an integer") from None
        if m < 2:
            raise ParseError(line_no, f"order {m} is below 2")
        if a == b:
            raise ParseError(line_no, f"relation on ({a},{b}): the diagonal is fixed at 1")
        key = (min(index[a], index[b]), max(index[a], index[b]))
        if key in orders and orders[key] != m:
            raise ParseError(
                line_no,
                f"conflicting order for ({a},{b}): {orders[key]} on line "
                f"{order_lines[key]}, {m} here",
            )
        orders[key] = m
        order_lines[key] = line_no
    if names is None:
        raise ParseError(1, "empty document: missing 'gens' line")
    pairs = tuple((i, j, orders[(i, j)]) for i, j in sorted(orders))
    return CoxeterSystem(names=tuple(names), pairs=pairs)


def emit_system(sys_: CoxeterSystem) -> str:
    """Serialize canonically; parse(emit(s)) == s."""
    lines = ["gens " + " ".join(sys_.names)]
    for i, j, m in sys_.pairs:
        lines.append(f"m {sys_.names[i]} {sys_.names[j]} {m}")
    return "\n".join(lines) + "\n"


def induced_subsystem(sys_: CoxeterSystem, A) -> CoxeterSystem:
    """The Coxeter system (<A>, A): generators of A in ambient order, matrix restricted."""
    A = sys_.subset(A)
    pos = {g: k for k, g in enumerate(A)}
    names = sys_.names_of(A)
    pairs = tuple(
        (pos[i], pos[j], m) for i, j, m in sys_.pairs if i in pos and j in pos
    )
    return CoxeterSystem(names=names, pairs=pairs)


def _components(A, adjacency) -> tuple:
    """Connected components of A under an adjacency callback, each sorted, ordered by least member."""
    remaining = set(A)
    parts = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            v = frontier.pop()
            for u in adjacency(v):
                if u in remaining and u not in comp:
                    comp.add(u)
                    frontier.append(u)
        remaining -= comp
        parts.append(tuple(sorted(comp)))
    return tuple(sorted(parts, key=lambda c: c[0]))


def diagram_components(sys_: CoxeterSystem, A) -> tuple:
    """Components of the presentation diagram induced on A (free-product factors)."""
    A = sys_.subset(A)
    inside = set(A)

    def adj(v):
        return [u for u in sys_.neighbors(v) if u in inside]

    return _components(A, adj)


def coxeter_graph_components(sys_: CoxeterSystem, A) -> tuple:
    """Components of the graph on A with edges where m(s,t) != 2 (direct-product factors)."""
    A = sys_.subset(A)

    def adj(v):
        return [u for u in A if u != v and sys_.order(u, v) != 2]

    return _components(A, adj)


def separates_within(sys_: CoxeterSystem, A, B) -> bool:
    """True when removing B from the diagram induced on A leaves >= 2 components."""
    rest = tuple(g for g in sys_.subset(A) if g not in set(sys_.subset(B)))
    return len(rest) >= 2 and len(diagram_components(sys_, rest)) >= 2


def is_separating(sys_: CoxeterSystem, A) -> bool:
    """True iff the diagram induced on S - A is disconnected (with >= 2 vertices left)."""
    A = sys_.subset(A)
    if len(A) == sys_.rank:
        raise ValueError("A must be a proper subset of the generators")
    return separates_within(sys_, sys_.generators, A)


def minimal_separators(sys_: CoxeterSystem):
    """All inclusion-minimal separating subsets, in canonical order.

    Exhaustive over subsets, so only sensible at desk scale (exponential in
    the rank; fine for |S| up to ~20).
    """
    if sys_.rank < 2:
        raise ValueError("separator enumeration needs at least two generators")
    gens = sys_.generators
    found = []
    # Ascending by size: a candidate is minimal iff no smaller separator is
    # a proper subset (every separating set contains a minimal one).
    for size in range(sys_.rank - 1):
        for combo in itertools.combinations(gens, size):
            if any(set(prev) < set(combo) or prev == combo for prev in found):
                continue
            if is_separating(sys_, combo):
                found.append(combo)
    return sorted(found, key=subset_key)


def maximal_cliques(sys_: CoxeterSystem):
    """All maximal complete vertex sets of the presentation diagram, canonically ordered."""
    neigh = {v: set(sys_.neighbors(v)) for v in sys_.generators}
    out = []

    def expand(R, P, X):
        if not P and not X:
            out.append(tuple(sorted(R)))
            return
        pivot = next(iter(P | X))
        for v in sorted(P - neigh[pivot]):
            expand(R | {v}, P & neigh[v], X & neigh[v])
            P.remove(v)
            X.add(v)

    expand(set(), set(sys_.generators), set())
    return sorted(out, key=subset_key)


def find_induced_circuit(sys_: CoxeterSystem):
    """An induced circuit of length >= 4 in the presentation diagram, or None.

    For each vertex v and non-adjacent pair u, w of its neighbors, search
    for a u-w path avoiding the rest of v's closed neighborhood; the
    shortest such path closes up with v into an induced circuit.
    """
    neigh = {v: set(sys_.neighbors(v)) for v in sys_.generators}
    for v in sys_.generators:
        nv = sorted(neigh[v])
        for u, w in itertools.combinations(nv, 2):
            if w in neigh[u]:
                continue
            blocked = (neigh[v] | {v}) - {u, w}
            # BFS keeps the path shortest, hence chordless.
            prev = {u: None}
            queue = [u]
            while queue:
                nxt = []
                for x in queue:
                    for y in sorted(neigh[x]):
                        if y in blocked or y in prev:
                            continue
                        prev[y] = x
                        if y == w:
                            path = [w]
                            while prev[path[-1]] is not None:
                                path.append(prev[path[-1]])
                            cycle = [v] + path[::-1]
                            return _canonical_cycle(cycle)
                        nxt.append(y)
                queue = nxt
    return None


def _canonical_cycle(cycle):
    """Rotate/reflect a vertex cycle to start at its least vertex, lesser neighbor first."""
    k = cycle.index(min(cycle))
    cycle = cycle[k:] + cycle[:k]
    if cycle[1] > cycle[-1]:
        cycle = [cycle[0]] + cycle[:0:-1]
    return tuple(cycle)


def is_chordal(sys_: CoxeterSystem) -> bool:
    return find_induced_circuit(sys_) is None


def export_dot(sys_: CoxeterSystem) -> str:
    """The presentation diagram as a DOT graph; infinite pairs are omitted."""
    lines = ["graph coxeter {"]
    for name in sys_.names:
        lines.append(f'  "{name}";')
    for i, j, m in sys_.pairs:
        lines.append(f'  "{sys_.names[i]}" -- "{sys_.names[j]}" [label="{m}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
