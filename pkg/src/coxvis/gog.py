"""Visual graphs of groups over a Coxeter system.

A visual graph of groups is a finite tree whose vertices and edges carry
generator subsets, with every edge label included in both endpoint labels
(edge maps are inclusions).  Such a labeled tree presents the whole group
exactly when (a) every presentation-diagram edge lies inside some vertex
label and (b) each generator's carrier, the vertices and edges whose
labels contain it, is a nonempty subtree.  That criterion is purely
diagrammatic, so validation certifies a decomposition regardless of how it
was produced.

Alongside validation: reduction, edge collapsing, vertex splitting over a
separating subset, two verification probes (edge labels separate the two
sides; every complete subset is covered by a vertex), and the text/DOT
formats.
"""

import itertools
from dataclasses import dataclass

from .system import (
    CoxeterSystem,
    ParseError,
    Subset,
    diagram_components,
    is_separating,
    separates_within,
)

_ID_OK = str.isidentifier  # vertex/edge ids share the generator-name charset


class GogStructureError(ValueError):
    """The labeled graph is not a well-formed tree of inclusions."""


@dataclass(frozen=True)
class GogVertex:
    id: str
    label: Subset


@dataclass(frozen=True)
class GogEdge:
    id: str
    ends: tuple
    label: Subset


@dataclass(frozen=True)
class VisualGoG:
    """A candidate or validated visual decomposition."""

    vertices: tuple
    edges: tuple

    def vertex(self, vid: str) -> GogVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise ValueError(f"unknown vertex id {vid!r}")

    def vertex_label(self, vid: str) -> Subset:
        return self.vertex(vid).label

    def adjacency(self) -> dict:
        adj = {v.id: [] for v in self.vertices}
        for e in self.edges:
            adj[e.ends[0]].append((e.ends[1], e))
            adj[e.ends[1]].append((e.ends[0], e))
        return adj


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the subtree criterion; valid iff both defect lists are empty."""

    valid: bool
    uncovered_edges: tuple
    bad_generators: Subset


def check_structure(sys_: CoxeterSystem, g: VisualGoG) -> None:
    """Raise GogStructureError unless g is a tree of label inclusions."""
    problems = []
    ids = set()
    for v in g.vertices:
        if v.id in ids:
            problems.append(f"duplicate vertex id {v.id!r}")
        ids.add(v.id)
        for s in v.label:
            if not 0 <= s < sys_.rank:
                problems.append(f"vertex {v.id!r} label index {s} out of range")
    if not g.vertices:
        problems.append("a graph of groups needs at least one vertex")
    eids = set()
    vertex_ids = {v.id for v in g.vertices}
    for e in g.edges:
        if e.id in eids or e.id in vertex_ids:
            problems.append(f"duplicate id {e.id!r}")
        eids.add(e.id)
        for end in e.ends:
            if end not in vertex_ids:
                problems.append(f"edge {e.id!r} references unknown vertex {end!r}")
        if e.ends[0] == e.ends[1]:
            problems.append(f"edge {e.id!r} is a loop; the underlying graph must be a tree")
    if not problems:
        labels = {v.id: set(v.label) for v in g.vertices}
        for e in g.edges:
            for end in e.ends:
                if not set(e.label) <= labels[end]:
                    problems.append(
                        f"edge {e.id!r} label is not included in vertex {end!r} label"
                    )
        if len(g.edges) != len(g.vertices) - 1:
            problems.append("not a tree: |edges| != |vertices| - 1")
        else:
            adj = g.adjacency()
            seen = set()
            stack = [g.vertices[0].id]
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(y for y, _ in adj[x])
            if len(seen) != len(g.vertices):
                problems.append("not a tree: the graph is disconnected")
    if problems:
        raise GogStructureError("; ".join(problems))


def validate_visual(sys_: CoxeterSystem, g: VisualGoG) -> ValidationReport:
    """Check the two-part criterion that makes a labeled tree a decomposition of W.

    (a) every presentation-diagram edge lies inside some vertex label, and
    (b) each generator's carrier is a nonempty subtree.
    """
    check_structure(sys_, g)
    uncovered = []
    for i, j in sys_.diagram_edges():
        if not any({i, j} <= set(v.label) for v in g.vertices):
            uncovered.append((i, j))
    bad = []
    adj = g.adjacency()
    for s in range(sys_.rank):
        carrier_vertices = [v.id for v in g.vertices if s in v.label]
        if not carrier_vertices:
            bad.append(s)
            continue
        carrier_edges = {e.id for e in g.edges if s in e.label}
        seen = {carrier_vertices[0]}
        stack = [carrier_vertices[0]]
        while stack:
            x = stack.pop()
            for y, e in adj[x]:
                if e.id in carrier_edges and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if not set(carrier_vertices) <= seen:
            bad.append(s)
    return ValidationReport(
        valid=not uncovered and not bad,
        uncovered_edges=tuple(uncovered),
        bad_generators=tuple(bad),
    )


def reduce(g: VisualGoG) -> VisualGoG:
    """Collapse every edge whose label equals an endpoint label.

    The endpoint equal to the edge group is absorbed into the opposite
    endpoint; repeating until no such edge remains leaves the fundamental
    group unchanged.
    """
    vertices = list(g.vertices)
    edges = list(g.edges)
    while True:
        target = None
        for e in edges:
            labels = {v.id: v.label for v in vertices}
            if e.label == labels[e.ends[0]] or e.label == labels[e.ends[1]]:
                target = e
                break
        if target is None:
            break
        labels = {v.id: v.label for v in vertices}
        if target.label == labels[target.ends[0]]:
            gone, kept = target.ends
        else:
            kept, gone = target.ends
        edges.remove(target)
        vertices = [v for v in vertices if v.id != gone]
        edges = [
            GogEdge(e.id, tuple(kept if x == gone else x for x in e.ends), e.label)
            for e in edges
        ]
    return VisualGoG(vertices=tuple(vertices), edges=tuple(edges))


def collapse_edges(g: VisualGoG, X) -> VisualGoG:
    """Merge the clusters joined by the edge ids in X into single vertices.

    Each cluster becomes one vertex (keeping the id of its first member in
    vertex order) labeled by the union of the member labels; the remaining
    edges reattach to the cluster vertices.
    """
    X = set(X)
    known = {e.id for e in g.edges}
    for x in X:
        if x not in known:
            raise ValueError(f"unknown edge id {x!r}")
    parent = {v.id: v.id for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        if e.id in X:
            a, b = find(e.ends[0]), find(e.ends[1])
            if a != b:
                parent[a] = b
    clusters = {}
    for v in g.vertices:
        clusters.setdefault(find(v.id), []).append(v)
    rep = {}
    new_vertices = []
    for root, members in clusters.items():
        vid = members[0].id
        label = tuple(sorted(set(itertools.chain.from_iterable(m.label for m in members))))
        for m in members:
            rep[m.id] = vid
        new_vertices.append(GogVertex(vid, label))
    new_vertices.sort(key=lambda v: [x.id for x in g.vertices].index(v.id))
    new_edges = tuple(
        GogEdge(e.id, (rep[e.ends[0]], rep[e.ends[1]]), e.label)
        for e in g.edges
        if e.id not in X
    )
    return VisualGoG(vertices=tuple(new_vertices), edges=new_edges)


def split_over(sys_: CoxeterSystem, A) -> VisualGoG:
    """The visual splitting over a separating subset A.

    One vertex per component of the diagram minus A, labeled component
    union A; edges all labeled A, arranged as a star on the first
    component's vertex.
    """
    A = sys_.subset(A)
    if not is_separating(sys_, A):
        shown = " ".join(sys_.names_of(A)) or "{}"
        raise ValueError(f"{shown} does not separate the diagram")
    rest = tuple(x for x in sys_.generators if x not in set(A))
    comps = diagram_components(sys_, rest)
    vertices = tuple(
        GogVertex(f"v{k}", tuple(sorted(set(comp) | set(A))))
        for k, comp in enumerate(comps)
    )
    edges = tuple(
        GogEdge(f"e{k - 1}", ("v0", f"v{k}"), A) for k in range(1, len(comps))
    )
    return VisualGoG(vertices=vertices, edges=edges)


def split_vertex(sys_: CoxeterSystem, g: VisualGoG, vid: str, B) -> VisualGoG:
    """Split one vertex of g over a subset B separating its induced diagram.

    The vertex is replaced by the star of its pieces (component union B);
    previously incident edges reattach to the first piece containing their
    label.  Raises ValueError when B does not separate or when some
    incident edge label fits in no piece.
    """
    B = sys_.subset(B)
    old = g.vertex(vid)
    if not separates_within(sys_, old.label, B):
        shown = " ".join(sys_.names_of(B)) or "{}"
        raise ValueError(
            f"{shown} does not separate the diagram on "
            + " ".join(sys_.names_of(old.label))
        )
    rest = tuple(x for x in old.label if x not in set(B))
    comps = diagram_components(sys_, rest)
    used = {v.id for v in g.vertices} | {e.id for e in g.edges}
    fresh = itertools.count()

    def next_id(prefix):
        while True:
            cand = f"{prefix}{next(fresh)}"
            if cand not in used:
                used.add(cand)
                return cand

    piece_ids = []
    new_vertices = [v for v in g.vertices if v.id != vid]
    pieces = []
    for comp in comps:
        label = tuple(sorted(set(comp) | set(B)))
        pid = next_id("v")
        piece_ids.append(pid)
        pieces.append(GogVertex(pid, label))
    new_vertices.extend(pieces)
    new_edges = []
    for e in g.edges:
        if vid not in e.ends:
            new_edges.append(e)
            continue
        home = None
        for piece in pieces:
            if set(e.label) <= set(piece.label):
                home = piece.id
                break
        if home is None:
            shown = " ".join(sys_.names_of(e.label)) or "{}"
            raise ValueError(
                f"edge {e.id!r} label {shown} fits in no piece of the split"
            )
        new_edges.append(
            GogEdge(e.id, tuple(home if x == vid else x for x in e.ends), e.label)
        )
    for pid in piece_ids[1:]:
        new_edges.append(GogEdge(next_id("e"), (piece_ids[0], pid), B))
    return VisualGoG(vertices=tuple(new_vertices), edges=tuple(new_edges))


def renumber(g: VisualGoG) -> VisualGoG:
    """Relabel ids as v0.., e0.. in stored order (for stable serialized output)."""
    vmap = {v.id: f"v{k}" for k, v in enumerate(g.vertices)}
    vertices = tuple(GogVertex(vmap[v.id], v.label) for v in g.vertices)
    edges = tuple(
        GogEdge(f"e{k}", (vmap[e.ends[0]], vmap[e.ends[1]]), e.label)
        for k, e in enumerate(g.edges)
    )
    return VisualGoG(vertices=vertices, edges=edges)


def check_edge_separation(sys_: CoxeterSystem, g: VisualGoG, eid: str) -> bool:
    """Probe: does the label of edge eid separate the generators on its two sides?

    For a genuine visual decomposition this must hold for every edge, so on
    validated input the probe is expected to return true; on a corrupted
    tree it may return false.
    """
    check_structure(sys_, g)
    edge = None
    for e in g.edges:
        if e.id == eid:
            edge = e
            break
    if edge is None:
        raise ValueError(f"unknown edge id {eid!r}")
    adj = g.adjacency()

    def side_labels(start):
        seen = {start}
        stack = [start]
        out = set()
        while stack:
            x = stack.pop()
            out |= set(g.vertex_label(x))
            for y, e in adj[x]:
                if e.id != edge.id and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return out

    L = set(edge.label)
    side1 = side_labels(edge.ends[0]) - L
    side2 = side_labels(edge.ends[1]) - L
    if not side1 or not side2:
        return True
    rest = tuple(x for x in sys_.generators if x not in L)
    comp_of = {}
    for comp in diagram_components(sys_, rest):
        for x in comp:
            comp_of[x] = comp
    for x in side1:
        for y in side2:
            if x != y and comp_of[x] is comp_of[y]:
                return False
    return True


def clique_vertex_cover(sys_: CoxeterSystem, g: VisualGoG, C) -> str:
    """A vertex id whose label contains the complete subset C."""
    C = sys_.subset(C)
    shown = " ".join(sys_.names_of(C)) or "{}"
    if not sys_.is_complete(C):
        raise ValueError(f"{shown} is not complete in the diagram")
    check_structure(sys_, g)
    for v in g.vertices:
        if set(C) <= set(v.label):
            return v.id
    raise ValueError(
        f"no vertex label contains {shown}; the decomposition is not visual"
    )


def parse_gog(sys_: CoxeterSystem, text: str) -> VisualGoG:
    """Parse the labeled-tree format: 'vertex <id> { ... }' and 'edge <id> <v> <v> { ... }'."""
    vertices = []
    edges = []
    vertex_ids = set()
    ids = set()
    pending_edges = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "vertex":
            if len(toks) < 4 or toks[2] != "{" or toks[-1] != "}":
                raise ParseError(line_no, "expected: vertex <id> { <names...> }")
            vid = toks[1]
            if not _ID_OK(vid):
                raise ParseError(line_no, f"invalid id {vid!r}")
            if vid in ids:
                raise ParseError(line_no, f"duplicate id {vid!r}")
            try:
                label = sys_.subset(toks[3:-1])
            except ValueError as exc:
                raise ParseError(line_no, str(exc)) from None
            ids.add(vid)
            vertex_ids.add(vid)
            vertices.append(GogVertex(vid, label))
        elif toks[0] == "edge":
            if len(toks) < 6 or toks[4] != "{" or toks[-1] != "}":
                raise ParseError(line_no, "expected: edge <id> <vid> <vid> { <names...> }")
            eid, a, b = toks[1], toks[2], toks[3]
            if not _ID_OK(eid):
                raise ParseError(line_no, f"invalid id {eid!r}")
            if eid in ids:
                raise ParseError(line_no, f"duplicate id {eid!r}")
            try:
                label = sys_.subset(toks[5:-1])
            except ValueError as exc:
                raise ParseError(line_no, str(exc)) from None
            ids.add(eid)
            edges.append(GogEdge(eid, (a, b), label))
            pending_edges.append((line_no, a, b))
        else:
            raise ParseError(line_no, f"expected 'vertex' or 'edge', got {toks[0]!r}")
    for line_no, a, b in pending_edges:
        for end in (a, b):
            if end not in vertex_ids:
                raise ParseError(line_no, f"edge references unknown vertex {end!r}")
    if not vertices:
        raise ParseError(1, "a graph of groups needs at least one vertex")
    return VisualGoG(vertices=tuple(vertices), edges=tuple(edges))


def emit_gog(sys_: CoxeterSystem, g: VisualGoG) -> str:
    lines = []
    for v in g.vertices:
        body = " ".join(sys_.names_of(v.label))
        lines.append(f"vertex {v.id} {{ {body} }}" if body else f"vertex {v.id} {{ }}")
    for e in g.edges:
        body = " ".join(sys_.names_of(e.label))
        head = f"edge {e.id} {e.ends[0]} {e.ends[1]}"
        lines.append(f"{head} {{ {body} }}" if body else f"{head} {{ }}")
    return "\n".join(lines) + "\n"


def export_dot_gog(sys_: CoxeterSystem, g: VisualGoG) -> str:
    """The labeled tree as a DOT graph; labels render as brace-wrapped name sets."""

    def braces(label):
        return "{" + ",".join(sys_.names_of(label)) + "}"

    lines = ["graph gog {"]
    for v in g.vertices:
        lines.append(f'  "{v.id}" [label="{braces(v.label)}"];')
    for e in g.edges:
        lines.append(
            f'  "{e.ends[0]}" -- "{e.ends[1]}" [label="{braces(e.label)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
