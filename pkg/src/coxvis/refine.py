"""Bounded Bass-Serre search turning an abstract splitting into a visual one.

The input is a tree of subgroups of W, each given by a finite list of
generating words.  W acts on the Bass-Serre tree of that splitting; the
generators of W stabilizing a tree vertex g·Λ(V) are those s with g⁻¹sg in
Λ(V), a condition this module certifies positively by bounded search in
Λ(V)'s listed generators.  Starting from the base transversal (the cosets
1·Λ(V)), the search explores tree vertices outward, collects for every
generator, and for every presentation-diagram edge, a tree vertex its
group certifiably stabilizes, spans those certificate vertices by a
subtree, labels everything with certified stabilizing generators, and
collapses and reduces the result.  A final run of the subtree criterion
decides between Refined and Inconclusive; budget exhaustion is always
Inconclusive, never a wrong answer.
"""

from dataclasses import dataclass
from typing import Optional

from .gog import GogEdge, GogVertex, VisualGoG, collapse_edges, reduce, renumber, validate_visual
from .system import CoxeterSystem, ParseError, Subset
from .words import Word, _engine, format_word, parse_word


class SplitStructureError(ValueError):
    """The splitting is not a tree of nonempty word lists."""


@dataclass(frozen=True)
class SplitVertex:
    id: str
    words: tuple


@dataclass(frozen=True)
class SplitEdge:
    id: str
    ends: tuple
    words: tuple


@dataclass(frozen=True)
class AbstractSplitting:
    """A graph-of-groups splitting with word-list subgroup data."""

    vertices: tuple
    edges: tuple

    def vertex(self, vid: str) -> SplitVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise ValueError(f"unknown vertex id {vid!r}")


@dataclass(frozen=True)
class Certificate:
    """A tree vertex certifiably stabilized by the generators in target."""

    target: Subset
    quotient_id: str
    rep: Word


@dataclass(frozen=True)
class SpannedVertex:
    quotient_id: str
    rep: Word
    stabilized: Subset


@dataclass(frozen=True)
class RefinementOutcome:
    status: str  # "refined" or "inconclusive"
    decomposition: Optional[VisualGoG] = None
    certificates: tuple = ()
    spanned: tuple = ()
    radius_used: int = 0
    reason: Optional[str] = None


def check_split_structure(split: AbstractSplitting) -> None:
    problems = []
    if not split.vertices:
        problems.append("a splitting needs at least one vertex")
    ids = set()
    for v in split.vertices:
        if v.id in ids:
            problems.append(f"duplicate vertex id {v.id!r}")
        ids.add(v.id)
        if not v.words:
            problems.append(f"vertex {v.id!r} has an empty word list")
    vertex_ids = set(ids)
    for e in split.edges:
        if e.id in ids:
            problems.append(f"duplicate id {e.id!r}")
        ids.add(e.id)
        if not e.words:
            problems.append(f"edge {e.id!r} has an empty word list")
        for end in e.ends:
            if end not in vertex_ids:
                problems.append(f"edge {e.id!r} references unknown vertex {end!r}")
        if e.ends[0] == e.ends[1]:
            problems.append(f"edge {e.id!r} is a loop; the underlying graph must be a tree")
    if problems:
        raise SplitStructureError("; ".join(problems))
    if len(split.edges) != len(split.vertices) - 1:
        raise SplitStructureError("not a tree: |edges| != |vertices| - 1")
    adj = {v.id: [] for v in split.vertices}
    for e in split.edges:
        adj[e.ends[0]].append(e.ends[1])
        adj[e.ends[1]].append(e.ends[0])
    seen = set()
    stack = [split.vertices[0].id]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(adj[x])
    if len(seen) != len(split.vertices):
        raise SplitStructureError("not a tree: the graph is disconnected")


def parse_split(sys_: CoxeterSystem, text: str) -> AbstractSplitting:
    """Parse 'vertex <id> words <w>, <w>, ...' / 'edge <id> <v> <v> words ...' lines."""

    def parse_words(line_no, tail):
        chunks = [c.strip() for c in tail.split(",")]
        if not any(chunks):
            raise ParseError(line_no, "empty word list")
        out = []
        for chunk in chunks:
            if not chunk:
                raise ParseError(line_no, "empty word between commas")
            try:
                out.append(parse_word(sys_, chunk))
            except ValueError as exc:
                raise ParseError(line_no, str(exc)) from None
        return tuple(out)

    vertices = []
    edges = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split(None, 1)
        if toks[0] == "vertex":
            rest = toks[1].split(None, 2) if len(toks) > 1 else []
            if len(rest) < 3 or rest[1] != "words":
                raise ParseError(line_no, "expected: vertex <id> words <w>, <w>, ...")
            vertices.append(SplitVertex(rest[0], parse_words(line_no, rest[2])))
        elif toks[0] == "edge":
            rest = toks[1].split(None, 4) if len(toks) > 1 else []
            if len(rest) < 5 or rest[3] != "words":
                raise ParseError(
                    line_no, "expected: edge <id> <vid> <vid> words <w>, <w>, ..."
                )
            edges.append(
                SplitEdge(rest[0], (rest[1], rest[2]), parse_words(line_no, rest[4]))
            )
        else:
            raise ParseError(line_no, f"expected 'vertex' or 'edge', got {toks[0]!r}")
    split = AbstractSplitting(vertices=tuple(vertices), edges=tuple(edges))
    try:
        check_split_structure(split)
    except SplitStructureError as exc:
        raise ParseError(0, str(exc)) from None
    return split


def emit_split(sys_: CoxeterSystem, split: AbstractSplitting) -> str:
    lines = []
    for v in split.vertices:
        ws = ", ".join(format_word(sys_, w) for w in v.words)
        lines.append(f"vertex {v.id} words {ws}")
    for e in split.edges:
        ws = ", ".join(format_word(sys_, w) for w in e.words)
        lines.append(f"edge {e.id} {e.ends[0]} {e.ends[1]} words {ws}")
    return "\n".join(lines) + "\n"


def splitting_from_gog(sys_: CoxeterSystem, g: VisualGoG) -> AbstractSplitting:
    """Serialize a visual decomposition as word lists (trivial groups get 'e')."""

    def words_of(label):
        if not label:
            return ((),)
        return tuple((s,) for s in label)

    vertices = tuple(SplitVertex(v.id, words_of(v.label)) for v in g.vertices)
    edges = tuple(SplitEdge(e.id, e.ends, words_of(e.label)) for e in g.edges)
    return AbstractSplitting(vertices=vertices, edges=edges)


@dataclass
class _Node:
    quotient_id: str
    rep: Word
    depth: int
    stab: Subset
    parent: int  # index into the node list, -1 for base transversal nodes


def _subgroup_ball(eng, gen_words, depth: int, cap: int) -> frozenset:
    """Normal forms of products of at most `depth` listed generators or inverses."""
    moves = []
    for w in gen_words:
        nf = eng.normal_form(w)
        if nf not in moves:
            moves.append(nf)
        rev = eng.normal_form(tuple(reversed(w)))
        if rev not in moves:
            moves.append(rev)
    ball = {()}
    frontier = {()}
    for _ in range(depth):
        if len(ball) >= cap:
            break
        nxt = set()
        for u in frontier:
            for mv in moves:
                v = eng.mult(u, mv)
                if v not in ball:
                    ball.add(v)
                    nxt.add(v)
                    if len(ball) >= cap:
                        break
            if len(ball) >= cap:
                break
        frontier = nxt
        if not frontier:
            break
    return frozenset(ball)


def refine_to_visual(
    sys_: CoxeterSystem,
    split: AbstractSplitting,
    radius: int = 6,
    subgroup_depth: int = 6,
    max_cosets: int = 5000,
    max_ball: int = 20000,
) -> RefinementOutcome:
    """Search the Bass-Serre tree of `split` for a visual decomposition of W.

    For every generator s, and every presentation-diagram edge {s,t}, the
    search must find an explored tree vertex g·Λ(V) whose coset is
    certifiably stabilized (g⁻¹sg lands in the depth-bounded ball of
    Λ(V)'s listed generators).  Exploration runs breadth-first from the
    base transversal out to `radius`, enumerating neighbor cosets g·λ·Λ(V')
    with λ taken from the balls in word-length order, interleaved across
    the frontier so cheap certificates surface early.  Coset equality is
    also tested through the balls, positively only; an unrecognized repeat
    of a known coset costs search effort but never soundness, because the
    assembled decomposition is accepted only if the subtree criterion
    validates it.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    check_split_structure(split)
    eng = _engine(sys_)

    balls = {}
    for v in split.vertices:
        balls[v.id] = _subgroup_ball(eng, v.words, subgroup_depth, max_ball)
    grouped_balls = {}
    for vid, ball in balls.items():
        groups = {}
        for w in sorted(ball):
            groups.setdefault(len(w), []).append(w)
        grouped_balls[vid] = groups
    for e in split.edges:
        for w in e.words:
            nf = eng.normal_form(w)
            for end in e.ends:
                if nf not in balls[end]:
                    return RefinementOutcome(
                        status="inconclusive",
                        radius_used=0,
                        reason=(
                            f"edge {e.id!r} word {format_word(sys_, w)!r} not certified "
                            f"inside vertex group {end!r} within depth {subgroup_depth}"
                        ),
                    )

    incident = {v.id: [] for v in split.vertices}
    for e in split.edges:
        incident[e.ends[0]].append((e.id, e.ends[1]))
        incident[e.ends[1]].append((e.id, e.ends[0]))

    targets = [(s,) for s in sys_.generators]
    targets.extend(sys_.diagram_edges())
    certs = {}

    def stab_of(rep: Word, qvid: str) -> Subset:
        rev = tuple(reversed(rep))
        ball = balls[qvid]
        return tuple(
            s for s in sys_.generators if eng.mult(rev, (s,), rep) in ball
        )

    nodes = []
    by_quotient = {v.id: [] for v in split.vertices}
    tree_edges = []  # (node index, node index, quotient edge id)

    def add_node(qvid: str, rep: Word, depth: int, parent: int, qeid: Optional[str]):
        idx = len(nodes)
        stab = stab_of(rep, qvid)
        nodes.append(_Node(qvid, rep, depth, stab, parent))
        by_quotient[qvid].append(idx)
        if parent >= 0:
            tree_edges.append((parent, idx, qeid))
        for t in targets:
            if t not in certs and set(t) <= set(stab):
                certs[t] = idx
        return idx

    base_index = {}
    for v in split.vertices:
        base_index[v.id] = add_node(v.id, (), 0, -1, None)
    for e in split.edges:
        tree_edges.append((base_index[e.ends[0]], base_index[e.ends[1]], e.id))

    def assemble(depth_reached: int) -> RefinementOutcome:
        keep = set(certs.values())
        for idx in list(keep):
            walk = idx
            while nodes[walk].parent >= 0:
                walk = nodes[walk].parent
                keep.add(walk)
        keep.update(base_index.values())
        incidence = {}
        for a, b, _ in tree_edges:
            if a in keep and b in keep:
                incidence.setdefault(a, set()).add(b)
                incidence.setdefault(b, set()).add(a)
        required = set(certs.values())
        while True:
            leaf = next(
                (
                    i
                    for i in sorted(keep)
                    if i not in required and len(incidence.get(i, ())) <= 1
                ),
                None,
            )
            if leaf is None:
                break
            keep.discard(leaf)
            for other in incidence.pop(leaf, ()):
                incidence[other].discard(leaf)
        kept = sorted(keep)
        vertices = tuple(GogVertex(f"n{i}", nodes[i].stab) for i in kept)
        edges = tuple(
            GogEdge(
                f"t{k}",
                (f"n{a}", f"n{b}"),
                tuple(sorted(set(nodes[a].stab) & set(nodes[b].stab))),
            )
            for k, (a, b, _) in enumerate(tree_edges)
            if a in keep and b in keep
        )
        g = VisualGoG(vertices=vertices, edges=edges)
        while True:
            empty = next((v for v in g.vertices if not v.label), None)
            if empty is None or len(g.vertices) == 1:
                break
            first_edge = next(e for e in g.edges if empty.id in e.ends)
            g = collapse_edges(g, {first_edge.id})
        g = renumber(reduce(g))
        spanned = tuple(
            SpannedVertex(nodes[i].quotient_id, nodes[i].rep, nodes[i].stab)
            for i in kept
        )
        certificates = tuple(
            Certificate(t, nodes[i].quotient_id, nodes[i].rep)
            for t, i in sorted(certs.items())
        )
        report = validate_visual(sys_, g)
        if not report.valid:
            return RefinementOutcome(
                status="inconclusive",
                certificates=certificates,
                spanned=spanned,
                radius_used=depth_reached,
                reason="assembled decomposition failed the subtree criterion",
            )
        return RefinementOutcome(
            status="refined",
            decomposition=g,
            certificates=certificates,
            spanned=spanned,
            radius_used=depth_reached,
        )

    if len(certs) == len(targets):
        return assemble(0)

    frontier = list(range(len(nodes)))
    for depth in range(1, radius + 1):
        created = []
        max_len = max(
            (max(grouped_balls[nodes[i].quotient_id]) for i in frontier),
            default=0,
        )
        for lam_len in range(max_len + 1):
            for n_idx in frontier:
                node = nodes[n_idx]
                for lam in grouped_balls[node.quotient_id].get(lam_len, ()):
                    cand = eng.mult(node.rep, lam)
                    for qeid, other in incident[node.quotient_id]:
                        known = False
                        for ex in by_quotient[other]:
                            diff = eng.mult(tuple(reversed(nodes[ex].rep)), cand)
                            if diff in balls[other]:
                                known = True
                                break
                        if known:
                            continue
                        if len(nodes) >= max_cosets:
                            return RefinementOutcome(
                                status="inconclusive",
                                radius_used=depth,
                                reason=f"coset budget of {max_cosets} exhausted",
                            )
                        created.append(add_node(other, cand, depth, n_idx, qeid))
                        if len(certs) == len(targets):
                            return assemble(depth)
        if not created:
            break
        frontier = created

    missing = [t for t in targets if t not in certs]
    names = "; ".join(" ".join(sys_.names_of(t)) for t in missing)
    return RefinementOutcome(
        status="inconclusive",
        certificates=tuple(
            Certificate(t, nodes[i].quotient_id, nodes[i].rep)
            for t, i in sorted(certs.items())
        ),
        radius_used=min(radius, max(n.depth for n in nodes)),
        reason=f"no stabilized vertex found within radius for: {names}",
    )
