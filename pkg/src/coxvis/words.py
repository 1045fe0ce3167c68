"""The word problem and coset geometry of a Coxeter system.

Normal forms are ShortLex: shortest length first, ties broken by declared
generator order.  The engine appends one generator at a time to a normal
form and searches the braid-move closure of the provisional word (replace
an alternating run st st... of length m(s,t) by its reversal).  Tits
solved the word problem this way: a non-geodesic word reaches an adjacent
equal pair by braid moves alone, and all geodesics of an element are
connected by braid moves, so the closure both detects cancellations and
contains the ShortLex minimum.

On top of the append step: multiplication, inversion, supports, minimal
coset and double-coset representatives, intersections of conjugated
special subgroups, and a breadth-first Cayley-ball enumerator usable as an
independent oracle.

The per-system append memo is the only mutable state.  Inserts are atomic
dictionary writes keyed by immutable tuples, so concurrent readers are
safe; every exposed operation is logically pure.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .system import CoxeterSystem, Subset

# A word is a tuple of generator indices.  Generators are involutions, so
# no inverse symbols are ever needed.
Word = tuple

BRAID_CLOSURE_CAP = 1_000_000


class BudgetError(RuntimeError):
    """A bounded search exceeded its cap; the result is unknown, never wrong."""


class WordEngine:
    """Memoized ShortLex rewriting for one system."""

    def __init__(self, sys_: CoxeterSystem):
        self.sys = sys_
        self._append_memo = {}

    def normal_form(self, w) -> Word:
        out = ()
        for s in w:
            out = self.append(out, s)
        return out

    def append(self, u: Word, s: int) -> Word:
        """Normal form of u*s for an already-canonical u."""
        if not 0 <= s < self.sys.rank:
            raise ValueError(f"generator index {s} out of range")
        key = (u, s)
        hit = self._append_memo.get(key)
        if hit is not None:
            return hit
        shorter = self._closure_cancel(u + (s,))
        if shorter is None:
            # u*s is geodesic; its closure is all reduced spellings.
            result = self._closure_min(u + (s,))
        else:
            # One cancellation lands exactly on the element's length.
            result = self._closure_min(shorter)
        self._append_memo[key] = result
        return result

    def _braid_neighbors(self, w: Word):
        order = self.sys.order
        n = len(w)
        for p in range(n - 1):
            a, b = w[p], w[p + 1]
            m = order(a, b)
            if m is None or p + m > n:
                continue
            run = w[p:p + m]
            if all(run[k] == (a if k % 2 == 0 else b) for k in range(m)):
                flipped = tuple(b if k % 2 == 0 else a for k in range(m))
                yield w[:p] + flipped + w[p + m:]

    def _closure_cancel(self, start: Word) -> Optional[Word]:
        """Search the braid closure for an adjacent equal pair; return the cancelled word."""
        seen = {start}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for p in range(len(w) - 1):
                if w[p] == w[p + 1]:
                    return w[:p] + w[p + 2:]
            for nb in self._braid_neighbors(w):
                if nb not in seen:
                    if len(seen) >= BRAID_CLOSURE_CAP:
                        raise BudgetError(
                            f"braid closure exceeded {BRAID_CLOSURE_CAP} words"
                        )
                    seen.add(nb)
                    queue.append(nb)
        return None

    def _closure_min(self, start: Word) -> Word:
        """ShortLex-least word in the braid closure of a geodesic word."""
        seen = {start}
        queue = deque([start])
        best = start
        while queue:
            w = queue.popleft()
            if w < best:
                best = w
            for nb in self._braid_neighbors(w):
                if nb not in seen:
                    if len(seen) >= BRAID_CLOSURE_CAP:
                        raise BudgetError(
                            f"braid closure exceeded {BRAID_CLOSURE_CAP} words"
                        )
                    seen.add(nb)
                    queue.append(nb)
        return best

    def mult(self, *words) -> Word:
        out = ()
        for w in words:
            for s in w:
                out = self.append(out, s)
        return out

    def inverse(self, w) -> Word:
        return self.normal_form(tuple(reversed(tuple(w))))

    def length(self, w) -> int:
        return len(self.normal_form(w))


def _engine(sys_: CoxeterSystem) -> WordEngine:
    # cached_property stores into the instance __dict__ directly, which
    # works on a frozen dataclass and gives one shared memo per system.
    engine = sys_.__dict__.get("_word_engine")
    if engine is None:
        engine = WordEngine(sys_)
        sys_.__dict__["_word_engine"] = engine
    return engine


def parse_word(sys_: CoxeterSystem, text: str) -> Word:
    """Whitespace-separated generator names; 'e' alone denotes the identity."""
    toks = text.split()
    if toks == ["e"]:
        return ()
    return tuple(sys_.gen_index(t) for t in toks)


def format_word(sys_: CoxeterSystem, w) -> str:
    if not w:
        return "e"
    return " ".join(sys_.names[s] for s in w)


def normal_form(sys_: CoxeterSystem, w) -> Word:
    """The ShortLex-least word representing the same element as w."""
    return _engine(sys_).normal_form(tuple(w))


def is_geodesic(sys_: CoxeterSystem, w) -> bool:
    w = tuple(w)
    return len(normal_form(sys_, w)) == len(w)


def support(sys_: CoxeterSystem, w) -> Subset:
    """The letter set of any geodesic spelling of w (independent of the spelling)."""
    return tuple(sorted(set(normal_form(sys_, w))))


def mult(sys_: CoxeterSystem, *words) -> Word:
    return _engine(sys_).mult(*(tuple(w) for w in words))


def inverse(sys_: CoxeterSystem, w) -> Word:
    return _engine(sys_).inverse(tuple(w))


def words_equal(sys_: CoxeterSystem, u, v) -> bool:
    return normal_form(sys_, u) == normal_form(sys_, v)


@dataclass(frozen=True)
class CosetDescriptor:
    """The unique shortest element of rep*<subgroup>."""

    rep: Word
    subgroup: Subset


def coset_min_rep(sys_: CoxeterSystem, y, A) -> CosetDescriptor:
    """Minimal-length representative of the coset y<A>.

    Greedy descent: while some a in A shortens on the right, apply the
    least such a.  The minimum is the unique element without a right
    A-descent, so any descent path reaches it.
    """
    A = sys_.subset(A)
    eng = _engine(sys_)
    z = eng.normal_form(tuple(y))
    changed = True
    while changed:
        changed = False
        for a in A:
            za = eng.append(z, a)
            if len(za) < len(z):
                z = za
                changed = True
                break
    return CosetDescriptor(rep=z, subgroup=A)


def _double_coset_min(sys_: CoxeterSystem, I, w, J):
    """Minimal d with <I>w<J> = <I>d<J>, plus a in <I>, b in <J> with w = a*d*b^-1."""
    eng = _engine(sys_)
    d = eng.normal_form(tuple(w))
    a: Word = ()
    b: Word = ()
    while True:
        progressed = False
        for i in I:
            di = eng.mult((i,), d)
            if len(di) < len(d):
                d = di
                a = a + (i,)
                progressed = True
                break
        for j in J:
            dj = eng.append(d, j)
            if len(dj) < len(d):
                d = dj
                b = b + (j,)
                progressed = True
                break
        if not progressed:
            return d, eng.normal_form(a), eng.normal_form(b)


def double_coset_min_rep(sys_: CoxeterSystem, I, w, J) -> Word:
    """Minimal-length representative of the double coset <I>w<J>.

    Alternates one-sided coset minimization until stable; a representative
    reduced on both sides is the unique minimum of the double coset.
    """
    I = sys_.subset(I)
    J = sys_.subset(J)
    d, _, _ = _double_coset_min(sys_, I, tuple(w), J)
    return d


@dataclass(frozen=True)
class ConjugateSpecial:
    """The subgroup g<core>g^-1."""

    conjugator: Word
    core: Subset


@dataclass(frozen=True)
class IntersectionResult:
    """f<core>f^-1, the intersection of two conjugated special subgroups."""

    conjugator: Word
    core: Subset


def intersect_special_conjugates(
    sys_: CoxeterSystem, P: ConjugateSpecial, Q: ConjugateSpecial
) -> IntersectionResult:
    """Intersect g<I>g^-1 with h<J>h^-1 exactly.

    Writes g^-1 h = a*d*b^-1 with d the minimal double-coset representative
    in <I>d<J>, a in <I>, b in <J>; then the intersection is f<K>f^-1 with
    K = I meet dJd^-1 (those i in I whose d-conjugate is a single letter of
    J) and f = g*a.
    """
    I = sys_.subset(P.core)
    J = sys_.subset(Q.core)
    eng = _engine(sys_)
    g = eng.normal_form(tuple(P.conjugator))
    h = eng.normal_form(tuple(Q.conjugator))
    w = eng.mult(eng.inverse(g), h)
    d, a, _b = _double_coset_min(sys_, I, w, J)
    d_inv = eng.inverse(d)
    K = []
    for i in I:
        conj = eng.mult(d_inv, (i,), d)
        if len(conj) == 1 and conj[0] in J:
            K.append(i)
    f = eng.mult(g, a)
    return IntersectionResult(conjugator=f, core=tuple(K))


@dataclass(frozen=True)
class CayleyBall:
    """Elements of <A> out to a radius, with a completeness flag."""

    elements: frozenset
    complete: bool


def cayley_ball(
    sys_: CoxeterSystem,
    A,
    radius: Optional[int] = None,
    max_elements: Optional[int] = None,
) -> CayleyBall:
    """Breadth-first enumeration of <A> with normal-form deduplication.

    radius=None explores until the frontier empties (only safe on finite
    subgroups unless max_elements is set).  Exceeding max_elements raises
    BudgetError; stopping at the radius with a live frontier just reports
    complete=False.
    """
    A = sys_.subset(A)
    eng = _engine(sys_)
    seen = {()}
    level = [()]
    depth = 0
    while level and (radius is None or depth < radius):
        nxt = []
        for x in level:
            for a in A:
                y = eng.append(x, a)
                if len(y) > len(x) and y not in seen:
                    if max_elements is not None and len(seen) >= max_elements:
                        raise BudgetError(
                            f"cayley ball exceeded {max_elements} elements"
                        )
                    seen.add(y)
                    nxt.append(y)
        level = nxt
        depth += 1
    return CayleyBall(elements=frozenset(seen), complete=not level)
