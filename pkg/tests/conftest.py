"""Shared fixtures and the independent matrix oracle.

The oracle multiplies reflection matrices of the standard geometric
representation (sigma_i = I - 2 e_i e_i^T B with B_ij = -cos(pi/m_ij),
infinite orders mapped to -1) and enumerates group elements breadth-first
in length-lex order, so its canonical words and group orders come from
numpy linear algebra and never touch the package's braid-move engine.
"""

import math

import numpy as np
import pytest

from coxvis.system import CoxeterSystem


def make_system(names, relations):
    return CoxeterSystem.build(tuple(names.split()), relations)


class MatrixOracle:
    def __init__(self, sys_, max_elements=2_000_000, max_length=None):
        n = sys_.rank
        B = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                if i == j:
                    B[i, j] = 1.0
                else:
                    m = sys_.order(i, j)
                    B[i, j] = -1.0 if m is None else -math.cos(math.pi / m)
        self.sigma = []
        for i in range(n):
            s = np.eye(n)
            s[i, :] -= 2.0 * B[i, :]
            self.sigma.append(s)
        self.sys = sys_
        self.max_elements = max_elements
        self.max_length = max_length
        self._canon = None
        self._complete = None

    @staticmethod
    def _key(M):
        return tuple(np.round(M, 6).ravel().tolist())

    def matrix_of(self, word):
        M = np.eye(self.sys.rank)
        for s in word:
            M = M @ self.sigma[s]
        return M

    def enumerate(self):
        """Map matrix key -> ShortLex-first word, by length-lex BFS."""
        if self._canon is not None:
            return self._canon
        canon = {self._key(np.eye(self.sys.rank)): ()}
        level = [((), np.eye(self.sys.rank))]
        complete = False
        length = 0
        while level:
            if self.max_length is not None and length >= self.max_length:
                break
            nxt = []
            for w, M in level:
                for s in range(self.sys.rank):
                    M2 = M @ self.sigma[s]
                    k = self._key(M2)
                    if k not in canon:
                        canon[k] = w + (s,)
                        nxt.append((w + (s,), M2))
                        if len(canon) > self.max_elements:
                            raise RuntimeError("oracle enumeration budget exceeded")
            level = nxt
            length += 1
        else:
            complete = True
        self._canon = canon
        self._complete = complete
        return canon

    def order(self):
        canon = self.enumerate()
        if not self._complete:
            raise RuntimeError("enumeration was truncated; order unknown")
        return len(canon)

    def canonical(self, word):
        return self.enumerate()[self._key(self.matrix_of(word))]

    def equal(self, u, v):
        return self._key(self.matrix_of(u)) == self._key(self.matrix_of(v))


@pytest.fixture(scope="session")
def simex():
    return make_system(
        "s1 s2 s3 s4 s5",
        [("s1", "s2", 2), ("s2", "s3", 2), ("s3", "s4", 2), ("s4", "s5", 2)],
    )


@pytest.fixture(scope="session")
def square2():
    return make_system("a b c d", [("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("a", "d", 2)])


@pytest.fixture(scope="session")
def fa6():
    return make_system(
        "a b c d",
        [("a", "b", 2), ("a", "c", 2), ("c", "d", 2), ("b", "c", 3), ("a", "d", 3)],
    )


@pytest.fixture(scope="session")
def free4():
    return make_system("w x y z", [])


@pytest.fixture(scope="session")
def triangle333():
    return make_system("a b c", [("a", "b", 3), ("b", "c", 3), ("a", "c", 3)])


def dihedral(m):
    rels = [] if m is None else [("a", "b", m)]
    return make_system("a b", rels)


@pytest.fixture(scope="session")
def fixture_dir():
    import pathlib

    return pathlib.Path(__file__).resolve().parent.parent / "fixtures"
