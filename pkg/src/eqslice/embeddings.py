"""Lattice embeddings ``A`` with ``A^T A = Q`` into the standard lattice Z^n.

Embeddings are counted up to the automorphisms of Z^n, i.e. signed
permutations of the rows of ``A``.  The canonical representative of an orbit
has every nonzero row starting with a positive entry and rows sorted in
decreasing lexicographic order.  The search builds ``A`` one column at a
time and only ever produces canonical matrices: whenever two rows agree on
the columns placed so far, the next column must keep them ordered, and a
row that is still zero may only receive a non-negative entry.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Sequence

from .checkerboard import GoeritzForm
from .exact_linalg import IntMatrix, is_positive_definite, matmul, transpose


@dataclass(frozen=True)
class LatticeEmbedding:
    matrix: IntMatrix
    form: IntMatrix

    @property
    def columns(self) -> IntMatrix:
        return transpose(self.matrix)


def _matrix(q) -> IntMatrix:
    return q.matrix if isinstance(q, GoeritzForm) else tuple(tuple(r) for r in q)


def is_embedding(a: Sequence[Sequence[int]], q) -> bool:
    m = _matrix(q)
    if len(a) != len(m) or any(len(r) != len(m) for r in a):
        raise ValueError("embedding matrix must be square of the same rank as the form")
    return matmul(transpose(a), a) == m


def canonical_form(a: Sequence[Sequence[int]]) -> IntMatrix:
    """Canonical representative of ``a`` under signed row permutations."""
    rows = []
    for r in a:
        lead = next((x for x in r if x), 0)
        rows.append(tuple(-x for x in r) if lead < 0 else tuple(r))
    return tuple(sorted(rows, reverse=True))


def _columns(
    norm: int,
    prev_cols: list[tuple[int, ...]],
    targets: Sequence[int],
    rows: int,
    zero_prefix: Sequence[bool],
    tied: Sequence[bool],
) -> Iterator[tuple[int, ...]]:
    """Candidate next columns in lexicographically decreasing order.

    ``tied[i]`` says rows ``i-1`` and ``i`` agree on all earlier columns, so
    the new entry of row ``i`` may not exceed that of row ``i-1``.
    """
    col = [0] * rows
    k = len(prev_cols)
    dots = [0] * k

    def rec(i: int, rem: int):
        if i == rows:
            if rem == 0 and all(d == t for d, t in zip(dots, targets)):
                yield tuple(col)
            return
        bound = isqrt(rem)
        hi = bound
        if tied[i]:
            hi = min(hi, col[i - 1])
        lo = 0 if zero_prefix[i] else -bound
        for x in range(hi, lo - 1, -1):
            col[i] = x
            if x:
                for c in range(k):
                    dots[c] += x * prev_cols[c][i]
            yield from rec(i + 1, rem - x * x)
            if x:
                for c in range(k):
                    dots[c] -= x * prev_cols[c][i]
        col[i] = 0

    yield from rec(0, norm)


def _extend(m: IntMatrix, cols: list[tuple[int, ...]]) -> Iterator[IntMatrix]:
    n = len(m)
    k = len(cols)
    if k == n:
        yield transpose(cols)
        return
    rows = n
    zero_prefix = [all(c[i] == 0 for c in cols) for i in range(rows)]
    tied = [i > 0 and all(c[i] == c[i - 1] for c in cols) for i in range(rows)]
    targets = [m[j][k] for j in range(k)]
    for col in _columns(m[k][k], cols, targets, rows, zero_prefix, tied):
        cols.append(col)
        yield from _extend(m, cols)
        cols.pop()


def _prefixes(m: IntMatrix, depth: int) -> list[list[tuple[int, ...]]]:
    out: list[list[tuple[int, ...]]] = [[]]
    for _ in range(depth):
        nxt = []
        for cols in out:
            k = len(cols)
            zero_prefix = [all(c[i] == 0 for c in cols) for i in range(len(m))]
            tied = [i > 0 and all(c[i] == c[i - 1] for c in cols) for i in range(len(m))]
            targets = [m[j][k] for j in range(k)]
            for col in _columns(m[k][k], cols, targets, len(m), zero_prefix, tied):
                nxt.append(cols + [col])
        out = nxt
    return out


def _complete(args) -> list[IntMatrix]:
    m, cols = args
    return list(_extend(m, list(cols)))


def enumerate_embeddings(q, workers: int = 1) -> list[LatticeEmbedding]:
    """Every embedding of ``q`` into (Z^n, Id), one per signed-row-permutation orbit.

    An empty list certifies that no embedding exists.  With ``workers > 1``
    the subtrees below the first two columns are searched in separate
    processes; the result is sorted, so it does not depend on scheduling.
    """
    m = _matrix(q)
    if not is_positive_definite(m):
        raise ValueError("embedding search expects a positive definite form")
    if workers > 1 and len(m) > 2:
        jobs = [(m, cols) for cols in _prefixes(m, 2)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = [a for part in pool.map(_complete, jobs) for a in part]
    else:
        found = list(_extend(m, []))
    return [LatticeEmbedding(a, m) for a in sorted(set(found))]
