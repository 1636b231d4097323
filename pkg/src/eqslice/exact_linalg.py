"""Exact integer linear algebra on plain nested tuples of Python ints.

Matrices are tuples of row tuples.  Every routine here is exact; nothing
touches floating point, so determinants and normal forms of any size are
correct (Python ints never overflow).
"""
from __future__ import annotations

from fractions import Fraction as Rational  # noqa: F401  (re-exported)
from typing import Iterable, Sequence

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if shape(a)[1] != len(b):
        raise ValueError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    if shape(a)[1] != len(v):
        raise ValueError(f"cannot apply {shape(a)} matrix to vector of length {len(v)}")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def gram(m: Sequence[Sequence[int]]) -> IntMatrix:
    """M M^T."""
    return matmul(m, transpose(m))


def is_symmetric(m: Sequence[Sequence[int]]) -> bool:
    r, c = shape(m)
    return r == c and all(m[i][j] == m[j][i] for i in range(r) for j in range(i))


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n, c = shape(m)
    if n != c:
        raise ValueError(f"determinant of non-square {n}x{c} matrix")
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_minors(m: Sequence[Sequence[int]]) -> list[int]:
    n = len(m)
    return [determinant([row[:k] for row in m[:k]]) for k in range(1, n + 1)]


def is_positive_definite(m: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion on exact leading principal minors."""
    if not is_symmetric(m):
        raise ValueError("positive definiteness requires a symmetric matrix")
    return all(d > 0 for d in leading_minors(m))


def hermite_normal_form(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form of the row lattice of ``m``.

    The result lists a basis of the lattice spanned by the rows: echelon
    form, positive pivots, entries above each pivot reduced into
    ``[0, pivot)``.  Zero rows are dropped.
    """
    rows = [list(r) for r in m if any(r)]
    ncols = shape(m)[1]
    basis: list[list[int]] = []
    pivots: list[int] = []
    col = 0
    while rows and col < ncols:
        live = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not live:
            col += 1
            continue
        # gcd-combine everything with a nonzero entry in this column
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        p = live[0]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
        pivots.append(col)
        rows = rest
        col += 1
    for i, (row, c) in enumerate(zip(basis, pivots)):
        for k in range(i):
            q = basis[k][c] // row[c]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], row)]
    return tuple(tuple(r) for r in basis)


def reduce_mod_hnf(v: Sequence[int], h: IntMatrix) -> IntVector:
    """Reduce ``v`` modulo the lattice of a full-rank square row HNF ``h``.

    The returned vector has every coordinate ``i`` in ``[0, h[i][i])`` and
    differs from ``v`` by a lattice vector.
    """
    v = list(v)
    for i, row in enumerate(h):
        q = v[i] // row[i]
        if q:
            for j in range(i, len(v)):
                v[j] -= q * row[j]
    return tuple(v)


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative
    entries and ``D[i][i]`` divides ``D[i+1][i+1]``.
    """
    nr, nc = shape(m)
    d = [list(r) for r in m]
    u = [list(r) for r in identity(nr)]
    v = [list(r) for r in identity(nc)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (d, v):
            for r in mat:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        for mat in (d, u):
            mat[dst] = [x + k * y for x, y in zip(mat[dst], mat[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for mat in (d, v):
            for r in mat:
                r[dst] += k * r[src]

    for t in range(min(nr, nc)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if d[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            for i in range(t + 1, nr):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
            for j in range(t + 1, nc):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
            if any(d[i][t] for i in range(t + 1, nr)) or any(d[t][j] for j in range(t + 1, nc)):
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    as_t = lambda mat: tuple(tuple(r) for r in mat)
    return as_t(u), as_t(d), as_t(v)


def solve_integer(m: Sequence[Sequence[int]], b: Sequence[int]) -> IntVector | None:
    """Some integer ``x`` with ``m x = b``, or ``None`` if none exists."""
    nr, nc = shape(m)
    if len(b) != nr:
        raise ValueError(f"right-hand side has length {len(b)}, expected {nr}")
    u, d, v = smith_normal_form(m)
    c = matvec(u, b)
    y = [0] * nc
    for i in range(nr):
        di = d[i][i] if i < nc else 0
        if di == 0:
            if c[i] != 0:
                return None
        elif c[i] % di:
            return None
        else:
            y[i] = c[i] // di
    return matvec(v, y)


def integer_kernel(m: Sequence[Sequence[int]]) -> list[IntVector]:
    """A Z-basis of ``{x : m x = 0}``."""
    nr, nc = shape(m)
    _, d, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(nr, nc)) if d[i][i])
    vt = transpose(v)
    return [vt[j] for j in range(rank, nc)]


def solve_rational(m: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[Rational, ...]:
    """Unique rational solution of ``m x = b`` for nonsingular square ``m``."""
    n = len(m)
    a = [[Rational(x) for x in row] + [Rational(y)] for row, y in zip(m, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return tuple(a[i][n] / a[i][i] for i in range(n))
