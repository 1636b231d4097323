"""Spin^c structures on the double branched cover as characteristic covectors.

For a Goeritz form ``Q`` the Spin^c structures are the characteristic
covectors ``u`` (``u_i = Q_ii mod 2``) modulo the image of ``2Q``.  Classes
are represented by the unique coset representative lying in the box cut out
by the Hermite normal form of ``2Q``, so class equality is tuple equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

from .checkerboard import GoeritzForm
from .exact_linalg import (
    IntMatrix,
    IntVector,
    determinant,
    hermite_normal_form,
    is_positive_definite,
    matvec,
    reduce_mod_hnf,
    solve_integer,
)


class NotCharacteristic(ValueError):
    pass


def _matrix(q: GoeritzForm | Sequence[Sequence[int]]) -> IntMatrix:
    if isinstance(q, GoeritzForm):
        return q.matrix
    return tuple(tuple(r) for r in q)


def is_characteristic(u: Sequence[int], q) -> bool:
    m = _matrix(q)
    if len(u) != len(m):
        raise ValueError(f"vector of length {len(u)} for a rank {len(m)} form")
    return all((ui - m[i][i]) % 2 == 0 for i, ui in enumerate(u))


def _require_char(u, m):
    if not is_characteristic(u, m):
        raise NotCharacteristic(f"{tuple(u)} is not characteristic for the form")


def same_class(u: Sequence[int], v: Sequence[int], q) -> bool:
    """Decide ``u - v in im(2Q)`` by solving ``Q x = (u - v) / 2`` over Z."""
    m = _matrix(q)
    _require_char(u, m)
    _require_char(v, m)
    half = [(a - b) // 2 for a, b in zip(u, v)]
    return solve_integer(m, half) is not None


@dataclass(frozen=True, order=True)
class SpincClass:
    rep: IntVector

    def __repr__(self) -> str:
        return f"SpincClass{self.rep}"


class SpincLattice:
    """Canonicalisation and enumeration of Spin^c classes for a fixed form."""

    def __init__(self, q: GoeritzForm | Sequence[Sequence[int]]):
        self.matrix = _matrix(q)
        self.n = len(self.matrix)
        self.hnf = hermite_normal_form([[2 * x for x in row] for row in self.matrix])
        if len(self.hnf) != self.n:
            raise ValueError("form is degenerate; Spin^c classes are not a finite set")

    @cached_property
    def order(self) -> int:
        return abs(determinant(self.matrix))

    def canonicalize(self, u: Sequence[int]) -> SpincClass:
        _require_char(u, self.matrix)
        return SpincClass(reduce_mod_hnf(u, self.hnf))

    def __contains__(self, u) -> bool:
        return len(u) == self.n and is_characteristic(u, self.matrix)

    def negate(self, c: SpincClass) -> SpincClass:
        return self.canonicalize([-x for x in c.rep])

    def shift(self, u: Sequence[int], k: Sequence[int]) -> IntVector:
        """``u + 2 Q k``, a different representative of the same class."""
        qk = matvec(self.matrix, k)
        return tuple(a + 2 * b for a, b in zip(u, qk))

    def classes(self) -> list[SpincClass]:
        """All classes, sorted.

        Canonical reps fill the box ``0 <= u_i < h_ii`` of the HNF, and the
        characteristic condition is a per-coordinate parity, so the box can
        be enumerated coordinate by coordinate.
        """
        ranges = [
            range(self.matrix[i][i] % 2, self.hnf[i][i], 2) for i in range(self.n)
        ]
        return [SpincClass(tuple(v)) for v in product(*ranges)]

    def __iter__(self) -> Iterator[SpincClass]:
        return iter(self.classes())


def canonicalize(u: Sequence[int], q) -> SpincClass:
    return SpincLattice(q).canonicalize(u)


@dataclass
class SpincSpace:
    form: IntMatrix
    order: int
    classes: list[SpincClass]


def enumerate_spinc(q) -> SpincSpace:
    m = _matrix(q)
    if not is_positive_definite(m):
        raise ValueError("Spin^c enumeration expects a positive definite form")
    lat = SpincLattice(m)
    classes = lat.classes()
    return SpincSpace(m, lat.order, classes)
