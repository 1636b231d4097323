"""Determinant and Spin^c/Donaldson obstructions to equivariant sliceness."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import isqrt
from typing import Any, Sequence

from .checkerboard import (
    CheckerboardPresentation,
    reduced_incidence,
    validate,
)
from .embeddings import LatticeEmbedding, enumerate_embeddings
from .exact_linalg import (
    IntMatrix,
    determinant,
    gram,
    hermite_normal_form,
    matvec,
    solve_integer,
    transpose,
)
from .spinc import SpincClass, SpincLattice


class Level(str, enum.Enum):
    NOT_SLICE = "NotSlice"
    NOT_EQUIVARIANTLY_SLICE = "NotEquivariantlySlice"
    DET_OBSTRUCTED = "DetObstructed"
    NOT_AMPHICHIRAL_CANDIDATE = "NotAmphichiralCandidate"
    INCONCLUSIVE = "Inconclusive"

    @property
    def obstructed(self) -> bool:
        return self is not Level.INCONCLUSIVE


@dataclass
class Verdict:
    level: Level
    evidence: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"level": self.level.value, "evidence": self.evidence}


class InvalidPresentation(ValueError):
    def __init__(self, report):
        self.report = report
        names = ", ".join(c.name for c in report.failures())
        super().__init__(f"presentation failed validation: {names}")


# -- determinant ------------------------------------------------------------

def factorize(m: int) -> dict[int, int]:
    if m < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def sum_of_two_squares(m: int) -> bool:
    """True iff ``m = a^2 + b^2``: every prime 3 mod 4 occurs to an even power."""
    if m < 0:
        raise ValueError("sum_of_two_squares expects m >= 0")
    if m == 0:
        return True
    return all(e % 2 == 0 for p, e in factorize(m).items() if p % 4 == 3)


def two_squares(m: int) -> tuple[int, int] | None:
    """A witness ``(a, b)`` with ``a >= b >= 0`` and ``a^2 + b^2 = m``."""
    for b in range(isqrt(m // 2) + 1):
        a2 = m - b * b
        a = isqrt(a2)
        if a * a == a2:
            return a, b
    return None


def _pairs(f: dict[int, int]) -> list[list[int]]:
    return [[p, e] for p, e in sorted(f.items())]


def det_obstruction(d: int) -> Verdict:
    if d <= 0 or d % 2 == 0:
        raise ValueError(f"knot determinants are positive and odd, got {d}")
    ev: dict[str, Any] = {"determinant": d, "factorization": _pairs(factorize(d))}
    if not sum_of_two_squares(d):
        return Verdict(Level.NOT_AMPHICHIRAL_CANDIDATE, ev)
    ev["two_squares"] = list(two_squares(d))
    m = isqrt(d)
    if m * m != d:
        return Verdict(Level.NOT_SLICE, ev)
    ev["sqrt"] = m
    ev["sqrt_factorization"] = _pairs(factorize(m))
    if not sum_of_two_squares(m):
        return Verdict(Level.DET_OBSTRUCTED, ev)
    ev["sqrt_two_squares"] = list(two_squares(m))
    return Verdict(Level.INCONCLUSIVE, ev)


# -- the action of the lift on Spin^c structures -----------------------------

class SigmaAction:
    """The lift of the symmetry acting on Spin^c(Y) = Char(Z^n, A+)/im(2A+).

    The class of ``J+ v`` is sent to the class of ``J- v`` for every all-odd
    ``v`` in Z^{2n}.
    """

    def __init__(self, jplus: Sequence[Sequence[int]], jminus: Sequence[Sequence[int]]):
        self.jplus: IntMatrix = tuple(tuple(r) for r in jplus)
        self.jminus: IntMatrix = tuple(tuple(r) for r in jminus)
        if len(self.jplus) != len(self.jminus) or len(self.jplus[0]) != len(self.jminus[0]):
            raise ValueError("incidence matrices must have the same shape")
        self.form: IntMatrix = gram(self.jplus)
        dminus = gram(self.jminus)
        if any((self.form[i][i] - dminus[i][i]) % 2 for i in range(len(self.form))):
            raise ValueError("diagonals of the two Goeritz forms differ in parity")
        self.lattice = SpincLattice(self.form)
        self._ones = (1,) * len(self.jplus[0])
        self._plus_ones = matvec(self.jplus, self._ones)

    @classmethod
    def from_presentation(cls, p: CheckerboardPresentation) -> "SigmaAction":
        return cls(reduced_incidence(p, "plus"), reduced_incidence(p, "minus"))

    def lift(self, u: Sequence[int]) -> tuple[int, ...]:
        """An all-odd ``v`` with ``J+ v = u``."""
        c = [(a - b) // 2 for a, b in zip(u, self._plus_ones)]
        w = solve_integer(self.jplus, c)
        if w is None:
            raise ArithmeticError(
                "J+ w = (u - J+ 1)/2 has no integer solution; the plus graph is not connected"
            )
        return tuple(1 + 2 * x for x in w)

    def image_of_odd_vector(self, v: Sequence[int]) -> tuple[SpincClass, SpincClass]:
        if any(x % 2 == 0 for x in v):
            raise ValueError("lift vector must have all entries odd")
        return (
            self.lattice.canonicalize(matvec(self.jplus, v)),
            self.lattice.canonicalize(matvec(self.jminus, v)),
        )

    def __call__(self, c: SpincClass | Sequence[int]) -> SpincClass:
        rep = c.rep if isinstance(c, SpincClass) else tuple(c)
        rep = self.lattice.canonicalize(rep).rep
        return self.lattice.canonicalize(matvec(self.jminus, self.lift(rep)))

    def permutation(self) -> dict[SpincClass, SpincClass]:
        return {c: self(c) for c in self.lattice.classes()}

    def orbits(self) -> list[list[SpincClass]]:
        perm = self.permutation()
        if len(set(perm.values())) != len(perm):
            raise ArithmeticError("sigma action is not injective on Spin^c classes")
        seen: set[SpincClass] = set()
        out = []
        for c in perm:
            if c in seen:
                continue
            cyc = [c]
            seen.add(c)
            nxt = perm[c]
            while nxt != c:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = perm[nxt]
            out.append(cyc)
        return out


def sigma_star(u, act: SigmaAction) -> SpincClass:
    return act(u)


# -- metabolizers -----------------------------------------------------------

@dataclass
class MetabolizerSet:
    embedding: LatticeEmbedding
    classes: frozenset[SpincClass]

    def __contains__(self, c) -> bool:
        return c in self.classes

    def __len__(self) -> int:
        return len(self.classes)


def quotient_representatives(a: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Coset representatives of Z^n / A Z^n for nonsingular ``a``."""
    h = hermite_normal_form(transpose(a))
    if len(h) != len(a):
        raise ValueError("matrix is singular")
    from itertools import product

    return [tuple(w) for w in product(*(range(h[i][i]) for i in range(len(h))))]


def metabolizer_spinc(a: LatticeEmbedding | Sequence[Sequence[int]], q=None) -> MetabolizerSet:
    """Classes of ``A^T v`` for all-odd ``v``; one per coset of Z^n / A Z^n."""
    if not isinstance(a, LatticeEmbedding):
        mat = tuple(tuple(r) for r in a)
        form = getattr(q, "matrix", q)
        a = LatticeEmbedding(mat, tuple(tuple(r) for r in form))
    lat = SpincLattice(a.form)
    at = transpose(a.matrix)
    classes = frozenset(
        lat.canonicalize(matvec(at, [1 + 2 * x for x in w]))
        for w in quotient_representatives(a.matrix)
    )
    return MetabolizerSet(a, classes)


@dataclass
class InvarianceResult:
    invariant: bool
    witness: SpincClass | None = None
    image: SpincClass | None = None
    escaping: int = 0

    def __bool__(self) -> bool:
        return self.invariant


def check_invariance(s: MetabolizerSet, act: SigmaAction) -> InvarianceResult:
    if s.embedding.form != act.form:
        raise ValueError("metabolizer and action are built over different forms")
    escapes = [(c, act(c)) for c in sorted(s.classes)]
    escapes = [(c, img) for c, img in escapes if img not in s.classes]
    if not escapes:
        return InvarianceResult(True)
    c, img = escapes[0]
    return InvarianceResult(False, c, img, len(escapes))


# -- full pipeline ----------------------------------------------------------

def pipeline_from_matrices(
    jplus: Sequence[Sequence[int]],
    jminus: Sequence[Sequence[int]],
    workers: int = 1,
) -> Verdict:
    act = SigmaAction(jplus, jminus)
    det = abs(determinant(act.form))
    verdict = det_obstruction(det)
    ev: dict[str, Any] = {"goeritz": [list(r) for r in act.form], "determinant_stage": verdict.to_dict()}
    if verdict.level is not Level.INCONCLUSIVE:
        return Verdict(verdict.level, ev)

    embeddings = enumerate_embeddings(act.form, workers=workers)
    ev["embeddings"] = []
    if not embeddings:
        return Verdict(Level.NOT_SLICE, ev)

    all_fail = True
    for k, emb in enumerate(embeddings):
        s = metabolizer_spinc(emb)
        res = check_invariance(s, act)
        entry: dict[str, Any] = {
            "index": k,
            "matrix": [list(r) for r in emb.matrix],
            "metabolizer_size": len(s),
            "invariant": res.invariant,
        }
        if not res.invariant:
            v = act.lift(res.witness.rep)
            entry["witness"] = {
                "class": list(res.witness.rep),
                "odd_lift": list(v),
                "image": list(res.image.rep),
                "escaping_classes": res.escaping,
            }
        else:
            all_fail = False
        ev["embeddings"].append(entry)
    level = Level.NOT_EQUIVARIANTLY_SLICE if all_fail else Level.INCONCLUSIVE
    return Verdict(level, ev)


def full_pipeline(p: CheckerboardPresentation, workers: int = 1) -> Verdict:
    report = validate(p)
    if not report.ok:
        raise InvalidPresentation(report)
    v = pipeline_from_matrices(
        reduced_incidence(p, "plus"), reduced_incidence(p, "minus"), workers=workers
    )
    v.evidence = {"name": p.name, "n": p.n, **v.evidence}
    return v
