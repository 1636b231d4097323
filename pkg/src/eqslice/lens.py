"""Correction terms of lens spaces and the orbit test for SNA symmetries.

Orientation convention: ``L(p, q)`` is the double branched cover of the
2-bridge knot ``K(p/q)``, oriented as ``+p/q`` surgery on the unknot.  With
this choice ``L(9, 2)`` has correction terms
``{-4/9, -4/9, 0, 0, 0, 2/9, 2/9, 8/9, 8/9}``.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, prod
from typing import Iterable

from .exact_linalg import solve_rational
from .spinc import SpincLattice


@dataclass(frozen=True)
class LensSpace:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or (self.p > 1 and not 0 < self.q < self.p) or gcd(self.p, self.q) != 1:
            raise ValueError(f"L({self.p},{self.q}) needs 0 < q < p and gcd(p, q) = 1")
        if self.p % 2 == 0:
            raise ValueError(f"L({self.p},{self.q}): p must be odd")


@dataclass(frozen=True)
class CorrectionTerms:
    space: LensSpace
    values: tuple[Fraction, ...]

    def multiset(self) -> Counter:
        return Counter(self.values)

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


@lru_cache(maxsize=None)
def _scaled_by_label(p: int, q: int) -> tuple[int, ...]:
    """``4p * d(L(p, q), i)`` for each label ``i``; always an integer.

    Unscaled, the recursion reads
    ``d(p, q, i) = -1/4 + (2i+1-p-q)^2 / (4pq) - d(q, p mod q, i mod q)``.
    """
    if p == 1:
        return (0,)
    prev = _scaled_by_label(q, p % q)
    out = []
    for i in range(p):
        num = (2 * i + 1 - p - q) ** 2 - p * prev[i % q]
        if num % q:
            raise ArithmeticError(f"non-integral scaled correction term for L({p},{q})")
        out.append(num // q - p)
    return tuple(out)


def _scaled_sorted(p: int, q: int) -> tuple[int, ...]:
    return tuple(sorted(_scaled_by_label(p, q)))


def lens_d_invariants(p: int, q: int) -> CorrectionTerms:
    """Correction terms of L(p, q), sorted (the Spin^c labelling is dropped)."""
    if p == 1:
        return CorrectionTerms(LensSpace(1, 1), (Fraction(0),))
    space = LensSpace(p, q)
    return CorrectionTerms(space, tuple(Fraction(x, 4 * p) for x in _scaled_sorted(p, q)))


@dataclass
class OrbitCheck:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def orbit_structure_check(values: CorrectionTerms | Iterable[Fraction | int]) -> OrbitCheck:
    """Can the multiset be split into one {0} and blocks {r, -r, r, -r}?"""
    counts = Counter(values)
    total = sum(counts.values())
    if total % 2 == 0:
        return OrbitCheck(False, f"even cardinality {total}")
    if counts[0] == 0:
        return OrbitCheck(False, "no zero value")
    counts[0] -= 1
    if counts[0] % 4:
        return OrbitCheck(False, f"{counts[0]} remaining zeros, not a multiple of 4")
    for r, c in sorted(counts.items()):
        if r == 0:
            continue
        if c != counts.get(-r, 0):
            return OrbitCheck(False, f"{r} occurs {c} times but {-r} occurs {counts.get(-r, 0)} times")
        if c % 2:
            return OrbitCheck(False, f"{r} occurs an odd number of times ({c})")
    return OrbitCheck(True)


def qsq_condition(p: int, q: int) -> bool:
    return (q * q + 1) % p == 0


# -- independent cross-check through the linear plumbing ------------------------

def hj_continued_fraction(p: int, q: int) -> list[int]:
    """p/q = a1 - 1/(a2 - 1/(...)) with every a_i >= 2."""
    out = []
    while q:
        a = -(-p // q)
        out.append(a)
        p, q = q, a * q - p
    return out


def d_invariants_via_plumbing(p: int, q: int) -> tuple[Fraction, ...]:
    """Correction terms as maxima of (K^2 + k)/4 over the plumbing lattice.

    L(p, q) bounds the negative definite linear plumbing with weights
    ``-a_i`` from the continued fraction of p/q; since that plumbing is
    sharp, ``d`` of each class is the maximum of ``(k - K^T P^-1 K)/4`` over
    characteristic ``K`` in it, ``P`` being the (positive) negated form.  The
    maximum is attained with ``2 - a_i <= K_i <= a_i``.  The shorter of the
    chains for ``q`` and ``p - q`` is used, the latter negated.
    """
    if p == 1:
        return (Fraction(0),)
    chains = {q: hj_continued_fraction(p, q), p - q: hj_continued_fraction(p, p - q)}
    use = min(chains, key=lambda k: prod(chains[k]))
    a = chains[use]
    k = len(a)
    form = [[0] * k for _ in range(k)]
    for i, ai in enumerate(a):
        form[i][i] = ai
        if i + 1 < k:
            form[i][i + 1] = form[i + 1][i] = -1
    lat = SpincLattice(form)
    best: dict = {}
    for kv in product(*(range(2 - ai, ai + 1, 2) for ai in a)):
        x = solve_rational(form, kv)
        val = Fraction(k - sum(xi * ki for xi, ki in zip(x, kv)), 4)
        c = lat.canonicalize(kv)
        if c not in best or val > best[c]:
            best[c] = val
    if len(best) != p:
        raise ArithmeticError(f"plumbing search reached {len(best)} of {p} classes")
    # the plumbing with weights -a_i from p/q bounds L(p, q) with the opposite
    # orientation to the surgery convention used above
    sign = -1 if use == q else 1
    return tuple(sorted(sign * v for v in best.values()))


# -- conjecture scan ----------------------------------------------------------

@dataclass
class ScanRow:
    p: int
    q: int
    orbit_ok: bool
    qsq: bool


@dataclass
class ScanReport:
    p_max: int
    rows: list[ScanRow] = field(default_factory=list)
    # q^2 = -1 but the orbit check fails: impossible for SNA 2-bridge knots
    proven_direction_violations: list[tuple[int, int]] = field(default_factory=list)
    # orbit check holds but q^2 != -1: counterexample to the converse
    counterexamples: list[tuple[int, int]] = field(default_factory=list)
    orientation_failures: list[tuple[int, int]] = field(default_factory=list)

    @property
    def pairs(self) -> int:
        return len(self.rows)

    @property
    def disagreements(self) -> list[tuple[int, int]]:
        return sorted(self.proven_direction_violations + self.counterexamples)


def _scan_p(p: int) -> tuple[list[ScanRow], list[tuple[int, int]]]:
    # works on the integers 4p*d; orbit structure is unchanged by scaling
    qs = [q for q in range(1, p) if gcd(p, q) == 1]
    terms = {q: _scaled_sorted(p, q) for q in qs}
    rows, orient = [], []
    for q in qs:
        if len(terms[q]) != p:
            raise ArithmeticError(f"L({p},{q}) produced {len(terms[q])} correction terms")
        if sorted(-v for v in terms[p - q]) != list(terms[q]):
            orient.append((p, q))
        rows.append(ScanRow(p, q, bool(orbit_structure_check(terms[q])), qsq_condition(p, q)))
    return rows, orient


def conjecture_scan(p_max: int, workers: int = 1) -> ScanReport:
    if p_max < 3:
        raise ValueError("p_max must be at least 3")
    ps = list(range(3, p_max + 1, 2))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_p, ps))
    else:
        parts = [_scan_p(p) for p in ps]
    report = ScanReport(p_max)
    for rows, orient in parts:
        report.orientation_failures.extend(orient)
        for r in rows:
            report.rows.append(r)
            if r.qsq and not r.orbit_ok:
                report.proven_direction_violations.append((r.p, r.q))
            elif r.orbit_ok and not r.qsq:
                report.counterexamples.append((r.p, r.q))
    return report
