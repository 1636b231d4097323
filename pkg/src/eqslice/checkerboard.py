"""Symmetric checkerboard presentations of alternating SNA diagrams.

A presentation lists, for each of the two checkerboard graphs, its ``2n``
oriented edges as ``(tail, head)`` pairs on vertices ``1..n+1``.  Edge ``i``
of the plus graph and edge ``i`` of the minus graph cross at the same
crossing, vertex ``i`` of one graph is paired with vertex ``i`` of the other
by the symmetry, and vertex ``n+1`` is the removed pair.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .exact_linalg import (
    IntMatrix,
    determinant,
    gram,
    is_positive_definite,
    matmul,
    transpose,
)

SIDES = ("plus", "minus")


class PresentationError(ValueError):
    """Raised for presentations that cannot even be structurally parsed."""


class MalformedPresentation(PresentationError):
    pass


class WrongEdgeCount(PresentationError):
    pass


class IndexOutOfRange(PresentationError):
    pass


class SelfLoop(PresentationError):
    pass


@dataclass(frozen=True)
class CheckerboardPresentation:
    name: str
    n: int
    edges_plus: tuple[tuple[int, int], ...]
    edges_minus: tuple[tuple[int, int], ...]
    metadata: dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def edges(self, side: str) -> tuple[tuple[int, int], ...]:
        if side == "plus":
            return self.edges_plus
        if side == "minus":
            return self.edges_minus
        raise ValueError(f"side must be 'plus' or 'minus', not {side!r}")

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "name": self.name,
            "n": self.n,
            "edges_plus": [list(e) for e in self.edges_plus],
            "edges_minus": [list(e) for e in self.edges_minus],
        }
        if self.metadata:
            d["metadata"] = self.metadata
        return d


def _edge_list(obj: Any, key: str, n: int) -> tuple[tuple[int, int], ...]:
    raw = obj.get(key)
    if not isinstance(raw, list):
        raise MalformedPresentation(f"{key} must be an array of [tail, head] pairs")
    if len(raw) != 2 * n:
        raise WrongEdgeCount(f"{key} has {len(raw)} edges, expected 2n = {2 * n}")
    edges = []
    for k, e in enumerate(raw, start=1):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise MalformedPresentation(f"{key}[{k}] is not a pair of integers: {e!r}")
        tail, head = e
        for x in e:
            if not 1 <= x <= n + 1:
                raise IndexOutOfRange(f"{key}[{k}] = {e} uses vertex {x} outside 1..{n + 1}")
        if tail == head:
            raise SelfLoop(f"{key}[{k}] is a loop at vertex {tail}")
        edges.append((tail, head))
    return tuple(edges)


def presentation_from_dict(obj: Any) -> CheckerboardPresentation:
    if not isinstance(obj, dict):
        raise MalformedPresentation("presentation must be a JSON object")
    name = obj.get("name", "")
    n = obj.get("n")
    if not isinstance(name, str):
        raise MalformedPresentation("name must be a string")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedPresentation(f"n must be a positive integer, got {n!r}")
    return CheckerboardPresentation(
        name=name,
        n=n,
        edges_plus=_edge_list(obj, "edges_plus", n),
        edges_minus=_edge_list(obj, "edges_minus", n),
        metadata=dict(obj.get("metadata") or {}),
    )


def parse_presentation(text: str) -> CheckerboardPresentation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedPresentation(f"invalid JSON: {exc}") from exc
    return presentation_from_dict(obj)


def load_presentation(path: str | Path) -> CheckerboardPresentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def full_incidence(p: CheckerboardPresentation, side: str) -> IntMatrix:
    """(n+1) x 2n oriented incidence matrix: +1 at the tail, -1 at the head."""
    edges = p.edges(side)
    rows = [[0] * len(edges) for _ in range(p.n + 1)]
    for j, (tail, head) in enumerate(edges):
        rows[tail - 1][j] += 1
        rows[head - 1][j] -= 1
    return tuple(tuple(r) for r in rows)


def reduced_incidence(p: CheckerboardPresentation, side: str) -> IntMatrix:
    """Incidence matrix with the row of the removed vertex ``n+1`` dropped."""
    return full_incidence(p, side)[: p.n]


@dataclass(frozen=True)
class GoeritzForm:
    matrix: IntMatrix
    side: str = "plus"

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.matrix[i][i] for i in range(self.n))

    @property
    def det(self) -> int:
        return determinant(self.matrix)


def goeritz(p: CheckerboardPresentation, side: str = "plus") -> GoeritzForm:
    return GoeritzForm(gram(reduced_incidence(p, side)), side)


def _connected(n_vertices: int, edges) -> tuple[bool, list[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(1, n_vertices + 1)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {1}
    stack = [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    missing = sorted(set(adj) - seen)
    return not missing, missing


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class ValidationReport:
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "witness": c.witness} for c in self.checks
            ],
        }


def validate(p: CheckerboardPresentation) -> ValidationReport:
    """Run every structural and algebraic check; never raises."""
    checks = []
    for side in SIDES:
        ok, missing = _connected(p.n + 1, p.edges(side))
        checks.append(Check(f"{side}_connected", ok, None if ok else {"unreached_vertices": missing}))

    jp, jm = full_incidence(p, "plus"), full_incidence(p, "minus")
    prod = matmul(jp, transpose(jm))
    bad = [(i + 1, j + 1, x) for i, row in enumerate(prod) for j, x in enumerate(row) if x]
    checks.append(
        Check(
            "incidence_orthogonal",
            not bad,
            None if not bad else {"row_plus": bad[0][0], "row_minus": bad[0][1], "value": bad[0][2]},
        )
    )

    forms = {side: goeritz(p, side) for side in SIDES}
    for side, form in forms.items():
        pd = is_positive_definite(form.matrix)
        checks.append(Check(f"{side}_positive_definite", pd, None if pd else {"leading_minors_fail": True}))

    dp, dm = forms["plus"].diagonal, forms["minus"].diagonal
    diff = [i + 1 for i in range(p.n) if dp[i] != dm[i]]
    checks.append(
        Check("diagonals_match", not diff, None if not diff else {"index": diff[0], "plus": dp, "minus": dm})
    )

    detp, detm = forms["plus"].det, forms["minus"].det
    checks.append(
        Check("determinants_match", detp == detm, None if detp == detm else {"plus": detp, "minus": detm})
    )
    return ValidationReport(checks)
