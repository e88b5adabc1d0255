"""Split virtual bundles on ``P^N``.

A :class:`VirtualBundle` is a formal sum ``sum mu * [O(a)]`` in the
Grothendieck group, so its total Chern class is
``prod (1 + aH)^mu``.  Every bundle needed here (tangent and cotangent
bundles via the Euler sequence, ``O(X)`` and their twists) has this form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .chowring import ChowClass, LineBundle, chern_power, ring_product


def _normalize(roots: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    merged: dict[int, int] = {}
    for twist, mult in roots:
        merged[int(twist)] = merged.get(int(twist), 0) + int(mult)
    return tuple(sorted((t, m) for t, m in merged.items() if m != 0))


@dataclass(frozen=True)
class VirtualBundle:
    ambient_dim: int
    roots: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise ValueError("ambient dimension must be >= 0")
        object.__setattr__(self, "roots", _normalize(self.roots))

    def __add__(self, other: VirtualBundle) -> VirtualBundle:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return VirtualBundle(self.ambient_dim, self.roots + other.roots)

    def to_json(self) -> dict:
        return {"roots": [[t, m] for t, m in self.roots]}

    @classmethod
    def from_json(cls, N: int, data: dict) -> VirtualBundle:
        roots = data.get("roots") if isinstance(data, dict) else None
        if not isinstance(roots, list) or not all(
            isinstance(r, list) and len(r) == 2 and all(isinstance(v, int) for v in r)
            for r in roots
        ):
            raise ValueError('bundle JSON must look like {"roots": [[twist, multiplicity], ...]}')
        return cls(N, tuple((t, m) for t, m in roots))


def line(N: int, twist: int) -> VirtualBundle:
    return VirtualBundle(N, ((twist, 1),))


def tangent(N: int) -> VirtualBundle:
    """``T P^N = (N+1) O(1) - O`` from the Euler sequence."""
    return VirtualBundle(N, ((1, N + 1), (0, -1)))


def cotangent(N: int) -> VirtualBundle:
    return dual_bundle(tangent(N))


def chern_total(E: VirtualBundle) -> ChowClass:
    N = E.ambient_dim
    c = ChowClass.one(N)
    for twist, mult in E.roots:
        c = ring_product(c, chern_power(LineBundle(twist), mult, N))
    return c


def dual_bundle(E: VirtualBundle) -> VirtualBundle:
    return VirtualBundle(E.ambient_dim, tuple((-t, m) for t, m in E.roots))


def tensor_by_line(E: VirtualBundle, L: LineBundle) -> VirtualBundle:
    return VirtualBundle(E.ambient_dim, tuple((t + L.twist, m) for t, m in E.roots))


def rank(E: VirtualBundle) -> int:
    return sum(m for _, m in E.roots)
