"""Graded quivers, ice quivers and their doubled / Ginzburg extensions.

Paths are read left to right: ``p q`` is defined when ``target(p) ==
source(q)``.  The star of an arrow ``a`` is named ``a*`` and the loop added
at vertex ``v`` is named ``t{v}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import NameClash, UnsupportedDimension


def star_name(name: str) -> str:
    return name + "*"


def loop_name(vertex) -> str:
    return f"t{vertex}"


@dataclass(frozen=True)
class Arrow:
    name: str
    source: object
    target: object
    degree: int = 0


@dataclass(frozen=True)
class GradedQuiver:
    vertices: tuple
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise NameClash(f"duplicate arrow name in {names}")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} has an endpoint outside the vertex set")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def with_arrows(self, extra: Iterable[Arrow]) -> "GradedQuiver":
        extra = tuple(extra)
        taken = set(self.arrow_names)
        for a in extra:
            if a.name in taken:
                raise NameClash(f"arrow name {a.name!r} already in use")
            taken.add(a.name)
        return GradedQuiver(self.vertices, self.arrows + extra)


@dataclass(frozen=True)
class IceQuiver:
    quiver: GradedQuiver
    frozen_vertices: frozenset = field(default_factory=frozenset)
    frozen_arrows: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        fv = frozenset(self.frozen_vertices)
        fa = frozenset(self.frozen_arrows)
        object.__setattr__(self, "frozen_vertices", fv)
        object.__setattr__(self, "frozen_arrows", fa)
        if not fv <= set(self.quiver.vertices):
            raise ValueError("frozen vertices must be vertices of the quiver")
        for name in fa:
            a = self.quiver.arrow(name)
            if a.source not in fv or a.target not in fv:
                raise ValueError(f"frozen arrow {name} needs frozen endpoints")

    @property
    def free_vertices(self) -> tuple:
        return tuple(v for v in self.quiver.vertices if v not in self.frozen_vertices)

    @property
    def free_arrows(self) -> tuple[Arrow, ...]:
        return tuple(a for a in self.quiver.arrows if a.name not in self.frozen_arrows)

    def frozen_subquiver(self) -> GradedQuiver:
        return GradedQuiver(
            tuple(v for v in self.quiver.vertices if v in self.frozen_vertices),
            tuple(a for a in self.quiver.arrows if a.name in self.frozen_arrows),
        )


def _require_degree_zero(arrows: Iterable[Arrow]) -> None:
    for a in arrows:
        if a.degree != 0:
            raise ValueError(f"arrow {a.name} must have degree 0")


def _stars(arrows: Iterable[Arrow], degree: int) -> list[Arrow]:
    return [Arrow(star_name(a.name), a.target, a.source, degree) for a in arrows]


def _loops(vertices: Iterable, degree: int) -> list[Arrow]:
    return [Arrow(loop_name(v), v, v, degree) for v in vertices]


def double(q: GradedQuiver) -> GradedQuiver:
    _require_degree_zero(q.arrows)
    return q.with_arrows(_stars(q.arrows, 0))


def relative_double(qf: IceQuiver) -> GradedQuiver:
    _require_degree_zero(qf.quiver.arrows)
    return qf.quiver.with_arrows(_stars(qf.free_arrows, 0))


def ginzburg_quiver(q: GradedQuiver, d: int) -> GradedQuiver:
    if d not in (2, 3) and not (d == 1 and not q.arrows):
        raise UnsupportedDimension(f"d={d} is not supported for this quiver")
    _require_degree_zero(q.arrows)
    return q.with_arrows(_stars(q.arrows, 2 - d) + _loops(q.vertices, 1 - d))


def relative_ginzburg_quiver(qf: IceQuiver, d: int) -> GradedQuiver:
    if d not in (2, 3):
        raise UnsupportedDimension(f"d={d} is not supported")
    _require_degree_zero(qf.quiver.arrows)
    return qf.quiver.with_arrows(_stars(qf.free_arrows, 2 - d) + _loops(qf.free_vertices, 1 - d))
