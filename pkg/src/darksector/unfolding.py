"""The combinatorial unfolded surface of a mirror scene and its census.

Reflections are replaced by transitions between sheets indexed by the
reflection group: one slitted plane per group element, glued pairwise along
each mirror slit by left-multiplication with that mirror's reflection.  The
census counts the cone points (zeros), the planar infinities (double poles,
one per sheet) and the genus, with an independent Euler-characteristic count
over the induced cell structure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exact_angle import (
    DEFAULT_GROUP_CAP,
    GroupElement,
    ReflectionGroup,
    compose,
    generate_group,
    mirror_reflection_element,
    sorted_elements,
)
from .scene import Scene


class CensusError(RuntimeError):
    """The zero/pole bookkeeping is internally inconsistent."""


@dataclass(frozen=True)
class UnfoldedSurface:
    """Sheets labeled by group elements and one gluing involution per slit.

    ``gluings[k][i]`` is the sheet index glued to sheet i across slit k; the
    plus lip of sheet i meets the minus lip of its partner and vice versa.
    """

    sheets: tuple[GroupElement, ...]
    gluings: tuple[tuple[int, ...], ...]
    group: ReflectionGroup

    @property
    def sheet_count(self) -> int:
        return len(self.sheets)

    @property
    def slit_count(self) -> int:
        return len(self.gluings)


@dataclass(frozen=True)
class ConeCycle:
    """The sheets swept in order around one slit endpoint; each sweep of a
    full plane contributes 2*pi of cone angle."""

    slit: int  # 1-based mirror index
    endpoint: str  # "first" or "second"
    sheet_cycle: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.sheet_cycle)

    @property
    def cone_angle(self) -> float:
        return 2.0 * math.pi * self.length


@dataclass(frozen=True)
class Zero:
    cycle: ConeCycle
    order: int


@dataclass(frozen=True)
class Pole:
    sheet_index: int
    order: int = 2
    residue: int = 0


@dataclass(frozen=True)
class SurfaceCensus:
    sheet_count: int
    zeros: tuple[Zero, ...]
    poles: tuple[Pole, ...]
    degree: int
    genus: int


def build_surface(scene: Scene, group_cap: int = DEFAULT_GROUP_CAP) -> UnfoldedSurface:
    """Unfold a scene: sheets are the group elements in canonical order and
    each mirror slit glues sheet g to sheet (sigma_k o g)."""
    if not scene.mirrors:
        raise ValueError("unfolding requires at least one mirror")
    group = generate_group({m.angle for m in scene.mirrors}, cap=group_cap)
    sheets = tuple(sorted_elements(group))
    index = {g: i for i, g in enumerate(sheets)}
    gluings = []
    for m in scene.mirrors:
        sigma = mirror_reflection_element(m.angle)
        gluings.append(tuple(index[compose(sigma, g)] for g in sheets))
    return UnfoldedSurface(sheets=sheets, gluings=tuple(gluings), group=group)


def cone_cycles(s: UnfoldedSurface, n_slits: int | None = None) -> list[ConeCycle]:
    """All cone points: for each slit endpoint, the orbits of the gluing.

    Sweeping a full turn around a slit tip inside one sheet crosses from the
    plus lip to the minus lip, then the gluing carries the sweep to the
    partner sheet; the cycle closes when the starting sheet recurs.
    """
    n = s.slit_count if n_slits is None else n_slits
    cycles: list[ConeCycle] = []
    for k in range(n):
        perm = s.gluings[k]
        for endpoint in ("first", "second"):
            seen: set[int] = set()
            for start in range(s.sheet_count):
                if start in seen:
                    continue
                cycle = []
                i = start
                while True:
                    cycle.append(i)
                    seen.add(i)
                    i = perm[i]
                    if i == start:
                        break
                cycles.append(
                    ConeCycle(slit=k + 1, endpoint=endpoint, sheet_cycle=tuple(cycle))
                )
    return cycles


def census(s: UnfoldedSurface, cycles: "list[ConeCycle]") -> SurfaceCensus:
    """Zeros from cone cycles, double poles from sheets, genus from the
    degree formula, cross-checked in closed form when every cycle has
    length 2."""
    m = s.sheet_count
    zeros = tuple(Zero(cycle=c, order=c.length - 1) for c in cycles)
    poles = tuple(Pole(sheet_index=i) for i in range(m))
    degree = sum(z.order for z in zeros) - 2 * m
    twice_genus = degree + 2
    if twice_genus < 0 or twice_genus % 2 != 0:
        raise CensusError(
            f"degree {degree} does not yield a non-negative integer genus"
        )
    genus = twice_genus // 2
    if all(c.length == 2 for c in cycles):
        n = s.slit_count
        expected = m * (n - 2) + 2
        if expected % 2 != 0 or genus != expected // 2:
            raise CensusError(
                f"genus {genus} disagrees with closed form {expected}/2 "
                f"for {m} sheets and {n} slits"
            )
    return SurfaceCensus(
        sheet_count=m, zeros=zeros, poles=poles, degree=degree, genus=genus
    )


def euler_check(s: UnfoldedSurface, cycles: "list[ConeCycle]") -> int:
    """Independent Euler characteristic of the closed surface.

    Cell structure: one vertex per cone cycle plus one per compactified
    sheet infinity; one edge per glued lip pair plus one spine edge from
    each sheet's infinity to each slit; one disc face per sheet (a sheet cut
    along its slits and spines is simply connected).
    """
    m = s.sheet_count
    n = s.slit_count
    vertices = len(cycles) + m
    lip_pairs = sum(len(perm) for perm in s.gluings)  # 2*n*m lips / 2
    spine_edges = n * m
    edges = lip_pairs + spine_edges
    faces = m
    return vertices - edges + faces


def total_dark_angle(c: SurfaceCensus, escape_measure: float) -> float:
    """Aggregate opening angle of the dark sectors certified around every
    planar infinity other than the escape target: (sheet_count - 1) copies
    of the resolved escape measure."""
    return (c.sheet_count - 1) * escape_measure


def census_report(
    s: UnfoldedSurface, cycles: "list[ConeCycle]", c: SurfaceCensus, chi: int
) -> dict:
    """JSON-ready census document."""
    return {
        "sheet_count": s.sheet_count,
        "slit_count": s.slit_count,
        "sheets": [
            {"s": g.s, "c_num": g.c.num, "c_den": g.c.den} for g in s.sheets
        ],
        "gluings": [list(perm) for perm in s.gluings],
        "cycles": [
            {
                "slit": cy.slit,
                "endpoint": cy.endpoint,
                "sheets": list(cy.sheet_cycle),
                "length": cy.length,
                "cone_angle": cy.cone_angle,
            }
            for cy in cycles
        ],
        "zeros": [
            {"slit": z.cycle.slit, "endpoint": z.cycle.endpoint, "order": z.order}
            for z in c.zeros
        ],
        "poles": [
            {"sheet_index": p.sheet_index, "order": p.order, "residue": p.residue}
            for p in c.poles
        ],
        "degree": c.degree,
        "genus": c.genus,
        "euler_characteristic": chi,
    }
