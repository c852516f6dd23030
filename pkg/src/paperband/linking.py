"""Combinatorial ribbon linking number from per-fold contributions.

Each full-width fold contributes +1 or -1 to the half-twist count by its
slope direction and layer sense:

    right underfold  +1   down-sloping dashed
    right overfold   -1   down-sloping solid
    left underfold   -1   up-sloping dashed
    left overfold    +1   up-sloping solid

The half-twist sum equals the boundary/centerline linking number for a
Mobius band; an annulus fold meets only one boundary, so its linking number
is half the sum.  The method requires a crossing-free centerline.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .diagram import BandKind, FoldLine, FoldStyle, PrebendDiagram
from .errors import CrossingsPresent, DegenerateAngle, OddAnnulus


class FoldDirection(enum.Enum):
    LEFT = "left"    # up-sloping, theta in (0, 90)
    RIGHT = "right"  # down-sloping, theta in (90, 180)


class LayerSense(enum.Enum):
    OVERFOLD = "overfold"    # solid
    UNDERFOLD = "underfold"  # dashed


@dataclass(frozen=True)
class FoldClass:
    direction: FoldDirection
    layer_sense: LayerSense
    sign: int


@dataclass
class LinkingReport:
    classes: list
    half_twists: int
    linking_number: Fraction
    crossings_present: bool


def classify_fold(f: FoldLine) -> FoldClass:
    if abs(f.theta - 90.0) < 1e-9:
        raise DegenerateAngle(f"fold at s={f.s} is perpendicular to the strip")
    direction = FoldDirection.LEFT if f.theta < 90.0 else FoldDirection.RIGHT
    sense = (LayerSense.OVERFOLD if f.style is FoldStyle.SOLID
             else LayerSense.UNDERFOLD)
    dir_sign = 1 if direction is FoldDirection.LEFT else -1
    sense_sign = 1 if sense is LayerSense.OVERFOLD else -1
    return FoldClass(direction, sense, dir_sign * sense_sign)


def half_twist_count(d: PrebendDiagram, check_crossings: bool = True) -> int:
    """Sum of per-fold signs.  Rejects diagrams whose centerline crosses itself."""
    if check_crossings and _has_crossings(d):
        raise CrossingsPresent(
            "centerline crosses itself; fold counting is not applicable")
    return sum(classify_fold(f).sign for f in d.folds)


def ribbon_linking_number(d: PrebendDiagram,
                          check_crossings: bool = True) -> LinkingReport:
    crossings = _has_crossings(d) if check_crossings else False
    if crossings:
        raise CrossingsPresent(
            "centerline crosses itself; fold counting is not applicable")
    classes = [classify_fold(f) for f in d.folds]
    half = sum(c.sign for c in classes)
    if d.kind is BandKind.MOBIUS:
        link = Fraction(half)
    else:
        if half % 2 != 0:
            raise OddAnnulus(f"annulus with odd half-twist sum {half}")
        link = Fraction(half, 2)
    return LinkingReport(classes, half, link, crossings)


def _has_crossings(d: PrebendDiagram) -> bool:
    from .flatfold import detect_crossings, fold_flat
    state = fold_flat(d)
    return bool(detect_crossings(state).points)
