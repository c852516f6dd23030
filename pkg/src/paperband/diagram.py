"""Prebend diagram model, validation and bit-exact .rbn serialization.

A diagram is a unit-width strip of length ``length`` (the aspect ratio)
carrying ordered, disjoint fold segments.  Each fold crosses the full width;
``s`` is where it meets the centerline y=0.5 and ``theta`` is its angle in
degrees, counterclockwise from the strip's long axis.  ``solid`` folds close
with the red (front) side inside, ``dashed`` with the blue side inside.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from . import geom
from .errors import DiagramParseError


class BandKind(enum.Enum):
    MOBIUS = "mobius"
    ANNULUS = "annulus"


class FoldStyle(enum.Enum):
    SOLID = "solid"    # red side inside the fold
    DASHED = "dashed"  # blue side inside


@dataclass(frozen=True)
class FoldLine:
    s: float
    theta: float  # degrees, in (0, 180)
    style: FoldStyle

    @property
    def theta_rad(self) -> float:
        return math.radians(self.theta)

    def endpoints(self):
        """((x_bottom, 0), (x_top, 1)) where the fold meets the long edges."""
        cot = math.cos(self.theta_rad) / math.sin(self.theta_rad)
        return (self.s - 0.5 * cot, 0.0), (self.s + 0.5 * cot, 1.0)

    def mirrored(self, length: float) -> "FoldLine":
        """Image under s -> length - s, theta -> 180 - theta."""
        return FoldLine(length - self.s, 180.0 - self.theta, self.style)

    def style_flipped(self) -> "FoldLine":
        other = FoldStyle.DASHED if self.style is FoldStyle.SOLID else FoldStyle.SOLID
        return FoldLine(self.s, self.theta, other)


@dataclass(frozen=True)
class PrebendDiagram:
    kind: BandKind
    length: float
    folds: tuple = field(default_factory=tuple)

    def __post_init__(self):
        ordered = tuple(sorted(self.folds, key=lambda f: f.s))
        object.__setattr__(self, "folds", ordered)

    def mirrored(self) -> "PrebendDiagram":
        return PrebendDiagram(self.kind, self.length,
                              tuple(f.mirrored(self.length) for f in self.folds))

    def style_flipped(self) -> "PrebendDiagram":
        return PrebendDiagram(self.kind, self.length,
                              tuple(f.style_flipped() for f in self.folds))


@dataclass
class ValidationResult:
    ok: bool
    violations: list
    warnings: list

    def __bool__(self):
        return self.ok


def validate_diagram(d: PrebendDiagram) -> ValidationResult:
    """Check diagram well-formedness.  Violations name the offending folds."""
    violations = []
    warnings = []
    if not d.length > 0:
        violations.append((None, "length must be positive"))
        return ValidationResult(False, violations, warnings)
    for i, f in enumerate(d.folds):
        if not (0.0 < f.theta < 180.0):
            violations.append((i, f"fold angle {f.theta} outside (0, 180)"))
            continue
        if not (0.0 < f.s < d.length):
            violations.append((i, "fold centerline position outside strip"))
            continue
        (xb, _), (xt, _) = f.endpoints()
        if not (0.0 < xb < d.length and 0.0 < xt < d.length):
            violations.append((i, "fold exits strip"))
        if abs(f.theta - 90.0) < 1e-9:
            warnings.append((i, "perpendicular fold: left/right class undefined"))
    # pairwise disjointness (strict; tangency rejected)
    valid = [(i, f) for i, f in enumerate(d.folds)
             if not any(v[0] == i for v in violations)]
    for a in range(len(valid)):
        ia, fa = valid[a]
        ea = fa.endpoints()
        for b in range(a + 1, len(valid)):
            ib, fb = valid[b]
            eb = fb.endpoints()
            kind, _ = geom.seg_intersection(ea[0], ea[1], eb[0], eb[1])
            if kind != "none":
                violations.append((ia, f"folds {ia} and {ib} intersect"))
    return ValidationResult(not violations, violations, warnings)


def serialize_diagram(d: PrebendDiagram) -> bytes:
    """Canonical .rbn bytes: folds by increasing s, 17 significant digits, LF."""
    lines = [f"band kind={d.kind.value} length={d.length:.17g}"]
    for f in d.folds:
        lines.append(f"fold s={f.s:.17g} angle={f.theta:.17g} style={f.style.value}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _parse_fields(tokens, lineno, allowed):
    fields = {}
    for tok in tokens:
        if "=" not in tok:
            raise DiagramParseError(f"expected key=value, got {tok!r}", lineno)
        key, _, value = tok.partition("=")
        if key not in allowed:
            raise DiagramParseError(f"unknown keyword {key!r}", lineno)
        if key in fields:
            raise DiagramParseError(f"duplicate keyword {key!r}", lineno)
        fields[key] = value
    missing = [k for k in allowed if k not in fields]
    if missing:
        raise DiagramParseError(f"missing field {missing[0]!r}", lineno)
    return fields


def _parse_float(text, lineno, what):
    try:
        return float(text)
    except ValueError:
        raise DiagramParseError(f"non-numeric {what}: {text!r}", lineno) from None


def parse_diagram(data: bytes) -> PrebendDiagram:
    """Parse .rbn text.  Round-trips serialize_diagram; does not validate."""
    if isinstance(data, bytes):
        text = data.decode("utf-8")
    else:
        text = data
    kind = None
    length = None
    folds = []
    seen_band = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        word = tokens[0]
        if word == "band":
            if seen_band:
                raise DiagramParseError("duplicate band line", lineno)
            fields = _parse_fields(tokens[1:], lineno, ("kind", "length"))
            try:
                kind = BandKind(fields["kind"])
            except ValueError:
                raise DiagramParseError(
                    f"unknown kind {fields['kind']!r}", lineno) from None
            length = _parse_float(fields["length"], lineno, "length")
            seen_band = True
        elif word == "fold":
            if not seen_band:
                raise DiagramParseError("fold before band line", lineno)
            fields = _parse_fields(tokens[1:], lineno, ("s", "angle", "style"))
            try:
                style = FoldStyle(fields["style"])
            except ValueError:
                raise DiagramParseError(
                    f"unknown style {fields['style']!r}", lineno) from None
            folds.append(FoldLine(_parse_float(fields["s"], lineno, "s"),
                                  _parse_float(fields["angle"], lineno, "angle"),
                                  style))
        else:
            raise DiagramParseError(f"unknown keyword {word!r}", lineno)
    if not seen_band:
        raise DiagramParseError("missing band line", 1)
    return PrebendDiagram(kind, length, tuple(folds))
