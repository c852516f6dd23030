"""Parametric n-half-twist band construction: accordion, wrapping, reconnection.

The band is one closed planar circuit.  An escape accordion (m parallel
45-degree folds with alternating styles, pitch 1/m, flat footprint of base 2
regardless of m) climbs through the stack while consuming constant length;
a bank of same-style parallel folds right after it winds around the folded
bundle and accumulates one half-twist per fold; two 112.5-degree corner folds
(Mobius) or four 45/135-degree corner folds (annulus) route the strip back to
the glue line.  Whether the ends tape red-to-blue (Mobius) or red-to-red
(annulus) falls out of the fold-count parity.

Segment lengths between the fixed fold groups are solved from a linear
system: planar closure (x, y) plus an exact total-length target.  The target
is base_length + epsilon, so the headline aspect ratios are hit exactly at
the default epsilon and the length is independent of the twist count by
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diagram import BandKind, FoldLine, FoldStyle, PrebendDiagram
from .errors import BudgetExceeded, ParityMismatch

SOLID = FoldStyle.SOLID
DASHED = FoldStyle.DASHED


@dataclass(frozen=True)
class ConstructionParams:
    n: int
    kind: BandKind
    epsilon: float = 0.1
    mirror: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ParityMismatch("twist count must be >= 1")
        if not (0.0 < self.epsilon <= 0.5):
            raise BudgetExceeded("epsilon must lie in (0, 0.5]")
        odd = self.n % 2 == 1
        if odd != (self.kind is BandKind.MOBIUS):
            raise ParityMismatch(
                f"n={self.n} requires "
                f"{'mobius' if odd else 'annulus'}, got {self.kind.value}")

    @property
    def accordion_folds(self) -> int:
        return math.ceil(self.n / (2.0 * self.epsilon))


@dataclass(frozen=True)
class GeneratorConfig:
    """Named calibration constants for the reconnection layout.

    base lengths are the epsilon-free part of the total: length = base + eps.
    The defaults reproduce aspect ratio 6.25 (Mobius) and 7.45 (annulus) at
    the default eps = 0.1.
    """
    mobius_base: float = 6.15
    annulus_base: float = 7.35
    rail_clearance_max: float = 0.05   # wrap rails sit this far outside the
    rail_clearance_frac: float = 0.25  # accordion rails: min(max, frac*pitch)
    diag_min: float = 0.80             # 112.5-vs-45 fold disjointness > 0.71
    run_min: float = 0.30              # Mobius runs next to the glue line
    end_run: float = 0.55              # annulus glue runs (45/135 halfspan .5)
    turn_min: float = 1.05             # 45-vs-135 fold disjointness > 1.0
    tail_gap: float = 0.15             # wrap bank to first annulus corner


@dataclass
class BandLayout:
    params: ConstructionParams
    diagram: PrebendDiagram
    m: int
    wrap_count: int
    accordion_pitch: float
    wrap_pitch: float
    rail_clearance: float
    accordion_sign: int
    corner_sign: int
    accordion_index: slice = field(default=slice(0, 0))
    wrap_index: slice = field(default=slice(0, 0))

    @property
    def delta0(self) -> float:
        """Flattened-bundle extent enclosed by one wrap pass."""
        return self.wrap_pitch


def make_accordion(m: int, s0: float, start_style: FoldStyle = SOLID,
                   pitch: float | None = None) -> list:
    """m parallel 45-degree folds with alternating styles, starting at s0.

    Default pitch 1/m keeps the flat footprint at base 2 for every m.
    """
    if m < 1:
        raise ValueError("accordion needs at least one fold")
    if pitch is None:
        pitch = 1.0 / m
    other = DASHED if start_style is SOLID else SOLID
    return [FoldLine(s0 + i * pitch, 45.0, start_style if i % 2 == 0 else other)
            for i in range(m)]


def accordion_footprint_base(m: int, pitch: float | None = None) -> float:
    """Base of the flat parallelogram the accordion consumes: m*pitch + 1.

    Each fold owns a pitch-wide cell and every 45-degree segment spans one
    width unit horizontally, so the default pitch 1/m gives exactly 2.
    """
    if pitch is None:
        pitch = 1.0 / m
    return m * pitch + 1.0


def make_wrapping(count: int, spacing: float, s0: float = 0.0,
                  style: FoldStyle = SOLID) -> list:
    """count consecutive same-style folds parallel to the accordion family."""
    if count < 0:
        raise ValueError("wrap count must be >= 0")
    if count and spacing <= 0:
        raise ValueError("wrap spacing must be positive")
    return [FoldLine(s0 + j * spacing, 45.0, style) for j in range(count)]


def _walk_directions(thetas_rel):
    """Centerline direction before each segment, given fold angles in order."""
    ang = 0.0
    det = 1.0
    dirs = [np.array([1.0, 0.0])]
    for th in thetas_rel:
        ang += det * 2.0 * math.radians(th)
        det = -det
        dirs.append(np.array([math.cos(ang), math.sin(ang)]))
    return dirs, ang


def _solve_layout(segments, thetas, target):
    """Solve unknown segment lengths from closure + total-length target.

    segments: list of floats (fixed) or str keys naming one of exactly three
    unknowns; equal keys share one unknown.  Returns the key -> length map.
    """
    dirs, final_ang = _walk_directions(thetas)
    turns = round(math.degrees(final_ang)) % 360
    if turns != 0:
        raise BudgetExceeded(f"layout does not close directionally ({turns})")
    keys = []
    for s in segments:
        if isinstance(s, str) and s not in keys:
            keys.append(s)
    if len(keys) != 3:
        raise BudgetExceeded("layout solver expects exactly three unknowns")
    A = np.zeros((3, 3))
    rhs = np.array([0.0, 0.0, target])
    for seg, d in zip(segments, dirs):
        if isinstance(seg, str):
            j = keys.index(seg)
            A[0, j] += d[0]
            A[1, j] += d[1]
            A[2, j] += 1.0
        else:
            rhs[0] -= seg * d[0]
            rhs[1] -= seg * d[1]
            rhs[2] -= seg
    sol = np.linalg.solve(A, rhs)
    return dict(zip(keys, sol))


def _assemble(segments, thetas, styles):
    """Fold list from solved segment lengths and per-fold angle/style."""
    folds = []
    s = 0.0
    for i, seg in enumerate(segments):
        s += seg
        if i < len(thetas):
            folds.append(FoldLine(s, thetas[i], styles[i]))
    return folds, s


def _rail_clearance(cfg: GeneratorConfig, pitch: float) -> float:
    return min(cfg.rail_clearance_max, cfg.rail_clearance_frac * pitch)


def make_band(p: ConstructionParams,
              cfg: GeneratorConfig | None = None) -> PrebendDiagram:
    return band_layout(p, cfg).diagram


def band_layout(p: ConstructionParams,
                cfg: GeneratorConfig | None = None) -> BandLayout:
    cfg = cfg or GeneratorConfig()
    n, eps = p.n, p.epsilon
    m = p.accordion_folds
    pitch = 1.0 / m
    eta = _rail_clearance(cfg, pitch)
    q = pitch + 2.0 * eta          # wrap rails straddle the accordion rails
    gap = pitch + eta              # accordion bundle edge to first wrap rail

    if p.kind is BandKind.MOBIUS:
        layout = _mobius_layout(p, cfg, m, pitch, eta, q, gap)
    else:
        layout = _annulus_layout(p, cfg, m, pitch, eta, q, gap)
    if p.mirror:
        layout.diagram = layout.diagram.style_flipped()
    return layout


def _accordion_styles(m: int, start: FoldStyle):
    other = DASHED if start is SOLID else SOLID
    return [start if i % 2 == 0 else other for i in range(m)]


def _core_segments(m, pitch, nw, q, gap):
    """Interior segment lengths of accordion + gap + wrap bank."""
    segs = [pitch] * (m - 1)
    if nw:
        segs.append(gap)
        segs.extend([q] * (nw - 1))
    return segs


def _mobius_layout(p, cfg, m, pitch, eta, q, gap):
    n, eps = p.n, p.epsilon
    # accordion start style puts the bank-side face at the stack end the
    # first wrap fold must jump across
    acc_start = DASHED if m % 2 == 0 else SOLID
    acc_sign = 0 if m % 2 == 0 else 1
    corner_sign = 0  # right corner solid (-1) + left corner dashed (+1)
    nw = n - acc_sign
    if nw < 0:
        raise BudgetExceeded("twist budget below the reconnection contribution")

    thetas = ([112.5] + [45.0] * (m + nw) + [112.5])
    styles = ([SOLID] + _accordion_styles(m, acc_start)
              + [SOLID] * nw + [DASHED])
    segments = (["run"] + ["d1"] + _core_segments(m, pitch, nw, q, gap)
                + ["d2"] + ["run"])
    target = cfg.mobius_base + eps
    sol = _solve_layout(segments, thetas, target)
    lens = [sol[s] if isinstance(s, str) else s for s in segments]

    # the two glue-line runs share the "run" unknown, so they come out equal
    if sol["d1"] < cfg.diag_min or sol["d2"] < cfg.diag_min:
        raise BudgetExceeded("corner diagonals fall below the clearance floor")
    if sol["run"] < cfg.run_min:
        raise BudgetExceeded("glue-line runs fall below the clearance floor")

    folds, total = _assemble(lens, thetas, styles)
    diagram = PrebendDiagram(BandKind.MOBIUS, total, tuple(folds))
    lay = BandLayout(p, diagram, m, nw, pitch, q, eta, acc_sign, -2)
    lay.accordion_index = slice(1, 1 + m)
    lay.wrap_index = slice(1 + m, 1 + m + nw)
    return lay


def _annulus_layout(p, cfg, m, pitch, eta, q, gap):
    n, eps = p.n, p.epsilon
    acc_start = DASHED if m % 2 == 0 else SOLID
    acc_sign = 0 if m % 2 == 0 else 1
    nw = n - acc_sign + 2  # four corner folds contribute -2
    thetas = ([45.0] * (m + nw) + [45.0, 135.0, 45.0, 135.0])
    styles = (_accordion_styles(m, acc_start) + [SOLID] * nw
              + [DASHED, SOLID, SOLID, SOLID])
    # "tail" (wrap bank to first corner) absorbs the eps slope; "ret" and
    # "vl" close the loop; entry run and right riser are fixed clearances
    segments = ([cfg.end_run] + _core_segments(m, pitch, nw, q, gap)
                + ["tail", cfg.turn_min, "ret", "vl", cfg.end_run])
    target = cfg.annulus_base + eps
    sol = _solve_layout(segments, thetas, target)
    if sol["tail"] < cfg.tail_gap:
        raise BudgetExceeded("wrap-to-corner run fell below its clearance")
    if sol["ret"] < cfg.turn_min or sol["vl"] < cfg.turn_min:
        raise BudgetExceeded("return runs fall below the clearance floor")
    lens = [sol[s] if isinstance(s, str) else s for s in segments]

    folds, total = _assemble(lens, thetas, styles)
    diagram = PrebendDiagram(BandKind.ANNULUS, total, tuple(folds))
    lay = BandLayout(p, diagram, m, nw, pitch, q, eta, acc_sign, -2)
    lay.accordion_index = slice(0, m)
    lay.wrap_index = slice(m, m + nw)
    return lay
