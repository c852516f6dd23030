"""Folded paper ribbon knots with constant aspect ratio: construction,
combinatorial linking, smooth mesh approximation, numerical verification."""

from .diagram import (BandKind, FoldLine, FoldStyle, PrebendDiagram,
                      parse_diagram, serialize_diagram, validate_diagram)
from .errors import PaperbandError
from .flatfold import FoldedState, assign_layers, detect_crossings, fold_flat
from .linking import classify_fold, half_twist_count, ribbon_linking_number

__version__ = "0.1.0"

__all__ = [
    "BandKind", "FoldLine", "FoldStyle", "PrebendDiagram",
    "parse_diagram", "serialize_diagram", "validate_diagram",
    "FoldedState", "fold_flat", "detect_crossings", "assign_layers",
    "classify_fold", "half_twist_count", "ribbon_linking_number",
    "PaperbandError", "__version__",
]
