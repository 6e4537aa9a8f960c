"""Sharp Khovanov-type chain complexes from braids via arc diagrams."""
from .braid import BraidWord, LinkPresentation, parse, stabilize, mirror, apply_handedness
from .arcsys import ArcDiagram, reference_system, apply_braid, reduce_bigons, arc_slide

__all__ = [
    "BraidWord", "LinkPresentation", "parse", "stabilize", "mirror", "apply_handedness",
    "ArcDiagram", "reference_system", "apply_braid", "reduce_bigons", "arc_slide",
]
__version__ = "0.1.0"
