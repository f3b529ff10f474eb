from .anchor import NondegenerateAnchor, find_anchor
from .system import FirstOrderSystem, reduce_first_order, riccati_residual, verify_equivalence

__all__ = [
    "FirstOrderSystem",
    "NondegenerateAnchor",
    "find_anchor",
    "reduce_first_order",
    "riccati_residual",
    "verify_equivalence",
]
