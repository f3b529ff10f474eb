from .characteristic import (
    CharacteristicSet,
    char_components,
    char_delta,
    characteristic_set,
    cramer_defect,
)
from .contour import Rectangle, Zero, find_zeros, winding_number
from .eigen import (
    Spectrum,
    find_eigenvalues,
    find_lowest_eigenvalues,
    track_eigenvalues,
    tracked_spectrum,
)
from .mappings import SpectralMappingBlocks, spectral_mapping_blocks

__all__ = [
    "CharacteristicSet",
    "Rectangle",
    "SpectralMappingBlocks",
    "Spectrum",
    "Zero",
    "char_components",
    "char_delta",
    "characteristic_set",
    "cramer_defect",
    "find_eigenvalues",
    "find_lowest_eigenvalues",
    "find_zeros",
    "spectral_mapping_blocks",
    "track_eigenvalues",
    "tracked_spectrum",
    "winding_number",
]
