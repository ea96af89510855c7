from enum import Enum
from typing import List


# Decomposition Method

class DecompositionMethod(str, Enum):

    EFD = "efd"
    EWT = "ewt"
    FDM = "fdm"

    @classmethod
    def segmented_methods(cls) -> List['DecompositionMethod']:
        # methods that need a requested segment count
        return [cls.EFD, cls.EWT]

    def needs_segments(self) -> bool:
        return self in self.segmented_methods()


# Segmentation Method

class SegmentationMethod(str, Enum):

    LOWEST_MINIMA = "lowest_minima"
    MIDPOINT_MAXIMA = "midpoint_maxima"
    LOCAL_MINIMA = "local_minima"

    @classmethod
    def ewt_choices(cls) -> List['SegmentationMethod']:
        return [cls.MIDPOINT_MAXIMA, cls.LOCAL_MINIMA]


# Signal Extension

class SignalExtension(str, Enum):

    NONE = "none"
    SYMMETRIC = "symmetric"

    def is_extended(self) -> bool:
        return self != self.NONE


# Exit Status

class ExitStatus(int, Enum):
    OK = 0
    USAGE = 2
    INPUT = 3
    NUMERICAL = 4

    def is_success(self) -> bool:
        return self == self.OK


# Helper Functions
def get_all_enum_values(enum_class) -> List[str]:

    return [item.value for item in enum_class]


# Export All
__all__ = [
    'DecompositionMethod',
    'SegmentationMethod',
    'SignalExtension',
    'ExitStatus',
    'get_all_enum_values',
]
