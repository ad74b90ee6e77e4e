from . import permutations
from . import derangements
from . import factorize
from . import partitions
from . import characters
from . import spectra

__all__ = (
    "permutations",
    "derangements",
    "factorize",
    "partitions",
    "characters",
    "spectra",
)
