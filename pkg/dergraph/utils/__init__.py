from .utils import Timer, Timing, iter_in_chunks


__all__ = (
    "Timer",
    "Timing",
    "iter_in_chunks",
)
