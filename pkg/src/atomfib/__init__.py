"""atomfib: atomic fibers of integer matrices, their decompositions and benchmarks."""

__all__ = [
    "bench",
    "cli",
    "completion",
    "config",
    "convexfiber",
    "domains",
    "errors",
    "fiber",
    "intlin",
    "matrixio",
    "minkowski",
    "oracle",
    "projectlift",
]
