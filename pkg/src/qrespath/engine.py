"""Walk-kernel selection.

The labeling kernel exists twice: a numba ``@njit`` queue implementation and
a pure-numpy level-synchronous fallback.  ``QRESPATH_ENGINE`` picks the
default (``auto`` = numba when importable, else numpy); call sites may
override per call.  Both kernels produce identical labels and push counts;
only predecessor tie-breaking (which valid witness walk gets reported) may
differ.
"""

from __future__ import annotations

import os

ENV_VAR = "QRESPATH_ENGINE"

RED = 0
BLUE = 1
SEED_MARK = 2  # pred_color value marking a seed state (first edge from the source)

COLOR_NAMES = {RED: "red", BLUE: "blue"}


def requested_engine() -> str:
    value = os.environ.get(ENV_VAR, "auto").strip().lower()
    if value not in ("auto", "numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be auto, numba, or numpy, not {value!r}")
    return value


def resolve_engine(engine: str | None, numba_available: bool) -> str:
    choice = engine if engine is not None else requested_engine()
    choice = choice.strip().lower()
    if choice == "auto":
        return "numba" if numba_available else "numpy"
    if choice == "numba" and not numba_available:
        raise RuntimeError("numba engine requested but numba is not importable")
    if choice not in ("numba", "numpy"):
        raise ValueError(f"unknown engine {choice!r}")
    return choice
