"""Rumples: uniquely 2-divisible Rump left quasigroups, their affine and
extension constructions, and the involutive set-theoretic Yang-Baxter
solutions they encode."""

from rumple.core import (Magma, canonical_form, dual_rumple, find_isomorphism,
                         is_both_sided_rumple, is_latin_rumple, is_rumple,
                         loads_mag, dumps_mag, magma)
from rumple.errors import RumpleError

__version__ = "0.1.0"

__all__ = ["Magma", "magma", "is_rumple", "is_latin_rumple", "is_both_sided_rumple",
           "canonical_form", "find_isomorphism", "dual_rumple", "loads_mag", "dumps_mag",
           "RumpleError"]
