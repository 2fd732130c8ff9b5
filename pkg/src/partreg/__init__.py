"""Exact tools for partition regularity of rational matrices.

Core pieces: exact rational matrices, finite-sum style sequence operations,
matrix generators, recognizers for the regularity conditions, and a finite
witness search over colourings of [1..N].
"""
from .conditions import (check_columns_condition, check_first_entries, check_milliken_taylor,
                         check_segmented, check_subtracted, certify_finite_ipr, find_segmentation,
                         is_monic)
from .matrixspec import (DiagonalSum, Example212, FiniteSums, Literal, MatrixSpec, MillikenTaylor,
                         Schur, Segmented, SubtractedCentrally, VanDerWaerden, parse_shortcut,
                         spec_from_dict)
from .rational import RatMatrix, format_matrix, parse_matrix

__version__ = "0.1.0"
