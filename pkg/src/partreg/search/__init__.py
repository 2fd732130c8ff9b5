"""Finite witness search for partition-regularity structures."""
from .checker import (check_all_admit, check_bad_coloring, check_certificate_witness, check_witness,
                      naive_find_witness, naive_verify_all)
from .compile import Problem, compile_structure
from .engine import (Certificate, Coloring, SearchBudget, SweepResult, diagonal_sum_scenario,
                     find_witness, format_coloring, hunt_counterexample, parse_coloring,
                     threshold_sweep, verify_all_colorings)
from .structures import (FSFP, AdditiveImage, BothImages, Composite, Kernel, KernelBoth,
                         MultImage, MultKernel, ProductOfImages, PSm, SameVectorBoth,
                         SameVectorProduct, StructureSpec, SumOfPowerImages, structure_from_dict)

__all__ = [
    "AdditiveImage", "BothImages", "Certificate", "Coloring", "Composite", "FSFP", "Kernel",
    "KernelBoth", "MultImage", "MultKernel", "PSm", "Problem", "ProductOfImages",
    "SameVectorBoth", "SameVectorProduct", "SearchBudget", "StructureSpec", "SumOfPowerImages",
    "SweepResult", "check_all_admit", "check_bad_coloring", "check_certificate_witness", "check_witness",
    "compile_structure", "diagonal_sum_scenario", "find_witness", "format_coloring",
    "hunt_counterexample", "naive_find_witness", "naive_verify_all", "parse_coloring",
    "structure_from_dict", "threshold_sweep", "verify_all_colorings",
]
