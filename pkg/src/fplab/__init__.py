"""Evaluation, minimization and phase analysis of p-frame potentials on the circle."""

from __future__ import annotations

__version__ = "0.1.0"

from .families import FamilyInstance, FamilyKind, build, classify, closed_form_potential
from .optimize import MinimizeResult, OptimizerFailure, OptimizerSettings, minimize_fp
from .potentials import (
    AngleConfig,
    DomainError,
    canonicalize,
    equivalent,
    frame_operator_deviation,
    frame_potential,
    kernel_v,
    kernel_w,
    linearized_potential,
    theta_c,
    theta_p,
)
from .transitions import BracketError, TransitionReport, detect_transitions, locate_crossing, sweep

__all__ = [
    "AngleConfig",
    "BracketError",
    "DomainError",
    "FamilyInstance",
    "FamilyKind",
    "MinimizeResult",
    "OptimizerFailure",
    "OptimizerSettings",
    "TransitionReport",
    "build",
    "canonicalize",
    "classify",
    "closed_form_potential",
    "detect_transitions",
    "equivalent",
    "frame_operator_deviation",
    "frame_potential",
    "kernel_v",
    "kernel_w",
    "linearized_potential",
    "locate_crossing",
    "minimize_fp",
    "sweep",
    "theta_c",
    "theta_p",
]
