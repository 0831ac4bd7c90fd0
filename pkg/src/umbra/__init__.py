"""Umbral operator toolkit: pseudo-exponential series, operator actions,
special functions, SU(1,1) Fock-space states, operational evolution and
umbral integral transforms."""

from .umbral_core import (
    N_MAX,
    LogCoefficient,
    SequenceSpecError,
    SeriesEvaluation,
    UmbralSequence,
    coefficient,
    eval_pseudo_exp,
    exact_coefficient,
    sequence_from_spec,
    shift_sequence,
    umbral_eval,
)

__version__ = "0.1.0"
