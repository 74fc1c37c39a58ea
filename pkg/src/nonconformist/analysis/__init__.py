"""Spectra, pattern classes, lemma checks, neighbour classes, sweeps and witness search."""
from .lemmas import LemmaError, LemmaViolation, check_recurrent_lemmas
from .neighbors import (
    NeighborClass,
    NeighborClassError,
    check_monochromatic,
    neighbor_parity_classes,
    xyz_sets,
)
from .patterns import (
    LOOPLESS_CLASSES,
    PERIODS_BY_CLASS,
    PatternClass,
    PatternKind,
    classify_pattern,
    minimal_word,
)
from .spectrum import PeriodSpectrum, period_spectrum
from .sweeps import (
    THEOREMS,
    Family,
    SweepError,
    SweepResult,
    VerificationReport,
    run_sweep,
    sample_system,
    verify_pattern_period_consistency,
    verify_period_set,
    verify_theorem,
)
from .witness import WitnessResult, find_witness
