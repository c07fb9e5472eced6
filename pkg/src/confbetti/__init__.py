"""Rational Betti numbers of unordered configuration spaces of manifolds."""
from ._backend import BACKEND
from .analyze import (UNRESOLVED, DecompositionLedger, ScanReport, decomposition_check,
                      monotonicity_scan, stability_scan)
from .cecomplex import (GeneratorSystem, WeightGradedComplex, build_complex, build_generators,
                        extend_differential, pair_differential, quotient_complex)
from .errors import (ConfBettiError, HypothesisError, InternalCheckError, UnknownGeneratorError,
                     ValidationError)
from .gradedalg import (Chain, GeneratorInfo, Monomial, SparseRationalMatrix, koszul_canonicalize,
                        rank, sym_basis)
from .homology import BettiTable, betti, betti_odd, euler
from .manifold import CupEntry, CupTable, ManifoldModel, catalog, catalog_names, load, validate

__version__ = "0.1.0"
