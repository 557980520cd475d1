"""
qlattice - extremal families in the subspace lattice of GF(q)^n

Exact Gaussian binomial arithmetic, canonical subspace enumeration, the named
s-union and antichain constructions with their closed-form bounds, and exact
clique searches that certify maxima at small parameters.
"""

from .families import FamilySpec, build_family, is_antichain, is_s_union, is_t_intersecting
from .gfq import Field, field_new
from .interfaces import CertificateStore, CliqueSolver, Constraint
from .models import SearchCertificate, VerificationReport
from .qbinom import BoundReport, gaussian_binomial
from .search import SearchConfig, conjecture_scan, max_s_union, max_s_union_antichain
from .subspace import Family, Subspace, enumerate_subspaces

__version__ = "0.1.0"
__all__ = [
    "BoundReport",
    "CertificateStore",
    "CliqueSolver",
    "Constraint",
    "Family",
    "FamilySpec",
    "Field",
    "SearchCertificate",
    "SearchConfig",
    "Subspace",
    "VerificationReport",
    "build_family",
    "conjecture_scan",
    "enumerate_subspaces",
    "field_new",
    "gaussian_binomial",
    "is_antichain",
    "is_s_union",
    "is_t_intersecting",
    "max_s_union",
    "max_s_union_antichain",
]
