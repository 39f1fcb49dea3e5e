"""Exact computer algebra for central extensions of filiform Zinbiel algebras."""

from .algebra import (Algebra, annihilator, check_zinbiel, generator_count,
                      is_filiform, is_null_filiform, left_annihilator,
                      nilpotency_index, power_series, quotient_algebra,
                      right_annihilator)
from .catalog import (F0, F1, F2, F3, MU, FamilyId, binomial,
                      extension_theorem_table, make, nabla_basis,
                      orbit_lists, reduction_cases)
from .cohomology import (BilinearForm, CohomologySpaces, coboundary_of,
                         coboundary_space, cocycle_annihilator, cocycle_space,
                         cohomology)
from .extensions import (ExtensionSpec, check_f0_theorem, extend, is_nonsplit,
                         recover_extension)
from .invariants import (Fingerprint, distinguish_report, fingerprint,
                         verify_isomorphism)
from .linalg import Matrix, Subspace, kernel_basis, rref

__version__ = "0.1.0"
