"""torushom: graded-module computations for torus-equivariant cohomology.

Exact-rational Groebner bases, minimal free resolutions, Ext tables,
local cohomology windows, and verification suites for orbit-filtration
fixtures (Atiyah-Bredon complexes, Cohen-Macaulay strata, syzygy criteria,
Duflot-type sequences, localization and duality shifts).
"""

from .ring import GradedPoly, GREVLEX, LEX, ModuleOrder, MonomialOrder, parse_poly
from .module import (FPHom, FPModule, FreeModule, GradedHom, buchberger,
                     kernel, image, cokernel, minimal_resolution,
                     minimize_presentation, hom_space_degree0, syzygy_columns)
from .invariants import (ext_table, hilbert_series, dimension, depth,
                         is_cohen_macaulay, syzygy_order,
                         local_cohomology_window, verify_local_duality)
from .complexes import (GradedComplex, IsoVerdict, cohomology_at,
                        exactness_positions, iso_probe, verify_ses)
from .atiyah_bredon import (OrbitFiltrationData, SESFixture, build_ab_complex,
                            verify_bundle, verify_ext_identity,
                            verify_stratum_cm, verify_syzygy_equivalence,
                            verify_duflot, verify_localization_torsion,
                            verify_locally_free_shift)
from .gkm import MomentGraph, Edge, gkm_cohomology, gkm_to_filtration

__version__ = "0.1.0"
