"""Exact computations with finite cyclic group actions on complex tori.

Cyclotomic integer arithmetic, Smith normal forms, Galois orbits of Hodge
structures, fixed loci, moduli counts, certified principal polarizations, and
the split Bagnera-de Franchis classification tables in dimension <= 4, with
every divergence between computed results and the published tables flagged.
"""

__version__ = "1.0.0"

from .cycnum import (ComplexInterval, CyclotomicNumber, IntPolynomial,
                     RealInterval, cyc_arith, cyclotomic_poly, embed, mobius,
                     order_count_oracle, order_count_paper, totient)
from .intlattice import (FiniteAbelianGroup, IntMatrix, SNFDecomposition,
                         char_poly, cokernel, companion, det,
                         smith_normal_form)
from .torus import (ComplexStructure, CyclotomicModule, LatticeAutomorphism,
                    admissible_orders, character_multiplicities,
                    eigenvector_basis, fixed_locus, is_rigid,
                    moduli_dimension)
from .orbits import CharacterTuple, OrbitSet, all_tuples, galois_orbits, orbit_of
from .polarization import (AlternatingFormData, LambdaVector,
                           PolarizationReport, build_form, check_invariance,
                           first_riemann, gram_and_posdef, kernel_rank,
                           polarization_type, search_lambda, split_blocks)
from .families import TorusFamily, primary_families, torus_families
from .bdf import BdFFamily, classify, composite_b2, translation_options
from .fixtures import DiscrepancyFlag, compare_with_fixture, verify_table7
