"""gpdlab: a desk-scale laboratory for finite groupoids, their *-algebras
and K0 maps, cylinder and Reedy factorizations, and nerve homology
comparisons."""

from .groupoids import (ConcreteGroupoid, GroupoidError, GroupoidFunctor,
                        NonCofibrationError, codiscrete, connected_components,
                        delooping, discrete, disjoint_union, identity_functor,
                        is_cofibration, is_equivalence, is_isomorphic, product,
                        standard_groupoid, validate_functor, validate_groupoid,
                        vertex_group)
from .presentations import (Concretization, PresentedGroupoid, Unknown,
                            concretize, pushout_along_cofibration)
from .cylinders import (Cylinder, Factorization, ReedyDiagram, ReedyMorphism,
                        cylinder, good_cylinder_check, good_subcategory_check,
                        mapping_cylinder_factorization, reedy_factorization)
from .algebra import (BlockDecomposition, K0Map, Projection, ResolutionFailure,
                      StructureConstantAlgebra, block_decomposition,
                      corner_algebra, groupoid_algebra, induced_map,
                      is_full_projection, k0_map, morita_check)
from .samples import FiniteSampleCategory, enumerate_functors, enumerate_sample
from .homology import HomologyProfile, homology, smith_normal_form
from .nerves import (classification_level, diagonal, double_nerve_W,
                     nerve_of_groupoid, nerve_of_sample, zigzag_witness)

__version__ = "0.1.0"
