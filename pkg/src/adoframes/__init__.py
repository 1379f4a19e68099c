"""Faithful representations of low-dimensional Lie algebras and their frames.

The pipeline goes from structure constants to exact representation
matrices, then to the group composition law in canonical coordinates, and
finally to Killing fields, invariant fields and the dual coframe.
"""

__version__ = "0.1.0"

from .errors import (AdoFramesError, InputError, UnknownAlgebraError,  # noqa: E402
                     ParameterRangeError, NotFaithfulError, UnsupportedBasisError,
                     UnsupportedStructureError, TerminationCapError,
                     InternalConsistencyError, NumericFailure, InterpolationError,
                     LogDomainError, CoordinatesTooLargeError, ChartBoundaryError)
from .config import Config, DEFAULT, default_config  # noqa: E402
from .algebra import (StructureConstants, AlgebraDescriptor, jacobi_check,  # noqa: E402
                      center, derived_series, lower_central_series, is_solvable,
                      is_nilpotent, split_direct_sum, algebra_to_json, algebra_from_json)
from .catalog import (catalog_lookup, catalog_keys, sample_descriptors,  # noqa: E402
                      resolve_name)
from .enveloping import EnvelopingAlgebra, PBWMonomial, UEAElement  # noqa: E402
from .ado import (Representation, build_representation, adjoint_representation,  # noqa: E402
                  extend_representation, find_chain, representation_to_json,
                  representation_from_json)
from .matfunc import (eigenvalues, exp_scaling_squaring, exp_lagrange_sylvester,  # noqa: E402
                      log_principal)
from .geometry import (Group, group_of, compose, killing_frame, invariant_frame,  # noqa: E402
                       coframe, frame_sample, recover_structure_constants,
                       verify_identities, invariant_metric_check, bch_compose)
from .symcatalog import (symbolic_frame, field_bracket, verify_catalog_entry,  # noqa: E402
                         verify_a410_closed_form)
