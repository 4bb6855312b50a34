"""gentriq: generalized triangulation quivers and their weighted algebras.

Build quivers by gluing blocks (or from marked triangulated surfaces),
compute the permutation and orbit structure of the reduced quiver, generate
the defining relations of the associated weighted algebras, enumerate bases
and dimensions two independent ways, and run the block-replacement plus
two-stage mutation pipeline with round-trip verification.
"""

from importlib import resources

from .blocks import BLOCK_KINDS, Block, build_block
from .errors import (ConnectivityError, FormatError, GentriqError, GluingError,
                     IndeterminateError, NotTriangulationError, StructureError,
                     WeightError)
from .quiver import (GenTriQuiver, GluingSpec, export_dot, glue, load_gtq,
                     parse_gtq, quiver_isomorphic, validate)
from .star import (OrbitData, StarQuiver, VirtualSet, WeightData, WeightSymbol,
                   default_weights, is_triangulation, orbit_data, parse_wts,
                   star_quiver, validate_weights, virtual_arrows,
                   weights_from_text)
from .relations import (Coefficient, Path, Relation, RelationSet,
                        relations_generalized, relations_lambda_dblprime,
                        relations_triangulation, special_cycles, standard_paths)
from .enumeration import (BasisSet, LinPoly, basis_at_vertex,
                          basis_counts_closed, basis_triangulation,
                          dimension_generalized, dimension_triangulation,
                          enumerate_dimension)
from .transforms import (DeltaResult, MutationResult, delta_construction,
                         detect_exceptional, mutate_stage1, mutate_stage2,
                         roundtrip_check, virtual_sequence)
from .surface import (MarkedTriangulatedSurface, parse_surface,
                      surface_to_quiver)

__version__ = "0.1.0"


def example_text(name: str) -> str:
    """Contents of a bundled example file (e.g. ``"ex32.gtq"``)."""
    return resources.files(__package__).joinpath("examples", name).read_text()
