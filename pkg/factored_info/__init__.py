# Factored Info - multi-information, factorized mutual information and their maximizers
__version__ = "0.1.0"

from .core import (
    BlockSplit,
    Distribution,
    StateSpace,
    block_mutual_information,
    entropy,
    kl_divergence,
    marginal,
    multi_information,
)

from .family import (
    MarginFamily,
    Pairing,
    fmi,
    i_lambda,
    is_connected_covering,
    sfmi,
)

from .codes import (
    Code,
    CodePartition,
    enumerate_all_partitions,
    enumerate_max_distance_codes,
    partition_into_codes,
)

from .polytope import (
    ConstraintSystem,
    PolytopeReport,
    enumerate_vertices,
    margin_specified_polytope,
)

from .atlas import (
    SfmiAtlas,
    SfmiPolytope,
    build_sfmi_atlas,
    enumerate_blockMI_maximizers,
    enumerate_I_maximizers,
    enumerate_sfmi_polytopes,
)

from .search import (
    Measure,
    MeasureKind,
    SearchConfig,
    maximize_measure,
    verify_theorem_fmi,
)

from .errors import CapExceededError, ExactnessRequiredError, FactoredInfoError, InvariantViolation
from .registry import OPERATIONS
from .settings import Settings, get_global_settings, set_global_settings
