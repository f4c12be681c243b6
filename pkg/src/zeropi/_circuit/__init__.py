from zeropi._circuit._coords import (
    NODE_TO_NORMAL,
    NORMAL_TO_NODE,
    NormalCoords,
    node_capacitance_matrix,
    node_to_normal,
    normal_capacitance_matrix,
    normal_to_node,
)
from zeropi._circuit._params import (
    CircuitParams,
    DisorderParams,
)
from zeropi._circuit._potential import (
    potential_disordered,
    potential_node,
    potential_symmetric,
    potential_toy,
)
from zeropi._circuit._scales import (
    DerivedScales,
    derived_scales,
    PhysicalUnits,
    physical_units,
    RegimeReport,
    regime_check,
)
