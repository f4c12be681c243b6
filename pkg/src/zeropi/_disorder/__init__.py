from zeropi._disorder._disorder_sweeps import (
    cj_disorder_check,
    junction_disorder_sweep,
)
from zeropi._disorder._dispersive import (
    coupling_elements,
    CouplingMatrices,
    dispersive_analysis,
    dispersive_shifts,
    DispersiveResult,
    matrix_elements,
)
