from zeropi._cli._config import (
    ConfigError,
    MODES,
    parse_axis,
    parse_config,
    parse_number,
    RunConfig,
)
from zeropi._cli._main import main
from zeropi._cli._run import (
    run,
    RunReport,
    spectrum_csv,
    wavefunction_csv,
)
