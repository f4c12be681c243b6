import configparser
import dataclasses
import math
import pathlib
import re
from typing import Any, Literal

import numpy as np

from zeropi._circuit import CircuitParams, DisorderParams
from zeropi._grid import QUALITIES, Quality
from zeropi._util import format_value

Mode = Literal[
    "spectrum",
    "flux-sweep",
    "dmax-grid",
    "ej-optimize",
    "disorder-sweep",
    "dispersive",
    "wavefunction-export",
]
MODES: tuple[str, ...] = (
    "spectrum",
    "flux-sweep",
    "dmax-grid",
    "ej-optimize",
    "disorder-sweep",
    "dispersive",
    "wavefunction-export",
)

# Modes that solve one fully specified device.
DEVICE_MODES = {"spectrum", "flux-sweep", "disorder-sweep", "dispersive", "wavefunction-export"}

# Which axes each mode requires (all of) and accepts (one of, for disorder-sweep).
MODE_AXES: dict[str, tuple[str, ...]] = {
    "flux-sweep": ("flux",),
    "dmax-grid": ("omega_p_over_e_l", "omega_p_over_e_c_sigma"),
    "disorder-sweep": ("delta_e_j_rel", "delta_c_j_rel"),
}

RATIO_KEYS = ("omega_p_over_e_l", "omega_p_over_e_c_sigma", "omega_p_over_e_j")
ENERGY_KEYS = ("e_j", "e_l", "e_c_sigma", "e_cj", "e_c")

SECTION_KEYS: dict[str, tuple[str, ...]] = {
    "run": ("mode", "k", "quality", "seed", "workers", "out", "refine"),
    "circuit": (*RATIO_KEYS, *ENERGY_KEYS, "phi_ext"),
    "disorder": ("delta_e_j", "delta_e_j_rel", "delta_c_j_rel", "delta_c_rel", "delta_e_l"),
    "solver": ("tol", "disc_error_bound", "trust_factor", "method"),
    "axis": ("flux", "omega_p_over_e_l", "omega_p_over_e_c_sigma", "delta_e_j_rel", "delta_c_j_rel"),
    "optimize": ("scan_points", "e_j_min", "e_j_max", "rel_tol", "refine_optimum"),
    "dispersive": ("resonance_factor",),
    "wavefunction": ("levels",),
}


class ConfigError(ValueError):
    """A run configuration that can't be parsed or doesn't validate.

    Attributes:
        field: The offending "section.key", or None when not tied to a key.
        line: 1-based line number for syntax errors, else None.
    """

    def __init__(self, message: str, *, field: str | None = None, line: int | None = None):
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if field is not None:
            prefix += f"{field}: "
        super().__init__(prefix + message)
        self.field = field
        self.line = line


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """A validated batch run.

    Energies are in units of hbar*omega_p. `circuit` is None for modes that
    choose E_J themselves (ej-optimize, dmax-grid); those modes read E_L and
    E_CSigma from `e_l`/`e_c_sigma` or from the axes.
    """

    mode: Mode
    circuit: CircuitParams | None = None
    e_l: float | None = None
    e_c_sigma: float | None = None
    phi_ext: float = 0.0
    disorder: DisorderParams = DisorderParams()
    k: int = 4
    quality: Quality = "standard"
    tol: float = 1e-10
    disc_error_bound: float | None = None
    trust_factor: float = 10
    method: str = "auto"
    refine: bool = True
    seed: int = 0
    workers: int = 1
    out: pathlib.Path = pathlib.Path("out")
    axes: dict[str, tuple[float, ...]] = dataclasses.field(default_factory=dict)
    scan_points: int = 25
    e_j_bounds: tuple[float, float] = (10**-1.5, 1.0)
    rel_tol: float = 0.01
    refine_optimum: bool = True
    resonance_factor: float = 10
    levels: tuple[int, ...] = (0, 1)

    def with_overrides(
        self,
        *,
        out: str | pathlib.Path | None = None,
        workers: int | None = None,
        seed: int | None = None,
    ) -> "RunConfig":
        """Applies command line overrides."""
        if workers is not None and workers < 1:
            raise ConfigError(f"not ({workers=} >= 1)", field="run.workers")
        return dataclasses.replace(
            self,
            out=self.out if out is None else pathlib.Path(out),
            workers=self.workers if workers is None else workers,
            seed=self.seed if seed is None else seed,
        )

    def resolved_text(self) -> str:
        """The configuration after defaults and unit conversion, one `key = value` per line."""
        lines = [f"mode = {self.mode}"]
        if self.circuit is not None:
            for f in dataclasses.fields(self.circuit):
                lines.append(f"circuit.{f.name} = {format_value(getattr(self.circuit, f.name))}")
        else:
            lines.append(f"circuit.e_l = {format_value(self.e_l)}")
            lines.append(f"circuit.e_c_sigma = {format_value(self.e_c_sigma)}")
            lines.append(f"circuit.phi_ext = {format_value(self.phi_ext)}")
        for f in dataclasses.fields(self.disorder):
            lines.append(f"disorder.{f.name} = {format_value(getattr(self.disorder, f.name))}")
        for name in [
            "k",
            "quality",
            "tol",
            "disc_error_bound",
            "trust_factor",
            "method",
            "refine",
            "seed",
            "workers",
            "out",
        ]:
            lines.append(f"{name} = {format_value(getattr(self, name))}")
        for name, values in self.axes.items():
            lines.append(f"axis.{name} = {', '.join(format_value(v) for v in values)}")
        if self.mode in ("ej-optimize", "dmax-grid"):
            lines.append(f"optimize.scan_points = {self.scan_points}")
            lines.append(
                f"optimize.e_j_bounds = {format_value(self.e_j_bounds[0])}, "
                f"{format_value(self.e_j_bounds[1])}"
            )
            lines.append(f"optimize.rel_tol = {format_value(self.rel_tol)}")
            lines.append(f"optimize.refine_optimum = {format_value(self.refine_optimum)}")
        if self.mode == "dispersive":
            lines.append(f"dispersive.resonance_factor = {format_value(self.resonance_factor)}")
        if self.mode == "wavefunction-export":
            lines.append(f"wavefunction.levels = {', '.join(str(e) for e in self.levels)}")
        return "\n".join(lines) + "\n"


def parse_number(text: str, *, field: str | None = None) -> float:
    """Parses a float, also accepting a `pi` suffix ("pi", "-pi", "2pi", "0.5pi").

    Example:
        >>> import math
        >>> parse_number("0.5pi") == math.pi / 2
        True
    """
    t = text.strip()
    try:
        if t.endswith("pi"):
            factor = t[:-2].strip().rstrip("*").strip()
            if factor in ("", "+"):
                return math.pi
            if factor == "-":
                return -math.pi
            return float(factor) * math.pi
        result = float(t)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}", field=field) from None
    if not math.isfinite(result):
        raise ConfigError(f"not finite: {text!r}", field=field)
    return result


def parse_int(text: str, *, field: str | None = None) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(f"not an integer: {text!r}", field=field) from None


def parse_bool(text: str, *, field: str | None = None) -> bool:
    result = configparser.ConfigParser.BOOLEAN_STATES.get(text.strip().lower())
    if result is None:
        raise ConfigError(f"not a boolean: {text!r}", field=field)
    return result


_RANGE = re.compile(r"^(linspace|logspace)\s*\((.*)\)$")


def parse_axis(text: str, *, field: str | None = None) -> tuple[float, ...]:
    """Parses axis values.

    Accepts a comma separated list, `linspace(start, stop, count)` or
    `logspace(start_exponent, stop_exponent, count)`.

    Example:
        >>> parse_axis("linspace(0, 1, 3)")
        (0.0, 0.5, 1.0)
        >>> parse_axis("1, 2pi")[0]
        1.0
    """
    t = text.strip()
    match = _RANGE.match(t)
    if match is None:
        values = tuple(parse_number(v, field=field) for v in t.split(",") if v.strip())
    else:
        args = [a for a in match.group(2).split(",")]
        if len(args) != 3:
            raise ConfigError(
                f"{match.group(1)} takes (start, stop, count), got {text!r}", field=field
            )
        start = parse_number(args[0], field=field)
        stop = parse_number(args[1], field=field)
        count = parse_int(args[2], field=field)
        if count < 1:
            raise ConfigError(f"not ({count=} >= 1)", field=field)
        space = np.linspace if match.group(1) == "linspace" else np.logspace
        values = tuple(float(v) for v in space(start, stop, count))
    if len(values) == 0:
        raise ConfigError("no values", field=field)
    return values


def _read_sections(text: str) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser(
        interpolation=None,
        inline_comment_prefixes=("#", ";"),
        default_section="__no_defaults__",
    )
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.ParsingError as ex:
        errors = getattr(ex, "errors", None)
        line = errors[0][0] if errors else getattr(ex, "lineno", None)
        raise ConfigError(f"syntax error: {str(ex).splitlines()[0]}", line=line) from None
    except configparser.Error as ex:
        raise ConfigError(
            f"syntax error: {str(ex).splitlines()[0]}", line=getattr(ex, "lineno", None)
        ) from None

    result = {}
    for section in parser.sections():
        known = SECTION_KEYS.get(section)
        if known is None:
            raise ConfigError(
                f"unknown section [{section}]; known sections are "
                f"{', '.join(f'[{s}]' for s in SECTION_KEYS)}",
                field=section,
            )
        for key in parser[section]:
            if key not in known:
                raise ConfigError(
                    f"unknown key {key!r}; [{section}] accepts {', '.join(known)}",
                    field=f"{section}.{key}",
                )
        result[section] = dict(parser[section])
    return result


def parse_config(text: str, *, mode: str | None = None) -> RunConfig:
    """Parses and validates an INI-style run configuration.

    Args:
        text: The configuration text.
        mode: The mode chosen on the command line. When the file also names
            a mode, both must agree.

    Raises:
        ConfigError: Syntax errors (with line), unknown sections or keys, and
            values that don't validate (with the field name).
    """
    sections = _read_sections(text)
    run = sections.get("run", {})
    circuit = sections.get("circuit", {})
    disorder = sections.get("disorder", {})
    solver = sections.get("solver", {})
    axis = sections.get("axis", {})
    optimize = sections.get("optimize", {})
    dispersive = sections.get("dispersive", {})
    wavefunction = sections.get("wavefunction", {})

    file_mode = run.get("mode")
    if file_mode is not None and mode is not None and file_mode.strip() != mode:
        raise ConfigError(
            f"the file says {file_mode.strip()!r} but {mode!r} was requested", field="run.mode"
        )
    chosen = mode if mode is not None else file_mode
    if chosen is None:
        raise ConfigError("no mode given", field="run.mode")
    chosen = chosen.strip()
    if chosen not in MODES:
        raise ConfigError(
            f"unknown mode {chosen!r}; known modes are {', '.join(MODES)}", field="run.mode"
        )

    kwargs: dict[str, Any] = {"mode": chosen}
    if "k" in run:
        kwargs["k"] = parse_int(run["k"], field="run.k")
        if kwargs["k"] < 3:
            raise ConfigError(f"not (k={kwargs['k']} >= 3)", field="run.k")
    if "quality" in run:
        quality = run["quality"].strip()
        if quality not in QUALITIES:
            raise ConfigError(
                f"unknown quality {quality!r}; known are {', '.join(QUALITIES)}",
                field="run.quality",
            )
        kwargs["quality"] = quality
    if "seed" in run:
        kwargs["seed"] = parse_int(run["seed"], field="run.seed")
    if "workers" in run:
        kwargs["workers"] = parse_int(run["workers"], field="run.workers")
        if kwargs["workers"] < 1:
            raise ConfigError(f"not (workers={kwargs['workers']} >= 1)", field="run.workers")
    if "out" in run:
        kwargs["out"] = pathlib.Path(run["out"].strip())
    if "refine" in run:
        kwargs["refine"] = parse_bool(run["refine"], field="run.refine")

    for key in ["tol", "disc_error_bound", "trust_factor"]:
        if key in solver:
            v = parse_number(solver[key], field=f"solver.{key}")
            if not (v > 0):
                raise ConfigError(f"not ({key}={v!r} > 0)", field=f"solver.{key}")
            kwargs[key] = v
    if "method" in solver:
        method = solver["method"].strip()
        if method not in ("auto", "sparse", "dense"):
            raise ConfigError(
                f"unknown method {method!r}; known are auto, sparse, dense", field="solver.method"
            )
        kwargs["method"] = method

    kwargs["axes"] = _parse_axes(chosen, axis)
    kwargs.update(_parse_circuit(chosen, circuit))
    kwargs["disorder"] = _parse_disorder(disorder, kwargs.get("circuit"))
    kwargs.update(_parse_optimize(chosen, optimize))

    if "resonance_factor" in dispersive:
        v = parse_number(dispersive["resonance_factor"], field="dispersive.resonance_factor")
        if not (v >= 0):
            raise ConfigError(f"not (resonance_factor={v!r} >= 0)", field="dispersive.resonance_factor")
        kwargs["resonance_factor"] = v
    if "levels" in wavefunction:
        levels = tuple(
            parse_int(v, field="wavefunction.levels")
            for v in wavefunction["levels"].split(",")
            if v.strip()
        )
        k = kwargs.get("k", RunConfig.k)
        if not levels or not all(0 <= e < k for e in levels):
            raise ConfigError(f"levels must be in [0, {k=})", field="wavefunction.levels")
        kwargs["levels"] = levels

    return RunConfig(**kwargs)


def _parse_axes(mode: str, axis: dict[str, str]) -> dict[str, tuple[float, ...]]:
    allowed = MODE_AXES.get(mode, ())
    for key in axis:
        if key not in allowed:
            raise ConfigError(f"mode {mode!r} has no {key!r} axis", field=f"axis.{key}")
    axes = {key: parse_axis(axis[key], field=f"axis.{key}") for key in allowed if key in axis}
    if mode == "disorder-sweep":
        if len(axes) != 1:
            raise ConfigError(
                "disorder-sweep needs exactly one of delta_e_j_rel or delta_c_j_rel",
                field="axis",
            )
    else:
        for key in allowed:
            if key not in axes:
                raise ConfigError(f"mode {mode!r} requires this axis", field=f"axis.{key}")
    for key, values in axes.items():
        if key.startswith("omega_p_over") and not all(v > 0 for v in values):
            raise ConfigError("values must be positive", field=f"axis.{key}")
        if key == "delta_e_j_rel" and not all(abs(v) < 1 for v in values):
            raise ConfigError("values must satisfy |v| < 1", field=f"axis.{key}")
        if key == "delta_c_j_rel" and not all(abs(v) <= 1 for v in values):
            raise ConfigError("values must satisfy |v| <= 1", field=f"axis.{key}")
    return axes


def _parse_circuit(mode: str, circuit: dict[str, str]) -> dict[str, Any]:
    values = {
        key: parse_number(text, field=f"circuit.{key}") for key, text in circuit.items()
    }
    phi_ext = values.pop("phi_ext", 0.0)
    ratios = {k: v for k, v in values.items() if k in RATIO_KEYS}
    energies = {k: v for k, v in values.items() if k in ENERGY_KEYS}
    if ratios and energies:
        raise ConfigError(
            "give either the omega_p_over_* ratios or raw energies, not both",
            field=f"circuit.{sorted(energies)[0]}",
        )
    result: dict[str, Any] = {"phi_ext": phi_ext}

    if mode == "dmax-grid":
        if values:
            key = sorted(values)[0]
            raise ConfigError("set by the axes in mode 'dmax-grid'", field=f"circuit.{key}")
        return result

    if mode == "ej-optimize":
        for key in ["omega_p_over_e_j", "e_j", "e_cj", "e_c"]:
            if key in values:
                raise ConfigError(
                    "E_J is optimized in mode 'ej-optimize'", field=f"circuit.{key}"
                )
        if ratios:
            needed = {"omega_p_over_e_l": "e_l", "omega_p_over_e_c_sigma": "e_c_sigma"}
            for key, name in needed.items():
                if key not in ratios:
                    raise ConfigError("missing", field=f"circuit.{key}")
                if not (ratios[key] > 0):
                    raise ConfigError(f"not ({key}={ratios[key]!r} > 0)", field=f"circuit.{key}")
                result[name] = 1 / ratios[key]
        else:
            for key in ["e_l", "e_c_sigma"]:
                if key not in energies:
                    raise ConfigError("missing", field=f"circuit.{key}")
                if not (energies[key] > 0):
                    raise ConfigError(f"not ({key}={energies[key]!r} > 0)", field=f"circuit.{key}")
                result[key] = energies[key]
        return result

    try:
        if ratios:
            for key in RATIO_KEYS:
                if key not in ratios:
                    raise ConfigError("missing", field=f"circuit.{key}")
            p = CircuitParams.from_ratios(**ratios, phi_ext=phi_ext)
        else:
            for key in ["e_j", "e_l", "e_c_sigma", "e_cj"]:
                if key not in energies:
                    raise ConfigError(
                        "missing; give the three omega_p_over_* ratios or the raw energies",
                        field=f"circuit.{key}",
                    )
            p = CircuitParams.from_energies(**energies, phi_ext=phi_ext)
    except ConfigError:
        raise
    except ValueError as ex:
        raise ConfigError(str(ex), field="circuit") from None
    result["circuit"] = p
    result["e_l"] = p.e_l
    result["e_c_sigma"] = p.e_c_sigma
    return result


def _parse_disorder(disorder: dict[str, str], circuit: CircuitParams | None) -> DisorderParams:
    values = {
        key: parse_number(text, field=f"disorder.{key}") for key, text in disorder.items()
    }
    if "delta_e_j_rel" in values:
        if "delta_e_j" in values:
            raise ConfigError(
                "give delta_e_j or delta_e_j_rel, not both", field="disorder.delta_e_j_rel"
            )
        if circuit is None:
            raise ConfigError("needs a fixed E_J", field="disorder.delta_e_j_rel")
        values["delta_e_j"] = values.pop("delta_e_j_rel") * circuit.e_j
    if circuit is not None and "delta_e_j" in values and not (abs(values["delta_e_j"]) < circuit.e_j):
        raise ConfigError(
            f"not (|delta_e_j={values['delta_e_j']!r}| < e_j={circuit.e_j!r})",
            field="disorder.delta_e_j",
        )
    try:
        return DisorderParams(**values)
    except ValueError as ex:
        raise ConfigError(str(ex), field="disorder") from None


def _parse_optimize(mode: str, optimize: dict[str, str]) -> dict[str, Any]:
    if optimize and mode not in ("ej-optimize", "dmax-grid"):
        raise ConfigError(f"not used in mode {mode!r}", field="optimize")
    result: dict[str, Any] = {}
    if "scan_points" in optimize:
        n = parse_int(optimize["scan_points"], field="optimize.scan_points")
        if n < 3:
            raise ConfigError(f"not (scan_points={n} >= 3)", field="optimize.scan_points")
        result["scan_points"] = n
    low, high = RunConfig.e_j_bounds
    if "e_j_min" in optimize:
        low = parse_number(optimize["e_j_min"], field="optimize.e_j_min")
    if "e_j_max" in optimize:
        high = parse_number(optimize["e_j_max"], field="optimize.e_j_max")
    if not (0 < low < high):
        raise ConfigError(f"not (0 < e_j_min={low!r} < e_j_max={high!r})", field="optimize.e_j_min")
    result["e_j_bounds"] = (low, high)
    if "rel_tol" in optimize:
        v = parse_number(optimize["rel_tol"], field="optimize.rel_tol")
        if not (v > 0):
            raise ConfigError(f"not (rel_tol={v!r} > 0)", field="optimize.rel_tol")
        result["rel_tol"] = v
    if "refine_optimum" in optimize:
        result["refine_optimum"] = parse_bool(optimize["refine_optimum"], field="optimize.refine_optimum")
    return result
