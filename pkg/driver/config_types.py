from dataclasses import asdict, dataclass, replace
from typing import List, Optional

from bprk.core.errors import ConfigError
from bprk.core.solver_manager import SolverManager
from bprk.mappings.bounds_mapping import DEFAULT_EULER_FORM, DEFAULT_TOLERANCE
from bprk.mappings.euler_maps import EULER_FORMS
from bprk.mass_correction.correction import GAMMA_MODES
from bprk.mass_correction.gamma import GAMMA_SOLVERS
from bprk.problems.library import ic_library


@dataclass
class RunConfig:
    problem: str
    n: Optional[int] = None              # nodos por unidad de longitud (semidominio si se refleja)
    dt: Optional[float] = None
    t_end: Optional[float] = None
    scheme: Optional[str] = None         # "rk1" | "rk2" | "rk3" | "rk4"
    method: Optional[str] = None         # "plain" | "bp"
    bounds: Optional[str] = None         # "none" | "positivity" | "dmp" | "idp" | "idp_positivity_only"
    tolerance: float = DEFAULT_TOLERANCE
    gamma_mode: str = "analytic_with_fallback"
    gamma_solver: str = "bisection"
    gamma_iters: int = 5
    euler_form: str = DEFAULT_EULER_FORM  # "energy" | "slack"
    cadence: int = 10
    out: str = "results"
    seed: int = 0
    snapshot: bool = True
    dts: Optional[List[float]] = None
    schemes: Optional[List[str]] = None
    label: Optional[str] = None

    def resolved(self) -> "RunConfig":
        """Fill unset fields from the problem's defaults and validate the result."""
        spec = ic_library(self.problem)
        config = replace(
            self,
            problem=spec.name,
            n=spec.n if self.n is None else self.n,
            dt=spec.dt if self.dt is None else self.dt,
            t_end=spec.t_end if self.t_end is None else self.t_end,
            scheme=spec.scheme if self.scheme is None else self.scheme,
            method=spec.method if self.method is None else self.method,
            bounds=spec.bounds if self.bounds is None else self.bounds,
        )
        if config.label is None:
            config.label = f"{spec.name}_{config.method}_{config.scheme}_n{config.n}"
        config.validate()
        return config

    def validate(self):
        if not (isinstance(self.n, int) and self.n >= 2 and self.n & (self.n - 1) == 0):
            raise ConfigError(f"n must be a power of two >= 2, got {self.n}")
        if not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if not self.t_end > 0:
            raise ConfigError(f"t_end must be positive, got {self.t_end}")
        if self.tolerance < 0:
            raise ConfigError(f"tolerance must be >= 0, got {self.tolerance}")
        if self.cadence < 1 or self.gamma_iters < 1:
            raise ConfigError("cadence and gamma_iters must be >= 1")
        for scheme in [self.scheme] + list(self.schemes or []):
            if scheme not in SolverManager.SCHEMES:
                raise ConfigError(f"Unknown scheme '{scheme}'. Available: {', '.join(SolverManager.SCHEMES)}")
        if self.method not in SolverManager.METHODS:
            raise ConfigError(f"Unknown method '{self.method}'. Available: {', '.join(SolverManager.METHODS)}")
        if self.bounds not in SolverManager.BOUNDS_KINDS:
            raise ConfigError(f"Unknown bounds kind '{self.bounds}'")
        if self.gamma_mode not in GAMMA_MODES:
            raise ConfigError(f"Unknown gamma mode '{self.gamma_mode}'. Available: {', '.join(GAMMA_MODES)}")
        if self.gamma_solver not in GAMMA_SOLVERS:
            raise ConfigError(f"Unknown gamma solver '{self.gamma_solver}'. Available: {', '.join(GAMMA_SOLVERS)}")
        if self.euler_form not in EULER_FORMS:
            raise ConfigError(f"Unknown Euler map form '{self.euler_form}'. Available: {', '.join(EULER_FORMS)}")
        if self.dts is not None and not all(dt > 0 for dt in self.dts):
            raise ConfigError(f"dts must all be positive, got {self.dts}")

    def as_dict(self) -> dict:
        return asdict(self)


KEY_TYPES = {
    "problem": str, "n": int, "dt": float, "t_end": float, "scheme": str, "method": str,
    "bounds": str, "tolerance": float, "gamma_mode": str, "gamma_solver": str, "gamma_iters": int,
    "euler_form": str, "cadence": int, "out": str, "seed": int, "snapshot": bool, "dts": "float_list",
    "schemes": "str_list", "label": str,
}


def _coerce(key, value):
    kind = KEY_TYPES[key]
    try:
        if kind == "float_list":
            return [float(v) for v in (value if isinstance(value, list) else [value])]
        if kind == "str_list":
            return [str(v) for v in (value if isinstance(value, list) else [value])]
        if isinstance(value, list):
            raise ConfigError(f"Key '{key}' takes a single value, got a list")
        if kind is int:
            if isinstance(value, float) and not value.is_integer():
                raise ConfigError(f"Key '{key}' must be an integer, got {value}")
            return int(value)
        if kind is bool:
            if not isinstance(value, bool):
                raise ConfigError(f"Key '{key}' must be true or false, got {value}")
            return value
        if kind is float:
            return float(value)
        return str(value)
    except (TypeError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"Invalid value for '{key}': {value!r}") from e


def config_from_mapping(mapping: dict, base: Optional[RunConfig] = None) -> RunConfig:
    """Build (or update) a RunConfig from parsed key/value pairs."""
    unknown = sorted(set(mapping) - set(KEY_TYPES))
    if unknown:
        raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")
    values = {key: _coerce(key, value) for key, value in mapping.items()}
    if base is not None:
        return replace(base, **values)
    if "problem" not in values:
        raise ConfigError("Configuration needs a 'problem' key")
    return RunConfig(**values)

