"""
Run Configuration
Typed parameter models for every subcommand and the --config file loader
"""
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.errors import InvalidParameterError
from src.jaynes_cummings.model import Variant
from src.statistics.coproduct import Algebra

logger = logging.getLogger(__name__)

ComplexPair = Tuple[float, float]


def parse_complex(value: Any) -> Optional[ComplexPair]:
    """Accept "re,im", a bare real, a [re, im] pair or a complex number"""
    if value is None:
        return None
    if isinstance(value, complex):
        return (value.real, value.imag)
    if isinstance(value, (int, float)):
        return (float(value), 0.0)
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",")]
        if len(parts) == 1:
            parts.append("0")
        if len(parts) != 2:
            raise ValueError(f"complex value must be 're,im', got {value!r}")
        try:
            return (float(parts[0]), float(parts[1]))
        except ValueError:
            raise ValueError(f"complex value must be 're,im', got {value!r}")
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return (float(value[0]), float(value[1]))
    raise ValueError(f"complex value must be 're,im', got {value!r}")


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class Subcommand(str, Enum):
    STATS = "stats"
    OSCILLATOR = "oscillator"
    LORENTZ = "lorentz"
    JC = "jc"
    VERIFY = "verify"


class Compare(str, Enum):
    EXACT = "exact"
    CLOSED = "closed"
    BOTH = "both"


class LorentzAlgebra(str, Enum):
    SU11 = "su11"
    WEYL = "weyl"
    BOTH = "both"


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", use_enum_values=False)


class StatsParams(StrictModel):
    """Occupation distribution of n bosons over m modes"""
    n: int = Field(default=2, description="Particle count")
    m: int = Field(default=2, description="Mode count")
    algebra: Algebra = Field(default=Algebra.SU11, description="weyl or su11")


class OscillatorParams(StrictModel):
    """Residual table of the oscillator identities"""
    kappas: List[float] = Field(default=[0.5, 1.0, 1.5], description="Bargmann indices to check")
    cutoff: int = Field(default=50, description="Fock cutoff")
    margin: int = Field(default=4, description="Interior margin")
    omega: float = Field(default=1.0, description="Frequency of the generalized bracket check")
    tolerance: float = Field(default=1e-9, description="Pass threshold for every residual")


class LorentzParams(StrictModel):
    """Boost checks and the internal-symmetry residuals"""
    theta: float = Field(default=0.5, description="Boost parameter")
    kappa: float = Field(default=0.5, description="Bargmann index of the HP representation")
    cutoff: int = Field(default=80, description="Fock cutoff")
    margin: int = Field(default=25, description="Interior margin")
    algebra: LorentzAlgebra = Field(default=LorentzAlgebra.BOTH, description="su11, weyl or both")


class JCParams(StrictModel):
    """Inversion dynamics from |g> x coherent field"""
    variant: Variant = Field(default=Variant.SU11, description="linear or su11 coupling")
    alpha: Optional[ComplexPair] = Field(default=None, description="Glauber amplitude as re,im")
    eta: Optional[ComplexPair] = Field(default=None, description="Barut-Girardello amplitude as re,im")
    omega: float = Field(default=1.0, description="Field frequency")
    omega0: float = Field(default=1.0, description="Transition frequency")
    coupling: float = Field(default=1.0, description="lambda or lambda0")
    cutoff: int = Field(default=120, description="Fock cutoff")
    t_max: float = Field(default=10.0, description="Last time point")
    t_steps: int = Field(default=400, description="Number of time points")
    compare: Compare = Field(default=Compare.BOTH, description="exact, closed or both")

    @field_validator("alpha", "eta", mode="before")
    @classmethod
    def _parse_complex(cls, value):
        return parse_complex(value)

    @model_validator(mode="after")
    def _one_field_state(self):
        if self.alpha is not None and self.eta is not None:
            raise ValueError("give either alpha or eta, not both")
        if self.alpha is None and self.eta is None:
            self.alpha = (3.0, 0.0)
        return self

    @property
    def glauber(self) -> bool:
        return self.alpha is not None

    @property
    def field_parameter(self) -> complex:
        pair = self.alpha if self.alpha is not None else self.eta
        return complex(pair[0], pair[1])


class VerifyParams(StrictModel):
    """Invariant suite at pinned sizes"""
    modules: Optional[List[str]] = Field(default=None, description="Restrict to these modules")
    workers: Optional[int] = Field(default=None, ge=1, description="Worker threads, BOSONALG_THREADS when omitted")


PARAMETER_MODELS = {
    Subcommand.STATS: StatsParams,
    Subcommand.OSCILLATOR: OscillatorParams,
    Subcommand.LORENTZ: LorentzParams,
    Subcommand.JC: JCParams,
    Subcommand.VERIFY: VerifyParams,
}

DEFAULT_FORMATS = {
    Subcommand.STATS: OutputFormat.CSV,
    Subcommand.OSCILLATOR: OutputFormat.CSV,
    Subcommand.LORENTZ: OutputFormat.JSON,
    Subcommand.JC: OutputFormat.CSV,
    Subcommand.VERIFY: OutputFormat.CSV,
}

SubcommandParams = Union[StatsParams, OscillatorParams, LorentzParams, JCParams, VerifyParams]


class RunConfig(StrictModel):
    """One subcommand invocation with its parameters and output target"""
    subcommand: Subcommand
    parameters: Dict[str, Any] = Field(default_factory=dict, description="Subcommand parameters")
    output: Optional[str] = Field(default=None, description="Output path, stdout when omitted")
    format: Optional[OutputFormat] = Field(default=None, description="csv or json")

    @model_validator(mode="after")
    def _validate_parameters(self):
        self.typed_parameters()
        return self

    def typed_parameters(self) -> SubcommandParams:
        return PARAMETER_MODELS[self.subcommand].model_validate(self.parameters)

    def resolved_format(self) -> OutputFormat:
        return self.format or DEFAULT_FORMATS[self.subcommand]


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Read a YAML or JSON run file"""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        detail = " ".join(str(e).split())
        raise InvalidParameterError(f"invalid config file {path}: {detail}") from e
    if not isinstance(data, dict):
        raise InvalidParameterError(f"config file {path} must hold a mapping, got {type(data).__name__}")
    config = RunConfig.model_validate(data)
    logger.info(f"Loaded run config for '{config.subcommand.value}' from {path}")
    return config
