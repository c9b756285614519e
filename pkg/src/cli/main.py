"""
bosonalg Command Line
Subcommands for statistics, oscillator identities, Lorentz checks, JC dynamics and the invariant suite
"""
import functools
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import click
import numpy as np
import pandas as pd
from pydantic import ValidationError as PydanticValidationError
from rich.console import Console
from rich.table import Table

from src.cli.config import (
    JCParams,
    LorentzAlgebra,
    LorentzParams,
    OscillatorParams,
    OutputFormat,
    RunConfig,
    StatsParams,
    Subcommand,
    VerifyParams,
    Compare,
    load_run_config,
)
from src.cli.verify import InvariantSuite, VerifyConfig
from src.errors import InvalidParameterError, NumericalGuardError, ValidationError
from src.fock.su11 import casimir_residual, make_su11_hp, relation_residuals
from src.jaynes_cummings.dynamics import (
    closed_form_series,
    collapse_time,
    revival_period,
    sz_closed_bs_bg,
    sz_closed_bs_glauber,
    sz_closed_linear_bg,
    sz_closed_linear_glauber,
    sz_exact,
)
from src.jaynes_cummings.model import JCModel, Variant, rabi_period
from src.jaynes_cummings.states import AtomicLevel, barut_girardello_state, glauber_state, product_state
from src.lorentz.covariance import (
    SymmetryProbeConfig,
    boost_matrix,
    exp_boost,
    internal_symmetry_residual,
)
from src.oscillator.su11_oscillator import (
    generalized_bracket_check,
    heisenberg_residuals,
    inverse_hp_ladder,
    schwinger_generators,
    schwinger_residuals,
    su11_observables_linear,
)
from src.settings import get_settings
from src.statistics.coproduct import closed_form_distribution, distribution_table

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FLOAT_FORMAT = "%.17g"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

stderr_console = Console(stderr=True)


@dataclass
class Artifact:
    """What a subcommand produced: an optional table and a JSON summary"""
    subcommand: Subcommand
    table: Optional[pd.DataFrame] = None
    summary: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = 0


def _json_value(value):
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _encode(value: Any, level: int = 0) -> str:
    """JSON text with floats at FLOAT_FORMAT and two-space indentation"""
    inner = "  " * (level + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_encode(v, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{inner}{_encode(v, level + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    value = _json_value(value)
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return json.dumps(value)


def render(artifact: Artifact, fmt: OutputFormat) -> str:
    """Deterministic text of the artifact"""
    if fmt is OutputFormat.CSV:
        if artifact.table is None:
            table = pd.DataFrame([{"key": k, "value": v} for k, v in _flatten(artifact.summary).items()])
        else:
            table = artifact.table
        buffer = io.StringIO()
        table.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return buffer.getvalue()

    document: Dict[str, Any] = {"schema": SCHEMA_VERSION, "subcommand": artifact.subcommand.value}
    document.update(artifact.summary)
    if artifact.table is not None:
        document["rows"] = artifact.table.to_dict(orient="records")
    return _encode(document) + "\n"


def _flatten(summary: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in summary.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, prefix=f"{name}."))
        else:
            flat[name] = value
    return flat


def emit(artifact: Artifact, fmt: OutputFormat, output: Optional[str]) -> None:
    text = render(artifact, fmt)
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        logger.info(f"Wrote {artifact.subcommand.value} artifact to {output}")
    else:
        click.echo(text, nl=False)


def _one_line(exc: PydanticValidationError) -> str:
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ())) or "config"
    return f"invalid parameter {location}: {first.get('msg', 'validation failed')}"


def handle_errors(func: Callable) -> Callable:
    """Map validation failures to exit 2 and numerical guards to exit 1"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except PydanticValidationError as e:
            click.echo(f"error: {_one_line(e)}", err=True)
            sys.exit(2)
        except ValidationError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(2)
        except NumericalGuardError as e:
            click.echo(f"guard {e.guard}: {e}", err=True)
            sys.exit(1)

    return wrapper


# computations


def run_stats(params: StatsParams) -> Artifact:
    dist = closed_form_distribution(params.n, params.m, params.algebra)
    summary = {"n": params.n, "m": params.m, "algebra": dist.algebra.value}
    return Artifact(Subcommand.STATS, table=distribution_table(dist), summary=summary)


def run_oscillator(params: OscillatorParams) -> Artifact:
    rows = []

    def record(identity_name: str, kappa, residual: float) -> None:
        rows.append({"identity": identity_name, "kappa": kappa, "cutoff": params.cutoff, "residual": residual})

    for kappa in params.kappas:
        g = make_su11_hp(kappa, params.cutoff)
        for name, value in relation_residuals(g, margin=2).items():
            record(f"su11_{name}", kappa, value)
        record("casimir", kappa, casimir_residual(g, margin=2))
        for name, value in heisenberg_residuals(su11_observables_linear(g), g, params.margin).items():
            record(f"linear_{name}", kappa, value)
        record("inverse_hp_q_p", kappa, inverse_hp_ladder(g).pair.canonical_residual(params.margin))
        record("generalized_bracket", kappa, generalized_bracket_check(g, params.omega))
    for name, value in schwinger_residuals(schwinger_generators(params.cutoff), params.margin).items():
        record(f"schwinger_{name}", float("nan"), value)

    table = pd.DataFrame(rows, columns=["identity", "kappa", "cutoff", "residual"])
    passed = bool((table["residual"] < params.tolerance).all())
    _print_table(
        "oscillator identities",
        ["identity", "kappa", "residual", "status"],
        [
            [r["identity"], "-" if math.isnan(r["kappa"]) else f"{r['kappa']:g}", f"{r['residual']:.3e}",
             "pass" if r["residual"] < params.tolerance else "FAIL"]
            for r in rows
        ],
    )
    return Artifact(Subcommand.OSCILLATOR, table=table, summary={"all_passed": passed, "tolerance": params.tolerance})


def run_lorentz(params: LorentzParams) -> Artifact:
    config = SymmetryProbeConfig(margin=params.margin)
    residuals: Dict[str, Optional[float]] = {"su11": None, "weyl": None}
    for algebra in ("su11", "weyl"):
        if params.algebra in (LorentzAlgebra.BOTH, LorentzAlgebra(algebra)):
            residuals[algebra] = internal_symmetry_residual(
                params.theta, algebra, params.kappa, params.cutoff, params.margin, config=config
            )
    gamma = math.cosh(params.theta / 2)
    matrix = boost_matrix(gamma)
    boost_checks = {
        "gamma": gamma,
        "determinant_error": abs(matrix.determinant() - 1.0),
        "hermiticity_error": matrix.hermiticity_residual(),
        "orthogonality_error": matrix.orthogonality_residual(),
        "unitarity_defect": matrix.unitarity_defect(),
        "exp_map_error": float(np.max(np.abs(exp_boost(abs(params.theta)) - matrix.entries))),
    }
    summary = {
        "theta": params.theta,
        "kappa": params.kappa,
        "cutoff": params.cutoff,
        "margin": params.margin,
        "residual_su11": residuals["su11"],
        "residual_weyl": residuals["weyl"],
        "boost_checks": boost_checks,
    }
    return Artifact(Subcommand.LORENTZ, summary=summary)


CLOSED_FORMS = {
    (Variant.LINEAR, True): sz_closed_linear_glauber,
    (Variant.LINEAR, False): sz_closed_linear_bg,
    (Variant.SU11, True): sz_closed_bs_glauber,
    (Variant.SU11, False): sz_closed_bs_bg,
}


def run_jc(params: JCParams) -> Artifact:
    model = JCModel(
        variant=params.variant,
        omega=params.omega,
        omega0=params.omega0,
        coupling=params.coupling,
        cutoff=params.cutoff,
    )
    if params.t_steps < 2 or not params.t_max > 0:
        raise InvalidParameterError(
            f"invalid time grid: need t_steps >= 2 and t_max > 0, got {params.t_steps}, {params.t_max}"
        )
    if params.compare is not Compare.EXACT and model.detuning != 0:
        raise InvalidParameterError("invalid detuning: closed forms hold at resonance, need omega == omega0")

    parameter = params.field_parameter
    field_state = (
        glauber_state(parameter, model.cutoff) if params.glauber else barut_girardello_state(parameter, model.cutoff)
    )
    initial = product_state(field_state, AtomicLevel.G)
    times = np.linspace(0.0, params.t_max, params.t_steps)

    columns: Dict[str, np.ndarray] = {"t": times}
    reference = None
    if params.compare in (Compare.EXACT, Compare.BOTH):
        reference = sz_exact(model, initial, times)
        columns["sz_exact"] = reference.values
    if params.compare in (Compare.CLOSED, Compare.BOTH):
        closed = closed_form_series(CLOSED_FORMS[(model.variant, params.glauber)], parameter, model.coupling, times)
        columns["sz_closed"] = closed.values
        if reference is None:
            reference = closed
    if "sz_exact" in columns and "sz_closed" in columns:
        columns["abs_err"] = np.abs(columns["sz_exact"] - columns["sz_closed"])

    nbar = initial.mean_photons()
    collapse = None
    if nbar > 0 and model.coupling != 0:
        collapse = collapse_time(reference, rabi_period(model, nbar))
    summary = {
        "variant": model.variant.value,
        "initial": "glauber" if params.glauber else "barut-girardello",
        "mean_photons": nbar,
        "collapse_time": collapse,
        "revival_period": revival_period(model),
        "max_abs_err": float(np.max(columns["abs_err"])) if "abs_err" in columns else None,
    }
    return Artifact(Subcommand.JC, table=pd.DataFrame(columns), summary=summary)


def run_verify(params: VerifyParams) -> Artifact:
    report = InvariantSuite(VerifyConfig(max_workers=params.workers)).run(params.modules)
    _print_table(
        "invariant suite",
        ["module", "check", "value", "bound", "status"],
        [
            [r.module, r.name, f"{r.value:.3e}", f"{r.relation} {r.bound:g}", "pass" if r.passed else "FAIL"]
            for r in report.results
        ],
    )
    summary = {"all_passed": report.all_passed, "failures": len(report.failures())}
    return Artifact(Subcommand.VERIFY, table=report.to_frame(), summary=summary, exit_code=0 if report.all_passed else 1)


RUNNERS = {
    Subcommand.STATS: run_stats,
    Subcommand.OSCILLATOR: run_oscillator,
    Subcommand.LORENTZ: run_lorentz,
    Subcommand.JC: run_jc,
    Subcommand.VERIFY: run_verify,
}


def execute(config: RunConfig) -> int:
    """Run one configured subcommand, write its artifact and return the exit status"""
    logger.info(f"Running {config.subcommand.value}")
    artifact = RUNNERS[config.subcommand](config.typed_parameters())
    emit(artifact, config.resolved_format(), config.output)
    return artifact.exit_code


def _print_table(title: str, headers, rows) -> None:
    table = Table(title=title)
    for header in headers:
        table.add_column(header)
    for row in rows:
        table.add_row(*[str(cell) for cell in row])
    stderr_console.print(table)


def _dispatch(subcommand: Subcommand, parameters: Dict[str, Any], output: Optional[str], fmt: Optional[str]) -> None:
    config = RunConfig(
        subcommand=subcommand,
        parameters={k: v for k, v in parameters.items() if v is not None},
        output=output,
        format=fmt,
    )
    status = execute(config)
    if status:
        sys.exit(status)


def output_options(func: Callable) -> Callable:
    func = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None, help="Output format")(func)
    func = click.option("--output", type=click.Path(dir_okay=False), default=None, help="Write to a file instead of stdout")(func)
    return func


@click.group()
@click.option("--log-level", default=None, help="Log level (default from BOSONALG_LOG_LEVEL)")
def cli(log_level):
    """su(1,1) versus h(1) boson toolkit"""
    level = (log_level or get_settings().log_level).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format=LOG_FORMAT, stream=sys.stderr)


@cli.command()
@click.option("--n", type=int, default=None, help="Particle count")
@click.option("--m", type=int, default=None, help="Mode count")
@click.option("--algebra", type=click.Choice(["weyl", "su11"]), default=None)
@output_options
@handle_errors
def stats(n, m, algebra, output, fmt):
    """Occupation distribution over m modes"""
    _dispatch(Subcommand.STATS, {"n": n, "m": m, "algebra": algebra}, output, fmt)


@cli.command()
@click.option("--kappa", "kappas", type=float, multiple=True, help="Bargmann index, repeatable")
@click.option("--cutoff", type=int, default=None)
@click.option("--margin", type=int, default=None)
@click.option("--omega", type=float, default=None)
@output_options
@handle_errors
def oscillator(kappas, cutoff, margin, omega, output, fmt):
    """Residuals of the su(1,1) oscillator identities"""
    parameters = {"kappas": list(kappas) or None, "cutoff": cutoff, "margin": margin, "omega": omega}
    _dispatch(Subcommand.OSCILLATOR, parameters, output, fmt)


@cli.command()
@click.option("--theta", type=float, default=None)
@click.option("--kappa", type=float, default=None)
@click.option("--cutoff", type=int, default=None)
@click.option("--margin", type=int, default=None)
@click.option("--algebra", type=click.Choice(["su11", "weyl", "both"]), default=None)
@output_options
@handle_errors
def lorentz(theta, kappa, cutoff, margin, algebra, output, fmt):
    """Boost matrix checks and internal-symmetry residuals"""
    parameters = {"theta": theta, "kappa": kappa, "cutoff": cutoff, "margin": margin, "algebra": algebra}
    _dispatch(Subcommand.LORENTZ, parameters, output, fmt)


@cli.command()
@click.option("--variant", type=click.Choice(["linear", "su11"]), default=None)
@click.option("--alpha", default=None, help="Glauber amplitude as re,im")
@click.option("--eta", default=None, help="Barut-Girardello amplitude as re,im")
@click.option("--omega", type=float, default=None)
@click.option("--omega0", type=float, default=None)
@click.option("--coupling", type=float, default=None)
@click.option("--cutoff", type=int, default=None)
@click.option("--t-max", "t_max", type=float, default=None)
@click.option("--t-steps", "t_steps", type=int, default=None)
@click.option("--compare", type=click.Choice(["exact", "closed", "both"]), default=None)
@output_options
@handle_errors
def jc(variant, alpha, eta, omega, omega0, coupling, cutoff, t_max, t_steps, compare, output, fmt):
    """Atomic inversion <S_z(t)>, exact and closed form"""
    parameters = {
        "variant": variant,
        "alpha": alpha,
        "eta": eta,
        "omega": omega,
        "omega0": omega0,
        "coupling": coupling,
        "cutoff": cutoff,
        "t_max": t_max,
        "t_steps": t_steps,
        "compare": compare,
    }
    _dispatch(Subcommand.JC, parameters, output, fmt)


@cli.command()
@click.option("--module", "modules", multiple=True, help="Restrict to a module, repeatable")
@click.option("--workers", type=int, default=None, help="Worker threads (default from BOSONALG_THREADS)")
@output_options
@handle_errors
def verify(modules, workers, output, fmt):
    """Run the invariant suite; exit 0 iff every check passes"""
    _dispatch(Subcommand.VERIFY, {"modules": list(modules) or None, "workers": workers}, output, fmt)


@cli.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@handle_errors
def run(config_path):
    """Run a subcommand described by a YAML or JSON file"""
    status = execute(load_run_config(config_path))
    if status:
        sys.exit(status)


if __name__ == "__main__":
    cli()
