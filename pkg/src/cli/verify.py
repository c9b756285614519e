"""
Invariant Suite
Pinned-size checks of every algebraic, statistical, covariance and dynamical invariant
"""
import functools
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.stats import binom, multinomial

from src.errors import InvalidParameterError
from src.fock.core import ccr_trace_defect, evolve_unitary, identity, make_ladder, span_residual
from src.fock.su11 import casimir_residual, make_su11_hp, relation_residuals
from src.jaynes_cummings.dynamics import (
    CollapseConfig,
    closed_form_series,
    collapse_time,
    evolve_state,
    excitation_number,
    sz_closed_bs_bg,
    sz_closed_bs_glauber,
    sz_closed_linear_bg,
    sz_closed_linear_glauber,
    sz_exact,
    sz_series_bs_bg,
)
from src.jaynes_cummings.model import JCModel, Variant, build_hamiltonian, dressed_spectrum, rabi_period
from src.jaynes_cummings.states import (
    AtomFieldState,
    AtomicLevel,
    barut_girardello_state,
    glauber_state,
    product_state,
)
from src.lorentz.covariance import (
    SymmetryProbeConfig,
    boost_matrix,
    boost_modes,
    conjugated_probe,
    exp_boost,
    indefinite_norm,
    internal_symmetry_residual,
    polarization_pb_residuals,
    random_hermitian_probe,
    su11_fundamental,
)
from src.oscillator.su11_oscillator import (
    generalized_bracket_check,
    heisenberg_residuals,
    inverse_hp_ladder,
    schwinger_generators,
    schwinger_parity_spectra,
    schwinger_residuals,
    su11_observables_linear,
)
from src.settings import get_settings
from src.statistics.coproduct import (
    Algebra,
    closed_form_distribution,
    coproduct_state,
    dist_su11,
    dist_weyl,
    distribution_from_state,
    marginal,
)

logger = logging.getLogger(__name__)


@dataclass
class VerifyConfig:
    """Pinned sizes for the invariant suite"""
    kappas: Tuple[float, ...] = (0.25, 0.5, 1.0, 1.5)
    algebra_cutoff: int = 50
    schwinger_cutoffs: Tuple[int, ...] = (20, 40, 80)
    max_particles: int = 6
    max_modes: int = 4
    theta: float = 0.5
    symmetry_cutoff: int = 80
    symmetry_margin: int = 25
    bare_margins: Tuple[int, ...] = (10, 15, 20, 25, 30, 40)
    jc_cutoff: int = 120
    grid_points: int = 200
    mean_photons: float = 9.0
    seed: int = 7
    max_workers: Optional[int] = None  # falls back to BOSONALG_THREADS


@dataclass
class CheckResult:
    """One invariant: value compared against a bound"""
    name: str
    module: str
    value: float
    bound: float
    relation: str = "<"   # "<", "<=" or ">"
    detail: str = ""

    @property
    def passed(self) -> bool:
        if math.isnan(self.value):
            return False
        if self.relation == ">":
            return self.value > self.bound
        if self.relation == "<=":
            return self.value <= self.bound
        return self.value < self.bound


@dataclass
class Check:
    name: str
    module: str
    evaluate: Callable[[], float]
    bound: float
    relation: str = "<"


@dataclass
class SuiteReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "check": [r.name for r in self.results],
                "module": [r.module for r in self.results],
                "value": [r.value for r in self.results],
                "relation": [r.relation for r in self.results],
                "bound": [r.bound for r in self.results],
                "passed": [r.passed for r in self.results],
            }
        )


def _max(values) -> float:
    return float(max(values))


class InvariantSuite:
    """Runs every module invariant and collects pass/fail results in a fixed order"""

    MODULES = ("fock-core", "coproduct-stats", "su11-oscillator", "lorentz", "jaynes-cummings")

    def __init__(self, config: Optional[VerifyConfig] = None):
        self.config = config or VerifyConfig()

    # fock-core

    def _fock_checks(self) -> List[Check]:
        cfg = self.config
        n = cfg.algebra_cutoff

        def relations():
            return _max(
                max(relation_residuals(make_su11_hp(k, n), margin=2).values()) for k in cfg.kappas
            )

        def casimirs():
            return _max(casimir_residual(make_su11_hp(k, n), margin=2) for k in cfg.kappas)

        def unitarity():
            g = make_su11_hp(0.5, n)
            hamiltonian = g.k_three + 0.3 * g.k_one
            u = evolve_unitary(hamiltonian, 1.7)
            return float(np.max(np.abs((u.adjoint() @ u - identity(n)).entries)))

        def adjoint_exact():
            return _max(
                np.max(np.abs(make_su11_hp(k, n).k_plus.adjoint().entries - make_su11_hp(k, n).k_minus.entries))
                for k in cfg.kappas
            )

        def scale_invariance():
            a, a_dag, number = make_ladder(40)
            basis = [identity(40), a, a_dag, number]
            x = number @ number
            return abs(span_residual(3.7 * x, basis, 10) - span_residual(x, basis, 10))

        def trace_defect():
            return _max(abs(ccr_trace_defect(c) + c) for c in (2, 10, n))

        return [
            Check("su11 commutation relations", "fock-core", relations, 1e-10),
            Check("casimir equals kappa(kappa-1)", "fock-core", casimirs, 1e-10),
            Check("evolve_unitary is unitary", "fock-core", unitarity, 1e-9),
            Check("K- is the exact adjoint of K+", "fock-core", adjoint_exact, 0.0, "<="),
            Check("span residual is scale invariant", "fock-core", scale_invariance, 1e-12),
            Check("tr[a, a^dag] - tr 1 equals -N", "fock-core", trace_defect, 1e-12),
        ]

    # coproduct-stats

    def _statistics_checks(self) -> List[Check]:
        cfg = self.config
        grid = [
            (n, m, algebra)
            for n in range(cfg.max_particles + 1)
            for m in range(2, cfg.max_modes + 1)
            for algebra in (Algebra.WEYL, Algebra.SU11)
        ]

        def oracle():
            worst = 0.0
            for n, m, algebra in grid:
                brute = distribution_from_state(coproduct_state(n, m, algebra))
                closed = closed_form_distribution(n, m, algebra)
                worst = max(worst, float(np.max(np.abs(brute.values() - closed.values()))))
            return worst

        def uniformity():
            return _max(
                dist_su11(n, m).spread()
                for n in range(cfg.max_particles + 1)
                for m in range(2, cfg.max_modes + 1)
            )

        def multinomial_law():
            worst = 0.0
            for n in range(cfg.max_particles + 1):
                for m in range(2, cfg.max_modes + 1):
                    dist = dist_weyl(n, m)
                    for c, p in dist.probs.items():
                        worst = max(worst, abs(p - multinomial.pmf(c.parts, n, [1.0 / m] * m)))
            return worst

        def exchangeability():
            worst = 0.0
            for dist in (dist_weyl(5, 3), dist_su11(5, 3)):
                for c, p in dist.probs.items():
                    for perm in itertools.permutations(c.parts):
                        worst = max(worst, abs(dist.probability(perm) - p))
            return worst

        def marginals():
            n = cfg.max_particles
            weyl = max(
                float(np.max(np.abs(marginal(dist_weyl(n, m), 0) - binom.pmf(np.arange(n + 1), n, 1.0 / m))))
                for m in range(2, cfg.max_modes + 1)
            )
            su11 = float(np.max(np.abs(marginal(dist_su11(n, 2), 0) - 1.0 / (n + 1))))
            return max(weyl, su11)

        return [
            Check("closed forms match the coproduct oracle", "coproduct-stats", oracle, 1e-10),
            Check("su11 distribution is uniform", "coproduct-stats", uniformity, 1e-14),
            Check("weyl distribution is multinomial", "coproduct-stats", multinomial_law, 1e-12),
            Check("distributions are exchangeable", "coproduct-stats", exchangeability, 1e-15, "<="),
            Check("one-mode marginals", "coproduct-stats", marginals, 1e-12),
        ]

    # su11-oscillator

    def _oscillator_checks(self) -> List[Check]:
        cfg = self.config
        n = cfg.algebra_cutoff
        heisenberg_kappas = (0.5, 1.0, 1.5)

        def schwinger():
            return _max(max(schwinger_residuals(schwinger_generators(c)).values()) for c in cfg.schwinger_cutoffs)

        def parity():
            even, odd = schwinger_parity_spectra(schwinger_generators(40))
            return max(
                float(np.max(np.abs(even - (np.arange(even.size) + 0.25)))),
                float(np.max(np.abs(odd - (np.arange(odd.size) + 0.75)))),
            )

        def oscillator_spectrum():
            obs = su11_observables_linear(make_su11_hp(0.5, n))
            return float(np.max(np.abs(obs.h.diagonal() - (np.arange(n) + 0.5))))

        def heisenberg():
            worst = 0.0
            for k in heisenberg_kappas:
                g = make_su11_hp(k, n)
                worst = max(worst, max(heisenberg_residuals(su11_observables_linear(g), g).values()))
            return worst

        def inverse_hp():
            return _max(
                inverse_hp_ladder(make_su11_hp(k, n)).pair.canonical_residual(margin=4) for k in cfg.kappas
            )

        def bracket():
            return _max(generalized_bracket_check(make_su11_hp(k, n), omega) for k in cfg.kappas for omega in (1.0, 3.0))

        return [
            Check("Schwinger relations and casimir -3/16", "su11-oscillator", schwinger, 1e-10),
            Check("Schwinger parity sectors 1/4 and 3/4", "su11-oscillator", parity, 1e-12),
            Check("K3 spectrum is n + 1/2 at kappa 1/2", "su11-oscillator", oscillator_spectrum, 1e-12),
            Check("Heisenberg pair and (P^2+Q^2)/2", "su11-oscillator", heisenberg, 1e-9),
            Check("inverse HP gives [Q,P] = i", "su11-oscillator", inverse_hp, 1e-10),
            Check("generalized bracket [q,p] = iK3", "su11-oscillator", bracket, 1e-10),
        ]

    # lorentz

    def _lorentz_checks(self) -> List[Check]:
        cfg = self.config
        thetas = np.linspace(0.0, 3.0, 20)
        probe_config = SymmetryProbeConfig(margin=cfg.symmetry_margin)

        def exp_map():
            return _max(
                np.max(np.abs(exp_boost(t) - boost_matrix(math.cosh(t / 2)).entries)) for t in thetas
            )

        def group_law():
            pairs = itertools.combinations(thetas[::4], 2)
            return _max(
                np.max(np.abs(boost_matrix(math.cosh((a + b) / 2)).entries - exp_boost(a) @ exp_boost(b)))
                for a, b in pairs
            )

        def boost_properties():
            m = boost_matrix(2.0)
            return max(abs(m.determinant() - 1.0), m.hermiticity_residual(), m.orthogonality_residual())

        def non_unitary():
            return boost_matrix(2.0).unitarity_defect()

        def fundamental():
            return max(su11_fundamental().relation_residuals().values())

        def modes():
            vec = (0.3 + 0.4j, -1.1 + 0.2j)
            return _max(
                abs(indefinite_norm(boost_modes(g, vec)) - indefinite_norm(vec)) for g in (1.0, 1.5, 2.0, 3.0)
            )

        def su11_symmetry():
            return internal_symmetry_residual(cfg.theta, "su11", 0.5, cfg.symmetry_cutoff, config=probe_config)

        def weyl_symmetry():
            return min(
                internal_symmetry_residual(cfg.theta, "weyl", 0.5, cfg.symmetry_cutoff, margin, config=probe_config)
                for margin in (10, cfg.symmetry_margin)
            )

        def bare_cutoff():
            bare = SymmetryProbeConfig(margin=cfg.symmetry_margin, pad=0.0, extra=0)
            return internal_symmetry_residual(
                cfg.theta, "su11", 0.5, cfg.symmetry_cutoff, config=bare
            ) - internal_symmetry_residual(cfg.theta, "su11", 0.5, cfg.symmetry_cutoff, config=probe_config)

        def bare_margin_decay():
            bare = SymmetryProbeConfig(pad=0.0, extra=0)
            residuals = [
                internal_symmetry_residual(cfg.theta, "su11", 0.5, cfg.symmetry_cutoff, margin, config=bare)
                for margin in cfg.bare_margins
            ]
            return max(later - earlier for earlier, later in zip(residuals, residuals[1:]))

        def hermiticity():
            worst = 0.0
            for algebra in ("su11", "weyl"):
                x = conjugated_probe(cfg.theta, algebra, 0.5, cfg.symmetry_cutoff, config=probe_config).entries
                worst = max(worst, float(np.max(np.abs(x - x.conj().T))))
            return worst

        def random_su11():
            rng = np.random.default_rng(cfg.seed)
            return _max(
                internal_symmetry_residual(
                    cfg.theta, "su11", 0.5, cfg.symmetry_cutoff, probe=random_hermitian_probe(rng), config=probe_config
                )
                for _ in range(3)
            )

        def brackets():
            numeric = max(polarization_pb_residuals(2.0, 0.7, 1e-4))
            exact = max(polarization_pb_residuals(2.0, 0.7, None))
            return max(numeric, exact)

        return [
            Check("exp map reproduces the boost matrix", "lorentz", exp_map, 1e-12),
            Check("one-parameter group law", "lorentz", group_law, 1e-11),
            Check("boost is Hermitian, orthogonal, det 1", "lorentz", boost_properties, 1e-12),
            Check("boost is not unitary at gamma 2", "lorentz", non_unitary, 0.1, ">"),
            Check("fundamental su(1,1) relations", "lorentz", fundamental, 1e-14),
            Check("boost preserves |a1|^2 - |a2|^2", "lorentz", modes, 1e-12),
            Check("su11 is an internal symmetry", "lorentz", su11_symmetry, 1e-6),
            Check("h(1) is not an internal symmetry", "lorentz", weyl_symmetry, 1e-2, ">"),
            Check("bare cutoff residual exceeds padded", "lorentz", bare_cutoff, 0.0, ">"),
            Check("bare su11 residual shrinks as the margin grows", "lorentz", bare_margin_decay, 0.0),
            Check("conjugation keeps probes Hermitian", "lorentz", hermiticity, 1e-10),
            Check("random su11 probes stay in the algebra", "lorentz", random_su11, 1e-6),
            Check("polarization brackets close on so(1,2)", "lorentz", brackets, 1e-6),
        ]

    # jaynes-cummings

    def _jc_checks(self) -> List[Check]:
        cfg = self.config
        n = cfg.jc_cutoff
        times = np.linspace(0.0, 10.0, cfg.grid_points)
        alpha = math.sqrt(cfg.mean_photons)

        def spectrum():
            worst = 0.0
            for variant in Variant:
                model = JCModel(variant=variant, omega=1.0, omega0=1.3, coupling=0.7, cutoff=n)
                numeric = np.linalg.eigvalsh(build_hamiltonian(model).entries)
                worst = max(worst, float(np.max(np.abs(numeric - dressed_spectrum(model)))))
            return worst

        def comparison(variant: Variant, glauber: bool, parameter: complex, closed, cutoff: int) -> float:
            model = JCModel(variant=variant, coupling=1.0, cutoff=cutoff)
            state = glauber_state(parameter, cutoff) if glauber else barut_girardello_state(parameter, cutoff)
            exact = sz_exact(model, product_state(state, AtomicLevel.G), times)
            reference = closed_form_series(closed, parameter, 1.0, times)
            return float(np.max(np.abs(exact.values - reference.values)))

        def linear_glauber():
            return comparison(Variant.LINEAR, True, alpha, sz_closed_linear_glauber, n)

        def su11_glauber():
            return comparison(Variant.SU11, True, alpha, sz_closed_bs_glauber, n)

        def su11_bg():
            return comparison(Variant.SU11, False, 2.0, sz_closed_bs_bg, 100)

        def linear_bg():
            return comparison(Variant.LINEAR, False, 2.0, sz_closed_linear_bg, 100)

        def bessel_vs_series():
            return _max(abs(sz_closed_bs_bg(2.0, 1.0, t) - sz_series_bs_bg(2.0, 1.0, t)) for t in times)

        def periodicity():
            model = JCModel(variant=Variant.SU11, coupling=1.0, cutoff=n)
            state = product_state(glauber_state(alpha, n), AtomicLevel.G)
            grid = np.linspace(0.0, 2.0, 50)
            first = sz_exact(model, state, grid).values
            shifted = sz_exact(model, state, grid + math.pi).values
            return float(np.max(np.abs(first - shifted)))

        def conservation():
            worst = 0.0
            for variant in Variant:
                model = JCModel(variant=variant, omega=1.0, omega0=0.8, coupling=0.9, cutoff=n)
                state = product_state(glauber_state(alpha, n), AtomicLevel.E)
                start = excitation_number(state)
                for t in (0.5, 3.0, 10.0):
                    evolved = evolve_state(model, state, t)
                    worst = max(worst, abs(excitation_number(evolved) - start), abs(np.linalg.norm(evolved.amplitudes) - 1.0))
            return worst

        def propagator():
            model = JCModel(variant=Variant.SU11, omega=1.0, omega0=0.6, coupling=0.8, cutoff=8)
            rng = np.random.default_rng(cfg.seed)
            vec = rng.standard_normal(16) + 1j * rng.standard_normal(16)
            state = AtomFieldState(vec / np.linalg.norm(vec))
            unitary = evolve_unitary(build_hamiltonian(model), 1.3)
            return float(np.max(np.abs(evolve_state(model, state, 1.3).amplitudes - unitary.entries @ state.amplitudes)))

        @functools.lru_cache(maxsize=None)
        def collapse_contrast():
            nbar = cfg.mean_photons
            linear = JCModel(variant=Variant.LINEAR, coupling=1.0, cutoff=n)
            su11 = JCModel(variant=Variant.SU11, coupling=1.0, cutoff=n)
            slow = closed_form_series(sz_closed_linear_glauber, math.sqrt(nbar), 1.0, np.linspace(0.0, 6.0, 3001))
            fast = closed_form_series(sz_closed_bs_glauber, math.sqrt(nbar), 1.0, np.linspace(0.0, 1.5, 3001))
            t_linear = collapse_time(slow, rabi_period(linear, nbar), CollapseConfig())
            t_su11 = collapse_time(fast, rabi_period(su11, nbar), CollapseConfig())
            if t_linear is None or t_su11 is None:
                return float("nan")
            return t_su11 / t_linear * math.sqrt(nbar)

        return [
            Check("numerical spectrum matches dressed spectrum", "jaynes-cummings", spectrum, 1e-9),
            Check("linear Glauber closed form", "jaynes-cummings", linear_glauber, 1e-8),
            Check("su11 Glauber closed form", "jaynes-cummings", su11_glauber, 1e-8),
            Check("su11 Barut-Girardello closed form", "jaynes-cummings", su11_bg, 1e-8),
            Check("linear Barut-Girardello series", "jaynes-cummings", linear_bg, 1e-8),
            Check("Bessel and series paths agree", "jaynes-cummings", bessel_vs_series, 1e-11),
            Check("su11 inversion has period pi/lambda0", "jaynes-cummings", periodicity, 1e-9),
            Check("<n + S_z> and norm are conserved", "jaynes-cummings", conservation, 1e-9),
            Check("block propagation matches exp(-iHt)", "jaynes-cummings", propagator, 1e-10),
            Check("collapse ratio x sqrt(nbar) above 0.45", "jaynes-cummings", collapse_contrast, 0.45, ">"),
            Check("collapse ratio x sqrt(nbar) below 0.75", "jaynes-cummings", collapse_contrast, 0.75),
        ]

    def checks(self, modules: Optional[Sequence[str]] = None) -> List[Check]:
        groups: Dict[str, Callable[[], List[Check]]] = {
            "fock-core": self._fock_checks,
            "coproduct-stats": self._statistics_checks,
            "su11-oscillator": self._oscillator_checks,
            "lorentz": self._lorentz_checks,
            "jaynes-cummings": self._jc_checks,
        }
        selected = list(modules) if modules else list(self.MODULES)
        unknown = [name for name in selected if name not in groups]
        if unknown:
            raise InvalidParameterError(f"unknown modules {unknown}; choose from {list(self.MODULES)}")
        result: List[Check] = []
        for name in self.MODULES:
            if name in selected:
                result.extend(groups[name]())
        return result

    def _evaluate(self, check: Check) -> CheckResult:
        try:
            value = float(check.evaluate())
            detail = ""
        except Exception as e:
            logger.error(f"Check '{check.name}' raised {type(e).__name__}: {e}")
            value = float("nan")
            detail = f"{type(e).__name__}: {e}"
        result = CheckResult(check.name, check.module, value, check.bound, check.relation, detail)
        logger.debug(f"{check.module} / {check.name}: {value:.3e} ({'pass' if result.passed else 'FAIL'})")
        return result

    def run(self, modules: Optional[Sequence[str]] = None) -> SuiteReport:
        """Evaluate checks on a worker pool; results keep declaration order"""
        checks = self.checks(modules)
        workers = self.config.max_workers or get_settings().worker_count()
        logger.info(f"Running {len(checks)} invariant checks on {workers} worker(s)")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(self._evaluate, checks))
        report = SuiteReport(results=results)
        logger.info(f"Invariant suite: {len(results) - len(report.failures())}/{len(results)} passed")
        return report
