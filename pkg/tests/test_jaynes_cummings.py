"""
Jaynes-Cummings Tests
Spectra, coherent states, exact inversion dynamics, closed forms and collapse times
"""
import math

import numpy as np
import numpy.testing as npt
import pytest
from scipy.special import iv

from src.errors import (
    CutoffMismatchError,
    InconsistencyError,
    InvalidCutoffError,
    InvalidParameterError,
    OverflowGuardError,
    TailMassGuardError,
    ValidationError,
)
from src.fock import apply, basis_state, evolve_unitary, make_su11_hp
from src.jaynes_cummings import (
    AtomFieldState,
    AtomicLevel,
    JCModel,
    SeriesLabel,
    TimeSeries,
    Variant,
    barut_girardello_state,
    bessel_i0,
    block_eigenvalues,
    build_hamiltonian,
    closed_form_series,
    collapse_time,
    dressed_spectrum,
    evolve_state,
    excitation_number,
    glauber_state,
    product_state,
    rabi_frequency,
    rabi_period,
    revival_period,
    series_S,
    series_s_with_bound,
    sz_closed_bs_bg,
    sz_closed_bs_glauber,
    sz_closed_linear_bg,
    sz_closed_linear_glauber,
    sz_exact,
    sz_series_bs_bg,
)

TIMES = np.linspace(0.0, 10.0, 201)


@pytest.fixture
def linear_model():
    """Resonant linear model at cutoff 120"""
    return JCModel(variant=Variant.LINEAR, omega=1.0, omega0=1.0, coupling=1.0, cutoff=120)


@pytest.fixture
def su11_model():
    """Resonant su(1,1) model at cutoff 120"""
    return JCModel(variant=Variant.SU11, omega=1.0, omega0=1.0, coupling=1.0, cutoff=120)


def random_state(rng, cutoff):
    z = rng.normal(size=2 * cutoff) + 1j * rng.normal(size=2 * cutoff)
    return AtomFieldState(z / np.linalg.norm(z))


def glauber_ground(alpha, cutoff):
    return product_state(glauber_state(alpha, cutoff), AtomicLevel.G)


def bg_ground(eta, cutoff):
    return product_state(barut_girardello_state(eta, cutoff), AtomicLevel.G)


class TestModel:
    """Tests for JCModel and its Hamiltonian"""

    def test_detuning(self):
        """Test detuning is omega - omega0"""
        assert JCModel(omega=1.5, omega0=1.0).detuning == pytest.approx(0.5)

    @pytest.mark.parametrize("omega,omega0", [(0.0, 1.0), (1.0, -1.0)])
    def test_rejects_non_positive_frequencies(self, omega, omega0):
        """Test omega, omega0 > 0"""
        with pytest.raises(InvalidParameterError):
            JCModel(omega=omega, omega0=omega0)

    def test_rejects_complex_coupling(self):
        """Test the coupling is a real c-number"""
        with pytest.raises(InvalidParameterError):
            JCModel(coupling=1 + 1j)

    def test_rejects_small_cutoff(self):
        """Test cutoff >= 2"""
        with pytest.raises(InvalidCutoffError):
            JCModel(cutoff=1)

    def test_coupling_elements(self):
        """Test <n-1,e|H|n,g> is lambda sqrt(n) or lambda0 n"""
        h = build_hamiltonian(JCModel(variant="linear", coupling=0.3, cutoff=6)).entries
        assert h[2 * 3 + 1, 2 * 4].real == pytest.approx(0.3 * 2.0)
        h = build_hamiltonian(JCModel(variant="su11", coupling=0.3, cutoff=6)).entries
        assert h[2 * 3 + 1, 2 * 4].real == pytest.approx(0.3 * 4.0)

    def test_resonant_rabi_frequency(self, linear_model, su11_model):
        """Test R_n = 2 lambda sqrt(n) and 2 lambda0 n at resonance"""
        assert float(rabi_frequency(linear_model, 4)) == pytest.approx(4.0)
        assert float(rabi_frequency(su11_model, 4)) == pytest.approx(8.0)

    def test_block_eigenvalues(self, linear_model):
        """Test E = omega n - omega/2 +- R/2"""
        low, high = block_eigenvalues(linear_model, 4)
        assert (low, high) == (pytest.approx(1.5), pytest.approx(5.5))

    def test_block_zero_rejected(self, linear_model):
        """Test n = 0 is the singlet, not a block"""
        with pytest.raises(InvalidParameterError):
            block_eigenvalues(linear_model, 0)

    @pytest.mark.parametrize("variant", list(Variant))
    @pytest.mark.parametrize("omega0", [1.0, 0.8])
    def test_spectrum_matches_diagonalization(self, variant, omega0):
        """Test the closed-form spectrum against eigvalsh of the full Hamiltonian"""
        model = JCModel(variant=variant, omega=1.0, omega0=omega0, coupling=0.7, cutoff=120)
        numeric = np.linalg.eigvalsh(build_hamiltonian(model).entries)
        npt.assert_allclose(dressed_spectrum(model), numeric, atol=1e-9)

    def test_rabi_period(self, linear_model, su11_model):
        """Test 2 pi / (2 g(nbar))"""
        assert rabi_period(linear_model, 9.0) == pytest.approx(math.pi / 3.0)
        assert rabi_period(su11_model, 9.0) == pytest.approx(math.pi / 9.0)
        with pytest.raises(InvalidParameterError):
            rabi_period(linear_model, 0.0)


class TestStates:
    """Tests for coherent states and atom-field products"""

    def test_glauber_mean_photons(self):
        """Test <n> = |alpha|^2"""
        state = glauber_ground(3.0, 120)
        assert state.mean_photons() == pytest.approx(9.0, abs=1e-9)
        assert state.inversion() == pytest.approx(-0.5)

    def test_glauber_phase(self):
        """Test amplitudes follow alpha^n / sqrt(n!) with complex alpha"""
        alpha = 1.2 * np.exp(0.4j)
        field = glauber_state(alpha, 40)
        n = np.arange(6)
        expected = np.exp(-abs(alpha) ** 2 / 2) * alpha ** n / np.sqrt([math.factorial(k) for k in n])
        npt.assert_allclose(field.amplitudes[:6], expected, atol=1e-12)

    @pytest.mark.parametrize("cutoff", [20, 28])
    def test_glauber_tail_guard(self, cutoff):
        """Test a cutoff too small for the coherent state trips the tail guard"""
        with pytest.raises(TailMassGuardError):
            glauber_state(3.0, cutoff)

    def test_barut_girardello_eigenstate(self):
        """Test K-|eta> = eta|eta> away from the edge"""
        eta = 1.5 - 0.5j
        field = barut_girardello_state(eta, 60)
        image = apply(make_su11_hp(0.5, 60).k_minus, field)
        npt.assert_allclose(image.amplitudes[:-1], eta * field.amplitudes[:-1], atol=1e-12)
        assert field.norm() == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("z", [0.0, 0.5, 4.0, 4.0 * np.exp(1.0j), 30.0, 3.0j])
    def test_bessel_i0(self, z):
        """Test the I0 series against scipy"""
        assert bessel_i0(z) == pytest.approx(complex(iv(0, z)), rel=1e-12, abs=1e-15)

    def test_bessel_overflow_guard(self):
        """Test arguments beyond the series limit are refused"""
        with pytest.raises(OverflowGuardError):
            bessel_i0(700.0)

    def test_product_state_index(self):
        """Test |n> x |s> sits at index 2n + s"""
        state = product_state(basis_state(2, 4), AtomicLevel.E)
        assert state.amplitudes[5] == 1.0
        assert state.inversion() == pytest.approx(0.5)
        assert state.mean_photons() == pytest.approx(2.0)

    def test_state_validation(self):
        """Test odd lengths and unnormalized vectors are rejected"""
        with pytest.raises(ValidationError):
            AtomFieldState(np.ones(3) / math.sqrt(3))
        with pytest.raises(InconsistencyError):
            AtomFieldState(np.ones(4))


class TestExactEvolution:
    """Tests for the per-block propagation"""

    @pytest.mark.parametrize("variant", list(Variant))
    def test_matches_full_exponential(self, variant):
        """Test block propagation against exp(-iHt) of the full matrix"""
        model = JCModel(variant=variant, omega=1.0, omega0=0.6, coupling=0.45, cutoff=8)
        initial = random_state(np.random.default_rng(3), 8)
        expected = evolve_unitary(build_hamiltonian(model), 1.3).entries @ initial.amplitudes
        npt.assert_allclose(evolve_state(model, initial, 1.3).amplitudes, expected, atol=1e-10)

    @pytest.mark.parametrize("variant", list(Variant))
    def test_conservation(self, variant):
        """Test norm and <n + S_z> are conserved"""
        model = JCModel(variant=variant, omega=1.0, omega0=1.3, coupling=0.8, cutoff=120)
        initial = glauber_ground(3.0, 120)
        for t in (0.7, 4.2, 9.9):
            evolved = evolve_state(model, initial, t)
            assert np.linalg.norm(evolved.amplitudes) == pytest.approx(1.0, abs=1e-12)
            assert excitation_number(evolved) == pytest.approx(excitation_number(initial), abs=1e-9)

    def test_cutoff_mismatch(self, linear_model):
        """Test model and state cutoffs must agree"""
        with pytest.raises(CutoffMismatchError):
            sz_exact(linear_model, glauber_ground(1.0, 40), TIMES)

    def test_inversion_bounded(self, su11_model):
        """Test |<S_z>| <= 1/2"""
        series = sz_exact(su11_model, bg_ground(2.0, 120), TIMES)
        assert series.label is SeriesLabel.EXACT
        assert np.max(np.abs(series.values)) <= 0.5 + 1e-12


class TestClosedForms:
    """Tests for the series and closed forms of <S_z(t)>"""

    def test_linear_glauber(self, linear_model):
        """Test the linear Glauber series against exact evolution"""
        exact = sz_exact(linear_model, glauber_ground(3.0, 120), TIMES)
        closed = closed_form_series(sz_closed_linear_glauber, 3.0, 1.0, TIMES)
        assert closed.label is SeriesLabel.CLOSED_FORM
        npt.assert_allclose(closed.values, exact.values, atol=1e-8)

    def test_su11_glauber(self, su11_model):
        """Test exp(|a|^2 (cos 2lt - 1)) cos(|a|^2 sin 2lt) against exact evolution"""
        exact = sz_exact(su11_model, glauber_ground(3.0, 120), TIMES)
        closed = closed_form_series(sz_closed_bs_glauber, 3.0, 1.0, TIMES)
        npt.assert_allclose(closed.values, exact.values, atol=1e-8)

    def test_su11_barut_girardello(self, su11_model):
        """Test the I0 ratio against exact evolution"""
        exact = sz_exact(su11_model, bg_ground(2.0, 120), TIMES)
        closed = closed_form_series(sz_closed_bs_bg, 2.0, 1.0, TIMES)
        npt.assert_allclose(closed.values, exact.values, atol=1e-8)

    def test_linear_barut_girardello(self, linear_model):
        """Test the S_{1/2,2} series against exact evolution"""
        exact = sz_exact(linear_model, bg_ground(2.0, 120), TIMES)
        closed = closed_form_series(sz_closed_linear_bg, 2.0, 1.0, TIMES)
        npt.assert_allclose(closed.values, exact.values, atol=1e-8)

    @pytest.mark.parametrize("t", [0.0, 0.37, 1.9, 5.5])
    def test_bessel_form_equals_series(self, t):
        """Test Re I0(2|eta| e^{ilt}) / I0 equals the S_{1,2} series"""
        assert sz_closed_bs_bg(2.0 + 1.0j, 0.8, t) == pytest.approx(sz_series_bs_bg(2.0 + 1.0j, 0.8, t), abs=1e-12)

    @pytest.mark.parametrize("t", [0.0, 0.2, 1.3, 2.9])
    def test_s11_identity(self, t):
        """Test S_{1,1} = exp(x cos 2lt) cos(x sin 2lt)"""
        x = 9.0
        expected = math.exp(x * math.cos(2 * t)) * math.cos(x * math.sin(2 * t))
        assert series_S(1.0, 1.0, 3.0, 1.0, t) == pytest.approx(expected, rel=1e-10, abs=1e-10)

    def test_series_reports_tail_bound(self):
        """Test the achieved tail bound is below the tolerance"""
        result = series_s_with_bound(0.5, 1.0, 3.0, 1.0, 2.0, tol=1e-12)
        assert result.tail_bound < 1e-12
        assert result.terms > 9
        assert result.value == pytest.approx(series_S(0.5, 1.0, 3.0, 1.0, 2.0), abs=1e-10)

    def test_series_guards(self):
        """Test mu < 1 and huge arguments are refused"""
        with pytest.raises(InvalidParameterError):
            series_S(0.5, 0.5, 1.0, 1.0, 0.0)
        with pytest.raises(OverflowGuardError):
            series_S(1.0, 1.0, 30.0, 1.0, 0.0)

    def test_initial_value(self):
        """Test every closed form starts from -1/2"""
        for func, parameter in [
            (sz_closed_linear_glauber, 3.0),
            (sz_closed_bs_glauber, 3.0),
            (sz_closed_bs_bg, 2.0),
            (sz_closed_linear_bg, 2.0),
        ]:
            assert func(parameter, 1.0, 0.0) == pytest.approx(-0.5, abs=1e-12)


class TestRevivalAndCollapse:
    """Tests for su(1,1) periodicity and the collapse-time contrast"""

    def test_su11_periodicity(self, su11_model):
        """Test <S_z(t + pi/lambda0)> = <S_z(t)> at resonance"""
        initial = bg_ground(2.0, 120)
        base = sz_exact(su11_model, initial, TIMES)
        shifted = sz_exact(su11_model, initial, TIMES + math.pi)
        npt.assert_allclose(shifted.values, base.values, atol=1e-9)

    def test_revival_period(self, linear_model, su11_model):
        """Test pi/|lambda0| only for the resonant su(1,1) model"""
        assert revival_period(su11_model) == pytest.approx(math.pi)
        assert revival_period(JCModel(variant="su11", coupling=-2.0)) == pytest.approx(math.pi / 2)
        assert revival_period(linear_model) is None
        assert revival_period(JCModel(variant="su11", omega=1.0, omega0=0.9)) is None

    @staticmethod
    def collapse_ratio(alpha):
        nbar = abs(alpha) ** 2
        linear = JCModel(variant="linear", coupling=1.0, cutoff=120)
        su11 = JCModel(variant="su11", coupling=1.0, cutoff=120)
        initial = glauber_ground(alpha, 120)
        t_linear = collapse_time(sz_exact(linear, initial, np.linspace(0.0, 6.0, 3001)), rabi_period(linear, nbar))
        t_su11 = collapse_time(sz_exact(su11, initial, np.linspace(0.0, 1.5, 3001)), rabi_period(su11, nbar))
        return t_su11 / t_linear

    def test_collapse_shortened(self):
        """Test the su(1,1) collapse is faster by about 1/(2 sqrt(nbar))"""
        scaled = self.collapse_ratio(3.0) * 3.0
        assert 0.45 <= scaled <= 0.75

    def test_collapse_scaling(self):
        """Test ratio * sqrt(nbar) stays put between nbar = 9 and 25"""
        at_nine = self.collapse_ratio(3.0) * 3.0
        at_twenty_five = self.collapse_ratio(5.0) * 5.0
        assert 1 / 1.5 <= at_nine / at_twenty_five <= 1.5

    def test_no_collapse(self):
        """Test a flat series has no collapse"""
        series = TimeSeries(times=np.linspace(0, 1, 11), values=np.full(11, -0.5), label="exact")
        assert collapse_time(series, 0.2) is None
        with pytest.raises(InvalidParameterError):
            collapse_time(series, 0.0)


class TestTimeSeries:
    """Tests for the TimeSeries container"""

    def test_increasing_times(self):
        """Test times must be strictly increasing"""
        with pytest.raises(InvalidParameterError):
            TimeSeries(times=[0.0, 0.0], values=[0.1, 0.1], label="exact")

    def test_inversion_bound(self):
        """Test values beyond 1/2 are inconsistent"""
        with pytest.raises(InconsistencyError):
            TimeSeries(times=[0.0, 1.0], values=[0.2, 0.7], label="series")

    def test_to_frame(self):
        """Test the frame carries t and the label column"""
        frame = TimeSeries(times=[0.0, 1.0], values=[-0.5, 0.25], label="closed-form").to_frame()
        assert list(frame.columns) == ["t", "closed-form"]
