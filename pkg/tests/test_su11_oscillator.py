"""
su(1,1) Oscillator Tests
Schwinger generators, Heisenberg pairs, inverse Holstein-Primakoff and the generalized bracket
"""
import numpy as np
import numpy.testing as npt
import pytest

from src.errors import InvalidCutoffError, InvalidParameterError
from src.fock import TOLERANCES, identity, interior, interior_residual, is_hermitian, make_ladder, make_su11_hp
from src.oscillator import (
    ObservableSource,
    generalized_bracket_check,
    heisenberg_residuals,
    inverse_hp_ladder,
    oscillator_pair,
    schwinger_casimir,
    schwinger_generators,
    schwinger_parity_spectra,
    schwinger_residuals,
    su11_observables_linear,
)


@pytest.fixture(scope="module")
def schwinger40():
    """Schwinger generators at cutoff 40"""
    return schwinger_generators(40)


class TestOscillatorPair:
    """Tests for the canonical pair"""

    def test_hermitian(self):
        """Test q and p are Hermitian"""
        pair = oscillator_pair(30)
        assert is_hermitian(pair.q, tol=1e-12)
        assert is_hermitian(pair.p, tol=1e-12)

    def test_canonical_commutator(self):
        """Test [q, p] = i on the interior"""
        assert oscillator_pair(30).canonical_residual() < TOLERANCES.product


class TestSchwinger:
    """Tests for the single-boson su(1,1) realization"""

    @pytest.mark.parametrize("cutoff", [20, 40, 80])
    def test_relations(self, cutoff):
        """Test the three su(1,1) relations and the Casimir -3/16"""
        residuals = schwinger_residuals(schwinger_generators(cutoff), margin=4)
        assert set(residuals) == {"k1_k2", "k3_k1", "k2_k3", "casimir"}
        assert max(residuals.values()) < TOLERANCES.product

    def test_k1_k2_example(self, schwinger40):
        """Test [K1, K2] + iK3 vanishes on the interior"""
        s = schwinger40
        residual = interior_residual(s.k_one @ s.k_two - s.k_two @ s.k_one + 1j * s.k_three, 4)
        assert residual < 1e-10

    def test_casimir_value(self, schwinger40):
        """Test K3^2 - K1^2 - K2^2 = -3/16"""
        block = interior(schwinger_casimir(schwinger40), 4)
        npt.assert_allclose(block, -3.0 / 16.0 * np.eye(36), atol=1e-10)

    def test_k_three_diagonal(self, schwinger40):
        """Test K3 = (n + 1/2)/2"""
        npt.assert_allclose(schwinger40.k_three.diagonal()[:3].real, [0.25, 0.75, 1.25], atol=1e-14)

    def test_raising_is_quadratic(self, schwinger40):
        """Test K+ = -a^dag^2 / 2"""
        _, a_dag, _ = make_ladder(40)
        npt.assert_allclose(schwinger40.k_plus.entries, -(a_dag @ a_dag).entries / 2, atol=1e-12)
        npt.assert_allclose(schwinger40.k_minus.entries, schwinger40.k_plus.adjoint().entries, atol=1e-12)

    def test_parity_sectors(self, schwinger40):
        """Test even states carry n'+1/4 and odd states n'+3/4"""
        even, odd = schwinger_parity_spectra(schwinger40)
        npt.assert_allclose(even, np.arange(even.shape[0]) + 0.25, atol=1e-12)
        npt.assert_allclose(odd, np.arange(odd.shape[0]) + 0.75, atol=1e-12)

    def test_small_cutoff(self):
        """Test cutoffs below 6 are rejected"""
        with pytest.raises(InvalidCutoffError):
            schwinger_generators(5)


class TestLinearObservables:
    """Tests for Q = (K+ + K-)/sqrt2, P = i(K+ - K-)/sqrt2, H = K3"""

    @pytest.mark.parametrize("kappa", [0.5, 1, 1.5])
    def test_heisenberg_pair(self, kappa):
        """Test [H,Q] = -iP, [H,P] = iQ, [Q,P] = 2iK3 and the energy identity"""
        g = make_su11_hp(kappa, 50)
        residuals = heisenberg_residuals(su11_observables_linear(g), g, margin=4)
        assert residuals["h_q"] < 1e-10
        assert residuals["h_p"] < 1e-10
        assert residuals["q_p"] < 1e-10
        assert residuals["energy"] < 1e-9

    def test_hermitian_observables(self):
        """Test Q, P and H are Hermitian"""
        obs = su11_observables_linear(make_su11_hp(1.5, 20))
        assert obs.source is ObservableSource.LINEAR_IN_K
        for op in (obs.q, obs.p, obs.h):
            assert is_hermitian(op)

    def test_oscillator_spectrum(self):
        """Test H = K3 reproduces n + 1/2 at kappa = 1/2"""
        obs = su11_observables_linear(make_su11_hp(0.5, 25))
        npt.assert_array_equal(obs.h.entries, np.diag(np.arange(25) + 0.5))


class TestInverseHolsteinPrimakoff:
    """Tests for a = (K3 + kappa)^(-1/2) K-"""

    def test_canonical_pair(self):
        """Test [Q, P] = i at kappa = 3/2"""
        result = inverse_hp_ladder(make_su11_hp(1.5, 50))
        assert result.pair.canonical_residual(margin=4) < 1e-10

    def test_hamiltonian_shift(self):
        """Test H = K3 - kappa + 1/2"""
        g = make_su11_hp(1.5, 50)
        result = inverse_hp_ladder(g)
        assert interior_residual(result.h - (g.k_three - 1.0 * identity(50)), 4) < 1e-10

    def test_recovers_plain_ladder(self):
        """Test the inverse map returns the ordinary lowering operator at kappa = 1/2"""
        a, _, _ = make_ladder(30)
        result = inverse_hp_ladder(make_su11_hp(0.5, 30))
        npt.assert_allclose(interior(result.pair.a, 2), interior(a, 2), atol=1e-12)

    def test_observables_tag(self):
        """Test the observables carry the inverse-hp source"""
        obs = inverse_hp_ladder(make_su11_hp(2, 20)).observables()
        assert obs.source is ObservableSource.INVERSE_HP
        assert obs.kappa == 2.0


class TestGeneralizedBracket:
    """Tests for [q, p] = i(H/omega + kappa - 1/2)"""

    @pytest.mark.parametrize("kappa,omega", [(0.5, 1.0), (2, 3.0), (0.25, 0.7)])
    def test_residual(self, kappa, omega):
        """Test the bracket identity on the interior"""
        assert generalized_bracket_check(make_su11_hp(kappa, 50), omega) < 1e-10

    def test_frequency_independent(self):
        """Test H/omega cancels the frequency"""
        g = make_su11_hp(1, 40)
        assert generalized_bracket_check(g, 0.5) == pytest.approx(generalized_bracket_check(g, 7.0), abs=1e-12)

    @pytest.mark.parametrize("omega", [0.0, -1.0])
    def test_rejects_non_positive_frequency(self, omega):
        """Test omega <= 0 is rejected"""
        with pytest.raises(InvalidParameterError):
            generalized_bracket_check(make_su11_hp(0.5, 10), omega)
