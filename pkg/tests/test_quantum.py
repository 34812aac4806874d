import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from complex_ds.quantum import (
    ATTACK,
    UNIFORM,
    WITHDRAW,
    AmplitudeState,
    BadWeights,
    CategoryWeights,
    HamiltonianParams,
    ModelConfig,
    ModelError,
    ModelWarning,
    NotHermitian,
    NotProjector,
    OutOfRange,
    ParamOutOfRange,
    ZeroBlockNorm,
    attack_amplitude,
    build_hamiltonian_block,
    build_initial_state,
    evolve,
    predict_alone,
    predict_ctd,
    project_category,
    redistribute_uncertain,
    total_probability,
    unitary_2x2,
)

from oracles import taylor_expm, uniform_attack_amplitude

LITERAL = ModelConfig()
UNIT = ModelConfig(scaling="unit_spectrum")
HALF_PI = math.pi / 2

hs = st.floats(min_value=-5, max_value=5, allow_nan=False)
ts = st.floats(min_value=0, max_value=math.pi, allow_nan=False)
scalings = st.sampled_from(["paper_literal", "unit_spectrum"])
probs = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def unit_vectors(draw):
    v = np.array([complex(draw(hs), draw(hs)), complex(draw(hs), draw(hs))])
    n = np.linalg.norm(v)
    if n < 1e-3:
        return UNIFORM
    return v / n


class TestStates:
    def test_uniform(self):
        state = build_initial_state(CategoryWeights(1 / 3, 1 / 3, 1 / 3))
        np.testing.assert_allclose(state.amplitudes, np.full(6, 1 / math.sqrt(6)), atol=1e-15)

    def test_narrow_face(self):
        state = build_initial_state(CategoryWeights(0.17, 0.83, 0.0))
        expected = [math.sqrt(0.085)] * 2 + [math.sqrt(0.415)] * 2 + [0, 0]
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)

    def test_d_alone_wide_face(self):
        state = build_initial_state(CategoryWeights(0.84, 0.16), "d_alone")
        assert state.amplitudes.shape == (4,)
        assert np.linalg.norm(state.block("G")) == pytest.approx(math.sqrt(0.84))
        assert np.linalg.norm(state.block("B")) == pytest.approx(math.sqrt(0.16))

    def test_d_alone_rejects_uncertain(self):
        with pytest.raises(BadWeights):
            build_initial_state(CategoryWeights(0.4, 0.4, 0.2), "d_alone")

    @pytest.mark.parametrize("w", [(0.5, 0.6, 0.0), (-0.1, 1.1, 0.0), (math.nan, 1.0, 0.0)])
    def test_bad_weights(self, w):
        with pytest.raises(BadWeights):
            CategoryWeights(*w)

    def test_state_must_be_normalised(self):
        with pytest.raises(ModelError):
            AmplitudeState(np.ones(6), "c_then_d")

    def test_project(self):
        state = build_initial_state(CategoryWeights(1 / 3, 1 / 3, 1 / 3))
        np.testing.assert_allclose(project_category(state, "G"), UNIFORM, atol=1e-15)
        state = build_initial_state(CategoryWeights(0.17, 0.83))
        np.testing.assert_allclose(project_category(state, "G"), UNIFORM, atol=1e-15)
        with pytest.raises(ZeroBlockNorm):
            project_category(state, "U")

    @given(st.lists(st.tuples(hs, hs), min_size=6, max_size=6), st.sampled_from("GBU"))
    def test_project_is_unit(self, parts, cat):
        amps = np.array([complex(a, b) for a, b in parts])
        if np.linalg.norm(amps[2 * "GBU".index(cat):][:2]) < 1e-6:
            return
        state = AmplitudeState(amps / np.linalg.norm(amps))
        psi = project_category(state, cat)
        assert np.vdot(psi, psi).real == pytest.approx(1.0, abs=1e-12)


class TestHamiltonian:
    def test_literal_h0(self):
        np.testing.assert_array_equal(build_hamiltonian_block(0.0, LITERAL), [[0, 1], [1, 0]])

    def test_literal_h1(self):
        np.testing.assert_allclose(build_hamiltonian_block(1.0, LITERAL), [[0.5, 0.5], [0.5, -0.5]])

    def test_unit_spectrum(self):
        hb = build_hamiltonian_block(1.0, UNIT)
        np.testing.assert_allclose(hb, np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-15)
        np.testing.assert_allclose(np.linalg.eigvalsh(hb), [-1, 1], atol=1e-12)

    @given(hs, scalings)
    def test_hermitian_traceless(self, h, scaling):
        hb = build_hamiltonian_block(h, ModelConfig(scaling=scaling))
        np.testing.assert_array_equal(hb, hb.conj().T)
        assert hb[0, 0] + hb[1, 1] == 0

    def test_range(self):
        with pytest.raises(ParamOutOfRange):
            build_hamiltonian_block(51.0, LITERAL)
        with pytest.raises(ParamOutOfRange):
            build_hamiltonian_block(math.inf, LITERAL)


class TestUnitary:
    def test_t0_identity(self):
        np.testing.assert_array_equal(unitary_2x2(build_hamiltonian_block(0.7), 0.0), np.eye(2))

    def test_h0_half_pi(self):
        u = unitary_2x2(build_hamiltonian_block(0.0), HALF_PI)
        np.testing.assert_allclose(u, -1j * np.array([[0, 1], [1, 0]]), atol=1e-15)

    def test_h1_literal_against_series(self):
        hb = build_hamiltonian_block(1.0, LITERAL)
        np.testing.assert_allclose(unitary_2x2(hb, HALF_PI), taylor_expm(hb, HALF_PI), rtol=0, atol=1e-10)

    @given(hs, ts, scalings)
    def test_closed_form_against_series(self, h, t, scaling):
        hb = build_hamiltonian_block(h, ModelConfig(scaling=scaling))
        np.testing.assert_allclose(unitary_2x2(hb, t), taylor_expm(hb, t), rtol=0, atol=1e-10)

    @given(hs, ts)
    def test_unitary(self, h, t):
        u = unitary_2x2(build_hamiltonian_block(h), t)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(2), rtol=0, atol=1e-10)

    def test_general_hermitian_fallback(self):
        hb = np.array([[0.7, 0.2 - 0.3j], [0.2 + 0.3j, -0.1]])
        np.testing.assert_allclose(unitary_2x2(hb, 1.3), taylor_expm(hb, 1.3), rtol=0, atol=1e-10)

    def test_traceless_complex_offdiagonal(self):
        hb = np.array([[0.4, 0.2 - 0.9j], [0.2 + 0.9j, -0.4]])
        np.testing.assert_allclose(unitary_2x2(hb, 2.0), taylor_expm(hb, 2.0), rtol=0, atol=1e-10)

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            unitary_2x2(np.array([[0, 1], [0, 0]]), 1.0)


class TestEvolveMeasure:
    def test_t0(self):
        psi = np.array([0.6, 0.8j])
        np.testing.assert_array_equal(evolve(psi, build_hamiltonian_block(2.0), 0.0), psi)

    def test_symmetric_fixed_point(self):
        out = evolve(UNIFORM, build_hamiltonian_block(0.0), HALF_PI)
        np.testing.assert_allclose(out, -1j * UNIFORM, atol=1e-15)
        assert abs(out[0]) ** 2 == pytest.approx(0.5)

    @given(unit_vectors(), hs, ts)
    def test_norm_preserved(self, psi, h, t):
        out = evolve(psi, build_hamiltonian_block(h), t)
        assert np.vdot(out, out).real == pytest.approx(1.0, abs=1e-10)

    def test_rejects_unnormalised(self):
        with pytest.raises(ModelError):
            evolve(np.array([1.0, 1.0]), build_hamiltonian_block(0.0), 1.0)

    def test_attack_projector(self):
        psi = np.array([0.6, 0.8j])
        np.testing.assert_array_equal(attack_amplitude(psi, ATTACK), [0.6, 0])
        np.testing.assert_array_equal(attack_amplitude(psi, np.eye(2)), psi)

    @given(unit_vectors(), st.sampled_from([ATTACK, WITHDRAW]))
    def test_projector_decomposition(self, psi, m):
        kept = attack_amplitude(psi, m)
        rest = attack_amplitude(psi, np.eye(2) - m)
        assert np.vdot(kept, kept).real + np.vdot(rest, rest).real == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("m", [np.array([[1, 1], [0, 0]]), np.diag([0.5, 0]), np.ones((3, 3))])
    def test_not_projector(self, m):
        with pytest.raises(NotProjector):
            attack_amplitude(UNIFORM, m)

    def test_redistribute(self):
        g, b = np.array([0.6, 0]), np.array([0.3, 0])
        g2, b2 = redistribute_uncertain(g, b, np.zeros(2))
        np.testing.assert_array_equal(g2, g)
        np.testing.assert_array_equal(b2, b)
        g2, _ = redistribute_uncertain(g, b, np.array([0.2, 0]))
        np.testing.assert_allclose(g2, [0.7, 0])


def composed_ctd(params, weights, config):
    """C-then-D prediction assembled from the public building blocks."""
    state = build_initial_state(weights, "c_then_d")
    phis = []
    for cat, h in zip("GBU", params.as_tuple()):
        try:
            psi = project_category(state, cat)
        except ZeroBlockNorm:
            psi = UNIFORM
        phis.append(attack_amplitude(evolve(psi, build_hamiltonian_block(h, config), config.t), ATTACK))
    g, b = redistribute_uncertain(*phis)
    return np.vdot(g, g).real, np.vdot(b, b).real


class TestPredictCtd:
    @given(hs, hs, hs, probs, ts, scalings)
    def test_fast_path_matches_composition(self, hg, hb, hu, pg, t, scaling):
        params = HamiltonianParams(hg, hb, hu)
        weights = CategoryWeights(pg, 1 - pg)
        config = ModelConfig(t=t, scaling=scaling)
        pred = predict_ctd(params, weights, config, warn=False)
        pag, pab = composed_ctd(params, weights, config)
        assert pred.p_a_given_g == pytest.approx(pag, abs=1e-12)
        assert pred.p_a_given_b == pytest.approx(pab, abs=1e-12)
        assert pred.p_t == pytest.approx(pg * pag + (1 - pg) * pab, abs=1e-12)

    @given(hs, hs, hs)
    def test_against_series_oracle(self, hg, hb, hu):
        pred = predict_ctd(HamiltonianParams(hg, hb, hu), CategoryWeights(0.3, 0.7), warn=False)
        a_u = uniform_attack_amplitude(hu, HALF_PI, "paper_literal")
        assert pred.p_a_given_g == pytest.approx(
            abs(uniform_attack_amplitude(hg, HALF_PI, "paper_literal") + a_u / 2) ** 2, abs=1e-10)
        assert pred.p_a_given_b == pytest.approx(
            abs(uniform_attack_amplitude(hb, HALF_PI, "paper_literal") + a_u / 2) ** 2, abs=1e-10)

    @pytest.mark.parametrize("pg", [0.0, 0.17, 0.5, 1.0])
    def test_equal_blocks(self, pg):
        pred = predict_ctd(HamiltonianParams(0, 0, 0), CategoryWeights(pg, 1 - pg), warn=False)
        assert pred.p_a_given_g == pytest.approx(pred.p_a_given_b, abs=1e-15)
        assert pred.p_t == pytest.approx(pred.p_a_given_g, abs=1e-15)

    def test_t0_degenerate(self):
        with pytest.warns(ModelWarning):
            pred = predict_ctd(HamiltonianParams(0, 0, 0), CategoryWeights(0.5, 0.5), ModelConfig(t=0.0))
        assert pred.p_a_given_g == pytest.approx(9 / 8, abs=1e-12)

    def test_out_of_range_values_surface_as_warnings(self):
        # h_G = h_U with a full attack amplitude gives |1.5 a|^2 = 2.25
        with pytest.warns(ModelWarning):
            pred = predict_ctd(HamiltonianParams(1.0, 0.0, 1.0), CategoryWeights(0.5, 0.5), UNIT)
        assert pred.p_a_given_g == pytest.approx(2.25, abs=1e-9)

    def test_uncertain_weight(self):
        w = CategoryWeights(0.3, 0.5, 0.2)
        pred = predict_ctd(HamiltonianParams(-1.0, -2.0, 3.0), w, warn=False)
        assert pred.p_t == pytest.approx(0.3 * pred.p_a_given_g + 0.5 * pred.p_a_given_b)


class TestPredictAlone:
    def test_single_block(self):
        cfg = ModelConfig(alone_measure="attack_consistent")
        assert predict_alone(HamiltonianParams(0, 0), CategoryWeights(1.0, 0.0), cfg) == pytest.approx(0.5)

    def test_symmetric(self):
        assert predict_alone(HamiltonianParams(0, 0), CategoryWeights(0.5, 0.5)) == pytest.approx(0.5)

    def test_t0_is_initial_attack_mass(self):
        w = CategoryWeights(0.3, 0.7)
        state = build_initial_state(w, "d_alone")
        initial_attack = abs(state.amplitudes[0]) ** 2 + abs(state.amplitudes[2]) ** 2
        assert predict_alone(HamiltonianParams(1.0, -2.0), w, ModelConfig(t=0.0)) == pytest.approx(initial_attack)

    def test_literal_measure_reads_withdraw_in_bad_block(self):
        params, w = HamiltonianParams(0.4, -1.3), CategoryWeights(0.3, 0.7)
        cfg = ModelConfig(alone_measure="paper_literal")
        g = evolve(UNIFORM, build_hamiltonian_block(0.4), HALF_PI)
        b = evolve(UNIFORM, build_hamiltonian_block(-1.3), HALF_PI)
        expected = abs(0.3 * g[0]) ** 2 + abs(0.7 * b[1]) ** 2
        assert predict_alone(params, w, cfg) == pytest.approx(expected, abs=1e-12)

    @given(hs, hs, hs, probs)
    def test_h_u_unused(self, hg, hb, hu, pg):
        w = CategoryWeights(pg, 1 - pg)
        assert predict_alone(HamiltonianParams(hg, hb, hu), w) == predict_alone(HamiltonianParams(hg, hb, 0.0), w)

    @given(hs, hs, probs, st.sampled_from(["paper_literal", "attack_consistent"]))
    def test_bounds(self, hg, hb, pg, measure):
        p = predict_alone(HamiltonianParams(hg, hb), CategoryWeights(pg, 1 - pg),
                          ModelConfig(alone_measure=measure))
        assert -1e-12 <= p <= 1.0 + 1e-12

    def test_rejects_uncertain_weight(self):
        with pytest.raises(BadWeights):
            predict_alone(HamiltonianParams(0, 0), CategoryWeights(0.4, 0.4, 0.2))


def per_category(h, config):
    out = evolve(UNIFORM, build_hamiltonian_block(h, config), config.t)
    return abs(out[0]) ** 2


class TestInterference:
    """Superposed D-alone prediction versus the mixture of categorised branches."""

    @given(hs, hs, probs)
    def test_equal_when_one_category_is_certain_or_blocks_match(self, hg, hb, pg):
        cfg = ModelConfig(alone_measure="attack_consistent")
        for w, params in [(CategoryWeights(1.0, 0.0), HamiltonianParams(hg, hb)),
                          (CategoryWeights(0.0, 1.0), HamiltonianParams(hg, hb)),
                          (CategoryWeights(pg, 1 - pg), HamiltonianParams(hg, hg))]:
            mixture = total_probability(w.p_g, per_category(params.h_g, cfg), w.p_b, per_category(params.h_b, cfg))
            assert predict_alone(params, w, cfg) == pytest.approx(mixture, abs=1e-12)

    def test_differs_for_distinct_blocks(self):
        cfg = ModelConfig(alone_measure="attack_consistent")
        w, params = CategoryWeights(0.4, 0.6), HamiltonianParams(2.0, -1.5)
        mixture = total_probability(0.4, per_category(2.0, cfg), 0.6, per_category(-1.5, cfg))
        assert abs(predict_alone(params, w, cfg) - mixture) > 1e-3


class TestTotalProbability:
    def test_narrow_row(self):
        assert total_probability(0.17, 0.41, 0.83, 0.63) == pytest.approx(0.59, abs=0.005)

    @pytest.mark.xfail(strict=True, reason="0.84*0.35 + 0.16*0.52 = 0.3772; the tabulated 0.37 "
                       "comes from unrounded inputs")
    def test_wide_row(self):
        assert total_probability(0.84, 0.35, 0.16, 0.52) == pytest.approx(0.37, abs=0.005)

    def test_wide_row_arithmetic(self):
        assert total_probability(0.84, 0.35, 0.16, 0.52) == pytest.approx(0.3772, abs=1e-12)

    def test_degenerate_weight(self):
        assert total_probability(1.0, 0.42, 0.0, 0.9) == 0.42

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            total_probability(0.5, 1.2, 0.5, 0.3)
