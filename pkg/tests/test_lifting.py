"""Unit tests for the lifted reformulation and KKT certification."""
import numpy as np
import pytest

from resd.lp import LinearProgram, LpSolution, LpStatus, solve_lp
from resd.lifting import (
    NonlinearLowerLevel,
    NotOptimal,
    build_lifted_nlp,
    kkt_residuals,
    recover_multipliers_from_lp_duals,
    verify_strong_duality,
)
from resd.models import build_lapalma, build_milp_example
from resd.sip import maxmin_vertex_enum
from resd.sip.oracles import solve_recourse
from resd.timeseries import (
    kmeans_scenarios,
    pca_fit,
    pca_project,
    prune_generators,
    synth_generate,
    znormalize,
)


def _problem(seed=3, n_days=20, n_steps=4, k=3):
    ds = synth_generate(seed=seed, n_days=n_days, n_steps=n_steps)
    _, norm = znormalize(ds)
    nmat = norm.normalize_day_matrix(ds.day_matrix(), n_steps)
    scen = kmeans_scenarios(nmat, k, seed, norm, n_steps)
    pca = pca_fit(nmat, min(n_days, 3 * n_steps))
    gens = prune_generators(pca_project(pca, nmat))
    return build_lapalma(scen, pca, norm, gens)


def _hand_llp():
    # min e  s.t.  d - s - e <= 0,  s <= x  at d=80, x=50
    lp = LinearProgram(
        c=[0.0, 1.0],
        a_ub=[[-1.0, -1.0], [1.0, 0.0]],
        b_ub=[-80.0, 50.0],
        lb=[-np.inf, -np.inf], ub=[np.inf, np.inf],
        names=["s", "e"],
    )
    return lp


def test_recover_multipliers_hand_example():
    lp = _hand_llp()
    sol = solve_lp(lp)
    assert sol.optimal
    assert sol.objective == pytest.approx(30.0, abs=1e-9)
    lam, mu = recover_multipliers_from_lp_duals(sol)
    assert lam.size == 0
    np.testing.assert_allclose(mu, [1.0, 1.0], atol=1e-9)


def test_recover_multipliers_rejects_nonoptimal():
    with pytest.raises(NotOptimal):
        recover_multipliers_from_lp_duals(LpSolution(LpStatus.INFEASIBLE))


def test_certificate_on_island_worst_case():
    prob = _problem()
    x = np.array([30.0, 10.0, 5.0, 20.0, 80.0])
    res = maxmin_vertex_enum(x, prob)
    lam, mu = recover_multipliers_from_lp_duals(res.solution)
    lifted = build_lifted_nlp(x, prob)
    lagr = lifted.instantiate(res.realization, res.solution.x, lam, mu)
    r = kkt_residuals(lifted, lagr)
    assert r.stationarity <= 1e-6
    assert r.complementarity <= 1e-8
    assert r.primal_infeasibility <= 1e-6
    assert r.min_multiplier >= -1e-9
    ok, gap = verify_strong_duality(lagr, res.solution.objective)
    assert ok and gap <= 1e-6 * (1 + abs(res.solution.objective))


def test_zero_multipliers_flagged():
    prob = _problem()
    x = np.array([30.0, 10.0, 5.0, 20.0, 80.0])
    res = maxmin_vertex_enum(x, prob)
    lifted = build_lifted_nlp(x, prob)
    lagr = lifted.instantiate(res.realization, res.solution.x,
                              np.zeros(lifted.n_eq), np.zeros(lifted.n_ub))
    r = kkt_residuals(lifted, lagr)
    # the epigraph gradient is unmatched without multipliers
    assert r.stationarity >= 1.0 - 1e-12


def test_negative_multiplier_flagged():
    prob = _problem()
    x = np.array([30.0, 10.0, 5.0, 20.0, 80.0])
    res = maxmin_vertex_enum(x, prob)
    lam, mu = recover_multipliers_from_lp_duals(res.solution)
    mu = mu.copy()
    mu[0] = -0.5
    lifted = build_lifted_nlp(x, prob)
    lagr = lifted.instantiate(res.realization, res.solution.x, lam, mu)
    assert kkt_residuals(lifted, lagr).min_multiplier < 0.0


def test_perturbed_inactive_multiplier_shifts_lagrangian_by_slack():
    prob = _problem()
    x = np.array([30.0, 10.0, 5.0, 20.0, 80.0])
    res = maxmin_vertex_enum(x, prob)
    lam, mu = recover_multipliers_from_lp_duals(res.solution)
    slack = res.lp.b_ub - res.lp.a_ub @ res.solution.x
    i = int(np.argmax(slack))
    assert slack[i] > 1e-6
    mu2 = mu.copy()
    mu2[i] += 0.1
    lifted = build_lifted_nlp(x, prob)
    lagr = lifted.instantiate(res.realization, res.solution.x, lam, mu2)
    _, gap = verify_strong_duality(lagr, res.solution.objective)
    assert gap == pytest.approx(0.1 * slack[i], rel=1e-9)


def test_lagrangian_affine_in_mu():
    prob = _problem()
    x = np.array([30.0, 10.0, 5.0, 20.0, 80.0])
    res = maxmin_vertex_enum(x, prob)
    lam, mu = recover_multipliers_from_lp_duals(res.solution)
    lifted = build_lifted_nlp(x, prob)
    base = lifted.instantiate(res.realization, res.solution.x, lam, mu)
    g = base.a_ub @ base.z - base.b_ub
    for i in (0, len(mu) // 2, len(mu) - 1):
        mu2 = mu.copy()
        mu2[i] += 1e-3
        bumped = lifted.instantiate(res.realization, res.solution.x, lam, mu2)
        dldmu = (bumped.lagrangian() - base.lagrangian()) / 1e-3
        assert dldmu == pytest.approx(g[i], abs=1e-9)


def test_variable_count_identity():
    prob = _problem(n_steps=4)
    lifted = build_lifted_nlp(np.ones(5), prob)
    assert lifted.n_vars == (lifted.n_y + lifted.n_latent + lifted.n_z + 1
                             + lifted.n_eq + lifted.n_ub)
    assert lifted.n_y == 3 * 4
    # recourse vars: b_in/b_out (2T), E (T+1), Edot (T), f_diesel (T), e_epi
    assert lifted.n_z == 2 * 4 + 5 + 4 + 4


def test_lifted_nlp_for_milp_example():
    prob = build_milp_example()
    lifted = build_lifted_nlp(np.array([10.0, 20.0]), prob,
                              realization=(15.0, 0.0))
    # two recourse variables, stationarity row per variable
    assert lifted.n_z + 1 == 2
    assert lifted.n_latent == 0
    dump = lifted.dump_text()
    assert "stationarity[0]" in dump
    assert "complementarity" in dump


def test_nonlinear_lower_level_refused():
    prob = _problem(n_steps=4)

    class QuadraticTemplate:
        lower_level_linear = False

        def recourse_lp(self, x, y):
            raise AssertionError("must refuse before building")

    prob.template = QuadraticTemplate()
    with pytest.raises(NonlinearLowerLevel):
        build_lifted_nlp(np.ones(5), prob)


def test_bounded_recourse_variables_refused():
    prob = build_milp_example()

    class BoundedTemplate:
        def recourse_lp(self, x, y):
            return LinearProgram(c=[1.0], lb=[0.0], ub=[1.0])

    prob.template = BoundedTemplate()
    with pytest.raises(NonlinearLowerLevel):
        build_lifted_nlp(np.zeros(2), prob, realization=(0.0, 0.0))


def test_probe_realization_required_without_generators():
    prob = build_milp_example()
    with pytest.raises(ValueError):
        build_lifted_nlp(np.zeros(2), prob)


def test_empty_inequality_block_collapses():
    class EqOnlyTemplate:
        def recourse_lp(self, x, y):
            return LinearProgram(c=[1.0, 1.0], a_eq=[[1.0, 1.0]], b_eq=[2.0],
                                 lb=np.full(2, -np.inf),
                                 ub=np.full(2, np.inf))

    prob = build_milp_example()
    prob.template = EqOnlyTemplate()
    lifted = build_lifted_nlp(np.zeros(2), prob, realization=(0.0, 0.0))
    assert lifted.n_ub == 0
    lp = EqOnlyTemplate().recourse_lp(None, None)
    sol = solve_lp(lp)
    lam, mu = recover_multipliers_from_lp_duals(sol)
    lagr = lifted.instantiate((0.0, 0.0), sol.x, lam, mu)
    r = kkt_residuals(lifted, lagr)
    assert r.complementarity == 0.0
    assert r.min_multiplier == np.inf
    assert r.stationarity <= 1e-9
