"""Unit tests for physics, economics, and the two benchmark models."""
import numpy as np
import pytest

from resd.lp import solve_lp, solve_milp
from resd.models import (
    DEFAULT_COSTS,
    DEFAULT_ECONOMICS,
    HullUncertainty,
    LaPalmaTemplate,
    MinPartLoadUncertainty,
    MissingYear,
    NegativeIrradiance,
    annuity_factor,
    build_lapalma,
    build_milp_example,
    diesel_variable_cost,
    inflation_adjust,
    solar_capacity_factor,
    wind_capacity_factor,
    wind_speed_at_hub,
)
from resd.sip import solve_esip, maxmin_vertex_enum
from resd.sip.assemble import build_lbp
from resd.sip.oracles import solve_recourse
from resd.sip.problem import DiscretizationSet
from resd.timeseries import (
    kmeans_scenarios,
    pca_fit,
    pca_project,
    prune_generators,
    synth_generate,
    znormalize,
)


# ---------- physics ----------

def test_solar_cf_linear_then_clipped():
    assert solar_capacity_factor(0.0) == 0.0
    assert solar_capacity_factor(0.45) == pytest.approx(0.45 * 0.19 / 0.171)
    # irradiance beyond the nominal point saturates at 1
    assert solar_capacity_factor(1.2) == 1.0
    with pytest.raises(NegativeIrradiance):
        solar_capacity_factor(-0.1)


def test_wind_hub_speed_log_profile():
    assert wind_speed_at_hub(1.0) == pytest.approx(
        np.log(85.0 / 0.3) / np.log(10.0 / 0.3), abs=1e-12)
    assert wind_speed_at_hub(0.0) == 0.0


def test_wind_cf_curve_and_cutout():
    # below cut-in the turbine produces nothing
    assert wind_capacity_factor(0.5) == 0.0
    # exact knot: 3 m/s at hub gives 25 kW
    v10_3ms = 3.0 / wind_speed_at_hub(1.0)
    assert wind_capacity_factor(v10_3ms) == pytest.approx(25.0 / 2350.0,
                                                          abs=1e-12)
    # rated region: 10 m/s at 10 m is ~16.1 m/s at hub -> full output
    assert wind_capacity_factor(10.0) == 1.0
    # hard cutout at 25 m/s hub speed
    v10_cut = 25.0 / wind_speed_at_hub(1.0)
    assert wind_capacity_factor(v10_cut + 0.01) == 0.0
    assert wind_capacity_factor(40.0) == 0.0
    arr = wind_capacity_factor(np.array([0.0, 10.0, 40.0]))
    np.testing.assert_allclose(arr, [0.0, 1.0, 0.0])


def test_wind_cf_monotone_below_rating():
    v = np.linspace(0.0, 8.5, 50)
    cf = wind_capacity_factor(v)
    assert np.all(np.diff(cf) >= -1e-12)


# ---------- economics ----------

def test_annuity_factor_reference_value():
    assert annuity_factor(0.08, 25) == pytest.approx(10.6748, abs=1e-3)
    assert annuity_factor(0.08, 1) == pytest.approx(1.0 / 1.08, abs=1e-12)
    with pytest.raises(ValueError):
        annuity_factor(0.0, 25)


def test_diesel_cost_breakdown():
    br = diesel_variable_cost(DEFAULT_ECONOMICS)
    assert br["co_fuel"] == pytest.approx(0.120, abs=1e-3)
    assert br["co_co2"] == pytest.approx(0.0515, abs=1e-3)
    assert br["co_dispatch"] == pytest.approx(
        0.01 * (br["co_fuel"] + br["co_co2"]), abs=1e-12)
    assert br["total"] == pytest.approx(
        br["co_fuel"] + br["co_co2"] + br["co_dispatch"]
        + br["co_maintenance"], abs=1e-12)


def test_inflation_adjust():
    series = {2020: [100.0] * 12, 2022: [110.0] * 12}
    assert inflation_adjust(50.0, 2020, series) == pytest.approx(55.0)
    with pytest.raises(MissingYear):
        inflation_adjust(50.0, 2021, series)


# ---------- MILP example ----------

def test_milp_example_recourse_gap():
    t = build_milp_example().template
    _, sol = solve_recourse(t, (0.0, 100.0), (15.0, 0.0))
    assert sol.objective == pytest.approx(15.0, abs=1e-9)
    # with the unit on, the second capacity covers the demand
    _, sol = solve_recourse(t, (0.0, 100.0), (15.0, 1.0))
    assert sol.objective == pytest.approx(-85.0, abs=1e-9)


def test_milp_example_fixed_blocks_reproduce_naive_design():
    prob = build_milp_example()
    t = prob.template
    from resd.sip.assemble import assemble_blocks
    milp = assemble_blocks(prob, [(t.fixed_block((0.0, 0.0)), 0.0),
                                  (t.fixed_block((100.0, 1.0)), 0.0)])
    sol = solve_milp(milp)
    assert sol.optimal
    np.testing.assert_allclose(sol.x[:2], [0.0, 100.0], atol=1e-7)


def test_milp_example_entry_block_disjunction():
    # the disjunctive block must not force the gap row when the
    # realization leaves the admissible set
    prob = build_milp_example()
    disc = DiscretizationSet()
    disc.add((50.0, 1.0), 50.0)
    sol = solve_milp(build_lbp(prob, disc))
    assert sol.optimal
    # y=50 with the unit on needs x1 + x2 >= 50 at least
    assert sol.x[0] + sol.x[1] >= 50.0 - 1e-7


def test_milp_example_mlp_bounds_worst_case():
    unc = MinPartLoadUncertainty()
    msol = solve_milp(unc.build_mlp((0.0, 0.0), []))
    assert msol.optimal
    y, b = unc.realization_from_mlp(msol)
    assert 0.0 <= y <= 100.0
    assert b in (0.0, 1.0)


# ---------- island model ----------

def _small_problem(seed=3, n_days=30, n_steps=6, k=3, n_dim=None):
    ds = synth_generate(seed=seed, n_days=n_days, n_steps=n_steps)
    _, norm = znormalize(ds)
    nmat = norm.normalize_day_matrix(ds.day_matrix(), n_steps)
    scen = kmeans_scenarios(nmat, k, seed, norm, n_steps)
    pca = pca_fit(nmat, n_dim or min(n_days, 3 * n_steps))
    gens = prune_generators(pca_project(pca, nmat))
    return build_lapalma(scen, pca, norm, gens), ds


def test_lapalma_design_cost_vector():
    prob, _ = _small_problem()
    fan = annuity_factor(0.08, 25)
    expect = 1000.0 * (DEFAULT_COSTS["solar"].c_inv / fan
                       + DEFAULT_COSTS["solar"].c_fix)
    assert prob.design_cost[0] == pytest.approx(expect, rel=1e-12)
    # battery energy rating is tied to power: E = 4 P
    np.testing.assert_allclose(prob.a_eq, [[0, 0, 0, -4.0, 1.0]])


def test_lapalma_zero_design_gap_is_peak_demand():
    prob, ds = _small_problem()
    day = ds.values[0]
    _, sol = solve_recourse(prob.template, np.zeros(5), day)
    assert sol.objective == pytest.approx(day[:, 2].max() / 1000.0, abs=1e-9)


def test_lapalma_battery_invariants_on_solved_design():
    prob, ds = _small_problem()
    design, _ = solve_esip(prob, maxmin_vertex_enum)
    assert design.status == "feasible"
    t_n = prob.template.n_steps
    lbp = build_lbp(prob, design.discretization)
    sol = solve_milp(lbp)
    assert sol.optimal
    x = sol.x[:5]
    # walk the first scenario block and check the storage dynamics
    off = 5
    nz = 7 * t_n + 1
    z = sol.x[off:off + nz]
    b_in = z[3 * t_n:4 * t_n]
    b_out = z[4 * t_n:5 * t_n]
    e = z[5 * t_n:6 * t_n + 1]
    edot = z[6 * t_n + 1:]
    dt = 86400.0 / t_n
    np.testing.assert_allclose(edot, (0.92 * b_in - b_out / 0.926) / 3600.0,
                               atol=1e-7)
    np.testing.assert_allclose(np.diff(e), edot * dt, atol=1e-6)
    assert e[0] == pytest.approx(0.5 * x[4], abs=1e-7)
    assert e[-1] == pytest.approx(e[0], abs=1e-6)          # cyclic
    assert e.max() <= x[4] + 1e-6
    assert max(b_in.max(), b_out.max()) <= x[3] + 1e-7


def test_lapalma_scenario_cost_weighting():
    prob, _ = _small_problem()
    t_n = prob.template.n_steps
    block = prob.template.scenario_block(prob.scenarios[0].block)
    # diesel variable cost: 24/T hours * 1000 kW * 0.242 EUR/kWh per MW
    assert block.z_cost[2 * t_n] == pytest.approx(24.0 / t_n * 1000.0 * 0.242)
    assert block.z_cost[0] == 0.0                  # solar has no var cost
    assert block.z_cost[t_n] == pytest.approx(24.0 / t_n * 1000.0 * 0.011)


def test_hull_realization_shape_and_clipping():
    prob, ds = _small_problem()
    unc = prob.uncertainty
    assert isinstance(unc, HullUncertainty)
    for v in range(min(unc.n_generators, 5)):
        block = unc.realization(v)
        assert block.shape == (prob.template.n_steps, 3)
        assert block[:, :2].min() >= 0.0


def test_hull_realization_roundtrips_historical_days():
    # full-rank PCA: generator realizations reproduce the historical days
    prob, ds = _small_problem()
    unc = prob.uncertainty
    matched = 0
    for v in range(unc.n_generators):
        block = unc.realization(v)
        diffs = np.max(np.abs(ds.values - block[None]), axis=(1, 2))
        if diffs.min() <= 1e-6:
            matched += 1
    assert matched == unc.n_generators


def test_lapalma_dispatch_energy():
    template = LaPalmaTemplate(n_steps=4)
    z = np.zeros(7 * 4 + 1)
    z[8:12] = 2.0   # diesel at 2 MW each step
    energy = template.dispatch_energy(z)
    assert energy["diesel"] == pytest.approx(2.0 * 4 * 6.0)  # 6 h steps
    assert energy["solar"] == 0.0
