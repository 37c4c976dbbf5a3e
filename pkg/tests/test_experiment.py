import csv
import io
import math

import pytest

from mqshape.espace import DivergentNormError
from mqshape.experiment import (
    CSV_HEADER,
    ExperimentConfig,
    reports_to_csv,
    run_experiment,
    sweep_argmins,
    sweep_c,
)
from mqshape.mn_optimizer import UnsupportedRegimeError, mn_value
from mqshape.theory import SchemeError, theory_constants

BASE = ExperimentConfig(n=2, beta=-1.0, sigma=1.0, b0=1.0, delta=1.0 / 48.0, c=1.0, a=0.25)


def test_reference_run_geometry_and_bound():
    rep = run_experiment(BASE)
    assert rep.case == "Case1"
    assert rep.l == 2 and rep.N == 6
    assert rep.r == pytest.approx(1.0 / 16.0, rel=1e-14)
    assert rep.status == "ok"
    assert 0 < rep.max_error <= rep.bound
    assert rep.ratio == pytest.approx(rep.max_error / rep.bound)
    assert rep.mn == pytest.approx(1.0, abs=1e-12)


def test_zero_target():
    rep = run_experiment(ExperimentConfig(a=None))
    assert rep.max_error == 0.0 and rep.ratio == 0.0 and rep.bound == 0.0


def test_halving_delta_reduces_error():
    coarse = run_experiment(ExperimentConfig(c=0.5, delta=1.0 / 48.0))
    fine = run_experiment(ExperimentConfig(c=0.5, delta=1.0 / 96.0))
    assert fine.l > coarse.l
    assert fine.max_error < coarse.max_error


def test_constants_recomputable():
    rep = run_experiment(ExperimentConfig(n=3, beta=-1.0, b0=0.05, delta=0.001))
    tc = theory_constants(3, -1.0, 0.05).as_dict()
    for key, value in tc.items():
        if isinstance(value, float):
            assert rep.constants[key] == pytest.approx(value, rel=1e-14)
        else:
            assert rep.constants[key] == value


@pytest.mark.parametrize(
    "kw",
    [
        dict(n=1, beta=-1.0),
        dict(n=3, beta=-1.0),
        dict(n=2, beta=-1.0, sigma=2.0, a=0.5),
        dict(n=3, beta=-2.0, a=0.1),
    ],
)
@pytest.mark.parametrize("frac", [0.5, 0.25])
def test_bound_holds_on_well_conditioned_runs(kw, frac):
    tc = theory_constants(kw["n"], kw["beta"], 1.0)
    for c in (0.25, 0.5, 1.0, 2.0):
        rep = run_experiment(ExperimentConfig(**kw, c=c, delta=frac * tc.delta_max))
        if rep.well_conditioned:
            assert rep.ratio <= 1.0


def test_ill_conditioned_run_is_recorded_not_raised():
    rep = run_experiment(ExperimentConfig(c=2.0, delta=1.0 / 96.0))
    assert rep.status == "singular" and math.isnan(rep.max_error)
    assert rep.cond_estimate > 1e15


def test_inadmissible_configs():
    with pytest.raises(DivergentNormError, match="sigma > 2a"):
        run_experiment(ExperimentConfig(a=0.5))
    with pytest.raises(UnsupportedRegimeError):
        run_experiment(ExperimentConfig(n=1, beta=-1.5))
    with pytest.raises(SchemeError):
        run_experiment(ExperimentConfig(delta=1.0 / 24.0))


def test_sweep_pairs_reports_with_curve():
    cs = [0.5, 1.0, 2.0, 0.25]
    reports, curve = sweep_c(BASE, cs, workers=2)
    assert [r.config.c for r in reports] == sorted(cs) == curve.c.tolist()
    for rep, m in zip(reports, curve.mn):
        assert rep.mn == pytest.approx(m, rel=1e-12)
        assert rep.mn == pytest.approx(mn_value(curve.case, rep.config.c), rel=1e-12)
        if rep.well_conditioned:
            assert rep.ratio <= 1.0
    summary = sweep_argmins(reports, curve)
    assert summary["empirical_c"] in cs and summary["mn_c"] in cs


def test_csv_schema():
    reports, _ = sweep_c(BASE, [0.5, 1.0])
    text = reports_to_csv(reports, "meta line")
    assert text.startswith("# meta line\n")
    assert "\r" not in text
    rows = list(csv.reader(io.StringIO(text.split("\n", 1)[1])))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 3
    assert rows[1][CSV_HEADER.index("l")] == "2"
    assert rows[1][CSV_HEADER.index("status")] == "ok"
    float(rows[1][CSV_HEADER.index("ratio")])
