import csv
import json
import math

import pytest

from mscs.errors import (
    InvalidPMFError,
    LevelOutOfRangeError,
    PreconditionViolatedError,
    SpecFormatError,
)
from mscs.pipeline import (
    PipelineSpec,
    Segment,
    case_study_path,
    export_results,
    load_case_study,
    load_pipeline_spec,
    pipeline_cdf,
    pipeline_state1_cdf,
    set_state1,
    state1_performance,
    sweep_state1,
)
from mscs.probability import (
    ComponentDistribution,
    exact_system_distribution,
)
from mscs.structure import Component, series


def write_spec(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def test_shipped_case_studies_load():
    spec = load_case_study()
    assert spec.max_state == 4
    assert spec.n_segments == 10
    assert all(seg.distribution.pmf[0] == 0.0 for seg in spec.segments)
    assert all(seg.distribution.pmf[1] == 0.1 for seg in spec.segments)
    above = load_case_study("above_average")
    assert all(s.distribution.pmf[1] == 0.7 for s in above.segments)
    below = load_case_study("below_average")
    assert all(s.distribution.pmf[1] == 0.3 for s in below.segments)
    assert case_study_path().exists()
    with pytest.raises(SpecFormatError):
        load_case_study("nonexistent")


def test_load_format_errors(tmp_path):
    broken = tmp_path / "bad.json"
    broken.write_text("{")
    with pytest.raises(SpecFormatError, match="line"):
        load_pipeline_spec(broken)
    base = {"max_state": 4, "segments": [{"name": "s1", "pmf": [0, 0.1, 0.2, 0.3, 0.4]}]}
    for mutate, needle in [
        (lambda d: d.pop("max_state"), "max_state"),
        (lambda d: d.update(max_state="4"), "max_state"),
        (lambda d: d.update(segments=[]), "segments"),
        (lambda d: d.update(segments="x"), "segments"),
        (lambda d: d["segments"][0].pop("name"), "name"),
        (lambda d: d["segments"][0].update(pmf=[0, 0.1, 0.2, 0.7]), "entries"),
        (lambda d: d["segments"][0].update(pmf="x"), "pmf"),
    ]:
        doc = json.loads(json.dumps(base))
        mutate(doc)
        with pytest.raises(SpecFormatError, match=needle):
            load_pipeline_spec(write_spec(tmp_path, doc))


def test_load_invalid_pmf_names_segment(tmp_path):
    doc = {
        "max_state": 1,
        "segments": [
            {"name": "ok", "pmf": [0.5, 0.5]},
            {"name": "broken", "pmf": [0.9, 0.9]},
        ],
    }
    with pytest.raises(InvalidPMFError, match="broken"):
        load_pipeline_spec(write_spec(tmp_path, doc))


def test_load_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_pipeline_spec(tmp_path / "nope.json")


def test_pipeline_cdf_values():
    spec = load_case_study()
    assert pipeline_cdf(spec, 1) == pytest.approx(1 - 0.9**10, abs=1e-10)
    assert pipeline_cdf(spec, spec.max_state) == pytest.approx(1.0, abs=1e-12)
    values = [pipeline_cdf(spec, j) for j in range(spec.max_state + 1)]
    assert values == sorted(values)
    with pytest.raises(LevelOutOfRangeError):
        pipeline_cdf(spec, 9)


def test_pipeline_cdf_single_segment():
    pmf = (0.0, 0.1, 0.2, 0.3, 0.4)
    spec = PipelineSpec(4, (Segment("only", ComponentDistribution(pmf)),))
    for j in range(5):
        assert pipeline_cdf(spec, j) == pytest.approx(
            math.fsum(pmf[: j + 1]), abs=1e-15
        )


def test_pipeline_cdf_matches_enumerator_on_truncation():
    spec = load_case_study()
    truncated = PipelineSpec(4, spec.segments[:6])
    comps = tuple(Component(i) for i in range(1, 7))
    exact = exact_system_distribution(series(*comps), truncated.distributions)
    for j in range(5):
        assert abs(pipeline_cdf(truncated, j) - exact.cdf[j]) <= 1e-12


def test_state1_closed_form():
    spec = load_case_study()
    assert pipeline_state1_cdf(spec) == pytest.approx(1 - 0.9**10, abs=1e-10)
    assert pipeline_state1_cdf(spec) == pytest.approx(
        pipeline_cdf(spec, 1), abs=1e-12
    )


def test_state1_precondition():
    bad = PipelineSpec(
        1,
        (
            Segment("a", ComponentDistribution((0.0, 1.0))),
            Segment("b", ComponentDistribution((0.2, 0.8))),
        ),
    )
    with pytest.raises(PreconditionViolatedError, match="'b'"):
        pipeline_state1_cdf(bad)


def test_state1_annihilator():
    spec = PipelineSpec(
        2,
        (
            Segment("a", ComponentDistribution((0.0, 1.0, 0.0))),
            Segment("b", ComponentDistribution((0.0, 0.3, 0.7))),
        ),
    )
    assert pipeline_state1_cdf(spec) == 1.0


def test_figure_coordinates_value():
    above = load_case_study("above_average")
    spec = set_state1(set_state1(above, 1, 0.9226), 2, 0.1015)
    expected = 1 - (1 - 0.9226) * (1 - 0.1015) * (1 - 0.7) ** 8
    assert pipeline_state1_cdf(spec) == pytest.approx(expected, abs=1e-9)
    assert pipeline_state1_cdf(spec) == pytest.approx(0.9999954, abs=1e-6)


def test_set_state1_places_residual_on_top_state():
    above = load_case_study("above_average")
    spec = set_state1(above, 1, 0.9226)
    pmf = spec.segments[0].distribution.pmf
    assert pmf[1] == 0.9226
    assert pmf[-1] == pytest.approx(1 - 0.9226, abs=1e-12)
    assert math.fsum(pmf) == pytest.approx(1.0, abs=1e-12)
    # the other segments are untouched
    assert spec.segments[2:] == above.segments[2:]


def test_set_state1_rejects_infeasible_override():
    spec = load_case_study()  # segments carry mass on states 2 and 3
    with pytest.raises(InvalidPMFError):
        set_state1(spec, 1, 0.9)
    with pytest.raises(PreconditionViolatedError):
        set_state1(spec, 11, 0.5)
    binary = PipelineSpec(
        1,
        (
            Segment("a", ComponentDistribution((0.0, 1.0))),
            Segment("b", ComponentDistribution((0.0, 1.0))),
        ),
    )
    with pytest.raises(PreconditionViolatedError):
        set_state1(binary, 1, 0.3)  # no state above 1 to absorb residual


def test_state1_monotone_in_each_probability():
    above = load_case_study("above_average")
    lower = pipeline_state1_cdf(set_state1(above, 1, 0.2))
    higher = pipeline_state1_cdf(set_state1(above, 1, 0.8))
    assert lower <= higher


def test_sweep_shape_and_determinism():
    above = load_case_study("above_average")
    result = sweep_state1(above, 50, 7)
    assert result.trials == 50 and len(result.rows) == 50
    assert [r.trial for r in result.rows] == list(range(1, 51))
    again = sweep_state1(above, 50, 7)
    assert again == result  # identical rows, bitwise
    different = sweep_state1(above, 50, 8)
    assert different != result


def test_sweep_rows_recompute_bitwise():
    above = load_case_study("above_average")
    held = [seg.distribution.pmf[1] for seg in above.segments[2:]]
    result = sweep_state1(above, 128, 3)
    for row in result.rows:
        assert 0.0 < row.p_1_1 < 1.0 and 0.0 < row.p_2_1 < 1.0
        assert 0.0 <= row.performance <= 1.0
        assert row.performance == state1_performance(
            row.p_1_1, row.p_2_1, held
        )


def test_sweep_below_corner_supremum():
    below = load_case_study("below_average")
    result = sweep_state1(below, 200, 21)
    assert result.corner_supremum == 1.0
    best = result.argmax_row()
    assert all(r.performance <= best.performance for r in result.rows)
    assert best.performance < result.corner_supremum


def test_sweep_single_trial():
    result = sweep_state1(load_case_study("above_average"), 1, 0)
    assert len(result.rows) == 1


def test_sweep_preconditions():
    above = load_case_study("above_average")
    with pytest.raises(PreconditionViolatedError):
        sweep_state1(above, 0, 1)
    single = PipelineSpec(1, (Segment("a", ComponentDistribution((0.0, 1.0))),))
    with pytest.raises(PreconditionViolatedError):
        sweep_state1(single, 5, 1)
    failing_mass = PipelineSpec(
        1,
        (
            Segment("a", ComponentDistribution((0.0, 1.0))),
            Segment("b", ComponentDistribution((0.0, 1.0))),
            Segment("c", ComponentDistribution((0.5, 0.5))),
        ),
    )
    with pytest.raises(PreconditionViolatedError, match="'c'"):
        sweep_state1(failing_mass, 5, 1)


def test_export_sweep_csv(tmp_path):
    result = sweep_state1(load_case_study("above_average"), 3, 7)
    path = tmp_path / "sweep.csv"
    export_results(result, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "trial,p_1_1,p_2_1,P_pipeline_1"
    assert len(lines) == 4
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    for row, want in zip(rows, result.rows):
        assert int(row["trial"]) == want.trial
        # 17 significant digits reload bit-faithfully
        assert float(row["p_1_1"]) == want.p_1_1
        assert float(row["p_2_1"]) == want.p_2_1
        assert float(row["P_pipeline_1"]) == want.performance


def test_export_distribution_csv(tmp_path):
    spec = load_case_study()
    dist = exact_system_distribution(
        series(*(Component(i) for i in range(1, 5))),
        spec.distributions[:4],
    )
    path = tmp_path / "dist.csv"
    export_results(dist, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "level,pmf,cdf"
    assert len(lines) == 6
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    for row, (p, c) in zip(rows, zip(dist.pmf, dist.cdf)):
        assert float(row["pmf"]) == p
        assert float(row["cdf"]) == c


def test_export_errors(tmp_path):
    result = sweep_state1(load_case_study("above_average"), 1, 7)
    with pytest.raises(ValueError):
        export_results(result, tmp_path / "x.csv", format="tsv")
    with pytest.raises(TypeError):
        export_results(42, tmp_path / "x.csv")
    with pytest.raises(OSError):
        export_results(result, tmp_path / "missing" / "x.csv")
