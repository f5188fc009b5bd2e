import math

import numpy as np
import pytest

from bgev import (
    BgevParams,
    GevParams,
    InputDataError,
    block_maxima,
    cdf,
    emit_plot_data,
    fit_and_compare,
    ingest,
    sample,
    standardize,
)
from bgev.data import bundled_path
from bgev.pipeline import START_PRESETS, comparison_to_csv, comparison_to_text


# ----------------------------------------------------------------------- ingest


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_ingest_two_column_csv(tmp_path):
    rows = "\n".join(f"{i},{i * 1.5}" for i in range(10))
    f = write(tmp_path, "a.csv", "time,value\n" + rows + "\n")
    s = ingest(f)
    assert len(s.values) == 10
    assert s.value_column == "value" and s.time_column == "time"
    assert s.values[3] == pytest.approx(4.5)


def test_ingest_skip_policy_counts_blanks(tmp_path):
    body = "t,v\n" + "\n".join(
        f"{i},{v}" for i, v in enumerate(["1", "2", "", "4", "x", "6", "7", "8", "9", "10"])
    )
    s = ingest(write(tmp_path, "b.csv", body + "\n"))
    assert len(s.values) == 8
    assert s.skipped == 2


def test_ingest_fail_policy_raises(tmp_path):
    f = write(tmp_path, "c.csv", "t,v\n1,1\n2,\n")
    with pytest.raises(InputDataError):
        ingest(f, missing="fail")


def test_ingest_single_column_headerless(tmp_path):
    f = write(tmp_path, "d.csv", "1.5\n2.5\n3.5\n")
    s = ingest(f)
    assert np.allclose(s.values, [1.5, 2.5, 3.5])
    assert s.time_column is None
    assert s.timestamps == ("0", "1", "2")


def test_ingest_tab_delimited(tmp_path):
    f = write(tmp_path, "e.tsv", "time\tvalue\n1\t10\n2\t20\n")
    s = ingest(f)
    assert np.allclose(s.values, [10.0, 20.0])


def test_ingest_column_selectors(tmp_path):
    f = write(tmp_path, "f.csv", "a,b,c\n1,10,100\n2,20,200\n")
    assert np.allclose(ingest(f, value_column="b").values, [10, 20])
    assert np.allclose(ingest(f, value_column=0).values, [1, 2])
    with pytest.raises(InputDataError):
        ingest(f, value_column="nope")


def test_ingest_rejects_decreasing_numeric_timestamps(tmp_path):
    f = write(tmp_path, "g.csv", "t,v\n2,1\n1,2\n")
    with pytest.raises(InputDataError):
        ingest(f)


def test_ingest_missing_file():
    with pytest.raises(InputDataError):
        ingest("/no/such/file.csv")


def test_ingest_all_missing(tmp_path):
    f = write(tmp_path, "h.csv", "t,v\n1,\n2,\n")
    with pytest.raises(InputDataError):
        ingest(f)


# ----------------------------------------------------------------------- blocks


def test_block_maxima_basic():
    b = block_maxima(np.arange(1.0, 49.0), 24)
    assert np.allclose(b.maxima, [24.0, 48.0])
    assert b.dropped == 0


def test_block_maxima_block_one_is_identity():
    x = np.array([3.0, 1.0, 2.0])
    b = block_maxima(x, 1)
    assert np.array_equal(b.maxima, x)


def test_block_maxima_drops_partial_tail():
    b = block_maxima(np.arange(50.0), 24)
    assert len(b.maxima) == 2
    assert b.dropped == 2


def test_block_maxima_too_short():
    with pytest.raises(InputDataError):
        block_maxima(np.arange(5.0), 24)


# ----------------------------------------------------------------------- standardize


def test_standardize_hand_case():
    b = block_maxima(np.array([0.0, 2.0]), 1)
    z = standardize(b)
    assert z.maxima == pytest.approx([-1 / math.sqrt(2), 1 / math.sqrt(2)])
    assert z.mean == pytest.approx(1.0) and z.sd == pytest.approx(math.sqrt(2))
    assert z.standardized


def test_standardize_exactness_and_idempotence(rng):
    b = block_maxima(rng.normal(3.0, 2.0, size=240), 24)
    z = standardize(b)
    assert abs(float(np.mean(z.maxima))) < 1e-12
    assert abs(float(np.std(z.maxima, ddof=1)) - 1.0) < 1e-12
    z2 = standardize(z)
    assert np.allclose(z2.maxima, z.maxima, atol=1e-12)
    # metadata lets callers map fitted quantiles back to the raw scale
    back = z.maxima * z.sd + z.mean
    assert np.allclose(back, b.maxima, rtol=1e-12)


def test_standardize_constant_rejected():
    with pytest.raises(InputDataError):
        standardize(block_maxima(np.ones(48), 24))


# ----------------------------------------------------------------------- comparison


@pytest.fixture(scope="module")
def bimodal_fit():
    gen = BgevParams(xi=-0.25, mu=-0.36, sigma=1.0, delta=2.0)
    maxima = sample(365, gen, seed=88)
    b = standardize(block_maxima(maxima, 1))
    return fit_and_compare(b), b


def test_bimodal_data_prefers_bgev(bimodal_fit):
    rep, _ = bimodal_fit
    assert rep.bgev.converged and rep.gev.converged
    assert rep.bgev.neg2loglik <= rep.gev.neg2loglik + 1e-6
    assert rep.bgev.ks < rep.gev.ks
    assert rep.winner["neg2loglik"] == "BGEV"


def test_gev_data_yields_small_delta():
    gen = BgevParams(xi=0.3, mu=0.5, sigma=1.0, delta=0.0)
    b = block_maxima(sample(400, gen, seed=91), 1)
    rep = fit_and_compare(b)
    assert abs(rep.bgev.delta) < 0.35
    assert rep.bgev.neg2loglik <= rep.gev.neg2loglik + 1e-6
    assert rep.gev.neg2loglik - rep.bgev.neg2loglik < 6.0  # nested, no real gain


def test_report_shape(bimodal_fit):
    rep, _ = bimodal_fit
    assert rep.gev.delta == 0.0
    for row in (rep.bgev, rep.gev):
        for stat in ("ks", "ad", "neg2loglik"):
            assert np.isfinite(getattr(row, stat))
    assert set(rep.winner) == {"ks", "ad", "neg2loglik"}
    text = comparison_to_text(rep)
    assert "BGEV" in text and "GEV" in text
    csv_text = comparison_to_csv(rep)
    assert csv_text.splitlines()[0] == "model,mu,sigma,xi,delta,ks,ad,neg2loglik,converged"
    assert len(csv_text.splitlines()) == 3


def test_nesting_on_bundled_data():
    s = ingest(bundled_path("bimodal"))
    b = standardize(block_maxima(s, 24))
    rep = fit_and_compare(b, bgev_start=START_PRESETS["wind"])
    assert rep.bgev.neg2loglik <= rep.gev.neg2loglik + 1e-6
    assert rep.bgev.ks < rep.gev.ks


def test_explicit_gev_start_accepted(bimodal_fit):
    _, b = bimodal_fit
    rep = fit_and_compare(b, gev_start=GevParams(xi=-0.2, mu=0.0, sigma=1.0))
    assert rep.gev.converged


# ----------------------------------------------------------------------- plot data


def test_emit_plot_data_files(tmp_path, bimodal_fit):
    rep, b = bimodal_fit
    paths = emit_plot_data(rep, b, tmp_path)
    names = {p.name for p in paths}
    assert names == {"histogram.csv", "density.csv", "qq_bgev.csv", "qq_gev.csv"}

    dens = np.genfromtxt(tmp_path / "density.csv", delimiter=",", names=True)
    grid, pdf_b = dens["x"], dens["pdf_bgev"]
    mass_curve = np.trapezoid(pdf_b, grid)
    mass_model = float(cdf(grid[-1], rep.bgev.params_internal)) - float(
        cdf(grid[0], rep.bgev.params_internal)
    )
    assert abs(mass_curve - mass_model) < 0.01

    qq = np.genfromtxt(tmp_path / "qq_bgev.csv", delimiter=",", names=True)
    assert qq.shape[0] == b.maxima.size

    hist = np.genfromtxt(tmp_path / "histogram.csv", delimiter=",", names=True)
    assert int(hist["count"].sum()) == b.maxima.size


def test_emit_plot_data_deterministic(tmp_path, bimodal_fit):
    rep, b = bimodal_fit
    d1, d2 = tmp_path / "one", tmp_path / "two"
    emit_plot_data(rep, b, d1, bins=20)
    emit_plot_data(rep, b, d2, bins=20)
    for name in ("histogram.csv", "density.csv", "qq_bgev.csv", "qq_gev.csv"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()
