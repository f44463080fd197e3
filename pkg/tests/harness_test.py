"""Tests for the experiment commands."""
import pandas as pd
import pytest
from lxml import etree

from dnls_trains.config import parse_config
from dnls_trains.errors import (ContractionError, DegenerateFitError,
                                DivergenceError, InvalidArgumentError,
                                ValidationError)
from dnls_trains.harness import (EXIT_CONTRACTION, EXIT_DEGENERATE,
                                 EXIT_DIVERGENCE, EXIT_VALIDATION, exit_code,
                                 run_command, sweep)

SINGLE_CONFIG = """<experiment>
  <train variant="dnls1" b="0">
    <soliton omega="1" c="0.5"/>
  </train>
  <grid L="80" N="256"/>
  <window T0="0" T1="0.5" Tmax="1"/>
  <step dt="0.01" dt_s="0.1" stride="10"/>
  <residual samples="4"/>
</experiment>
"""

FAMILY_CONFIG = """<experiment>
  <train variant="dnls1" b="0">
    <family d="-1 -2" h="1 1" M="8"/>
  </train>
  <grid L="256" N="2048" center="-56"/>
  <window T0="2" T1="6"/>
  <residual samples="9"/>
</experiment>
"""


@pytest.mark.parametrize(
    ("error", "code"),
    [
        (ValidationError(["Soliton 1: broken."]), EXIT_VALIDATION),
        (InvalidArgumentError("Bad grid."), EXIT_VALIDATION),
        (ValueError("'nls' is not a valid EquationVariant"),
         EXIT_VALIDATION),
        (DegenerateFitError("No decay."), EXIT_DEGENERATE),
        (DivergenceError("Blow-up.", time=1.0), EXIT_DIVERGENCE),
        (ContractionError("Not contracting.", report=None),
         EXIT_CONTRACTION),
    ]
)
def test_exit_code(error, code):
    """Test the exit codes of experiment errors."""
    assert exit_code(error) == code


def test_exit_code_of_unexpected_error():
    """Test that unexpected errors are raised again."""
    with pytest.raises(KeyError):
        exit_code(KeyError("x"))


def test_profile(tmp_path):
    """Test the sampled profile of a single soliton."""
    config = parse_config(SINGLE_CONFIG.encode())
    paths = run_command("profile", config, tmp_path / "out")
    assert paths == [tmp_path / "out" / "profile.csv"]

    frame = pd.read_csv(paths[0])
    assert len(frame) == 256
    assert list(frame.columns) == [
        "x", "member0_re", "member0_im", "member0_abs",
        "train_re", "train_im", "train_abs",
    ]
    assert frame["train_abs"].tolist() == frame["member0_abs"].tolist()
    assert frame["train_abs"].max() == pytest.approx(5 ** 0.5, rel=1e-3)


def test_kink_profile(tmp_path):
    """Test that the kink column reaches the plateau ζ."""
    source = b"""<experiment>
      <train variant="dnls2" b="0.125">
        <soliton omega="16.25" c="8" x0="20"/>
        <kink c0="1"/>
      </train>
      <grid L="256" N="2048" center="25"/>
    </experiment>"""
    paths = run_command("profile", parse_config(source), tmp_path)
    frame = pd.read_csv(paths[0])
    assert frame["member0_abs"].iloc[0] == pytest.approx(2 ** 0.5, abs=1e-6)
    assert frame["member0_abs"].iloc[-1] < 1e-10
    assert frame["train_abs"].iloc[0] == pytest.approx(2 ** 0.5, abs=1e-6)


def test_residual(tmp_path):
    """Test the residual record of a separated family."""
    config = parse_config(FAMILY_CONFIG.encode())
    series_path, record_path = run_command("residual", config, tmp_path)

    series = pd.read_csv(series_path)
    assert len(series) == 9
    assert list(series.columns) == ["t", "chi1", "chi2", "s"]

    record = etree.parse(str(record_path)).getroot()
    assert record.get("kind") == "residual"
    fit = record.find("fit")
    assert fit.get("norm") == "h2"
    assert fit.get("rate_exceeds_lambda") == "true"
    assert float(fit.get("fitted_rate")) >= 0.5
    assert record.find("derived").get("lambda") == "0.5"
    assert record.find("experiment/grid").get("N") == "2048"


def test_residual_single_soliton(tmp_path):
    """Test that a single soliton has no residual decay."""
    config = parse_config(SINGLE_CONFIG.encode())
    with pytest.raises(DegenerateFitError):
        run_command("residual", config, tmp_path)


def test_evolve(tmp_path):
    """Test the drift series and record of a single soliton."""
    source = SINGLE_CONFIG.replace('N="256"', 'N="2048"').replace(
        'dt="0.01" dt_s="0.1" stride="10"',
        'dt="0.001" dt_s="0.1" stride="100"'
    )
    config = parse_config(source.encode())
    series_path, record_path = run_command("evolve", config, tmp_path)

    series = pd.read_csv(series_path)
    assert list(series.columns) == ["t", "distance", "mass", "h1_norm"]
    assert series["t"].tolist() == pytest.approx([0, 0.1, 0.2, 0.3, 0.4,
                                                  0.5])
    assert series["distance"].max() <= 1e-5

    gate = etree.parse(str(record_path)).getroot().find("gate")
    assert gate.get("passed") == "true"
    assert gate.get("value") == ""


def test_evolve_needs_step(tmp_path):
    """Test that the time step has to be configured."""
    source = SINGLE_CONFIG.replace('dt="0.01" ', "")
    with pytest.raises(InvalidArgumentError) as error:
        run_command("evolve", parse_config(source.encode()), tmp_path)
    assert str(error.value) == (
        "Configuration setting 'dt' is needed by this command."
    )


def test_fixpoint_single_soliton(tmp_path):
    """Test the Picard record of a single soliton."""
    config = parse_config(SINGLE_CONFIG.encode())
    record_path, series_path = run_command("fixpoint", config, tmp_path)

    record = etree.parse(str(record_path)).getroot()
    picard = record.find("picard")
    assert picard.get("iterates") == "1"
    assert picard.get("converged") == "true"
    assert picard.find("increments").text == "0"
    assert record.find("synthesis").get("distance_rate") is None
    assert len(pd.read_csv(series_path)) == 11


def test_unknown_command():
    """Test that unknown commands are rejected."""
    config = parse_config(SINGLE_CONFIG.encode())
    with pytest.raises(ValueError) as error:
        run_command("plot", config, "out")
    assert str(error.value) == (
        "Command has to be one of ('profile', 'residual', 'evolve', "
        "'fixpoint'), got 'plot'."
    )


def test_sweep(write_config, tmp_path):
    """Test that a sweep reports every configuration."""
    valid = write_config(SINGLE_CONFIG, "valid.xml")
    invalid = write_config(
        SINGLE_CONFIG.replace('c="0.5"', 'c="3"'), "invalid.xml"
    )
    results = sweep("profile", [valid, invalid], tmp_path / "sweep",
                    workers=1)

    assert [(source, code) for source, code, _ in results] == [
        (str(valid), 0), (str(invalid), EXIT_VALIDATION)
    ]
    assert results[1][2].startswith("Soliton 1:")
    assert (tmp_path / "sweep" / "valid" / "profile.csv").is_file()
    assert not (tmp_path / "sweep" / "invalid").exists()


def test_sweep_needs_distinct_names(write_config, tmp_path):
    """Test that swept files need distinct names."""
    path = write_config(SINGLE_CONFIG)
    with pytest.raises(ValueError) as error:
        sweep("profile", [path, path], tmp_path / "sweep")
    assert str(error.value) == (
        "Swept configuration files need distinct names, got "
        "['experiment', 'experiment']."
    )
