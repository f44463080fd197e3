"""Experiment commands writing series and records to an output directory."""
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from dnls_trains.config import ExperimentConfig, parse_config
from dnls_trains.errors import (ContractionError, DegenerateFitError,
                                DivergenceError, DnlsTrainsError)
from dnls_trains.fixedpoint import fit_distance, picard_solve, synthesize
from dnls_trains.serialize import write_record, write_series
from dnls_trains.trains import (drift_experiment, empirical_t0,
                                residual_decay)

logger = logging.getLogger(__name__)

COMMANDS = ("profile", "residual", "evolve", "fixpoint")

EXIT_SUCCESS = 0
EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3
EXIT_DIVERGENCE = 4
EXIT_CONTRACTION = 5


def exit_code(error: BaseException) -> int:
    """Command line exit code of an experiment error."""
    if isinstance(error, DegenerateFitError):
        return EXIT_DEGENERATE
    if isinstance(error, DivergenceError):
        return EXIT_DIVERGENCE
    if isinstance(error, ContractionError):
        return EXIT_CONTRACTION
    if isinstance(error, (DnlsTrainsError, ValueError)):
        return EXIT_VALIDATION
    raise error


def _output_directory(out: Union[str, Path]) -> Path:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_profile(config: ExperimentConfig, out: Union[str, Path]) -> List[Path]:
    """Sample every member and the train sum at the window start T0.

    Writes ``profile.csv`` with the column x and the columns _re, _im and
    _abs of every member (``member0``, ...) and of the sum (``train``).
    """
    spec = config.build_spec()
    grid = config.build_grid()
    out = _output_directory(out)
    t = config.T0
    spec.check_tails(t, grid)

    columns: Dict[str, np.ndarray] = {"x": grid.x}

    def add(name, values):
        columns[f"{name}_re"] = values.real
        columns[f"{name}_im"] = values.imag
        columns[f"{name}_abs"] = np.abs(values)

    for index, member in enumerate(spec.members):
        add(f"member{index}", member.field(t, grid).values)
    add("train", spec.profile(t, grid).values)

    path = write_series(pd.DataFrame(columns), out / "profile.csv")
    logger.info("Wrote %d profile samples to %s", grid.N, path)
    return [path]


def cmd_residual(
    config: ExperimentConfig,
    out: Union[str, Path]
) -> List[Path]:
    """Residual decay on ``samples`` times spanning [T0, T1].

    Writes ``residual.csv`` and ``residual.xml``; the record holds the
    fitted rate, its comparison with λ and the empirical T₀.
    """
    spec = config.build_spec()
    grid = config.build_grid()
    config.require("T1")
    out = _output_directory(out)

    times = np.linspace(config.T0, config.T1, config.samples)
    series, fit = residual_decay(spec, grid, times, norm=config.norm)
    lam = spec.decay_rate
    series_path = write_series(series, out / "residual.csv")
    record_path = write_record(
        out / "residual.xml", "residual", config.to_element(), spec,
        {"fit": {
            "norm": config.norm,
            "fitted_rate": fit.rate,
            "amplitude": fit.amplitude,
            "rsquared": fit.rsquared,
            "window": fit.window,
            "rate_exceeds_lambda": fit.rate >= lam,
            "empirical_T0": empirical_t0(series["t"], series["s"], lam),
        }}
    )
    return [series_path, record_path]


def cmd_evolve(config: ExperimentConfig, out: Union[str, Path]) -> List[Path]:
    """Drift of the evolved train from its profile on [T0, T1].

    Writes ``drift.csv`` and ``drift.xml``; the record flags a failed
    separation gate.
    """
    spec = config.build_spec()
    grid = config.build_grid()
    config.require("T1", "dt")
    out = _output_directory(out)

    result = drift_experiment(
        spec, grid, config.T0, config.T1, config.dt, gate=config.gate,
        stride=config.stride
    )
    observables = result.trajectory.observables
    series = pd.DataFrame({
        "t": result.times,
        "distance": result.distance,
        "mass": observables["mass"],
        "h1_norm": observables["h1_norm"],
    })
    series_path = write_series(series, out / "drift.csv")
    record_path = write_record(
        out / "drift.xml", "evolve", config.to_element(), spec,
        {
            "gate": {
                "value": result.gate_value,
                "threshold": result.gate,
                "passed": result.gate_passed,
            },
            "drift": {
                "max_distance": float(np.max(result.distance)),
                "final_distance": float(result.distance[-1]),
            },
        }
    )
    return [series_path, record_path]


def _distance_window(
    spec,
    T0: float,
    Tmax: float
) -> Optional[Tuple[float, float]]:
    """[T0, Tmax - 2/λ] when it is nonempty."""
    if len(spec.members) < 2:
        return None
    end = Tmax - 2 / spec.decay_rate
    return (T0, end) if end > T0 else None


def cmd_fixpoint(
    config: ExperimentConfig,
    out: Union[str, Path]
) -> List[Path]:
    """Picard construction of the train on [T0, Tmax] and its synthesis.

    Writes ``picard.xml`` and ``synthesis.csv``. A contraction failure still
    writes the record of the iterations before the error is raised again.
    """
    spec = config.build_spec()
    grid = config.build_grid()
    config.require("Tmax", "dt_s")
    out = _output_directory(out)
    record_path = out / "picard.xml"

    def record(report, sections=None):
        sections = dict(sections or {})
        sections["picard"] = {
            "iterates": report.iterates,
            "converged": report.converged,
            "final_defect": report.final_defect,
            "gate_value": report.gate_value,
            "increments": report.increments,
            "ratios": report.ratios,
            "xnorms": report.xnorms,
        }
        write_record(record_path, "fixpoint", config.to_element(), spec,
                     sections)

    try:
        eta, report = picard_solve(
            spec, config.T0, config.Tmax, config.dt_s, grid,
            max_iters=config.max_iters, tol=config.picard_tolerance,
            gate=config.gate
        )
    except ContractionError as error:
        record(error.report)
        raise

    trajectory = synthesize(spec, eta)
    lam = spec.decay_rate if len(spec.members) > 1 else 0.0
    ball = np.exp(lam * eta.times) * trajectory.observables["distance"]
    series = pd.DataFrame({
        "t": trajectory.times,
        "distance": trajectory.observables["distance"],
        "relation_defect": trajectory.observables["relation_defect"],
    })
    series_path = write_series(series, out / "synthesis.csv")

    synthesis = {
        "max_relation_defect": float(
            np.max(trajectory.observables["relation_defect"])
        ),
        "max_weighted_distance": float(np.max(ball)),
    }
    window = _distance_window(spec, config.T0, config.Tmax)
    if window is not None:
        try:
            fit = fit_distance(trajectory, window)
        except DegenerateFitError as error:
            logger.warning("Distance fit skipped: %s", error)
        else:
            synthesis.update({
                "distance_rate": fit.rate,
                "kappa": fit.amplitude,
                "distance_rsquared": fit.rsquared,
                "distance_window": fit.window,
            })
    record(report, {"synthesis": synthesis})
    return [record_path, series_path]


_COMMAND_FUNCTIONS = {
    "profile": cmd_profile,
    "residual": cmd_residual,
    "evolve": cmd_evolve,
    "fixpoint": cmd_fixpoint,
}


def run_command(
    command: str,
    config: ExperimentConfig,
    out: Union[str, Path]
) -> List[Path]:
    """Run one of :data:`COMMANDS`.

    :raises ValueError: if the command is unknown.
    """
    if command not in _COMMAND_FUNCTIONS:
        raise ValueError(
            f"Command has to be one of {COMMANDS}, got '{command}'."
        )
    logger.info("Running %s into %s", command, out)
    return _COMMAND_FUNCTIONS[command](config, out)


def _sweep_one(arguments) -> Tuple[str, int, str]:
    command, source, overrides, out = arguments
    try:
        config = parse_config(source, overrides)
        run_command(command, config, out)
    except (DnlsTrainsError, ValueError) as error:
        return str(source), exit_code(error), str(error)
    return str(source), EXIT_SUCCESS, ""


def sweep(
    command: str,
    sources: Sequence[Union[str, Path]],
    out: Union[str, Path],
    overrides: Sequence[str] = (),
    workers: Optional[int] = None
) -> List[Tuple[str, int, str]]:
    """Run a command on independent configurations in a process pool.

    Each configuration writes to ``out/<config file stem>``.

    :returns: (config, exit code, message) per configuration, in order.
    """
    out = _output_directory(out)
    stems = [Path(source).stem for source in sources]
    if len(set(stems)) != len(stems):
        raise ValueError(
            "Swept configuration files need distinct names, got "
            f"{sorted(stems)}."
        )
    tasks = [
        (command, str(source), list(overrides), str(out / stem))
        for source, stem in zip(sources, stems)
    ]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(_sweep_one, tasks))
    for source, code, message in results:
        if code != EXIT_SUCCESS:
            logger.warning("%s failed with exit code %d: %s", source, code,
                           message)
    return results
