"""Experiment harness: seeded trial grids, CSV persistence, and ad-hoc fits.

The four experiments sweep sequence length (exp1), dictionary length under
two noise structures (exp2), the tuning parameter (exp3), and sequence
length under heavy-tailed noise (exp4). Every trial plants an instance,
solves it with the budget set to the realized encoding mass (except the
exp3 sweep), and records the reconstruction risks next to the four bound
evaluations for that grid point.

Persistence is CSV only. Files start with a ``# csdl_csv_v1`` line followed
by one ``#`` metadata line of key=value pairs, then the column header.
Floats are printed with 12 significant digits, ``.`` decimal separator and
``\\n`` line endings. Rows are computed from per-trial seeds derived as a
hash of (master_seed, grid_index, trial_index) and sorted before writing,
so output bytes do not depend on worker count or scheduling. Wall-clock
timing is off by default for the same reason; ``timing="wall"`` records
real per-trial times at the cost of byte-reproducibility of that column.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bounds import (
    BoundInputs,
    lb_componentwise,
    lb_joint,
    trivial_estimator_risks,
    ub_componentwise,
    ub_joint,
    ub_penalized,
)
from .exceptions import InputError, OutputError, ParameterError
from .seeding import trial_seed
from .solver import (
    SolverConfig,
    proof_lambda_prime,
    recommended_lambda_prime,
    solve_constrained,
    solve_penalized,
)
from .synthesis import NoiseModel, plant_instance
from .tensor_ops import lpq_norm

__all__ = [
    "CSV_VERSION",
    "ExperimentConfig",
    "GridPoint",
    "run_experiment",
    "run_fit",
    "summarize",
    "read_table",
]

CSV_VERSION = "csdl_csv_v1"

EXPERIMENTS = ("exp1", "exp2", "exp3", "exp4")
SPARSITY_RULES = ("constant_5", "floor_sqrt_N", "floor_N_over_10")
PROFILES = ("desk", "full")
NOISE_FLAGS = ("iid", "correlated")

TRIAL_COLUMNS = [
    "experiment",
    "grid_index",
    "N",
    "n",
    "K",
    "sparsity",
    "lambda",
    "noise_kind",
    "trial",
    "seed",
    "mse_csdl",
    "mse_zero",
    "mse_identity",
    "final_objective",
    "ub_componentwise",
    "ub_joint",
    "lb_componentwise",
    "lb_joint",
    "wall_time_s",
]

_RISK_COLUMNS = ("mse_csdl", "mse_zero", "mse_identity")
_BOUND_COLUMNS = ("ub_componentwise", "ub_joint", "lb_componentwise", "lb_joint")
_GROUP_COLUMNS = ("experiment", "grid_index", "N", "n", "K", "sparsity", "lambda", "noise_kind")

SUMMARY_COLUMNS = (
    list(_GROUP_COLUMNS)
    + ["n_trials"]
    + [f"{risk}_{stat}" for risk in _RISK_COLUMNS for stat in ("mean", "stderr", "min", "max")]
    + list(_BOUND_COLUMNS)
    + ["stderr_degenerate"]
)

FAILURE_COLUMNS = ["experiment", "grid_index", "trial", "seed", "error"]

_DEFAULT_N = 1000
_DEFAULT_SPARSITY = 100
_DEFAULT_n = 10
_DEFAULT_K = 5
_DEFAULT_SIGMA = 0.1

DESK_TRIALS = {"exp1": 50, "exp2": 30, "exp3": 50, "exp4": 50}
FULL_TRIALS = 1000


def _log_grid(lo_exp: float, hi_exp: float, count: int) -> list[int]:
    return [int(round(10.0**x)) for x in np.linspace(lo_exp, hi_exp, count)]


def sparsity_for(rule: str, N: int) -> int:
    if rule == "constant_5":
        return 5
    if rule == "floor_sqrt_N":
        return math.isqrt(N)
    if rule == "floor_N_over_10":
        return N // 10
    raise ParameterError(f"sparsity rule must be one of {SPARSITY_RULES}, got {rule!r}")


@dataclass(frozen=True)
class GridPoint:
    """One parameter combination; ``lam=None`` means use the realized encoding mass."""

    index: int
    N: int
    n: int
    K: int
    sparsity: int
    lam: float | None
    noise: NoiseModel


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    trials: int | None = None  # None: profile default
    master_seed: int = 0
    out_dir: str = "out"
    profile: str = "desk"
    workers: int = 1
    sparsity_rule: str | None = None  # exp1/exp4 only
    noise_kind: str | None = None  # exp2 only: iid | correlated
    timing: str = "off"  # off | wall

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ParameterError(f"experiment must be one of {EXPERIMENTS}, got {self.experiment!r}")
        if self.trials is not None and self.trials < 1:
            raise ParameterError(f"trials must be >= 1, got {self.trials}")
        if self.master_seed < 0:
            raise ParameterError("master_seed must be a non-negative integer")
        if self.profile not in PROFILES:
            raise ParameterError(f"profile must be one of {PROFILES}, got {self.profile!r}")
        if self.workers < 1:
            raise ParameterError(f"workers must be >= 1, got {self.workers}")
        if self.sparsity_rule is not None and self.sparsity_rule not in SPARSITY_RULES:
            raise ParameterError(f"sparsity rule must be one of {SPARSITY_RULES}")
        if self.noise_kind is not None and self.noise_kind not in NOISE_FLAGS:
            raise ParameterError(f"noise must be one of {NOISE_FLAGS}, got {self.noise_kind!r}")
        if self.timing not in ("off", "wall"):
            raise ParameterError(f"timing must be 'off' or 'wall', got {self.timing!r}")

    @property
    def effective_trials(self) -> int:
        if self.trials is not None:
            return self.trials
        return DESK_TRIALS[self.experiment] if self.profile == "desk" else FULL_TRIALS


def build_grid(cfg: ExperimentConfig) -> tuple[list[GridPoint], dict]:
    """Grid points plus the metadata recorded in the CSV header."""
    gauss = NoiseModel(kind="iid_gaussian", sigma=_DEFAULT_SIGMA)
    meta = {
        "experiment": cfg.experiment,
        "profile": cfg.profile,
        "trials": cfg.effective_trials,
        "master_seed": cfg.master_seed,
        "sigma": _DEFAULT_SIGMA,
        "K": _DEFAULT_K,
    }
    points: list[GridPoint] = []

    if cfg.experiment == "exp1":
        rule = cfg.sparsity_rule or "floor_sqrt_N"
        Ns = [100, 316, 1000, 3162] if cfg.profile == "desk" else _log_grid(2, 4, 7)
        for i, N in enumerate(Ns):
            points.append(
                GridPoint(i, N, _DEFAULT_n, _DEFAULT_K, sparsity_for(rule, N), None, gauss)
            )
        meta["sparsity_rule"] = rule

    elif cfg.experiment == "exp2":
        flag = cfg.noise_kind or "iid"
        noise = gauss if flag == "iid" else NoiseModel(kind="correlated_gaussian", sigma=_DEFAULT_SIGMA)
        N = 2000 if cfg.profile == "desk" else 5000
        ns = [10, 32, 100, 316] if cfg.profile == "desk" else _log_grid(0.5, 3, 6)
        for i, n in enumerate(ns):
            points.append(GridPoint(i, N, n, _DEFAULT_K, _DEFAULT_SPARSITY, None, noise))
        meta["noise"] = flag

    elif cfg.experiment == "exp3":
        N = _DEFAULT_N
        sparsity = sparsity_for("floor_sqrt_N", N)
        if cfg.profile == "desk":
            lams = [0.1, 1.0, float(sparsity), 10.0 * sparsity, 100.0 * sparsity]
        else:
            lams = [10.0**x for x in np.linspace(-2, 4, 7)]
        for i, lam in enumerate(lams):
            points.append(GridPoint(i, N, _DEFAULT_n, _DEFAULT_K, sparsity, lam, gauss))
        meta["sparsity_rule"] = "floor_sqrt_N"

    else:  # exp4
        rule = cfg.sparsity_rule or "floor_N_over_10"
        noise = NoiseModel(kind="generalized_pareto", sigma=_DEFAULT_SIGMA)
        Ns = [100, 1000] if cfg.profile == "desk" else _log_grid(2, 4, 7)
        for i, N in enumerate(Ns):
            points.append(
                GridPoint(i, N, _DEFAULT_n, _DEFAULT_K, sparsity_for(rule, N), None, noise)
            )
        meta["sparsity_rule"] = rule

    return points, meta


def _run_trial(task) -> dict:
    """One planted instance, one solve; returns a per-trial row dict."""
    gp, trial_index, seed, timing = task
    t0 = time.perf_counter() if timing == "wall" else None
    instance = plant_instance(gp.N, gp.n, gp.K, gp.sparsity, gp.noise, seed)
    lam = float(gp.lam) if gp.lam is not None else lpq_norm(instance.R, 1, 1)
    cfg = SolverConfig(mode="constrained", n=gp.n, K=gp.K, lam=lam, seed=seed)
    result = solve_constrained(instance.Y, cfg)
    diff = result.X_hat - instance.X
    risk_zero, risk_identity = trivial_estimator_risks(instance)
    b = BoundInputs(N=gp.N, n=gp.n, lam=lam, sigma=gp.noise.sigma, K=gp.K)
    heavy_tail = gp.noise.kind == "generalized_pareto"
    return {
        "experiment": None,  # filled by the caller
        "grid_index": gp.index,
        "N": gp.N,
        "n": gp.n,
        "K": gp.K,
        "sparsity": gp.sparsity,
        "lambda": lam,
        "noise_kind": gp.noise.kind,
        "trial": trial_index,
        "seed": seed,
        "mse_csdl": float(diff @ diff) / gp.N,
        "mse_zero": risk_zero,
        # The identity estimator has infinite expected squared error under the
        # heavy-tailed model, so exp4 leaves the column empty.
        "mse_identity": None if heavy_tail else risk_identity,
        "final_objective": result.final_objective,
        "ub_componentwise": ub_componentwise(b),
        "ub_joint": ub_joint(b),
        "lb_componentwise": lb_componentwise(b),
        "lb_joint": lb_joint(b),
        "wall_time_s": (time.perf_counter() - t0) if t0 is not None else 0.0,
    }


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.12g}"


def _meta_line(meta: dict) -> str:
    return "# " + " ".join(f"{k}={_fmt(v)}" for k, v in meta.items())


def _write_table(path: Path, meta: dict, columns: list[str], rows: list[dict]) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(f"# {CSV_VERSION}\n")
            f.write(_meta_line(meta) + "\n")
            f.write(",".join(columns) + "\n")
            for row in rows:
                f.write(",".join(_fmt(row.get(c)) for c in columns) + "\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc


def read_table(path) -> tuple[dict, list[str], list[dict]]:
    """Read a versioned CSV back into (meta, columns, rows-of-strings)."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not lines or lines[0].strip() != f"# {CSV_VERSION}":
        raise InputError(f"{path}: missing '# {CSV_VERSION}' header line")
    meta: dict[str, str] = {}
    i = 1
    while i < len(lines) and lines[i].startswith("#"):
        for token in lines[i][1:].split():
            if "=" in token:
                key, _, value = token.partition("=")
                meta[key] = value
        i += 1
    if i >= len(lines):
        raise InputError(f"{path}: no column header found")
    columns = lines[i].split(",")
    rows = []
    for line_no, line in enumerate(lines[i + 1 :], start=i + 2):
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != len(columns):
            raise InputError(
                f"{path} line {line_no}: expected {len(columns)} cells, got {len(cells)}"
            )
        rows.append(dict(zip(columns, cells)))
    return meta, columns, rows


def _trials_basename(cfg: ExperimentConfig, meta: dict) -> str:
    if cfg.experiment == "exp2":
        return f"exp2_{meta['noise']}"
    if cfg.experiment in ("exp1", "exp4"):
        return f"{cfg.experiment}_{meta['sparsity_rule']}"
    return cfg.experiment


def run_experiment(cfg: ExperimentConfig) -> tuple[Path, Path]:
    """Run all grid points and persist per-trial and summary CSVs.

    Returns (trials_path, summary_path). A solver failure marks its whole
    grid point failed: the point's rows are dropped, one failure row is
    appended to ``<name>_failures.csv``, and the remaining grid points still
    run.
    """
    points, meta = build_grid(cfg)
    trials = cfg.effective_trials
    tasks = [
        (gp, t, trial_seed(cfg.master_seed, gp.index, t), cfg.timing)
        for gp in points
        for t in range(trials)
    ]

    outcomes: list[tuple] = []  # (grid_index, trial, row | None, error | None)
    if cfg.workers == 1:
        for task in tasks:
            outcomes.append(_attempt(task))
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(_attempt, tasks, chunksize=4))

    failed_points: dict[int, tuple] = {}
    rows = []
    for grid_index, trial, row, error in outcomes:
        if error is not None:
            if grid_index not in failed_points:
                failed_points[grid_index] = (grid_index, trial, error)
            continue
        rows.append(row)
    rows = [r for r in rows if r["grid_index"] not in failed_points]
    for row in rows:
        row["experiment"] = cfg.experiment
    rows.sort(key=lambda r: (r["grid_index"], r["trial"]))

    base = _trials_basename(cfg, meta)
    out_dir = Path(cfg.out_dir)
    trials_path = out_dir / f"{base}_trials.csv"
    summary_path = out_dir / f"{base}_summary.csv"
    _write_table(trials_path, {"kind": "trials", **meta}, TRIAL_COLUMNS, rows)

    if failed_points:
        failure_rows = [
            {
                "experiment": cfg.experiment,
                "grid_index": gi,
                "trial": trial,
                "seed": trial_seed(cfg.master_seed, gi, trial),
                "error": str(error).replace(",", ";").replace("\n", " "),
            }
            for gi, trial, error in sorted(failed_points.values())
        ]
        _write_table(
            out_dir / f"{base}_failures.csv",
            {"kind": "failures", **meta},
            FAILURE_COLUMNS,
            failure_rows,
        )

    summarize(trials_path, summary_path)
    return trials_path, summary_path


def _attempt(task):
    gp = task[0]
    trial = task[1]
    try:
        return gp.index, trial, _run_trial(task), None
    except Exception as exc:  # recorded, not fatal to the run
        return gp.index, trial, None, exc


def _stderr(values: np.ndarray) -> float:
    if values.size <= 1:
        return 0.0
    return float(values.std(ddof=1) / math.sqrt(values.size))


def summarize(input_path, output_path) -> Path:
    """Aggregate a per-trial CSV into one row per grid point.

    Emits mean, standard error, min and max for each risk column, copies the
    bound columns through, and flags groups where a single trial forces the
    stderr-equals-zero convention.
    """
    meta, columns, rows = read_table(input_path)
    missing = [c for c in TRIAL_COLUMNS if c not in columns]
    if missing:
        raise InputError(f"{input_path}: not a per-trial table, missing columns {missing}")

    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        groups.setdefault(tuple(row[c] for c in _GROUP_COLUMNS), []).append(row)

    out_rows = []
    for key in sorted(groups, key=lambda k: int(k[1])):
        members = groups[key]
        if not members:  # pragma: no cover - empty groups cannot arise from rows
            continue
        out = dict(zip(_GROUP_COLUMNS, key))
        out["n_trials"] = len(members)
        for risk in _RISK_COLUMNS:
            cells = [m[risk] for m in members if m[risk] != ""]
            if not cells:
                for stat in ("mean", "stderr", "min", "max"):
                    out[f"{risk}_{stat}"] = None
                continue
            values = np.array([float(c) for c in cells])
            out[f"{risk}_mean"] = values.mean()
            out[f"{risk}_stderr"] = _stderr(values)
            out[f"{risk}_min"] = values.min()
            out[f"{risk}_max"] = values.max()
        for bound in _BOUND_COLUMNS:
            out[bound] = float(members[0][bound])
        out["stderr_degenerate"] = 1 if len(members) == 1 else 0
        out_rows.append(out)

    output_path = Path(output_path)
    summary_meta = {"kind": "summary", **{k: v for k, v in meta.items() if k != "kind"}}
    _write_table(output_path, summary_meta, SUMMARY_COLUMNS, out_rows)
    return output_path


def _read_signal(path, column: str = "value") -> np.ndarray:
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not lines:
        raise InputError(f"{path} line 1: empty file, expected a '{column}' header")
    if lines[0].strip() != column:
        raise InputError(f"{path} line 1: expected header '{column}', got {lines[0]!r}")
    values = []
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            values.append(float(line))
        except ValueError as exc:
            raise InputError(f"{path} line {line_no}: not a number: {line!r}") from exc
    if not values:
        raise InputError(f"{path}: no data rows")
    signal = np.array(values)
    if not np.all(np.isfinite(signal)):
        bad = int(np.flatnonzero(~np.isfinite(signal))[0]) + 2
        raise InputError(f"{path} line {bad}: non-finite value")
    return signal


def run_fit(
    input_path,
    out_dir,
    n: int,
    K: int,
    lam: float | None = None,
    lam_prime: float | None = None,
    delta: float | None = None,
    sigma: float | None = None,
    truth_path=None,
    seed: int = 0,
    iterations: int = 200,
    step_scale: float = 0.01,
    proof_rule: bool = False,
) -> dict:
    """Fit one signal from a CSV file and persist the decomposition.

    Exactly one of ``lam`` (constrained), ``lam_prime`` (penalized), or
    ``delta`` with ``sigma`` (penalized at the recommended weight; the proof
    variant with its extra sqrt(n) when ``proof_rule``) selects the mode.
    Writes x_hat.csv, r_hat.csv (sparse triplets), d_hat.csv and report.csv
    into ``out_dir`` and returns the report as a dict.
    """
    selectors = sum(x is not None for x in (lam, lam_prime, delta))
    if selectors != 1:
        raise InputError("choose exactly one of: lam, lam_prime, delta (with sigma)")
    Y = _read_signal(input_path)
    N = Y.shape[0]

    if lam is not None:
        mode = "constrained"
        cfg = SolverConfig(
            mode=mode, n=n, K=K, lam=lam, seed=seed,
            iterations=iterations, step_scale=step_scale,
        )
        result = solve_constrained(Y, cfg)
    else:
        mode = "penalized"
        if lam_prime is None:
            if sigma is None:
                raise InputError("delta mode needs sigma")
            lam_prime = (
                proof_lambda_prime(sigma, n, N, delta)
                if proof_rule
                else recommended_lambda_prime(sigma, N, delta)
            )
        cfg = SolverConfig(
            mode=mode, n=n, K=K, lam_prime=lam_prime, seed=seed,
            iterations=iterations, step_scale=step_scale,
        )
        result = solve_penalized(Y, cfg)

    r_l11 = lpq_norm(result.R_hat, 1, 1)
    report: dict[str, object] = {
        "mode": mode,
        "N": N,
        "n": n,
        "K": K,
        "seed": seed,
        "iterations": iterations,
        "final_objective": result.final_objective,
        "r_hat_l11": r_l11,
    }
    if mode == "constrained":
        report["lambda"] = lam
    else:
        report["lambda_prime"] = lam_prime
    if sigma is not None:
        cert_lam = lam if lam is not None else r_l11
        b = BoundInputs(N=N, n=n, lam=cert_lam, sigma=sigma, K=K, delta=delta)
        report["certificate_lambda"] = cert_lam
        report["ub_componentwise"] = ub_componentwise(b)
        report["ub_joint"] = ub_joint(b)
        report["lb_componentwise"] = lb_componentwise(b)
        report["lb_joint"] = lb_joint(b)
        if delta is not None:
            report["ub_penalized"] = ub_penalized(b)
    if truth_path is not None:
        X = _read_signal(truth_path)
        if X.shape[0] != N:
            raise InputError(
                f"truth length {X.shape[0]} does not match input length {N}"
            )
        diff = result.X_hat - X
        eps = Y - X
        report["mse_fit"] = float(diff @ diff) / N
        report["mse_zero"] = float(X @ X) / N
        report["mse_identity"] = float(eps @ eps) / N

    out_dir = Path(out_dir)
    meta = {"kind": "fit", "mode": mode, "N": N, "n": n, "K": K, "seed": seed}
    _write_table(
        out_dir / "x_hat.csv", meta, ["value"], [{"value": v} for v in result.X_hat]
    )
    nz_rows, nz_cols = np.nonzero(result.R_hat)
    _write_table(
        out_dir / "r_hat.csv",
        meta,
        ["row", "col", "value"],
        [
            {"row": int(i), "col": int(j), "value": result.R_hat[i, j]}
            for i, j in zip(nz_rows, nz_cols)
        ],
    )
    _write_table(
        out_dir / "d_hat.csv",
        meta,
        [f"atom_{k}" for k in range(K)],
        [
            {f"atom_{k}": result.D_hat[i, k] for k in range(K)}
            for i in range(n)
        ],
    )
    _write_table(
        out_dir / "report.csv",
        meta,
        ["key", "value"],
        [{"key": k, "value": v} for k, v in report.items()],
    )
    return report
