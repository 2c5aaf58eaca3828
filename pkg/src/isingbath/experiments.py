"""Figure scenarios, parameter sweeps and time-series diagnostics."""
from __future__ import annotations

import dataclasses
import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

from .bath import BathModes, ChainSpec, CouplingNorm, Placement, cached_bath_modes
from .defects import Basis, DefectState, evolve_series, product_state, series_to_standard, write_state_series
from .dephasing import Occupation, dephasing_coefficients, phase_rates
from .entanglement import concurrence_values
from .spectral import DEFAULT_BROADENING, dfs_feasibility, local_minima, spectral_density


class Scenario(str, enum.Enum):
    FIG1 = "fig1"
    FIG2 = "fig2"
    FIG3 = "fig3"
    FIG4 = "fig4"
    CUSTOM = "custom"


class InvariantError(RuntimeError):
    """A computed state or series broke a physical invariant."""


@dataclass
class ExperimentConfig:
    scenario: Scenario = Scenario.CUSTOM
    J: float = 0.2
    gamma: float = 0.04
    T: float = 1e-5
    h: float = 0.0
    N: int = 1000
    l: int = 1
    placement: Placement = Placement.DISTANT
    alpha_A: float = 0.0
    alpha_B: float = 0.0
    alpha_grid: list = field(default_factory=lambda: [k * math.pi / 8 for k in range(11)])
    l_values: list = field(default_factory=lambda: [1])
    gammas: list = field(default_factory=list)
    Js: list = field(default_factory=list)
    N_list: list = field(default_factory=lambda: [500, 1000])
    t_max: float | None = None
    n_periods: float = 4.0
    max_points: int = 20000
    out_dir: str | None = None
    epsilon: float = 1e-3
    coupling_norm: CouplingNorm = CouplingNorm.PAPER
    occupation: Occupation = Occupation.PLUS
    broadening: float = DEFAULT_BROADENING
    threads: int = 1
    cache_dir: str | None = None

    def __post_init__(self):
        self.scenario = Scenario(self.scenario)
        self.placement = Placement(self.placement)
        self.coupling_norm = CouplingNorm(self.coupling_norm)
        self.occupation = Occupation(self.occupation)
        if not 0.0 < self.epsilon < 0.1:
            raise ValueError(f"epsilon={self.epsilon} must lie in (0, 0.1)")
        for name in ("alpha_grid", "l_values", "N_list"):
            if not getattr(self, name):
                raise ValueError(f"{name} must not be empty")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @classmethod
    def for_scenario(cls, scenario, **overrides) -> "ExperimentConfig":
        scenario = Scenario(scenario)
        base = dict(scenario=scenario, J=0.2, gamma=0.04, T=1e-5)
        if scenario is Scenario.FIG1:
            base.update(placement=Placement.SAME_SITE, l=10, l_values=[10],
                        gammas=[0.04, 0.02, 0.01], Js=[0.16, 0.08, 0.04])
        elif scenario is Scenario.FIG2:
            base.update(placement=Placement.SAME_SITE, l=10, l_values=[10], n_periods=2.0, max_points=4000)
        elif scenario is Scenario.FIG3:
            base.update(placement=Placement.DISTANT, l_values=[1, 2, 3, 4, 5, 6], n_periods=3.0)
        elif scenario is Scenario.FIG4:
            base.update(placement=Placement.DISTANT, T=1e-4, l_values=[1, 2, 3, 4])
        base.update(overrides)
        return cls(**base)

    def chain_spec(self, **changes) -> ChainSpec:
        kw = dict(J=self.J, gamma=self.gamma, T=self.T, N=self.N, l=self.l,
                  placement=self.placement, coupling_norm=self.coupling_norm)
        kw.update(changes)
        return ChainSpec(**kw)


@dataclass
class PointRecord:
    params: dict
    max_concurrence: float
    onset_time: float | None
    period: float | None
    series_file: str | None = None

    @property
    def onset_label(self) -> str:
        return "no onset in window" if self.onset_time is None else f"{self.onset_time:.17g}"


@dataclass
class SweepResult:
    scenario: Scenario
    records: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)
    files: list = field(default_factory=list)


# -- config file -------------------------------------------------------------

_LIST_FIELDS = {"alpha_grid": float, "l_values": int, "gammas": float, "Js": float, "N_list": int}


def _coerce(name, raw: str):
    ftype = {f.name: f.type for f in dataclasses.fields(ExperimentConfig)}[name]
    raw = raw.strip()
    if name in _LIST_FIELDS:
        return [_LIST_FIELDS[name](_num(v)) for v in raw.replace(";", ",").split(",") if v.strip()]
    if raw.lower() in {"none", ""} and "None" in str(ftype):
        return None
    if ftype in ("int", int):
        return int(raw)
    if ftype in ("float", float) or str(ftype).startswith("float"):
        return _num(raw)
    return raw


def _num(text: str) -> float:
    """Parse a float, accepting ``pi`` multiples such as ``pi/4`` or ``3*pi/4``."""
    text = text.strip()
    if "pi" in text:
        return float(eval(text, {"__builtins__": {}}, {"pi": math.pi}))
    return float(text)


def parse_config_text(text: str, **overrides) -> ExperimentConfig:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = _coerce(key, raw)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad value for {key}: {raw!r}") from exc
    values.update({k: v for k, v in overrides.items() if v is not None})
    scenario = values.pop("scenario", Scenario.CUSTOM)
    return ExperimentConfig.for_scenario(scenario, **values)


def load_config(path, **overrides) -> ExperimentConfig:
    return parse_config_text(Path(path).read_text(), **overrides)


# -- series diagnostics ------------------------------------------------------

def onset_time(times, C, epsilon: float = 1e-3) -> float | None:
    """First time ``C`` exceeds ``epsilon``, linearly interpolated; ``None`` if never."""
    times = np.asarray(times, dtype=float)
    C = np.asarray(C, dtype=float)
    above = np.nonzero(C > epsilon)[0]
    if len(above) == 0:
        return None
    i = above[0]
    if i == 0:
        return float(times[0])
    c0, c1 = C[i - 1], C[i]
    return float(times[i - 1] + (epsilon - c0) / (c1 - c0) * (times[i] - times[i - 1]))


def dominant_period(times, C, pad: int = 8, min_rel_power: float = 1e-12) -> float:
    """Period of the strongest nonzero-frequency Fourier peak of ``C(t)``.

    The series is mean-subtracted, Hann-windowed and zero-padded; the peak is
    refined with a parabola through the log-magnitudes of three bins.
    """
    times = np.asarray(times, dtype=float)
    C = np.asarray(C, dtype=float)
    if len(C) < 8:
        raise ValueError("series too short for a period estimate")
    dt = times[1] - times[0]
    if not np.allclose(np.diff(times), dt, rtol=1e-9, atol=0):
        raise ValueError("dominant_period needs a uniform time grid")
    x = (C - C.mean()) * np.hanning(len(C))
    nfft = pad * len(C)
    spec = np.abs(np.fft.rfft(x, nfft))
    freqs = np.fft.rfftfreq(nfft, dt)
    # skip the leakage lobe around zero frequency
    start = 2 * pad
    if len(spec) <= start + 2 or spec[start:].max() <= min_rel_power * max(np.abs(C).max(), 1e-300) * len(C):
        raise ValueError("no significant spectral peak")
    k = start + int(np.argmax(spec[start:]))
    if 0 < k < len(spec) - 1:
        a, b, c = np.log(spec[k - 1:k + 2] + 1e-300)
        denom = a - 2 * b + c
        delta = 0.5 * (a - c) / denom if denom < 0 else 0.0
    else:
        delta = 0.0
    f = freqs[k] + delta * (freqs[1] - freqs[0])
    return float(1.0 / f)


def first_peak_time(times, C, epsilon: float = 1e-3) -> float | None:
    """Time of the maximum of the first lobe of ``C`` above ``epsilon``."""
    C = np.asarray(C, dtype=float)
    above = np.nonzero(C > epsilon)[0]
    if len(above) == 0:
        return None
    start = above[0]
    below = np.nonzero(C[start:] <= epsilon)[0]
    stop = start + below[0] if len(below) else len(C)
    return float(np.asarray(times)[start + int(np.argmax(C[start:stop]))])


def exponential_fit(ls, t0s) -> dict:
    """Least-squares line through ``log t0`` against ``l``."""
    fit = stats.linregress(np.asarray(ls, dtype=float), np.log(np.asarray(t0s, dtype=float)))
    return {"slope": float(fit.slope), "intercept": float(fit.intercept), "r_squared": float(fit.rvalue**2)}


# -- pipeline ----------------------------------------------------------------

def estimated_period(modes: BathModes) -> float:
    """Period of ``|sin(theta)|`` from the asymptotic phase slope."""
    rS, rA = phase_rates(modes)
    rate = rS + rA if modes.spec.placement is Placement.SAME_SITE else abs(rS - rA)
    return math.pi / rate if rate > 0 else math.inf


def time_grid(modes_list, n_periods: float, max_points: int, t_max: float | None = None) -> np.ndarray:
    """Uniform grid spanning ``n_periods`` of the slowest point.

    The spacing keeps four samples per fastest bath period unless that would
    exceed ``max_points``; at least 20 samples per concurrence period remain.
    """
    periods = [estimated_period(m) for m in modes_list]
    finite = [p for p in periods if math.isfinite(p)]
    if t_max is None:
        t_max = n_periods * max(finite) if finite else 100.0
    w_max = max(math.sqrt(1.0 + 4.0 * m.spec.J) for m in modes_list)
    dt = math.pi / (4.0 * w_max)
    n = int(math.ceil(t_max / dt)) + 1
    n = max(min(n, max_points), 2)
    if finite:
        n = max(n, int(20 * t_max / min(finite)) + 1)
    return np.linspace(0.0, t_max, n)


def check_series(rhos_std: np.ndarray, rhos_ptr: np.ndarray, herm_tol=1e-12, trace_tol=1e-12,
                 psd_tol=1e-10, diag_tol=1e-12) -> dict:
    """Hermiticity, unit trace, positivity and constant pointer populations."""
    herm = float(np.abs(rhos_std - np.conj(np.swapaxes(rhos_std, -1, -2))).max())
    trace = float(np.abs(np.trace(rhos_std, axis1=1, axis2=2) - 1.0).max())
    mineig = float(np.linalg.eigvalsh(0.5 * (rhos_std + np.conj(np.swapaxes(rhos_std, -1, -2)))).min())
    pdiag = np.diagonal(rhos_ptr, axis1=1, axis2=2)
    drift = float(np.abs(pdiag - pdiag[0]).max())
    report = {"hermiticity": herm, "trace": trace, "min_eigenvalue": mineig, "pointer_diagonal_drift": drift}
    problems = []
    if herm > herm_tol:
        problems.append(f"hermiticity {herm:.2e}")
    if trace > trace_tol:
        problems.append(f"trace {trace:.2e}")
    if mineig < -psd_tol:
        problems.append(f"min eigenvalue {mineig:.2e}")
    if drift > diag_tol:
        problems.append(f"pointer populations drift {drift:.2e}")
    if problems:
        raise InvariantError("; ".join(problems))
    return report


@dataclass
class Trajectory:
    times: np.ndarray
    concurrence: np.ndarray
    rhos_standard: np.ndarray
    rhos_pointer: np.ndarray
    checks: dict


def trajectory(modes: BathModes, initial: DefectState, times, occupation=Occupation.PLUS,
               check: bool = True) -> Trajectory:
    coeffs = dephasing_coefficients(modes, times, occupation)
    ptr = evolve_series(initial, coeffs)
    std = series_to_standard(ptr, modes.spec.placement)
    checks = check_series(std, ptr) if check else {}
    C = concurrence_values(std)
    if np.any(C < 0) or np.any(C > 1):
        raise InvariantError("concurrence outside [0, 1]")
    return Trajectory(coeffs.times, C, std, ptr, checks)


def _point(cfg: ExperimentConfig, spec: ChainSpec, alpha_A: float, alpha_B: float, times=None):
    modes = cached_bath_modes(spec, cfg.cache_dir)
    if times is None:
        times = time_grid([modes], cfg.n_periods, cfg.max_points, cfg.t_max)
    try:
        traj = trajectory(modes, product_state(alpha_A, alpha_B), times, cfg.occupation)
    except (InvariantError, ArithmeticError, ValueError) as exc:
        raise type(exc)(f"{exc} [J={spec.J}, gamma={spec.gamma}, l={spec.l}, N={spec.N}, "
                        f"alpha=({alpha_A:.6g}, {alpha_B:.6g})]") from exc
    try:
        period = dominant_period(traj.times, traj.concurrence)
    except ValueError:
        period = None
    return traj, period


def _map(cfg: ExperimentConfig, fn, items):
    if cfg.threads == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        return list(pool.map(fn, items))


# -- output ------------------------------------------------------------------

def _write_csv(path: Path, columns: dict) -> Path:
    names = list(columns)
    table = np.column_stack([np.asarray(columns[n], dtype=float) for n in names])
    np.savetxt(path, table, delimiter=",", fmt="%.17g", header=",".join(names), comments="")
    return path


def _write_plot_script(path: Path, title: str, xlabel: str, ylabel: str, curves) -> Path:
    """gnuplot script; ``curves`` is a list of (csv file, x column, y column, label)."""
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set title '{title}'",
        f"set xlabel '{xlabel}'",
        f"set ylabel '{ylabel}'",
        "set terminal pngcairo size 900,600",
        f"set output '{path.stem}.png'",
    ]
    parts = [f"'{Path(f).name}' using {x}:{y} with lines title '{label}'" for f, x, y, label in curves]
    lines.append("plot " + ", \\\n     ".join(parts))
    path.write_text("\n".join(lines) + "\n")
    return path


def _fmt(v) -> str:
    return f"{v:.6g}".replace(".", "p").replace("-", "m")


def _records_csv(path: Path, records) -> Path:
    keys = sorted({k for r in records for k in r.params})
    header = keys + ["max_concurrence", "onset_time", "period", "series_file"]
    rows = [",".join(header)]
    for r in records:
        vals = [repr(r.params.get(k, "")) if isinstance(r.params.get(k), float) else str(r.params.get(k, ""))
                for k in keys]
        vals += [f"{r.max_concurrence:.17g}",
                 "" if r.onset_time is None else f"{r.onset_time:.17g}",
                 "" if r.period is None else f"{r.period:.17g}",
                 r.series_file or ""]
        rows.append(",".join(vals))
    path.write_text("\n".join(rows) + "\n")
    return path


# -- scenarios ---------------------------------------------------------------

def _series_points(cfg: ExperimentConfig, points, out: Path | None, stem: str, result: SweepResult):
    """Run (label, spec, alpha_A, alpha_B) points and collect records in order."""

    def work(p):
        _, spec, a, b = p
        return _point(cfg, spec, a, b)

    outcomes = _map(cfg, work, points)
    curves = []
    for (label, spec, a, b), (traj, period) in zip(points, outcomes):
        params = {"J": spec.J, "gamma": spec.gamma, "T": spec.T, "N": spec.N, "l": spec.l,
                  "placement": spec.placement.value, "alpha_A": a, "alpha_B": b}
        rec = PointRecord(params, float(traj.concurrence.max()),
                          onset_time(traj.times, traj.concurrence, cfg.epsilon), period)
        if out is not None:
            fname = out / f"{stem}_{label}.csv"
            _write_csv(fname, {"t": traj.times, "C": traj.concurrence})
            write_state_series(out / f"{stem}_{label}_rho.csv", traj.times, traj.rhos_standard, Basis.STANDARD_Z)
            rec.series_file = fname.name
            curves.append((fname, 1, 2, label))
            result.files.append(fname)
        result.records.append(rec)
    if out is not None and curves:
        result.files.append(_write_plot_script(out / f"{stem}.gp", stem, "t", "concurrence", curves))


def _run_fig1(cfg, out, result):
    base = cfg.chain_spec()
    gammas = cfg.gammas or [cfg.gamma]
    Js = cfg.Js or [cfg.J]
    pts = [(f"gamma{_fmt(g)}", base.replace(gamma=g), cfg.alpha_A, cfg.alpha_B) for g in gammas]
    _series_points(cfg, pts, out, "fig1a", result)
    pts = [(f"J{_fmt(J)}", base.replace(J=J), cfg.alpha_A, cfg.alpha_B) for J in Js]
    _series_points(cfg, pts, out, "fig1b", result)
    n_a = len(gammas)
    result.extras["gamma_sweep"] = {"gammas": gammas, "periods": [r.period for r in result.records[:n_a]]}
    result.extras["J_sweep"] = {"Js": Js, "periods": [r.period for r in result.records[n_a:]]}


def _run_fig2(cfg, out, result):
    spec = cfg.chain_spec()
    modes = cached_bath_modes(spec, cfg.cache_dir)
    times = time_grid([modes], cfg.n_periods, cfg.max_points, cfg.t_max)
    coeffs = dephasing_coefficients(modes, times, cfg.occupation)
    grid = list(cfg.alpha_grid)
    pairs = [(a, b) for a in grid for b in grid]

    def work(ab):
        ptr = evolve_series(product_state(*ab), coeffs)
        std = series_to_standard(ptr, spec.placement)
        check_series(std, ptr)
        return float(concurrence_values(std).max())

    maxima = np.array(_map(cfg, work, pairs)).reshape(len(grid), len(grid))
    for (a, b), m in zip(pairs, maxima.ravel()):
        result.records.append(PointRecord({"alpha_A": a, "alpha_B": b, "J": spec.J, "gamma": spec.gamma},
                                          m, None, None))
    result.extras.update(alpha_grid=np.array(grid), max_concurrence=maxima, times=times)
    if out is not None:
        A, B = np.meshgrid(grid, grid, indexing="ij")
        f = _write_csv(out / "fig2_max_concurrence.csv",
                       {"alpha_A": A.ravel(), "alpha_B": B.ravel(), "max_C": maxima.ravel()})
        result.files.append(f)
        gp = out / "fig2.gp"
        gp.write_text("set datafile separator ','\nset terminal pngcairo size 700,600\n"
                      "set output 'fig2.png'\nset xlabel 'alpha_A'\nset ylabel 'alpha_B'\n"
                      "set view map\nsplot 'fig2_max_concurrence.csv' every ::1 using 1:2:3 "
                      "with points pt 5 ps 2 palette notitle\n")
        result.files.append(gp)


def _run_fig3(cfg, out, result):
    base = cfg.chain_spec(placement=Placement.DISTANT)
    pts = [(f"l{l}", base.replace(l=l), cfg.alpha_A, cfg.alpha_B) for l in cfg.l_values]
    _series_points(cfg, pts, out, "fig3", result)
    t0 = [r.onset_time for r in result.records]
    result.extras["l_values"] = list(cfg.l_values)
    result.extras["onset_times"] = t0
    result.extras["periods"] = [r.period for r in result.records]
    if all(t is not None and t > 0 for t in t0) and len(t0) >= 2:
        result.extras["exponential_fit"] = exponential_fit(cfg.l_values, t0)


def _run_fig4(cfg, out, result):
    nodes_rows = []
    spectra = {}
    for l in cfg.l_values:
        spec = cfg.chain_spec(l=l)
        modes = cached_bath_modes(spec, cfg.cache_dir)
        lo, hi = spec.band
        grid = np.linspace(max(lo - 20 * cfg.broadening, 0.0), hi + 5 * cfg.broadening, 20001)
        sdS = spectral_density(modes, "S", cfg.broadening, grid)
        sdA = spectral_density(modes, "A", cfg.broadening, grid)
        minima = local_minima(sdA)
        inside = minima[(minima > lo + cfg.broadening) & (minima < hi - cfg.broadening)]
        matched = [float(inside[np.argmin(np.abs(inside - n))]) if len(inside) else math.nan for n in sdA.nodes]
        report = dfs_feasibility(spec)
        spectra[l] = {"S": sdS, "A": sdA, "minima": inside, "matched_minima": matched, "feasibility": report}
        for node in report.nodes:
            nodes_rows.append((l, node["p"], node["omega"], node["required_h"],
                               int(node["bosonization_compatible"])))
        result.records.append(PointRecord({"l": l, "J": spec.J, "N": spec.N}, 0.0, None, None))
        if out is not None:
            f = _write_csv(out / f"fig4_l{l}.csv", {"omega": grid, "I_S": sdS.values, "I_A": sdA.values})
            result.files.append(f)
    result.extras["spectra"] = spectra
    if out is not None:
        arr = np.array(nodes_rows, dtype=float).reshape(-1, 5)
        f = _write_csv(out / "fig4_nodes.csv", {"l": arr[:, 0], "p": arr[:, 1], "omega": arr[:, 2],
                                                 "required_h": arr[:, 3], "bosonization_compatible": arr[:, 4]})
        result.files.append(f)
        curves = [(out / f"fig4_l{l}.csv", 1, 3, f"l={l}") for l in cfg.l_values]
        result.files.append(_write_plot_script(out / "fig4.gp", "antisymmetric spectral density",
                                               "omega", "I_A", curves))


def _run_custom(cfg, out, result):
    Js = cfg.Js or [cfg.J]
    gammas = cfg.gammas or [cfg.gamma]
    pts = []
    for J in Js:
        for g in gammas:
            for l in cfg.l_values:
                spec = cfg.chain_spec(J=J, gamma=g, l=l)
                pts.append((f"J{_fmt(J)}_g{_fmt(g)}_l{l}", spec, cfg.alpha_A, cfg.alpha_B))
    _series_points(cfg, pts, out, "sweep", result)


_RUNNERS = {
    Scenario.FIG1: _run_fig1,
    Scenario.FIG2: _run_fig2,
    Scenario.FIG3: _run_fig3,
    Scenario.FIG4: _run_fig4,
    Scenario.CUSTOM: _run_custom,
}


def run_scenario(cfg: ExperimentConfig) -> SweepResult:
    """Run one scenario end to end; writes CSV files and a gnuplot script when ``out_dir`` is set."""
    out = Path(cfg.out_dir) if cfg.out_dir else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    result = SweepResult(cfg.scenario)
    _RUNNERS[cfg.scenario](cfg, out, result)
    if out is not None and cfg.scenario is not Scenario.FIG4 and result.records:
        result.files.append(_records_csv(out / f"{cfg.scenario.value}_summary.csv", result.records))
    return result


# -- finite-size convergence -------------------------------------------------

def recurrence_time(J: float, N: int) -> float:
    """Time for the fastest bath excitation to travel once around the 2N-site ring."""
    q = np.linspace(0.0, np.pi, 4001)
    v = 2.0 * J * np.sin(q) / np.sqrt(1.0 - 4.0 * J * np.cos(q))
    vmax = v.max()
    return math.inf if vmax == 0 else 2.0 * N / vmax


@dataclass
class ConvergenceReport:
    N_values: list
    differences: list
    tolerance: float
    t_max: float
    recurrence_times: list
    passed: bool
    diagnosis: str = ""


def convergence_check(cfg: ExperimentConfig, N_list=None, tolerance: float = 1e-3) -> ConvergenceReport:
    """Largest change of ``C(t)`` between consecutive chain sizes on a common grid."""
    N_values = sorted(N_list or cfg.N_list)
    if len(N_values) < 2:
        raise ValueError("need at least two chain sizes")
    specs = [cfg.chain_spec(N=N) for N in N_values]
    modes = [cached_bath_modes(s, cfg.cache_dir) for s in specs]
    times = time_grid([modes[-1]], cfg.n_periods, cfg.max_points, cfg.t_max)
    initial = product_state(cfg.alpha_A, cfg.alpha_B)
    series = [trajectory(m, initial, times, cfg.occupation, check=False).concurrence for m in modes]
    diffs = [float(np.abs(a - b).max()) for a, b in zip(series[:-1], series[1:])]
    rec = [recurrence_time(cfg.J, N) for N in N_values]
    passed = all(d <= tolerance for d in diffs)
    diagnosis = ""
    if not passed:
        if times[-1] > rec[0]:
            diagnosis = (f"window t_max={times[-1]:.6g} exceeds the recurrence time {rec[0]:.6g} of N={N_values[0]}: "
                         "finite-size revivals, increase N or shorten the window")
        else:
            diagnosis = "not converged inside the recurrence time; increase N"
    return ConvergenceReport(N_values, diffs, tolerance, float(times[-1]), rec, passed, diagnosis)
