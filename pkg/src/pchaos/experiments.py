"""Seeded randomized studies and the grid verification suite.

Determinism contract: every trial draws from its own PCG64 substream keyed
by SeedSequence(entropy=seed, spawn_key=(N, trial)), so statistics do not
depend on execution order or worker count and identical configurations
reproduce identical rows. Wall time is reported at the report level only,
outside the reproducible rows.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import baselines
from .config import (
    CHARACTER_TOL,
    DEFAULT_TOLERANCES,
    EXACT_RATIO_TOL,
    EXACT_TRANSFORM_TOL,
    LEMMA1_PATTERN_TOL,
    MASS_TOL,
    MAX_DECOMPOSITION_SEQUENCES,
    MAX_DIRECT_CELLS,
    Tolerances,
    check_cell_guard,
)
from .errors import ChaosError
from .padic import CellIndex, enumerate_Nd, group_sub, paley_encode
from .transform import (
    StepFunction,
    character_value,
    convolve,
    convolve_functions,
    forward,
    inverse,
    naive_forward,
)
from .measures import (
    lemma1_measure,
    lemma1_pattern_residual,
    lemma2_measure,
    lemma2_pattern_residual,
    rho_y_measure,
    riesz_density,
    selector_alphabet,
)
from .chaos import (
    ChaosPolynomial,
    convolve_with_measure,
    decomposition_residual,
    linf_norm,
    lq_norm,
    polynomial_spectrum,
    project_order,
    sidon_ratio,
)

ENSEMBLES = ("signs", "unimodular")


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent substream for one trial, keyed by (seed, *key)."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=tuple(key)))
    )


def draw_coefficients(rng: np.random.Generator, count: int, ensemble: str) -> np.ndarray:
    if ensemble == "signs":
        return (rng.integers(0, 2, size=count) * 2 - 1).astype(np.complex128)
    if ensemble == "unimodular":
        return np.exp(2j * np.pi * rng.random(count))
    raise ChaosError(f"unknown ensemble {ensemble!r} (expected one of {ENSEMBLES})")


def random_chaos(
    p: int, d: int, N: int, rng: np.random.Generator, ensemble: str = "signs"
) -> ChaosPolynomial:
    """Polynomial with coefficients drawn over the full order-d index set."""
    terms = enumerate_Nd(p, d, N)
    coeffs = draw_coefficients(rng, len(terms), ensemble)
    return ChaosPolynomial(p, N, dict(zip(terms, coeffs)))


@dataclass(frozen=True)
class ExperimentConfig:
    p: int
    d: int
    N_values: tuple[int, ...]
    trials: int
    seed: int
    ensemble: str = "signs"
    max_cells: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "N_values", tuple(int(n) for n in self.N_values))
        if self.ensemble not in ENSEMBLES:
            raise ChaosError(
                f"unknown ensemble {self.ensemble!r} (expected one of {ENSEMBLES})"
            )
        if self.trials < 0:
            raise ChaosError(f"trial count must be >= 0, got {self.trials}")
        for N in self.N_values:
            check_cell_guard(self.p, N + 1, self.max_cells)
            enumerate_Nd(self.p, self.d, N)  # validates d against N

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "N_values": list(self.N_values),
            "trials": self.trials,
            "seed": self.seed,
            "ensemble": self.ensemble,
        }


@dataclass(frozen=True)
class ExperimentRow:
    """Statistics of one (p, d, N) grid point; reproducible from (config, seed)."""

    p: int
    d: int
    N: int
    trials: int
    seed: int
    ensemble: str
    q: float
    median_l1_ratio: float
    max_l1_ratio: float
    median_lq_ratio: float
    max_lq_ratio: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class ExperimentReport:
    kind: str
    config: dict
    rows: list[ExperimentRow] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "config": self.config,
            "rows": [row.to_dict() for row in self.rows],
            "failures": list(self.failures),
            "meta": dict(self.meta),
            "passed": self.passed,
        }


def _ratio_samples(
    p: int, d: int, N: int, trials: int, seed: int, ensemble: str
) -> tuple[list[float], list[float]]:
    terms = enumerate_Nd(p, d, N)
    q = 2 * d / (d + 1)
    l1_ratios, lq_ratios = [], []
    for t in range(trials):
        rng = trial_rng(seed, N, t)
        coeffs = draw_coefficients(rng, len(terms), ensemble)
        Q = ChaosPolynomial(p, N, dict(zip(terms, coeffs)))
        sup, _ = linf_norm(Q)
        vector = Q.coefficient_vector()
        l1_ratios.append(lq_norm(vector, 1.0) / sup)
        lq_ratios.append(lq_norm(vector, q) / sup)
    return l1_ratios, lq_ratios


def _row(cfg: ExperimentConfig, N: int) -> ExperimentRow:
    l1, lq = _ratio_samples(cfg.p, cfg.d, N, cfg.trials, cfg.seed, cfg.ensemble)
    return ExperimentRow(
        p=cfg.p,
        d=cfg.d,
        N=N,
        trials=cfg.trials,
        seed=cfg.seed,
        ensemble=cfg.ensemble,
        q=2 * cfg.d / (cfg.d + 1),
        median_l1_ratio=float(np.median(l1)),
        max_l1_ratio=float(np.max(l1)),
        median_lq_ratio=float(np.median(lq)),
        max_lq_ratio=float(np.max(lq)),
    )


def random_ensemble_study(cfg: ExperimentConfig) -> ExperimentReport:
    """Ratio statistics per N; empty report when trials == 0."""
    start = time.perf_counter()
    report = ExperimentReport(kind="ensemble", config=cfg.to_dict())
    if cfg.trials > 0:
        for N in sorted(cfg.N_values):
            report.rows.append(_row(cfg, N))
    report.failures.extend(check_against_baselines(report))
    report.meta["wall_time_s"] = time.perf_counter() - start
    return report


def growth_study(cfg: ExperimentConfig) -> ExperimentReport:
    """Median l1 ratios must grow strictly in N (for d >= 2) while the
    2d/(d+1) ratios stay inside a factor-2 band. Violations are reported,
    never dropped."""
    start = time.perf_counter()
    report = ExperimentReport(kind="growth", config=cfg.to_dict())
    if cfg.trials > 0:
        for N in sorted(cfg.N_values):
            report.rows.append(_row(cfg, N))
    l1_medians = [row.median_l1_ratio for row in report.rows]
    lq_medians = [row.median_lq_ratio for row in report.rows]
    if cfg.d >= 2 and len(l1_medians) > 1:
        if not all(a < b for a, b in zip(l1_medians, l1_medians[1:])):
            report.failures.append(
                f"l1-median-growth: medians {l1_medians} are not strictly increasing"
            )
    if lq_medians:
        band = max(lq_medians) / min(lq_medians)
        report.meta["lq_band_ratio"] = band
        if band > 2.0:
            report.failures.append(
                f"lq-median-band: max/min = {band:.4f} exceeds 2"
            )
    report.failures.extend(check_against_baselines(report))
    report.meta["wall_time_s"] = time.perf_counter() - start
    report.meta["thresholds"] = {
        "l1_growth": "strictly increasing medians (d >= 2)",
        "lq_band": "max/min of medians <= 2",
    }
    return report


def check_against_baselines(report: ExperimentReport) -> list[str]:
    """Compare report rows against frozen regression baselines (5% drift)."""
    failures = []
    for row in report.rows:
        key = (row.ensemble, row.p, row.d, row.N, row.trials, row.seed)
        recorded = baselines.RATIO_BASELINES.get(key)
        if recorded is None:
            continue
        for name, value in (
            ("median_l1_ratio", row.median_l1_ratio),
            ("median_lq_ratio", row.median_lq_ratio),
            ("max_lq_ratio", row.max_lq_ratio),
        ):
            expected = recorded[name]
            drift = abs(value - expected) / expected
            if drift > baselines.MAX_DRIFT:
                failures.append(
                    f"baseline-drift: {name} at {key} drifted {drift:.2%} "
                    f"({value:.6g} vs {expected:.6g})"
                )
        cap = recorded["max_lq_ratio"] * (1.0 + baselines.MAX_DRIFT)
        if row.max_lq_ratio > cap:
            failures.append(
                f"baseline-cap: max_lq_ratio at {key} exceeds recorded cap "
                f"({row.max_lq_ratio:.6g} > {cap:.6g})"
            )
    return failures


# ---------------------------------------------------------------------------
# Verification suite
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool
    context: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "context": dict(self.context),
        }


@dataclass
class SuiteReport:
    config: dict
    checks: list[CheckResult] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[str]:
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "checks": [check.to_dict() for check in self.checks],
            "meta": dict(self.meta),
            "passed": self.passed,
        }


def _scaled(diff: float, reference: float) -> float:
    return float(diff) / max(1.0, float(reference))


def _fit_level(p: int, target_cells: int, minimum: int = 1) -> int:
    level = minimum
    while p ** (level + 1) <= target_cells:
        level += 1
    return level


def _random_step_function(p: int, level: int, rng: np.random.Generator) -> StepFunction:
    values = rng.standard_normal(p**level) + 1j * rng.standard_normal(p**level)
    return StepFunction(p, level, values)


def verify_suite(
    p_values: Sequence[int],
    d_values: Sequence[int],
    N: int,
    seed: int = 0,
    tolerances: Tolerances | None = None,
    max_cells: int | None = None,
) -> SuiteReport:
    """Run every module invariant over the (p, d) grid at top position N.

    Each check contributes one named entry with its worst residual and the
    tolerance it was held to; an empty grid yields an empty passing report.
    """
    tol = tolerances or DEFAULT_TOLERANCES
    p_values = sorted(set(int(p) for p in p_values))
    d_values = sorted(set(int(d) for d in d_values))
    report = SuiteReport(
        config={
            "p_values": p_values,
            "d_values": d_values,
            "N": N,
            "seed": seed,
            "tolerances": {
                "construction": tol.construction,
                "transform": tol.transform,
                "solve_residual": tol.solve_residual,
            },
        }
    )
    start = time.perf_counter()
    if not p_values or not d_values:
        report.meta["wall_time_s"] = time.perf_counter() - start
        return report

    grid = [(p, d) for p in p_values for d in d_values if d <= N]
    level = N + 1
    for p, _ in grid:
        check_cell_guard(p, level, max_cells)

    def run(name: str, tolerance: float, fn) -> None:
        try:
            residual, context = fn()
        except ChaosError as exc:
            report.checks.append(
                CheckResult(name, float("inf"), tolerance, False, {"error": str(exc)})
            )
            return
        report.checks.append(
            CheckResult(name, float(residual), tolerance, residual <= tolerance, context)
        )

    # --- transform layer, per base ------------------------------------
    def transform_roundtrip():
        worst, where = 0.0, {}
        for p in p_values:
            L = _fit_level(p, 4096)
            f = _random_step_function(p, L, trial_rng(seed, 1, p))
            back = inverse(forward(f))
            residual = _scaled(
                np.abs(back.values - f.values).max(), np.abs(f.values).max()
            )
            if residual > worst:
                worst, where = residual, {"p": p, "level": L}
        return worst, where

    def parseval():
        worst, where = 0.0, {}
        for p in p_values:
            L = _fit_level(p, 4096)
            f = _random_step_function(p, L, trial_rng(seed, 2, p))
            s = forward(f)
            lhs = float((np.abs(f.values) ** 2).sum() * p ** (-L))
            rhs = float((np.abs(s.coeffs) ** 2).sum())
            residual = _scaled(abs(lhs - rhs), lhs)
            if residual > worst:
                worst, where = residual, {"p": p, "level": L}
        return worst, where

    def fast_vs_naive():
        worst, where = 0.0, {}
        for p in p_values:
            L = 1
            while p**L <= MAX_DIRECT_CELLS:
                f = _random_step_function(p, L, trial_rng(seed, 3, p, L))
                fast = forward(f).coeffs
                ref = naive_forward(f).coeffs
                residual = _scaled(np.abs(fast - ref).max(), np.abs(ref).max())
                if residual > worst:
                    worst, where = residual, {"p": p, "level": L}
                L += 1
        return worst, where

    def convolution_theorem():
        worst, where = 0.0, {}
        for p in p_values:
            L = _fit_level(p, 729)
            rng = trial_rng(seed, 4, p)
            f = _random_step_function(p, L, rng)
            g = _random_step_function(p, L, rng)
            via_spectra = convolve(forward(f), forward(g))
            direct = forward(convolve_functions(f, g))
            residual = _scaled(
                np.abs(via_spectra.coeffs - direct.coeffs).max(),
                np.abs(direct.coeffs).max(),
            )
            if residual > worst:
                worst, where = residual, {"p": p, "level": L}
        return worst, where

    def character_multiplicativity():
        worst, where = 0.0, {}
        for p in p_values:
            L = min(N + 1, _fit_level(p, 4096))
            rng = trial_rng(seed, 5, p)
            size = p**L
            for _ in range(20):
                m = int(rng.integers(0, size))
                x = CellIndex(p, L, int(rng.integers(0, size)))
                z = CellIndex(p, L, int(rng.integers(0, size)))
                lhs = character_value(m, group_sub(x, z))
                rhs = character_value(m, x) * np.conjugate(character_value(m, z))
                residual = abs(lhs - rhs)
                if residual > worst:
                    worst, where = residual, {"p": p, "m": m}
        return worst, where

    run("transform-roundtrip", tol.transform, transform_roundtrip)
    run("parseval", tol.transform, parseval)
    run("fast-vs-naive", EXACT_TRANSFORM_TOL, fast_vs_naive)
    run("convolution-theorem", EXACT_TRANSFORM_TOL, convolution_theorem)
    run("character-multiplicativity", CHARACTER_TOL, character_multiplicativity)

    # --- Riesz product mass, per base ----------------------------------
    def riesz_mass():
        worst, where = 0.0, {}
        for p in p_values:
            L = _fit_level(p, 4096)
            rng = trial_rng(seed, 6, p)
            for _ in range(10):
                a = rng.random(L) * np.exp(2j * np.pi * rng.random(L))
                j = rng.integers(1, p, size=L)
                density = riesz_density(p, L, a, j)
                residual = max(
                    abs(density.integral() - 1.0),
                    float(max(0.0, -density.values.real.min())),
                    float(np.abs(density.values.imag).max()),
                    abs(float(np.abs(density.values).sum() * p**-L) - 1.0),
                )
                if residual > worst:
                    worst, where = residual, {"p": p, "level": L}
        return worst, where

    run("riesz-mass", MASS_TOL, riesz_mass)

    # --- shaped measures over the (p, d) grid ---------------------------
    def lemma1_pattern():
        worst, where = 0.0, {}
        for p, d in grid:
            rng = trial_rng(seed, 7, p, d)
            for _ in range(2):
                J = [int(x) for x in rng.integers(1, p, size=level)]
                nu = lemma1_measure(p, d, J, level, max_cells)
                matched, mismatched = lemma1_pattern_residual(nu, d, J, N)
                residual = max(matched, mismatched)
                if residual > worst:
                    worst, where = residual, {"p": p, "d": d, "J": J}
        return worst, where

    def lemma1_membership():
        worst, where = 0.0, {}
        for p, d in grid:
            rng = trial_rng(seed, 8, p, d)
            J = [int(x) for x in rng.integers(1, p, size=level)]
            a = complex(np.exp(2j * np.pi / (2 * d + 1)))
            factors = [1.0 + 0j if (2 * jk) % p == 0 else a for jk in J]
            rho_hat = forward(riesz_density(p, level, factors, J, max_cells))
            alphabet = selector_alphabet(d)
            for term in enumerate_Nd(p, d, N):
                value = rho_hat.coeffs[paley_encode(term, p).value]
                residual = float(np.abs(alphabet - value).min())
                if residual > worst:
                    worst, where = residual, {"p": p, "d": d}
        return worst, where

    def lemma2_pattern():
        worst, where = 0.0, {}
        for p, d in grid:
            for s in range(1, d + 1):
                nu = lemma2_measure(p, d, s, level, max_cells)
                kept, killed = lemma2_pattern_residual(nu, d, s, N)
                residual = max(kept, killed)
                if residual > worst:
                    worst, where = residual, {"p": p, "d": d, "s": s}
        return worst, where

    def rho_y_scaling():
        worst, where = 0.0, {}
        for p, d in grid:
            rng = trial_rng(seed, 9, p, d)
            J = [int(x) for x in rng.integers(1, p, size=level)]
            signs = [int(x) for x in rng.integers(0, 2, size=level) * 2 - 1]
            rho = rho_y_measure(p, J, signs, level, max_cells)
            terms = enumerate_Nd(p, d, N)
            matched = [
                t for t in terms if all(l == J[k] for k, l in zip(t.ks, t.ls))
            ]
            coeffs = draw_coefficients(rng, len(matched), "unimodular")
            Q = ChaosPolynomial(p, N, dict(zip(matched, coeffs)))
            out = convolve_with_measure(Q, rho)
            expected = np.zeros_like(out.coeffs)
            for t, c in Q.coeffs.items():
                scale = np.prod([signs[k] for k in t.ks]) / 2.0**d
                expected[paley_encode(t, p).value] = c * scale
            residual = float(np.abs(out.coeffs - expected).max())
            if residual > worst:
                worst, where = residual, {"p": p, "d": d}
        return worst, where

    def decomposition():
        worst, where = 0.0, {}
        for p, d in grid:
            if (p - 1) ** (N + 1) > MAX_DECOMPOSITION_SEQUENCES:
                continue
            Q = random_chaos(p, d, N, trial_rng(seed, 10, p, d), "unimodular")
            residual = decomposition_residual(Q)
            if residual > worst:
                worst, where = residual, {"p": p, "d": d}
        return worst, where

    def young_bound():
        worst, where = 0.0, {}
        for p, d in grid:
            rng = trial_rng(seed, 11, p, d)
            J = [int(x) for x in rng.integers(1, p, size=level)]
            Q = random_chaos(p, d, N, rng, "unimodular")
            sup, _ = linf_norm(Q)
            for nu in (
                lemma1_measure(p, d, J, level, max_cells),
                lemma2_measure(p, d, max(1, d - 1) if d > 1 else 1, level, max_cells),
            ):
                convolved = inverse(convolve_with_measure(Q, nu))
                out_sup = float(np.abs(convolved.values).max())
                residual = max(0.0, out_sup - nu.variation * sup)
                if residual > worst:
                    worst, where = residual, {"p": p, "d": d}
        return worst, where

    def order_projection():
        worst, where = 0.0, {}
        for p, d in grid:
            rng = trial_rng(seed, 12, p, d)
            coeffs: dict = {}
            for s in range(1, d + 1):
                for term in enumerate_Nd(p, s, N):
                    coeffs[term] = complex(*rng.standard_normal(2))
            Q = ChaosPolynomial(p, N, coeffs)
            sup, _ = linf_norm(Q)
            for s in range(1, d + 1):
                part = project_order(Q, s)
                nu = lemma2_measure(p, d, s, level, max_cells)
                route = convolve_with_measure(Q, nu)
                direct = polynomial_spectrum(part, level)
                residual = float(np.abs(route.coeffs - direct.coeffs).max())
                part_sup, _ = linf_norm(part)
                residual = max(
                    residual, max(0.0, part_sup - nu.variation * sup)
                )
                if residual > worst:
                    worst, where = residual, {"p": p, "d": d, "s": s}
        return worst, where

    run("lemma1-pattern", LEMMA1_PATTERN_TOL, lemma1_pattern)
    run("lemma1-membership", tol.construction, lemma1_membership)
    run("lemma2-pattern", tol.construction, lemma2_pattern)
    run("rho-y-scaling", tol.transform, rho_y_scaling)
    run("decomposition", tol.transform, decomposition)
    run("young-bound", tol.construction, young_bound)
    run("order-projection", tol.construction, order_projection)

    # --- the exact first-order case -------------------------------------
    if 2 in p_values and 1 in d_values:

        def sidon_exact_d1():
            worst = 0.0
            rng = trial_rng(seed, 13)
            terms = enumerate_Nd(2, 1, N)
            for _ in range(10):
                coeffs = rng.standard_normal(len(terms)).astype(np.complex128)
                Q = ChaosPolynomial(2, N, dict(zip(terms, coeffs)))
                worst = max(worst, abs(sidon_ratio(Q) - 1.0))
            return worst, {"p": 2, "d": 1}

        run("sidon-exact-d1", EXACT_RATIO_TOL, sidon_exact_d1)

    report.meta["wall_time_s"] = time.perf_counter() - start
    return report
