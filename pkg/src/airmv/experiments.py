"""Experiment drivers: sweeps, CSV emission, deterministic stream keying.

Every random quantity derives from (master seed, experiment-local integer
key), so reruns of the same configuration reproduce output byte for byte
regardless of the thread count. Rows are accumulated in a fixed order and
values formatted with a fixed precision.
"""

from __future__ import annotations

import io
import math
import sys
from dataclasses import dataclass

import numpy as np

from .baselines import default_sequence_length
from .channel import PdpConfig
from .config import PROPOSED, ExperimentConfig
from .encoding import Method, vote_pattern
from .huffman import radius_param, synthesize_coeffs
from .median import run_median
from .simulate import (
    simulate_cer,
    simulate_cer_goldenbaum,
    simulate_cer_obda,
    stream,
)
from .theory import CerModel, vote_averaged_cer
from .waveform import (
    dfts_ofdm_modulate,
    ofdm_map_modulate,
    pmepr,
    resources_per_mv,
    separation_resources,
)

__all__ = ["ResultRow", "run_experiment", "write_csv", "CSV_COLUMNS"]

CSV_COLUMNS = (
    "experiment", "method", "K", "U", "L_e", "rho", "snr_db", "n_plus",
    "metric", "value", "stderr",
)

# Stream-key domains keep Monte Carlo, theory, pmepr, and median draws apart.
_DOMAIN_MC = 0
_DOMAIN_THEORY = 1
_DOMAIN_PMEPR = 2
_DOMAIN_MEDIAN = 3


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    method: str
    metric: str
    value: float
    stderr: float | None = None
    K: int | None = None
    U: int | None = None
    L_e: int | None = None
    rho: float | None = None
    snr_db: float | None = None
    n_plus: int | None = None


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".10g")
    return str(value)


def _config_echo(cfg: ExperimentConfig) -> str:
    parts = [
        f"experiment={cfg.experiment}",
        "methods=" + ",".join(cfg.methods),
        "k=" + ",".join(str(k) for k in cfg.k_values),
        f"u={cfg.U}",
        f"l_e={cfg.L_e}",
        f"rho={_fmt(cfg.rho)}",
        "snr_db=" + ",".join(_fmt(s) for s in cfg.snr_db),
        "n_plus=" + ",".join(str(n) for n in cfg.n_plus_values()),
        f"trials={cfg.trials}",
        f"realizations={cfg.realizations}",
        f"rounds={cfg.rounds}",
        f"codewords={cfg.codewords}",
        f"oversampling={cfg.oversampling}",
        f"seed={cfg.seed}",
        f"threads={cfg.threads}",
    ]
    return "# airmv " + " ".join(parts)


def write_csv(rows, cfg: ExperimentConfig, out=None) -> str:
    """Render rows as CSV with one config-echo comment line; write to the
    configured path (or stdout) and return the text."""
    buf = io.StringIO()
    buf.write(_config_echo(cfg) + "\n")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        buf.write(
            ",".join(
                _fmt(getattr(row, col)) for col in CSV_COLUMNS
            )
            + "\n"
        )
    text = buf.getvalue()
    target = out if out is not None else cfg.out
    if target is None:
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    return text


def _cer_point(cfg, method_name, K, snr_db, n_plus, key):
    """Empirical CER for one sweep point of any scheme."""
    sigma2 = cfg.sigma2(snr_db)
    pdp_cfg = PdpConfig(cfg.L_e, cfg.rho)
    if method_name in PROPOSED:
        return simulate_cer(
            Method.from_name(method_name), K, cfg.U, n_plus, pdp_cfg, sigma2,
            cfg.trials, cfg.seed, key, cfg.threads,
        )
    if method_name == "goldenbaum":
        return simulate_cer_goldenbaum(
            default_sequence_length(K), cfg.U, n_plus, pdp_cfg, sigma2,
            cfg.trials, cfg.seed, key, cfg.threads,
        )
    # OBDA rides on single-tap subchannels irrespective of the profile.
    return simulate_cer_obda(
        cfg.U, n_plus, sigma2, cfg.trials, cfg.seed, key, cfg.threads,
        phase_errors=method_name == "obda_phase",
        tci=method_name != "obda_no_tci",
    )


def _theory_point(cfg, method_name, K, snr_db, n_plus, key):
    model = CerModel(
        Method.from_name(method_name),
        radius_param(K),
        PdpConfig(cfg.L_e, cfg.rho),
        cfg.sigma2(snr_db),
    )
    rng = stream(cfg.seed, _DOMAIN_THEORY, *key)
    est = vote_averaged_cer(
        n_plus, cfg.U - n_plus, model, n_realizations=cfg.realizations, rng=rng
    )
    return est.probability, est.stderr


def _run_cer(cfg: ExperimentConfig, with_simulation: bool) -> list[ResultRow]:
    rows = []
    for ki, K in enumerate(cfg.k_values):
        for si, snr_db in enumerate(cfg.snr_db):
            for mi, name in enumerate(cfg.methods):
                for n_plus in cfg.n_plus_values():
                    key = (ki, si, mi, n_plus)
                    common = dict(
                        experiment=cfg.experiment, method=name, K=K, U=cfg.U,
                        L_e=cfg.L_e, rho=cfg.rho, snr_db=snr_db, n_plus=n_plus,
                    )
                    if with_simulation:
                        p, se = _cer_point(cfg, name, K, snr_db, n_plus,
                                           (_DOMAIN_MC,) + key)
                        rows.append(ResultRow(metric="cer", value=p, stderr=se,
                                              **common))
                    if name in PROPOSED and cfg.realizations > 0:
                        p, se = _theory_point(cfg, name, K, snr_db, n_plus, key)
                        rows.append(ResultRow(metric="cer_theory", value=p,
                                              stderr=se, **common))
    return rows


def _run_pmepr(cfg: ExperimentConfig) -> list[ResultRow]:
    rows = []
    quantiles = ((0.5, "p50"), (0.9, "p90"), (0.99, "p99"), (0.999, "p999"))
    for ki, K in enumerate(cfg.k_values):
        rp = radius_param(K)
        # Contiguous-subcarrier mapping: one deterministic value per K
        # (the impulse-like autocorrelation fixes the whole power envelope).
        ref = synthesize_coeffs(np.zeros(K, dtype=bool), rp)
        rows.append(ResultRow(
            experiment=cfg.experiment, method="huffman", K=K,
            metric="pmepr_ofdm_db",
            value=pmepr(ofdm_map_modulate(ref, cfg.oversampling)),
        ))
        for mi, name in enumerate(cfg.methods):
            method = Method.from_name(name)
            M = method.votes_per_codeword(K)
            rng = stream(cfg.seed, _DOMAIN_PMEPR, ki, mi)
            votes = rng.integers(0, 2, size=(cfg.codewords, M)) * 2 - 1
            coeffs = synthesize_coeffs(vote_pattern(method, votes), rp)
            samples = np.array([
                pmepr(dfts_ofdm_modulate(c, cfg.oversampling)) for c in coeffs
            ])
            common = dict(experiment=cfg.experiment, method=name, K=K)
            for q, tag in quantiles:
                rows.append(ResultRow(
                    metric=f"pmepr_dfts_{tag}_db",
                    value=float(np.quantile(samples, q)), **common,
                ))
            rows.append(ResultRow(metric="pmepr_dfts_mean_db",
                                  value=float(samples.mean()), **common))
            rows.append(ResultRow(metric="pmepr_dfts_max_db",
                                  value=float(samples.max()), **common))
    return rows


def _run_resources(cfg: ExperimentConfig) -> list[ResultRow]:
    rows = []
    for K in cfg.k_values:
        for name in cfg.methods:
            rows.append(ResultRow(
                experiment=cfg.experiment, method=name, K=K, L_e=cfg.L_e,
                metric="resources_per_mv",
                value=resources_per_mv(Method.from_name(name), K, cfg.L_e),
            ))
    for U in range(1, cfg.U + 1):
        rows.append(ResultRow(
            experiment=cfg.experiment, method="separation", U=U,
            metric="resources_per_mv", value=separation_resources(U),
        ))
    return rows


def _run_rmse(cfg: ExperimentConfig) -> list[ResultRow]:
    rows = []
    pdp_cfg = PdpConfig(cfg.L_e, cfg.rho)
    step = max(1, cfg.rounds // 100)
    record = sorted(set(range(step - 1, cfg.rounds, step)) | {cfg.rounds - 1})
    for ki, K in enumerate(cfg.k_values):
        for si, snr_db in enumerate(cfg.snr_db):
            for mi, name in enumerate(cfg.methods):
                rmse = run_median(
                    name, K, cfg.U, cfg.rounds, cfg.realizations, pdp_cfg,
                    cfg.sigma2(snr_db), cfg.seed, (_DOMAIN_MEDIAN, ki, si, mi),
                )
                common = dict(
                    experiment=cfg.experiment, method=name, K=K, U=cfg.U,
                    L_e=cfg.L_e, rho=cfg.rho, snr_db=snr_db,
                )
                for i in record:
                    rows.append(ResultRow(metric=f"rmse_r{i + 1}",
                                          value=float(rmse[i]), **common))
                rows.append(ResultRow(metric="rmse_final",
                                      value=float(rmse[-1]), **common))
    return rows


def run_experiment(cfg: ExperimentConfig) -> list[ResultRow]:
    if cfg.experiment == "cer":
        return _run_cer(cfg, with_simulation=True)
    if cfg.experiment == "snr":
        return _run_cer(cfg, with_simulation=True)
    if cfg.experiment == "theory":
        return _run_cer(cfg, with_simulation=False)
    if cfg.experiment == "pmepr":
        return _run_pmepr(cfg)
    if cfg.experiment == "resources":
        return _run_resources(cfg)
    if cfg.experiment == "rmse":
        return _run_rmse(cfg)
    raise ValueError(f"unknown experiment {cfg.experiment!r}")
