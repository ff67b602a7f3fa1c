"""Experiment configuration: flat key=value files, typed coercion, validation.

CLI flags override file values. A master seed is mandatory so every
published run is replayable byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .encoding import Method

__all__ = ["ConfigError", "ExperimentConfig", "parse_config_file", "build_config"]

EXPERIMENTS = ("cer", "snr", "pmepr", "rmse", "resources", "theory")
PROPOSED = ("uncoded", "differential", "indexed")
BASELINES = ("goldenbaum", "obda", "obda_phase", "obda_no_tci")
METHOD_ALIASES = {"m1": "uncoded", "m2": "differential", "m3": "indexed"}


class ConfigError(ValueError):
    pass


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


def _parse_float(text: str) -> float:
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return math.inf
    try:
        return float(t)
    except ValueError as exc:
        raise ConfigError(f"expected a number, got {text!r}") from exc


def _parse_int(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError as exc:
        raise ConfigError(f"expected an integer, got {text!r}") from exc


def _parse_int_list(text: str) -> tuple[int, ...]:
    items = [p for p in text.replace(";", ",").split(",") if p.strip()]
    out: list[int] = []
    for item in items:
        if ":" in item:
            lo, hi = item.split(":", 1)
            out.extend(range(_parse_int(lo), _parse_int(hi) + 1))
        else:
            out.append(_parse_int(item))
    if not out:
        raise ConfigError(f"expected at least one integer in {text!r}")
    return tuple(out)


def _parse_float_list(text: str) -> tuple[float, ...]:
    items = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if not items:
        raise ConfigError(f"expected at least one number in {text!r}")
    return tuple(_parse_float(p) for p in items)


def _parse_methods(text: str) -> tuple[str, ...]:
    names = []
    for raw in text.replace(";", ",").split(","):
        name = raw.strip().lower()
        if not name:
            continue
        name = METHOD_ALIASES.get(name, name)
        if name not in PROPOSED + BASELINES + ("ideal",):
            raise ConfigError(f"unknown method {raw.strip()!r}")
        names.append(name)
    if not names:
        raise ConfigError("method list is empty")
    return tuple(names)


@dataclass
class ExperimentConfig:
    experiment: str
    methods: tuple[str, ...] = ("uncoded", "differential", "indexed")
    k_values: tuple[int, ...] = (16,)
    U: int = 25
    L_e: int = 1
    rho: float = 1.0
    snr_db: tuple[float, ...] = (10.0,)
    n_plus: tuple[int, ...] | None = None
    trials: int = 100_000
    realizations: int = 100
    rounds: int = 500
    codewords: int = 10_000
    oversampling: int = 16
    seed: int | None = None
    out: str | None = None
    threads: int = 1

    def sigma2(self, snr_db: float) -> float:
        return 0.0 if math.isinf(snr_db) else 10.0 ** (-snr_db / 10.0)

    def n_plus_values(self) -> tuple[int, ...]:
        if self.n_plus is not None:
            return self.n_plus
        return tuple(range(self.U + 1))


_PARSERS = {
    "experiment": lambda s: s.strip().lower(),
    "methods": _parse_methods,
    "k_values": _parse_int_list,
    "U": _parse_int,
    "L_e": _parse_int,
    "rho": _parse_float,
    "snr_db": _parse_float_list,
    "n_plus": _parse_int_list,
    "trials": _parse_int,
    "realizations": _parse_int,
    "rounds": _parse_int,
    "codewords": _parse_int,
    "oversampling": _parse_int,
    "seed": _parse_int,
    "out": lambda s: s.strip(),
    "threads": _parse_int,
}

_FILE_KEYS = {
    "experiment": "experiment",
    "methods": "methods",
    "k": "k_values",
    "u": "U",
    "l_e": "L_e",
    "rho": "rho",
    "snr_db": "snr_db",
    "n_plus": "n_plus",
    "trials": "trials",
    "realizations": "realizations",
    "rounds": "rounds",
    "codewords": "codewords",
    "oversampling": "oversampling",
    "seed": "seed",
    "out": "out",
    "threads": "threads",
}


def parse_config_file(path: str) -> dict:
    """Read `key = value` lines; '#' starts a comment; keys are typed."""
    values: dict = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, text = (part.strip() for part in line.split("=", 1))
            field_name = _FILE_KEYS.get(key.lower())
            if field_name is None:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[field_name] = _PARSERS[field_name](text)
    return values


def build_config(experiment: str, file_values: dict, overrides: dict) -> ExperimentConfig:
    """Merge file values and CLI overrides (overrides win), then validate."""
    merged = dict(file_values)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    merged["experiment"] = experiment
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(merged) - known
    if unknown:
        raise ConfigError(f"unknown configuration fields: {sorted(unknown)}")
    cfg = ExperimentConfig(**merged)
    validate_config(cfg)
    return cfg


def validate_config(cfg: ExperimentConfig) -> None:
    if cfg.experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {cfg.experiment!r}")
    if cfg.seed is None:
        raise ConfigError("a master seed is required (set --seed or seed=...)")
    if cfg.seed < 0:
        raise ConfigError("seed must be a nonnegative integer")
    if cfg.U < 1:
        raise ConfigError("need at least one transmitter")
    if cfg.L_e < 1:
        raise ConfigError("L_e must be at least 1")
    if not (0.0 < cfg.rho <= 1.0):
        raise ConfigError("rho must lie in (0, 1]")
    if cfg.trials < 1:
        raise ConfigError("trials must be positive")
    if cfg.threads < 1:
        raise ConfigError("threads must be positive")
    if not cfg.snr_db:
        raise ConfigError("the SNR list must not be empty")
    if cfg.experiment in ("cer", "snr", "theory", "rmse", "pmepr"):
        if not cfg.k_values:
            raise ConfigError("at least one K is required")

    allowed = set(PROPOSED + BASELINES)
    if cfg.experiment == "rmse":
        allowed.add("ideal")
    if cfg.experiment in ("theory", "pmepr", "resources"):
        allowed = set(PROPOSED)
    bad = [m for m in cfg.methods if m not in allowed]
    if bad:
        raise ConfigError(
            f"methods {bad} are not valid for the {cfg.experiment} experiment"
        )

    for name in cfg.methods:
        if name in PROPOSED:
            method = Method.from_name(name)
            for K in cfg.k_values:
                try:
                    method.validate_k(K)
                except ValueError as exc:
                    raise ConfigError(str(exc)) from exc

    for n_plus in cfg.n_plus_values():
        if not 0 <= n_plus <= cfg.U:
            raise ConfigError(f"n_plus={n_plus} outside 0..U")

    if cfg.experiment == "snr" and len(cfg.n_plus_values()) != 1:
        raise ConfigError("the snr experiment sweeps SNR at a single n_plus")
    if cfg.experiment in ("rmse", "theory") and cfg.realizations < 1:
        raise ConfigError("realizations must be positive")
    if cfg.experiment == "pmepr" and cfg.codewords < 1:
        raise ConfigError("codewords must be positive")
    if cfg.experiment == "pmepr" and cfg.oversampling < 1:
        raise ConfigError("oversampling must be at least 1")
    if cfg.experiment == "rmse" and cfg.rounds < 1:
        raise ConfigError("rounds must be positive")
