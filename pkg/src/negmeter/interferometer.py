"""Simulation of the four coincidence-measurement configurations.

Four copies of the state feed four detector modules; each module reports
coalescence (c) or anti-coalescence (a) for its photon pair, and an
anti-coalescence click realizes a singlet projection on that pair.  The
module computes the exact 16-outcome distribution per configuration, draws
seeded multinomial statistics, interprets detection patterns into estimates
of the multicopy observables, assembles the full observable table and runs
the sampled negativity/witness pipeline with bootstrap uncertainties.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import negativity as ng
from .invariants import InvariantSet, invariants_from_g
from .multicopy import G_FIELDS, GTable, Pairing, g_exact


class InvalidZError(ValueError):
    pass


class UnknownConfigurationError(KeyError):
    pass


class MissingObservableError(ValueError):
    def __init__(self, missing):
        self.missing = sorted(missing)
        super().__init__(f"no estimate for observables: {self.missing}")


@dataclass(frozen=True)
class Configuration:
    """One interferometric configuration: four detector modules, each
    measuring a fixed pair of the eight qubits of four state copies."""

    id: str
    n_copies: int
    detector_pairs: tuple

    def __post_init__(self):
        if len(self.detector_pairs) != 4:
            raise ValueError("a configuration has exactly four detector modules")
        used = [q for p in self.detector_pairs for q in p]
        if sorted(used) != list(range(1, 2 * self.n_copies + 1)):
            raise ValueError("detector pairs must cover all qubits exactly once")


# Detector assignments are fixed by requiring every detection-pattern
# marginal to equal its designated observable (or product of observables).
CONFIGURATIONS = {
    "a": Configuration("a", 4, ((1, 3), (4, 6), (5, 7), (2, 8))),
    "b": Configuration("b", 4, ((1, 4), (3, 6), (5, 8), (2, 7))),
    "c": Configuration("c", 4, ((1, 4), (3, 6), (2, 5), (7, 8))),
    "d": Configuration("d", 4, ((1, 3), (2, 4), (5, 8), (6, 7))),
}

CONFIG_IDS = tuple(CONFIGURATIONS)

# Interpretation of the 15 informative detection patterns per configuration
# ('s' accepts both outcomes, 'a' requires anti-coalescence).  Each cell is
# the tuple of observables whose product the pattern marginal equals; the
# all-s row is the trivial total and is omitted.  The four-pair ring
# observable in configuration b is named here but is not part of the
# 13-element table; it is checked against its closure instead.
TABLE1 = {
    "a": {
        "sssa": ("g24",), "ssas": ("g13",), "ssaa": ("g13_46",),
        "sass": ("g24",), "sasa": ("g24", "g24"), "saas": ("g13_46",),
        "saaa": ("g24_35_68",),
        "asss": ("g13",), "assa": ("g13_46",), "asas": ("g13", "g13"),
        "asaa": ("g13_46_57",), "aass": ("g13_46",), "aasa": ("g24_35_68",),
        "aaas": ("g13_46_57",), "aaaa": ("g13_46_57_28",),
    },
    "b": {
        "sssa": ("g14",), "ssas": ("g14",), "ssaa": ("g14_36",),
        "sass": ("g14",), "sasa": ("g14", "g14"), "saas": ("g14_36",),
        "saaa": ("g14_36_58",),
        "asss": ("g14",), "assa": ("g14_36",), "asas": ("g14", "g14"),
        "asaa": ("g14_36_58",), "aass": ("g14_36",), "aasa": ("g14_36_58",),
        "aaas": ("g14_36_58",), "aaaa": ("g14_36_58_72",),
    },
    "c": {
        "sssa": ("g12",), "ssas": ("g14",), "ssaa": ("g14", "g12"),
        "sass": ("g14",), "sasa": ("g14", "g12"), "saas": ("g14_36",),
        "saaa": ("g14_36", "g12"),
        "asss": ("g14",), "assa": ("g14", "g12"), "asas": ("g14_36",),
        "asaa": ("g14_36", "g12"), "aass": ("g14_36",),
        "aasa": ("g14_36", "g12"), "aaas": ("g14_36_52",),
        "aaaa": ("g14_36_52", "g12"),
    },
    "d": {
        "sssa": ("g14",), "ssas": ("g14",), "ssaa": ("g14_23",),
        "sass": ("g24",), "sasa": ("g24", "g14"), "saas": ("g24", "g14"),
        "saaa": ("g24", "g14_23"),
        "asss": ("g13",), "assa": ("g13", "g14"), "asas": ("g13", "g14"),
        "asaa": ("g13", "g14_23"), "aass": ("g13_24",),
        "aasa": ("g13_24", "g14"), "aaas": ("g13_24", "g14"),
        "aaaa": ("g13_24", "g14_23"),
    },
}

# Detector outcome bitmask: bit k set means module D(k+1) saw anti-coalescence.
OUTCOME_KEYS = tuple(
    "".join("a" if x >> k & 1 else "c" for k in range(4)) for x in range(16)
)

RING_CLOSURE_NAME = "g14_36_58_72"


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact probabilities of the 16 disjoint {c,a}^4 outcomes."""

    config_id: str
    probs: np.ndarray


@dataclass(frozen=True)
class ExperimentRecord:
    config_id: str
    z: int
    seed: int
    counts: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "config": self.config_id,
            "Z": int(self.z),
            "seed": int(self.seed),
            "counts": {OUTCOME_KEYS[x]: int(self.counts[x]) for x in range(16)},
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ExperimentRecord":
        counts = np.zeros(16, dtype=np.int64)
        for key, n in d["counts"].items():
            counts[OUTCOME_KEYS.index(key)] = n
        return cls(config_id=d["config"], z=int(d["Z"]), seed=int(d["seed"]),
                   counts=counts)


@dataclass(frozen=True)
class GEstimate:
    """One pattern-based frequency estimate from one configuration."""

    name: str
    value: float
    std_error: float
    z_used: int
    config_id: str
    pattern: str
    primary: bool


def outcome_distribution(rho: np.ndarray, cfg: Configuration) -> OutcomeDistribution:
    """Exact 16-outcome distribution of a configuration on rho^(x)4.

    Computed by inclusion-exclusion from the all-anti marginals of every
    detector subset, which are plain multicopy expectations.
    """
    upper = np.empty(16)
    for mask in range(16):
        pairs = tuple(cfg.detector_pairs[k] for k in range(4) if mask >> k & 1)
        if not pairs:
            upper[mask] = 1.0
            continue
        upper[mask] = g_exact(rho, Pairing(cfg.n_copies, pairs))
    probs = np.zeros(16)
    for x in range(16):
        comp = ~x & 0xF
        total = 0.0
        t = comp
        # iterate subsets t of the complement of x
        while True:
            total += (-1.0) ** bin(t).count("1") * upper[x | t]
            if t == 0:
                break
            t = (t - 1) & comp
        probs[x] = total
    if probs.min() < -1e-12:
        raise ValueError(f"outcome probability below zero: {probs.min()}")
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()
    return OutcomeDistribution(config_id=cfg.id, probs=probs)


DEFAULT_BATCH_SIZE = 1_000_000


def sample(dist: OutcomeDistribution, z: int, seed: int,
           batch_size: int = DEFAULT_BATCH_SIZE) -> ExperimentRecord:
    """Multinomial draw of z events over the 16 outcomes.

    The stream is split into fixed-size batches whose generators derive from
    (seed, configuration, batch index) alone, so counts are bit-identical no
    matter how batches would be scheduled across workers.
    """
    if z < 1:
        raise InvalidZError(f"Z must be >= 1, got {z}")
    cfg_index = CONFIG_IDS.index(dist.config_id)
    counts = np.zeros(16, dtype=np.int64)
    done = 0
    batch = 0
    while done < z:
        n = min(batch_size, z - done)
        rng = np.random.default_rng([int(seed), cfg_index, batch])
        counts += rng.multinomial(n, dist.probs)
        done += n
        batch += 1
    return ExperimentRecord(config_id=dist.config_id, z=z, seed=seed, counts=counts)


def _pattern_mask(pattern: str):
    """(required-anti bitmask, matching outcome indices) for an s/a pattern."""
    required = 0
    for k, ch in enumerate(pattern):
        if ch == "a":
            required |= 1 << k
    matches = [x for x in range(16) if x & required == required]
    return required, matches


_PATTERN_MATCHES = {p: _pattern_mask(p)[1]
                    for p in ("ssss", *TABLE1["a"])}


def pattern_marginal(dist: OutcomeDistribution, pattern: str) -> float:
    """Exact probability that every 'a' detector of the pattern fired."""
    return float(dist.probs[_PATTERN_MATCHES[pattern]].sum())


def interpret_counts(rec: ExperimentRecord) -> list:
    """Frequency estimates for every informative detection pattern.

    Patterns naming a single observable yield primary estimates; product
    cells are emitted as named consistency estimates only.
    """
    if rec.config_id not in TABLE1:
        raise UnknownConfigurationError(rec.config_id)
    z = rec.z
    out = []
    for pattern, names in TABLE1[rec.config_id].items():
        v = float(rec.counts[_PATTERN_MATCHES[pattern]].sum()) / z
        primary = len(names) == 1 and names[0] in G_FIELDS
        out.append(GEstimate(
            name="*".join(names),
            value=v,
            std_error=float(np.sqrt(max(v * (1.0 - v), 0.0) / z)),
            z_used=z,
            config_id=rec.config_id,
            pattern=pattern,
            primary=primary,
        ))
    return out


@dataclass(frozen=True)
class AssembledG:
    """Observable table combined from all configurations."""

    table: GTable
    std_errors: dict
    n_clamped: int


def assemble_g(estimates) -> AssembledG:
    """Combine primary estimates into a full observable table.

    Observables measured by several patterns or configurations are pooled by
    inverse-variance weighting; values outside [0, 1] are clamped and the
    clamping events counted.
    """
    pooled = {}
    for est in estimates:
        if est.primary:
            pooled.setdefault(est.name, []).append(est)
    missing = [name for name in G_FIELDS if name not in pooled]
    if missing:
        raise MissingObservableError(missing)
    values = {}
    errors = {}
    n_clamped = 0
    for name, ests in pooled.items():
        # variance floor keeps zero-count cells from dominating the pool
        w = np.array([1.0 / (e.std_error ** 2 + 1.0 / e.z_used ** 2) for e in ests])
        v = np.array([e.value for e in ests])
        mean = float(w @ v / w.sum())
        err = float(1.0 / np.sqrt(w.sum()))
        if not 0.0 <= mean <= 1.0:
            mean = min(1.0, max(0.0, mean))
            n_clamped += 1
        values[name] = mean
        errors[name] = err
    return AssembledG(table=GTable(**values), std_errors=errors,
                      n_clamped=n_clamped)


def assemble_g_from_records(records) -> AssembledG:
    ests = []
    for rec in records:
        ests.extend(interpret_counts(rec))
    return assemble_g(ests)


@dataclass(frozen=True)
class PipelineReport:
    """Full sampled-measurement analysis of one state."""

    z_per_config: int
    seed: int
    bootstrap: int
    records: list
    estimates: list
    g: AssembledG
    invariants: InvariantSet
    coefficients: ng.QuarticCoefficients
    negativity: float
    negativity_err: float
    det_pt: float
    det_pt_err: float
    entangled: bool
    margin: float
    path: str = "sampled"


def _analyze_table(table: GTable):
    coeffs = ng.coeffs_from_g(table)
    n = ng.solve_negativity_noisy(coeffs)
    det_pt = coeffs.a0 / 48.0
    return coeffs, n, det_pt


def run_pipeline(rho: np.ndarray, z_per_config: int = 1_000_000, seed: int = 0,
                 bootstrap: int = 200) -> PipelineReport:
    """Simulate all four configurations and estimate negativity and witness.

    Uncertainties are standard deviations over multinomial bootstrap
    resamples of the recorded 16-outcome counts.
    """
    records = []
    for cfg in CONFIGURATIONS.values():
        dist = outcome_distribution(rho, cfg)
        records.append(sample(dist, z_per_config, seed))
    estimates = []
    for rec in records:
        estimates.extend(interpret_counts(rec))
    assembled = assemble_g(estimates)
    coeffs, n, det_pt = _analyze_table(assembled.table)

    boot_n = np.empty(bootstrap)
    boot_det = np.empty(bootstrap)
    for b in range(bootstrap):
        rng = np.random.default_rng([int(seed), 0xB007, b])
        resampled = [
            ExperimentRecord(
                config_id=rec.config_id, z=rec.z, seed=rec.seed,
                counts=rng.multinomial(rec.z, rec.counts / rec.z))
            for rec in records
        ]
        table_b = assemble_g_from_records(resampled).table
        _, boot_n[b], boot_det[b] = _analyze_table(table_b)

    w = ng.witness(det_pt)
    return PipelineReport(
        z_per_config=z_per_config,
        seed=seed,
        bootstrap=bootstrap,
        records=records,
        estimates=estimates,
        g=assembled,
        invariants=invariants_from_g(assembled.table),
        coefficients=coeffs,
        negativity=n,
        negativity_err=float(boot_n.std(ddof=1)) if bootstrap > 1 else 0.0,
        det_pt=det_pt,
        det_pt_err=float(boot_det.std(ddof=1)) if bootstrap > 1 else 0.0,
        entangled=w.entangled,
        margin=w.margin,
    )
