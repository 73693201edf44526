"""Time-domain data to certified port-Hamiltonian model, end to end."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from phloewner.errors import PHLoewnerError, StageError
from phloewner.excitation import ExperimentPlan
from phloewner.freqest import FrequencySample, estimate_frequency_response
from phloewner.loewner import D_REG, SVD_TOL, build_loewner, partition_samples, realize_discrete, to_continuous
from phloewner.lti import DescriptorSystem, PHForm, SignalRecord
from phloewner.phreal import (
    PassivityReport,
    SpectralTriple,
    certify_passivity,
    extract_ph_form,
    realify,
    realize_ph,
    spectral_zeros,
)


@dataclass(frozen=True)
class PipelineOptions:
    svd_tol: float = SVD_TOL
    d_reg: float = D_REG
    order: int | None = None
    grid: tuple[float, ...] | None = None


@dataclass
class PipelineResult:
    ph: PHForm
    report: PassivityReport
    diagnostics: dict
    samples: list[FrequencySample] = field(repr=False)
    discrete: DescriptorSystem = field(repr=False)
    continuous: DescriptorSystem = field(repr=False)
    realization: DescriptorSystem = field(repr=False)
    triples: list[SpectralTriple] = field(repr=False)

    def __iter__(self):
        return iter((self.ph, self.report, self.diagnostics))


class _Stage:
    def __init__(self, name):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, PHLoewnerError) and not isinstance(exc, StageError):
            raise StageError(self.name, exc) from exc
        return False


def identify_from_samples(samples: list[FrequencySample], Ts: float,
                          options: PipelineOptions = PipelineOptions()) -> PipelineResult:
    """Loewner realization, d2c lift and spectral-zero pH construction from frequency samples."""
    with _Stage("partition"):
        left, right = partition_samples(samples)
    with _Stage("loewner"):
        pencil = build_loewner(left, right)
        sv = pencil.singular_values()
        try:
            pencil = pencil.realified()
        except PHLoewnerError:
            pass
        disc = realize_discrete(pencil, options.svd_tol, options.order, Ts=Ts)
    with _Stage("d2c"):
        cont = to_continuous(disc, options.d_reg)
    with _Stage("spectral_zeros"):
        triples = spectral_zeros(cont)
    with _Stage("ph_realization"):
        complex_real = realize_ph(triples, cont.D)
        real_sys = realify(complex_real, [t.lam for t in triples])
    with _Stage("ph_form"):
        ph = extract_ph_form(real_sys)
    with _Stage("certify"):
        report = certify_passivity(ph, options.grid)
    diagnostics = {
        "intermediate_order": int(disc.n),
        "ph_order": int(ph.n),
        "num_samples": len(samples),
        "singular_values": [float(x) for x in sv],
        "spectral_zeros": [{"re": float(t.lam.real), "im": float(t.lam.imag)} for t in triples],
        "passivity": {
            "verdict": bool(report.verdict),
            "popov_min_eig": report.popov_min_eig,
            "block_min_eig": report.block_min_eig,
            "q_min_eig": report.q_min_eig,
            "j_skew_residual": report.j_skew_residual,
        },
    }
    return PipelineResult(ph, report, diagnostics, samples, disc, cont, real_sys, triples)


def run_pipeline(record: SignalRecord, plan: ExperimentPlan,
                 options: PipelineOptions = PipelineOptions()) -> PipelineResult:
    """Full identification: estimate, Loewner, d2c, spectral zeros, pH form, certification."""
    with _Stage("estimate"):
        samples = estimate_frequency_response(record, plan)
    return identify_from_samples(samples, record.Ts, options)


def sample_values(samples: list[FrequencySample]) -> tuple[np.ndarray, np.ndarray]:
    return (np.array([s.point for s in samples]), np.array([s.value for s in samples]))
