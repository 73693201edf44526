"""Passive port-Hamiltonian models from time-domain data via Loewner interpolation."""

from phloewner.analysis import ErrorReport, bode_data, error_report, h2_norm, hinf_norm, time_compare
from phloewner.excitation import ExperimentPlan, add_noise, design_input, generate_record, select_interpolation_points
from phloewner.freqest import FrequencySample, estimate_frequency_response
from phloewner.loewner import build_loewner, partition_samples, realize_discrete, to_continuous
from phloewner.lti import (
    DescriptorSystem,
    PHForm,
    SignalRecord,
    benchmark_ladder,
    build_rlc_ladder,
    discretize,
    eval_transfer,
    ph_to_descriptor,
    simulate,
)
from phloewner.phreal import certify_passivity, extract_ph_form, realify, realize_ph, spectral_zeros
from phloewner.pipeline import PipelineOptions, PipelineResult, identify_from_samples, run_pipeline

__version__ = "0.1.0"
