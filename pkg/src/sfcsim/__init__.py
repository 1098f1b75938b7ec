"""Seed-deterministic SFC provisioning simulator with forecast-assisted
data-center selection.

Pipeline stages (mirrored by the CLI): simulate telemetry with an RL-driven
placement environment, train sliding-window forecasters on it, combine them
into an error-weighted ensemble, and compare prediction-assisted DC selection
against a non-predictive baseline on identical request traces.
"""

__version__ = "0.1.0"
