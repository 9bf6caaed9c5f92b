"""Experiment configuration handling."""

from .manager import ConfigManager, load_experiment, record_experiment

__all__ = ["ConfigManager", "load_experiment", "record_experiment"]
