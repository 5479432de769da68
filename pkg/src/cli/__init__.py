"""Command-line driver"""
from .config import COMMANDS, OUTPUT_FORMATS, RunConfig
from .pipeline import (
    OracleMismatch, RunResult, UnsatisfiableScenario, build_problem, generate_space, load_scenario, run,
)
from .app import build_parser, main

__all__ = [
    'COMMANDS', 'OUTPUT_FORMATS', 'RunConfig',
    'OracleMismatch', 'RunResult', 'UnsatisfiableScenario', 'build_problem', 'generate_space', 'load_scenario', 'run',
    'build_parser', 'main',
]
