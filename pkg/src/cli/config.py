"""
Run configuration
"""
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from ..config import Settings

COMMANDS = ("solve", "dump-space", "dump-csp", "dump-labels", "check-kb")
OUTPUT_FORMATS = ("sexpr", "ode-text")


class RunConfig(BaseModel):
    """One invocation of the driver"""
    command: str = "solve"
    kb_paths: List[Path] = Field(default_factory=list)
    scenario_path: Optional[Path] = None
    problem_path: Optional[Path] = None
    pref_path: Optional[Path] = None
    requirements: List[str] = Field(default_factory=list)
    max_solutions: int = Settings.MAX_SOLUTIONS
    output_format: str = Settings.OUTPUT_FORMAT
    # Cross-check against the enumeration oracles when set
    oracle_bound: Optional[int] = None

    @field_validator("command")
    @classmethod
    def known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            raise ValueError(f"unknown command {value}, expected one of {', '.join(COMMANDS)}")
        return value

    @field_validator("output_format")
    @classmethod
    def known_format(cls, value: str) -> str:
        if value not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format {value}, expected one of {', '.join(OUTPUT_FORMATS)}")
        return value

    @field_validator("kb_paths")
    @classmethod
    def kb_files_exist(cls, value: List[Path]) -> List[Path]:
        for path in value:
            if not path.is_file():
                raise ValueError(f"no such file: {path}")
        return value

    @field_validator("scenario_path", "problem_path", "pref_path")
    @classmethod
    def file_exists(cls, value: Optional[Path]) -> Optional[Path]:
        if value is not None and not value.is_file():
            raise ValueError(f"no such file: {value}")
        return value

    @field_validator("max_solutions")
    @classmethod
    def positive_solutions(cls, value: int) -> int:
        if value < 1:
            raise ValueError("max_solutions must be at least 1")
        return value

    @field_validator("oracle_bound")
    @classmethod
    def positive_bound(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("oracle_bound must be at least 1")
        return value

    @model_validator(mode="after")
    def inputs_fit_command(self) -> "RunConfig":
        if self.problem_path is not None:
            if self.kb_paths or self.scenario_path is not None:
                raise ValueError("give either a problem file or a knowledge base and scenario, not both")
            if self.pref_path is not None or self.requirements:
                raise ValueError("a problem file carries its own preferences and cannot take requirements")
            if self.command not in ("solve", "dump-csp"):
                raise ValueError(f"{self.command} needs a knowledge base and scenario")
            return self
        if not self.kb_paths:
            raise ValueError("at least one knowledge base file is required")
        if self.command != "check-kb" and self.scenario_path is None:
            raise ValueError(f"{self.command} needs a scenario file")
        return self

    @property
    def uses_problem_file(self) -> bool:
        return self.problem_path is not None
