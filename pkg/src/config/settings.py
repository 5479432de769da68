"""
Centralized configuration settings for EcoCompose
"""
import os
from pathlib import Path

# Project root directory
PROJECT_ROOT = Path(__file__).parent.parent.parent


class Settings:
    """Application settings and configuration"""

    # Logging Configuration
    LOG_LEVEL: str = os.getenv("COMPOSER_LOG_LEVEL", "WARNING")
    LOG_FORMAT: str = os.getenv("COMPOSER_LOG_FORMAT", "%(levelname)s %(name)s: %(message)s")

    # Model space construction
    # Upper bound on fragment applications before the fixpoint loop gives up
    FIXPOINT_LIMIT: int = int(os.getenv("COMPOSER_FIXPOINT_LIMIT", "10000"))

    # Oracle bounds
    ATMS_ORACLE_BOUND: int = int(os.getenv("COMPOSER_ORACLE_BOUND", "16"))
    SEARCH_ORACLE_BOUND: int = int(os.getenv("COMPOSER_SEARCH_ORACLE_BOUND", "200000"))

    # Solver / output defaults
    MAX_SOLUTIONS: int = int(os.getenv("COMPOSER_MAX_SOLUTIONS", "1"))
    OUTPUT_FORMAT: str = os.getenv("COMPOSER_OUTPUT_FORMAT", "sexpr")

    # File Paths
    CORPUS_DIR: Path = PROJECT_ROOT / "corpus"

    @classmethod
    def get_corpus_path(cls, name: str) -> Path:
        """Get the path of a shipped corpus file"""
        return cls.CORPUS_DIR / name

    @classmethod
    def get_log_level(cls, verbosity: int = 0) -> str:
        """
        Get the effective log level name

        Args:
            verbosity: number of -v flags given on the command line

        Returns:
            A logging level name
        """
        if verbosity >= 2:
            return "DEBUG"
        if verbosity == 1:
            return "INFO"
        return cls.LOG_LEVEL.upper()
