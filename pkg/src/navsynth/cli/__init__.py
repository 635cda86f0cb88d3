"""
Command-line interface.
"""

from navsynth.cli.main import cli, run
from navsynth.cli.runconfig import RunConfig

__all__ = ["cli", "run", "RunConfig"]
