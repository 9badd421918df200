from .commands import COMMANDS, cmd_align_survey, cmd_bench, cmd_compare, cmd_fluct, cmd_mz, cmd_summary
from .config import EvalConfig, build_config, load_config, read_config_file
from .main import main

__all__ = [
    "COMMANDS",
    "EvalConfig",
    "build_config",
    "cmd_align_survey",
    "cmd_bench",
    "cmd_compare",
    "cmd_fluct",
    "cmd_mz",
    "cmd_summary",
    "load_config",
    "main",
    "read_config_file",
]
