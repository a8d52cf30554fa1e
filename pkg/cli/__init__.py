from cli.commands import cmd_gen, cmd_lowerbound
from cli.config import ExperimentConfig, build_config, load_config_file
from cli.sweep import cmd_sweep
from cli.verify import cmd_verify

__all__ = ["ExperimentConfig", "build_config", "cmd_gen", "cmd_lowerbound", "cmd_sweep", "cmd_verify", "load_config_file"]
