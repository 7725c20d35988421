from .config import SweepSpec, evaluate_sweep, load_sweep_spec, parse_sweep_spec, run_sweep
from .figures import FIGURES, RunOutputs, parse_assignments, resolve_overrides, run_figure
from .main import configure_logging, main, start
from .manifest import RunManifest, config_digest, file_sha256
from .validate import CHECKS, CheckResult, run_checks

__all__ = [
    "CHECKS",
    "FIGURES",
    "CheckResult",
    "RunManifest",
    "RunOutputs",
    "SweepSpec",
    "config_digest",
    "configure_logging",
    "evaluate_sweep",
    "file_sha256",
    "load_sweep_spec",
    "main",
    "parse_assignments",
    "parse_sweep_spec",
    "resolve_overrides",
    "run_checks",
    "run_figure",
    "run_sweep",
    "start",
]
