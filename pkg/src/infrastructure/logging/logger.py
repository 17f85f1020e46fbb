"""
Logging Configuration

Event logging for demo generation, fits, meta-training and experiment runs.
"""
import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, Dict, Optional, Sequence


# ANSI color codes for terminal
class Colors:
    RESET = '\033[0m'
    BOLD = '\033[1m'
    DIM = '\033[2m'

    RED = '\033[31m'
    GREEN = '\033[32m'
    YELLOW = '\033[33m'
    BLUE = '\033[34m'
    MAGENTA = '\033[35m'
    CYAN = '\033[36m'

    BRIGHT_BLACK = '\033[90m'
    BRIGHT_RED = '\033[91m'
    BRIGHT_GREEN = '\033[92m'


LIBRARY_LOGGER = "src"


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


class ExperimentLogger:
    """Logger for experiment monitoring and debugging"""

    def __init__(
        self,
        name: str = "mtirl",
        log_level: str = "INFO",
        use_colors: bool = True,
        log_format: str = "readable",
    ):
        """
        Initialize experiment logger

        Args:
            name: Logger name
            log_level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
            use_colors: Enable colored output in readable mode
            log_format: "readable" or "json"
        """
        level = getattr(logging, log_level.upper())
        self.logger = logging.getLogger(name)
        self.logger.setLevel(level)
        self.logger.propagate = False
        self.use_colors = use_colors

        # Logs go to stderr; stdout carries command output
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(level)
        if log_format == "json":
            handler.setFormatter(StructuredFormatter())
        else:
            handler.setFormatter(ReadableExperimentFormatter(use_colors=use_colors))

        # Remove existing handlers to avoid duplicates
        self.logger.handlers = [handler]

        # Library modules log through logging.getLogger(__name__)
        library = logging.getLogger(LIBRARY_LOGGER)
        library.setLevel(level)
        library.propagate = False
        library.handlers = [handler]

    def log_demos_generated(
        self,
        task_label: str,
        role: str,
        seed: int,
        n: int,
        horizon: int,
        path: str,
    ):
        """Log a written demo file"""
        self.logger.info(
            "DEMOS_GENERATED",
            extra={
                "event_type": "demos_generated",
                "task_label": task_label,
                "role": role,
                "seed": seed,
                "n": n,
                "horizon": horizon,
                "path": path,
                "timestamp": _utc_now(),
            }
        )

    def log_fit_started(
        self,
        algorithm: str,
        task_label: str,
        seed: int,
        n_tasks: int,
        target_count: Optional[int] = None,
        lam: Optional[float] = None,
    ):
        """Log the start of a fit"""
        self.logger.info(
            "FIT_STARTED",
            extra={
                "event_type": "fit_started",
                "algorithm": algorithm,
                "task_label": task_label,
                "seed": seed,
                "n_tasks": n_tasks,
                "target_count": target_count,
                "lambda": lam,
                "timestamp": _utc_now(),
            }
        )

    def log_fit_progress(
        self,
        algorithm: str,
        task_label: str,
        iteration: int,
        grad_norm: float,
        loss: float,
    ):
        """Log fit progress (debug level)"""
        self.logger.debug(
            "FIT_PROGRESS",
            extra={
                "event_type": "fit_progress",
                "algorithm": algorithm,
                "task_label": task_label,
                "iteration": iteration,
                "grad_norm": grad_norm,
                "loss": loss,
                "timestamp": _utc_now(),
            }
        )

    def log_fit_completed(
        self,
        algorithm: str,
        task_label: str,
        seed: int,
        iterations: int,
        converged: bool,
        grad_norms: Sequence[float],
        loss: float,
        duration_seconds: float,
    ):
        """Log a finished fit"""
        self.logger.info(
            "FIT_COMPLETED",
            extra={
                "event_type": "fit_completed",
                "algorithm": algorithm,
                "task_label": task_label,
                "seed": seed,
                "iterations": iterations,
                "converged": converged,
                "grad_norm": max(grad_norms) if len(grad_norms) else None,
                "loss": loss,
                "duration_seconds": duration_seconds,
                "timestamp": _utc_now(),
            }
        )

    def log_fit_failed(
        self,
        algorithm: str,
        task_label: str,
        seed: int,
        error_type: str,
        error_message: str,
    ):
        """Log a failed fit; the run continues"""
        self.logger.error(
            "FIT_FAILED",
            extra={
                "event_type": "fit_failed",
                "algorithm": algorithm,
                "task_label": task_label,
                "seed": seed,
                "error_type": error_type,
                "error_message": error_message,
                "timestamp": _utc_now(),
            }
        )

    def log_planner_warning(self, planner: str, message: str, residual: Optional[float] = None):
        """Log a planner diagnostic"""
        self.logger.warning(
            "PLANNER_WARNING",
            extra={
                "event_type": "planner_warning",
                "planner": planner,
                "error_message": message,
                "residual": residual,
                "timestamp": _utc_now(),
            }
        )

    def log_meta_step(self, outer_step: int, task_label: str, phi_norm: float):
        """Log one Reptile outer step (debug level)"""
        self.logger.debug(
            "META_STEP",
            extra={
                "event_type": "meta_step",
                "iteration": outer_step,
                "task_label": task_label,
                "phi_norm": phi_norm,
                "timestamp": _utc_now(),
            }
        )

    def log_result_row(self, row: Dict[str, Any]):
        """Log one result row"""
        self.logger.info(
            "RESULT_ROW",
            extra={
                "event_type": "result_row",
                "algorithm": row.get("algorithm"),
                "task_label": row.get("target_task"),
                "target_count": row.get("m"),
                "lambda": row.get("lambda"),
                "seed": row.get("seed"),
                "value": row.get("value"),
                "oracle_value": row.get("oracle_value"),
                "status": row.get("status"),
                "timestamp": _utc_now(),
            }
        )

    def log_run_summary(
        self,
        command: str,
        rows: int,
        failed: int,
        output_path: str,
        duration_seconds: float,
    ):
        """Log the end of a CLI command"""
        self.logger.info(
            "RUN_SUMMARY",
            extra={
                "event_type": "run_summary",
                "command": command,
                "rows": rows,
                "failed": failed,
                "path": output_path,
                "duration_seconds": duration_seconds,
                "timestamp": _utc_now(),
            }
        )


class ReadableExperimentFormatter(logging.Formatter):
    """Custom formatter for human-readable single-line experiment logs"""

    def __init__(self, use_colors: bool = True):
        super().__init__()
        self.use_colors = use_colors

    def format(self, record: logging.LogRecord) -> str:
        """Format log record for console display"""
        timestamp = datetime.now(timezone.utc).strftime("%H:%M:%S")
        event_type = getattr(record, "event_type", None)
        formatter = {
            "demos_generated": self._format_demos_generated,
            "fit_started": self._format_fit_started,
            "fit_progress": self._format_fit_progress,
            "fit_completed": self._format_fit_completed,
            "fit_failed": self._format_fit_failed,
            "planner_warning": self._format_planner_warning,
            "meta_step": self._format_meta_step,
            "result_row": self._format_result_row,
            "run_summary": self._format_run_summary,
        }.get(event_type)
        if formatter is None:
            return f"[{timestamp}] {record.levelname}: {record.getMessage()}"
        return f"[{timestamp}] {formatter(record)}"

    def _colorize(self, text: str, color: str) -> str:
        """Apply color to text if colors are enabled"""
        if self.use_colors:
            return f"{color}{text}{Colors.RESET}"
        return text

    def _format_demos_generated(self, record: logging.LogRecord) -> str:
        return (
            f"{self._colorize('DEMOS', Colors.CYAN + Colors.BOLD)} "
            f"{record.task_label}/{record.role} seed={record.seed} "
            f"n={record.n} H={record.horizon} -> {record.path}"
        )

    def _format_fit_started(self, record: logging.LogRecord) -> str:
        details = f"{record.algorithm} task={record.task_label} seed={record.seed}"
        if record.target_count is not None:
            details += f" M={record.target_count}"
        if record.__dict__.get("lambda") is not None:
            details += f" lambda={record.__dict__['lambda']}"
        return f"{self._colorize('FIT', Colors.BLUE + Colors.BOLD)} {details}"

    def _format_fit_progress(self, record: logging.LogRecord) -> str:
        return self._colorize(
            f"  {record.algorithm}/{record.task_label} it={record.iteration} "
            f"|grad|={record.grad_norm:.3e} loss={record.loss:.6g}",
            Colors.BRIGHT_BLACK,
        )

    def _format_fit_completed(self, record: logging.LogRecord) -> str:
        if record.converged:
            status = "converged"
        else:
            status = "no iterations" if record.iterations == 0 else "budget exhausted"
        grad = "n/a" if record.grad_norm is None else f"{record.grad_norm:.3e}"
        return (
            f"{self._colorize('DONE', Colors.GREEN + Colors.BOLD)} "
            f"{record.algorithm} task={record.task_label} seed={record.seed} "
            f"iters={record.iterations} ({status}) |grad|={grad} "
            f"in {record.duration_seconds:.2f}s"
        )

    def _format_fit_failed(self, record: logging.LogRecord) -> str:
        return (
            f"{self._colorize('FAILED', Colors.RED + Colors.BOLD)} "
            f"{record.algorithm} task={record.task_label} seed={record.seed}: "
            f"{self._colorize(f'{record.error_type}: {record.error_message}', Colors.BRIGHT_RED)}"
        )

    def _format_planner_warning(self, record: logging.LogRecord) -> str:
        return f"{self._colorize('PLANNER', Colors.YELLOW + Colors.BOLD)} {record.planner}: {record.error_message}"

    def _format_meta_step(self, record: logging.LogRecord) -> str:
        return self._colorize(
            f"  reptile step={record.iteration} task={record.task_label} |phi|={record.phi_norm:.4g}",
            Colors.BRIGHT_BLACK,
        )

    def _format_result_row(self, record: logging.LogRecord) -> str:
        lam = record.__dict__.get("lambda")
        value = record.value
        value_text = "nan" if value is None else f"{value:.4f}"
        oracle_text = "nan" if record.oracle_value is None else f"{record.oracle_value:.4f}"
        return (
            f"{self._colorize('ROW', Colors.MAGENTA)} {record.algorithm} "
            f"task={record.task_label} M={record.target_count} lambda={lam} seed={record.seed} "
            f"value={value_text} oracle={oracle_text} [{record.status}]"
        )

    def _format_run_summary(self, record: logging.LogRecord) -> str:
        return (
            f"{self._colorize('SUMMARY', Colors.BRIGHT_GREEN + Colors.BOLD)} {record.command}: "
            f"{record.rows} rows ({record.failed} failed) -> {record.path} "
            f"in {record.duration_seconds:.1f}s"
        )


_STANDARD_ATTRIBUTES = set(vars(logging.LogRecord("", 0, "", 0, "", (), None))) | {"message", "asctime"}


class StructuredFormatter(logging.Formatter):
    """Custom formatter for structured JSON logs (one object per record)"""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON"""
        log_data = {
            "timestamp": _utc_now(),
            "level": record.levelname,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }
        for key, value in record.__dict__.items():
            if key not in _STANDARD_ATTRIBUTES and key not in log_data:
                log_data[key] = value
        return json.dumps(log_data, ensure_ascii=False, default=str)


# Global logger instance
_logger_instance: Optional[ExperimentLogger] = None


def get_logger(
    log_level: str = "INFO",
    use_colors: bool = True,
    log_format: str = "readable",
) -> ExperimentLogger:
    """
    Get or create global logger instance

    Args:
        log_level: Log level (DEBUG, INFO, WARNING, ERROR)
        use_colors: Enable colored output (default: True)
        log_format: "readable" or "json"

    Returns:
        ExperimentLogger instance
    """
    global _logger_instance
    if _logger_instance is None:
        _logger_instance = ExperimentLogger(
            log_level=log_level, use_colors=use_colors, log_format=log_format
        )
    return _logger_instance


def configure_logger(
    log_level: str = "INFO",
    use_colors: bool = True,
    log_format: str = "readable",
) -> ExperimentLogger:
    """Replace the global logger instance (used by the CLI flags)."""
    global _logger_instance
    _logger_instance = ExperimentLogger(log_level=log_level, use_colors=use_colors, log_format=log_format)
    return _logger_instance
