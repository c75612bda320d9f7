"""
Command logging middleware with run ID and Prometheus metrics
"""
import json
import time
from typing import Callable

from lib.logging import logger
from lib.prometheus_metrics import command_duration_seconds, write_metrics
from lib.settings import settings


class CommandLoggingMiddleware:
    def dispatch(self, command: str, call_next: Callable[[], int]) -> int:
        # New run ID per command
        run_id = logger.log_command(command)

        start_time = time.time()
        exit_code = call_next()
        duration_seconds = time.time() - start_time

        command_duration_seconds.labels(command=command).observe(duration_seconds)
        logger.log_result(exit_code, actor=command)

        # One JSON line per command for log aggregators
        log_data = {
            "command": command,
            "status": exit_code,
            "dur_ms": round(duration_seconds * 1000, 2),
            "run_id": run_id,
        }
        logger.logger.info(json.dumps(log_data))

        if settings.metrics_path is not None:
            write_metrics(settings.metrics_path)

        return exit_code
