"""
Logging module - Run ID tracking & structured logging
"""
import logging
import time
import uuid
from typing import Optional

from lib.settings import settings


class RunLogger:
    """Logger with run ID tracking"""

    def __init__(self):
        self.logger = logging.getLogger("holoscope")
        self.logger.setLevel(settings.log_level.upper())

        handler = logging.StreamHandler()
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        handler.setFormatter(formatter)
        self.logger.addHandler(handler)

        self.run_id: Optional[str] = None
        self.start_time = time.time()

    def log_command(self, command: str, run_id: Optional[str] = None) -> str:
        """Log the start of a command"""
        if not run_id:
            run_id = str(uuid.uuid4())
        self.start_time = time.time()
        self.run_id = run_id
        self.logger.info(f"run_id={run_id} command={command}")
        return run_id

    def log_result(self, exit_code: int, actor: str = "cli") -> float:
        """Log command completion with latency"""
        latency = round((time.time() - self.start_time) * 1000, 2)  # ms
        self.logger.info(
            f"run_id={self.run_id} actor={actor} "
            f"status={exit_code} latency={latency}ms"
        )
        return latency


logger = RunLogger()
