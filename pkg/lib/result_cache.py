"""Result cache module - append-only JSON-lines memo for expensive solves"""
import fcntl
import hashlib
import json
import logging
import threading
from pathlib import Path
from typing import Any, Optional

from lib.prometheus_metrics import result_cache_hits_total, result_cache_misses_total

logger = logging.getLogger(__name__)


def make_key(geometry_id: str, op: str, params: dict[str, Any], cutoff: float,
             quadrature: dict[str, Any]) -> str:
    """Digest of everything a cached value depends on"""
    payload = json.dumps(
        {
            "geometry": geometry_id,
            "op": op,
            "params": params,
            "cutoff": cutoff,
            "quadrature": quadrature,
        },
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


class ResultCache:
    """Thread-safe memo with an optional crash-safe file behind it"""

    def __init__(self):
        self.path: Optional[Path] = None
        self.entries: dict[str, Any] = {}
        self.connected = False
        self._lock = threading.Lock()

    def open(self, path: Optional[Path] = None) -> bool:
        """Load existing records; path=None keeps the memo in memory only"""
        with self._lock:
            self.entries = {}
            self.path = path
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.touch(exist_ok=True)
                self._load(path)
            self.connected = True
        logger.info(f"result cache open path={path} entries={len(self.entries)}")
        return True

    def close(self) -> None:
        """Stop caching"""
        with self._lock:
            self.connected = False
            self.entries = {}
            self.path = None

    def _load(self, path: Path) -> None:
        """Read JSON lines, truncating a corrupt tail left by a crash"""
        good_bytes = 0
        with open(path, "r+b") as handle:
            fcntl.flock(handle, fcntl.LOCK_EX)
            try:
                for raw in handle:
                    try:
                        record = json.loads(raw)
                        key, value = record["key"], record["value"]
                    except (ValueError, KeyError, TypeError):
                        logger.warning(
                            f"result cache corrupt record at byte={good_bytes}, truncating"
                        )
                        break
                    if not raw.endswith(b"\n"):
                        logger.warning(
                            f"result cache unterminated record at byte={good_bytes}, truncating"
                        )
                        break
                    self.entries[key] = value
                    good_bytes += len(raw)
                handle.truncate(good_bytes)
            finally:
                fcntl.flock(handle, fcntl.LOCK_UN)

    def get(self, key: str) -> Optional[Any]:
        """Get value from cache"""
        if not self.connected:
            return None
        with self._lock:
            value = self.entries.get(key)
        if value is None:
            result_cache_misses_total.inc()
        else:
            result_cache_hits_total.inc()
        return value

    def set(self, key: str, value: Any) -> bool:
        """Store value and append it to the backing file"""
        if not self.connected:
            return False
        line = json.dumps({"key": key, "value": value}, sort_keys=True) + "\n"
        with self._lock:
            if key in self.entries:
                return True
            self.entries[key] = value
            if self.path is None:
                return True
            try:
                with open(self.path, "a", encoding="utf-8") as handle:
                    fcntl.flock(handle, fcntl.LOCK_EX)
                    try:
                        handle.write(line)
                        handle.flush()
                    finally:
                        fcntl.flock(handle, fcntl.LOCK_UN)
            except OSError as e:
                logger.error(f"result cache append error: {e}")
                return False
        return True


# Global result cache instance
result_cache = ResultCache()
