import hashlib
import json
import logging
import os
import threading

from dotenv import load_dotenv

from .metrics_services import push_metric

load_dotenv()

CACHE_FILE = "power_sums.jsonl"

_logger = logging.getLogger(__name__)


def cache_key(spec, d, n):
    payload = json.dumps({"p": spec.p, "e": spec.e,
                          "modulus": list(spec.modulus),
                          "d": d, "n": n}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _checksum(coeffs):
    return hashlib.sha256(json.dumps(coeffs).encode()).hexdigest()


class PowerSumCache:
    """
    Write-through JSON-lines store of power sums. Entries whose checksum
    does not match are ignored and recomputed by the caller.
    """

    def __init__(self, directory):
        self.directory = directory
        self.path = os.path.join(directory, CACHE_FILE)
        self._entries = None
        self._guard = threading.Lock()
        self._locks = {}

    def lock(self, key):
        with self._guard:
            if key not in self._locks:
                self._locks[key] = threading.Lock()
            return self._locks[key]

    def _load(self):
        entries = {}
        if os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as f:
                for lineno, line in enumerate(f, 1):
                    try:
                        entry = json.loads(line)
                        key, coeffs = entry["key"], entry["coeffs"]
                        if entry["check"] != _checksum(coeffs):
                            raise ValueError("checksum mismatch")
                    except (ValueError, KeyError, TypeError) as err:
                        push_metric({"event": "CacheEntryRejected",
                                     "line": lineno, "reason": str(err)})
                        continue
                    entries[key] = coeffs
        return entries

    def get(self, key):
        with self._guard:
            if self._entries is None:
                self._entries = self._load()
            return self._entries.get(key)

    def put(self, key, coeffs, **context):
        entry = {"key": key, "coeffs": list(coeffs),
                 "check": _checksum(list(coeffs))}
        entry.update(context)
        with self._guard:
            if self._entries is None:
                self._entries = self._load()
            self._entries[key] = list(coeffs)
            os.makedirs(self.directory, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(entry, sort_keys=True) + "\n")


_caches = {}
_caches_guard = threading.Lock()


def get_cache():
    """The cache configured by FFZETA_CACHE, or None when caching is off."""
    directory = os.getenv("FFZETA_CACHE")
    if not directory:
        return None
    with _caches_guard:
        if directory not in _caches:
            _logger.debug("power-sum cache at %s", directory)
            _caches[directory] = PowerSumCache(directory)
        return _caches[directory]
