"""Python access to the beamctl engine.

Structured results come back as plain dicts with the same layout the HTTP
service uses (see schema/wire.schema.json).
"""

import json

from . import _core
from ._core import Error, bundled_array_json, steering_vector

__all__ = ["Error", "Session", "Service", "bundled_array_json", "steering_vector", "run_experiment", "run_sweep"]


class Session:
    """One sequential control session on one array."""

    def __init__(self, theta0_deg, method="oparc", array="nla11"):
        if not isinstance(array, str):
            array = json.dumps(array)
        self._s = _core.Session(array=array, theta0_deg=theta0_deg, method=method)

    def step(self, theta_deg, rho_db):
        return json.loads(self._s.step(theta_deg, rho_db))

    def undo(self):
        return self._s.undo()

    def pattern(self, from_deg=-90.0, to_deg=90.0, step_deg=0.2):
        return json.loads(self._s.pattern(from_deg, to_deg, step_deg))

    @property
    def step_count(self):
        return self._s.step_count

    @property
    def method(self):
        return self._s.method

    @property
    def weight(self):
        return self._s.weight

    @property
    def gain_linear(self):
        return self._s.gain_linear


class Service:
    """In-process handle on the HTTP session service (no sockets)."""

    def __init__(self, persist_dir=None):
        self._svc = _core.Service(None if persist_dir is None else str(persist_dir))

    def request(self, method, path, body=None, query=None):
        payload = "" if body is None else json.dumps(body)
        status, text = self._svc.handle(method, path, {k: str(v) for k, v in (query or {}).items()}, payload)
        return status, json.loads(text)

    @property
    def session_count(self):
        return self._svc.session_count


def _config_text(config):
    return config if isinstance(config, str) else json.dumps(config)


def run_experiment(config):
    """Runs every method over the configured steps; returns the summary document."""
    return json.loads(_core.run_experiment(_config_text(config)))


def run_sweep(config, threads=1):
    """Returns the sweep table as CSV text."""
    return _core.run_sweep(_config_text(config), threads)
