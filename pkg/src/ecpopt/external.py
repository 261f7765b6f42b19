"""External objectives over a newline-delimited subprocess protocol.

Protocol, bit-exactly: for each evaluation the parent writes ONE line with the
d coordinates as space-separated decimal floats (Python ``repr`` — shortest
representation that round-trips to the same float64), terminated by ``\n``,
then reads ONE line containing a single decimal float, the objective value.
Strictly one request, one response; the child persists across calls and must
flush its output after every reply.
"""

from __future__ import annotations

import math
import select
import shlex
import subprocess
import threading

import numpy as np

from .core import BoxDomain
from .objectives import Objective

__all__ = ["ExternalTimeout", "ProcessExited", "ProtocolError", "external"]


class ProtocolError(RuntimeError):
    """Child produced a malformed or non-finite response line."""


class ProcessExited(RuntimeError):
    """Child terminated while an evaluation was pending."""


class ExternalTimeout(RuntimeError):
    """Child failed to answer within the per-call time limit."""


class _LineClient:
    def __init__(self, command: str | list[str], timeout: float):
        argv = shlex.split(command) if isinstance(command, str) else list(command)
        self._proc = subprocess.Popen(
            argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
            text=True, bufsize=1)
        self._timeout = timeout
        self._lock = threading.Lock()

    def _read_line(self) -> str:
        fd = self._proc.stdout
        ready, _, _ = select.select([fd], [], [], self._timeout)
        if not ready:
            self._proc.kill()
            raise ExternalTimeout(f"no response within {self._timeout} s")
        line = fd.readline()
        if line == "":
            raise ProcessExited(
                f"child exited with code {self._proc.poll()} before replying")
        return line

    def ask(self, point: np.ndarray) -> float:
        with self._lock:
            if self._proc.poll() is not None:
                raise ProcessExited(f"child already exited with code {self._proc.poll()}")
            request = " ".join(repr(float(v)) for v in point) + "\n"
            try:
                self._proc.stdin.write(request)
                self._proc.stdin.flush()
            except (BrokenPipeError, OSError) as exc:
                raise ProcessExited(f"child pipe closed: {exc}") from exc
            line = self._read_line().strip()
            try:
                value = float(line)
            except ValueError as exc:
                raise ProtocolError(f"unparseable response {line!r}") from exc
            if not math.isfinite(value):
                raise ProtocolError(f"non-finite response {line!r}")
            return value

    def close(self) -> None:
        if self._proc.poll() is None:
            self._proc.kill()
        self._proc.wait()


def external(command: str | list[str], dim: int, domain: BoxDomain,
             timeout: float = 300.0, name: str = "external") -> Objective:
    """Wrap a line-protocol subprocess as an Objective.

    Objectives are expensive by premise, hence the generous default timeout.
    Calls are serialized through a lock; run parallel repetitions with one
    subprocess each.
    """
    if domain.dim != dim:
        raise ValueError("domain dimension must match dim")
    client = _LineClient(command, timeout)
    return Objective(name=name, dim=dim, default_domain=domain,
                     batch=lambda X: _batch_ask(client, X))


def _batch_ask(client: _LineClient, X: np.ndarray):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        return client.ask(X)
    return np.array([client.ask(row) for row in X])
