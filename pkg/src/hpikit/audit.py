"""Fit-call instrumentation.

Every model, transform, and standardiser fit passes through
:func:`notify_fit`, which bumps a global counter and, while a recorder is
active, appends a structured event. The cross-validation driver additionally
records which rows each fold evaluates, so a recorded run can be checked for
train/evaluate overlap after the fact. Events carry a fingerprint of the
actual array handed to the fit, tying the claimed row ids to the data used.
"""

import hashlib
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

_fit_count = 0
_recorder = None


def fit_count():
    """Total number of fit calls since import (all components)."""
    return _fit_count


def _fingerprint(data):
    if data is None:
        return None
    arr = np.ascontiguousarray(np.asarray(data, dtype=np.float64))
    return hashlib.sha1(arr.tobytes()).hexdigest()


@dataclass
class FitEvent:
    component: str  # "model" | "transform" | "standardiser"
    tag: str
    scope: tuple  # () top level, (k,) outer fold k, (k, m) inner fold m
    row_ids: tuple | None
    fingerprint: str | None


@dataclass
class EvalEvent:
    scope: tuple
    row_ids: tuple


@dataclass
class AuditLog:
    fits: list = field(default_factory=list)
    evals: list = field(default_factory=list)

    def record_fit(self, component, tag, scope, row_ids, data):
        ids = None if row_ids is None else tuple(int(i) for i in row_ids)
        self.fits.append(
            FitEvent(component, tag, tuple(scope), ids, _fingerprint(data))
        )

    def record_eval(self, scope, row_ids):
        self.evals.append(EvalEvent(tuple(scope), tuple(int(i) for i in row_ids)))

    def overlap_violations(self):
        """Fit events that saw a row of any evaluation set scoped above them.

        A fit recorded under scope (k, m) must be disjoint from the eval rows
        of scope (k, m) and of scope (k,). Returns the offending pairs.
        """
        bad = []
        for fe in self.fits:
            if fe.row_ids is None:
                continue
            fit_rows = set(fe.row_ids)
            for ev in self.evals:
                if fe.scope[: len(ev.scope)] == ev.scope:
                    hit = fit_rows.intersection(ev.row_ids)
                    if hit:
                        bad.append((fe, ev, sorted(hit)))
        return bad


def notify_fit(component, tag, row_ids=None, data=None, scope=()):
    global _fit_count
    _fit_count += 1
    if _recorder is not None:
        _recorder.record_fit(component, tag, scope, row_ids, data)


def notify_eval(scope, row_ids):
    if _recorder is not None:
        _recorder.record_eval(scope, row_ids)


@contextmanager
def recording():
    """Install a fresh AuditLog for the duration of the block."""
    global _recorder
    previous = _recorder
    log = AuditLog()
    _recorder = log
    try:
        yield log
    finally:
        _recorder = previous
