"""Model registry, the fit dispatch used by the pipelines, and the JSON
(de)serialisation shared by every learner."""

import json

import numpy as np

from .. import audit
from ..data import ValidationError

FORMAT_VERSION = 1


class FitError(RuntimeError):
    """A learner failed to fit (non-convergence, ill-conditioning)."""


_FITTERS = {}
_CLASSES = {}


def register(tag, fitter, cls):
    _FITTERS[tag] = fitter
    _CLASSES[cls.__name__] = cls
    cls.algorithm = tag


def known_algorithms():
    return tuple(sorted(_FITTERS))


def as_matrix(X):
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValidationError(f"expected a 2-d feature matrix, got {X.shape}")
    return X


def as_vector(y, n=None):
    y = np.ascontiguousarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise ValidationError(f"expected a 1-d target vector, got {y.shape}")
    if n is not None and y.shape[0] != n:
        raise ValidationError(f"X has {n} rows but y has {y.shape[0]}")
    return y


def fit_model(tag, X, y, params=None, row_ids=None, scope=()):
    """Fit the tagged learner on (X, y). Audited; ``params`` must use the
    learner's hyperparameter names (see each fit function)."""
    if tag not in _FITTERS:
        raise ValidationError(f"unknown algorithm {tag!r}")
    X = as_matrix(X)
    y = as_vector(y, X.shape[0])
    audit.notify_fit("model", tag, row_ids=row_ids, data=X, scope=scope)
    return _FITTERS[tag](X, y, **dict(params or {}))


class Model:
    """Common behaviour: input checking, effective parameter count, JSON."""

    algorithm = None
    n_features = None

    def _check(self, X):
        X = as_matrix(X)
        if X.shape[1] != self.n_features:
            raise ValidationError(
                f"model was fitted on {self.n_features} features, "
                f"got {X.shape[1]}"
            )
        return X

    def predict(self, X):
        raise NotImplementedError

    def param_count(self):
        """Effective number of parameters for information criteria."""
        raise NotImplementedError

    def hyperparameters(self):
        return {}

    def _state(self):
        raise NotImplementedError

    @classmethod
    def _from_state(cls, hyper, state):
        raise NotImplementedError

    def to_dict(self):
        return {
            "format_version": FORMAT_VERSION,
            "algorithm": self.algorithm,
            "class": type(self).__name__,
            "hyperparameters": self.hyperparameters(),
            "parameters": self._state(),
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def model_from_dict(doc):
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValidationError(
            f"unsupported model document version {doc.get('format_version')!r}"
        )
    cls = _CLASSES.get(doc.get("class"))
    if cls is None:
        raise ValidationError(f"unknown model class {doc.get('class')!r}")
    return cls._from_state(doc.get("hyperparameters", {}), doc["parameters"])


def model_from_json(text):
    return model_from_dict(json.loads(text))
