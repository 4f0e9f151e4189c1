"""From-scratch regression learners behind a common fit/predict/serialise
surface. Importing the subpackage populates the algorithm registry."""

from .base import (
    FitError,
    Model,
    fit_model,
    known_algorithms,
    model_from_dict,
    model_from_json,
)
from .cart import CartModel, fit_cart
from .forest import ForestModel, fit_random_forest
from .knn import KnnModel, fit_knn
from .krr import KrrModel, fit_krr
from .linear import (
    LassoModel,
    LinearModel,
    MeanModel,
    fit_elastic_net,
    fit_lasso,
    fit_mean,
    lasso_alpha_max,
)
from .svr import SvrModel, fit_svr

__all__ = [
    "FitError",
    "Model",
    "fit_model",
    "known_algorithms",
    "model_from_dict",
    "model_from_json",
    "CartModel",
    "fit_cart",
    "ForestModel",
    "fit_random_forest",
    "KnnModel",
    "fit_knn",
    "KrrModel",
    "fit_krr",
    "LassoModel",
    "LinearModel",
    "MeanModel",
    "fit_elastic_net",
    "fit_lasso",
    "fit_mean",
    "lasso_alpha_max",
    "SvrModel",
    "fit_svr",
]
