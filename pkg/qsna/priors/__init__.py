"""Prior construction - p-hat, P* and the arbitrage-free class around it."""

from .construction import (
    METHODS,
    LocalNAError,
    NodeCheck,
    PriorOutsideHullError,
    PStarCertificate,
    QBarMembership,
    construct_phat,
    construct_pstar,
    hull_weights,
    improve_prior,
    phat_weights,
    qbar_member,
)
from .family import (
    ClassSample,
    class_member,
    class_relevant_paths,
    dominating_member,
    polar_sets_equal,
    random_kernels,
    sample_class_member,
)

__all__ = [
    "METHODS",
    "LocalNAError",
    "NodeCheck",
    "PriorOutsideHullError",
    "PStarCertificate",
    "QBarMembership",
    "construct_phat",
    "construct_pstar",
    "hull_weights",
    "improve_prior",
    "phat_weights",
    "qbar_member",
    "ClassSample",
    "class_member",
    "class_relevant_paths",
    "dominating_member",
    "polar_sets_equal",
    "random_kernels",
    "sample_class_member",
]
