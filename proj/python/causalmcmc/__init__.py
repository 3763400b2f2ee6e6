"""Causal gene-network effect estimation.

Thin Python surface over the C++ core: simulation of linear Gaussian networks
under knock-out designs, Metropolis-Hastings over causal node orderings with a
Mallows proposal, the knock-out deviation baseline, and evaluation metrics.
All node ids are 0-based; matrices are numpy arrays indexed [cause, effect].
"""

from ._causalmcmc import (
    builtin_design,
    evaluate,
    fit_mle,
    kendall_distance,
    mallows_log_density,
    mallows_sample,
    pinna_scores,
    profile_loglik,
    run_chain,
    simulate,
    standin_dag,
)

__all__ = [
    "builtin_design",
    "evaluate",
    "fit_mle",
    "kendall_distance",
    "mallows_log_density",
    "mallows_sample",
    "pinna_scores",
    "profile_loglik",
    "run_chain",
    "simulate",
    "standin_dag",
]
