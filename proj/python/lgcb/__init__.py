"""Adversarial linear contextual bandits with graph-structured side observations.

Thin python surface over the C++ core: feedback graphs, observation
machinery, tuning schedules, the experiment runner, and the brute-force
verification battery.
"""

from lgcb._core import (
    ContextDistribution,
    FeedbackGraph,
    independence_number_exact,
    independence_number_greedy_bound,
    observation_probabilities,
    observation_set,
    preset_json,
    preset_names,
    q_bound_u_directed,
    q_value_ix,
    run_experiment,
    run_preset,
    run_verification,
    schedule_ix,
    schedule_u_directed,
    schedule_u_undirected,
    unbiasedness_deviation,
    __version__,
)

__all__ = [
    "ContextDistribution",
    "FeedbackGraph",
    "independence_number_exact",
    "independence_number_greedy_bound",
    "observation_probabilities",
    "observation_set",
    "preset_json",
    "preset_names",
    "q_bound_u_directed",
    "q_value_ix",
    "run_experiment",
    "run_preset",
    "run_verification",
    "schedule_ix",
    "schedule_u_directed",
    "schedule_u_undirected",
    "unbiasedness_deviation",
    "__version__",
]
