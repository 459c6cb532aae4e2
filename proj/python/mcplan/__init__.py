"""Monte-Carlo planning for finite-horizon generative MDPs.

The compiled core exposes the benchmark domains, an exact value-iteration
oracle, and the planner family (random, MAB-uniform, epsilon-greedy, UCT,
BRUE, BRUE_I, BRUE_IC with selective tree expansion).
"""

from ._mcplan import (
    CapabilityError,
    ConfigError,
    ContractViolation,
    GenerativeMdp,
    LazyPolicy,
    RandomSource,
    UniformValueTables,
    ValueTables,
    enumerate_policies,
    execute_policy,
    generate_random_policy,
    ippc_score,
    load_domain,
    plan,
    run_experiment,
    simple_regret,
    uniform_policy_value,
    value_iteration,
)

__all__ = [
    "CapabilityError",
    "ConfigError",
    "ContractViolation",
    "GenerativeMdp",
    "LazyPolicy",
    "RandomSource",
    "UniformValueTables",
    "ValueTables",
    "enumerate_policies",
    "execute_policy",
    "generate_random_policy",
    "ippc_score",
    "load_domain",
    "plan",
    "run_experiment",
    "simple_regret",
    "uniform_policy_value",
    "value_iteration",
]

__version__ = "0.1.0"
