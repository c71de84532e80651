"""Queueing-network driven autoscaling: analytic model, planner and simulators."""

from ._qnas import (
    BaselineSnapshot,
    InfeasibleConfiguration,
    IterationCap,
    OverloadedStation,
    QnasError,
    UnattainableSla,
    UsageError,
    acquire,
    capacity_floor,
    default_thresholds,
    des_validate,
    estimate_demand,
    gen_arrival_series,
    gen_demands,
    min_feasible_config,
    observe,
    plan_step,
    predict_response,
    release,
    rescale_snapshot,
    residence_time,
    response_time,
    run_scenario,
    utilization,
)

__all__ = [name for name in dir() if not name.startswith("_")]
