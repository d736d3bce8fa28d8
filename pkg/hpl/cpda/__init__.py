# hpl/cpda/__init__.py
from .build import build_cpda, machine_order
from .machine import (
    Collapse,
    Configuration,
    Emit,
    Internal,
    Machine,
    MicroStep,
    Ops,
    Output,
    PdaMachine,
    PopJ,
    Push1,
    PushChild,
    PushJ,
    SimulatedCollapse,
    StepOutcome,
    Stuck,
    micro_steps,
    step,
)
from .monitor import safety_monitor
from .run import generate_tree, trace
from .views import LogEntry, TraversalRun, long_oview, oview, pview, pview_of_log, traversal_log

__all__ = [
    "Collapse",
    "Configuration",
    "Emit",
    "Internal",
    "LogEntry",
    "Machine",
    "MicroStep",
    "Ops",
    "Output",
    "PdaMachine",
    "PopJ",
    "Push1",
    "PushChild",
    "PushJ",
    "SimulatedCollapse",
    "StepOutcome",
    "Stuck",
    "TraversalRun",
    "build_cpda",
    "generate_tree",
    "long_oview",
    "machine_order",
    "micro_steps",
    "oview",
    "pview",
    "pview_of_log",
    "safety_monitor",
    "step",
    "trace",
    "traversal_log",
]
