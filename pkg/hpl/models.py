# hpl/models.py
from __future__ import annotations

from pydantic import BaseModel


class Violation(BaseModel):
    """
    An operand-position subterm containing a lower-order parameter.

    - rule: head of the offending rule
    - subterm: rendered subterm
    - subterm_order: order of the subterm's type
    - parameter: the lowest-order parameter it contains
    - parameter_order: that parameter's order
    """

    rule: str
    subterm: str
    subterm_order: int
    parameter: str
    parameter_order: int


class IBViolation(BaseModel):
    """
    A variable node with a higher-order lambda between it and its binder.

    - rule: rule whose tree holds the variable
    - variable / variable_node: name and graph node id of the occurrence
    - binder_node: id of the lambda that actually binds it
    - lambda_node / lambda_label: the intermediate lambda of higher order
    - variable_order / lambda_order: the two orders compared
    """

    rule: str
    variable: str
    variable_node: int
    binder_node: int
    lambda_node: int
    lambda_label: str
    variable_order: int
    lambda_order: int

    def key(self) -> tuple[int, int]:
        return (self.variable_node, self.lambda_node)


class CheckReport(BaseModel):
    homogeneous: dict[str, bool]
    safety_violations: list[Violation] = []
    ib_violations: list[IBViolation] = []
    dead_rules: list[str] = []
    order: int = 0
    unfold_checked: bool = False
    # variable nodes flagged by exactly one of the static and unfolding binder checks
    unfold_disagreements: list[int] = []

    @property
    def is_homogeneous(self) -> bool:
        return all(self.homogeneous.values())

    @property
    def is_safe(self) -> bool:
        return self.is_homogeneous and not self.safety_violations

    @property
    def is_incrementally_bound(self) -> bool:
        return not self.ib_violations


class MonitorViolation(BaseModel):
    """
    - kind: "unsafe-stack" | "binder-not-in-orddec" | "span" | "stuck"
    - step: index of the → step that reached the configuration
    - branch: tree path (child indices) of the branch being explored
    - top: rendered top symbol
    - detail: human-readable explanation (witness path, expected/actual nodes)
    - stack: rendering of the offending stack
    """

    kind: str
    step: int
    branch: list[int] = []
    top: str | None = None
    detail: str = ""
    stack: str = ""


class MonitorReport(BaseModel):
    configurations: int = 0
    variable_tops: int = 0
    max_link_height: int = 0
    violations: list[MonitorViolation] = []

    @property
    def ok(self) -> bool:
        return not self.violations


class LockstepMismatch(BaseModel):
    """
    - kind: "stack" | "outcome" | "collapse"
    - step: index of the → step
    - detail: explanation with both renderings
    """

    kind: str
    step: int
    branch: list[int] = []
    detail: str = ""


class LockstepReport(BaseModel):
    steps: int = 0
    collapses: int = 0
    mismatches: list[LockstepMismatch] = []

    @property
    def ok(self) -> bool:
        return not self.mismatches


class RoundtripReport(BaseModel):
    depth: int
    source_order: int
    target_order: int
    target_rules: int
    passed: bool
    target_homogeneous: bool
    target_safe: bool
    target_incrementally_bound: bool
    source_tree: str
    target_tree: str


class CharacterizationReport(BaseModel):
    schemes: int = 0
    safe: int = 0
    counterexamples: list[str] = []
    unfold_disagreements: list[str] = []

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.unfold_disagreements
