"""
Response Builder - Standardized responses with follow-up command hints
"""
import math
import time
from dataclasses import dataclass, field, is_dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np


@dataclass
class NextStep:
    """Suggestion for the next command to run"""

    command: str
    reason: str
    params: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"command": self.command, "reason": self.reason, "params": self.params}


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy, complex, Fraction and dataclass values.

    Complex numbers become {"re": .., "im": ..}; exact fractions keep their
    string form next to the float value; non-finite floats become None.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if hasattr(value, "to_dict") and not isinstance(value, type):
        return to_jsonable(value.to_dict())
    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable({k: getattr(value, k) for k in value.__dataclass_fields__})
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return {"exact": str(value), "value": float(value)}
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in value]
    return repr(value)


class ResponseBuilder:
    """Builder for standardized tool and CLI responses"""

    def __init__(self, server_name: str):
        self.server_name = server_name

    def build(
        self,
        data: Any,
        tool: Optional[str] = None,
        suggestions: Optional[List[NextStep]] = None,
        message: Optional[str] = None,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, Any]:
        """
        Build standardized response

        Args:
            data: The actual response data
            tool: Command or tool that generated this response
            suggestions: Follow-up commands
            message: Human-readable message
            metadata: Additional metadata

        Returns:
            Standardized, JSON-safe response dictionary
        """
        response: Dict[str, Any] = {
            "data": to_jsonable(data),
            "metadata": {"server": self.server_name, "timestamp": time.time()},
        }

        if tool:
            response["metadata"]["tool"] = tool

        if metadata:
            response["metadata"].update(to_jsonable(metadata))

        if suggestions:
            response["suggestions"] = [
                s.to_dict() if isinstance(s, NextStep) else s for s in suggestions
            ]

        if message:
            response["message"] = message

        return response

    def error(
        self, error: str, details: Optional[Dict[str, Any]] = None
    ) -> Dict[str, Any]:
        """Build error response"""
        return self.build(
            data={"error": error, "details": details or {}},
            metadata={"status": "error"},
        )

    def success(
        self,
        data: Any,
        message: Optional[str] = None,
        suggestions: Optional[List[NextStep]] = None,
        tool: Optional[str] = None,
    ) -> Dict[str, Any]:
        """Build success response with optional follow-ups"""
        return self.build(
            data=data,
            tool=tool,
            message=message,
            suggestions=suggestions,
            metadata={"status": "success"},
        )

    @staticmethod
    def suggest_next(command: str, reason: str, **params: Any) -> NextStep:
        return NextStep(command=command, reason=reason, params=params)


class NextStepEngine:
    """Follow-up commands for each command"""

    def __init__(self) -> None:
        self.command_graph: Dict[str, List[tuple]] = {
            "sample": [
                ("rho-b", "Spectral radius of B for the sampled matrix"),
                ("norm-h", "Norms of the sampled matrix"),
            ],
            "rho-b": [
                (
                    "ib-check",
                    "Check the Ihara-Bass determinant at the eigenvalues of B",
                ),
                ("norm-h", "Compare rho(B) with the norm bound"),
            ],
            "norm-h": [
                ("rho-b", "Spectral radius of B for the bound"),
                ("ib-check", "Verify the positive semidefinite gap"),
            ],
            "ib-check": [
                ("rho-b", "Iterative estimate of rho(B)"),
            ],
            "ib-regular": [
                ("ib-check", "Full determinant check on the same graph"),
            ],
            "trace-moment": [
                ("rho-b", "Compare the Gelfand estimate with rho(B)"),
            ],
            "walks enumerate": [
                ("walks verify", "Check every reduction in the enumerated set"),
            ],
            "walks reduce": [
                ("walks verify", "Sweep the reduction properties"),
            ],
            "walks verify": [
                ("walks moments", "Compare the path sum with the exact trace moment"),
            ],
            "experiment list": [
                ("experiment run", "Run one of the shipped configs"),
            ],
            "experiment run": [
                ("experiment list", "Other shipped configs"),
            ],
        }

    def get_suggestions(self, command: str, **params: Any) -> List[NextStep]:
        return [
            NextStep(command=next_command, reason=reason, params=dict(params))
            for next_command, reason in self.command_graph.get(command, [])
        ]
