"""
Walks feature - Business logic handler
"""
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from ...shared.ensembles import EnsembleSpec
from ...shared.errors import ValidationError
from ...shared.models import graph_by_name, support_edges
from ...shared.walks import (
    MomentTarget,
    Walk,
    WalkMode,
    WalkPair,
    WalkPath,
    available_fixtures,
    coerce,
    enumerate_c0,
    enumerate_paths,
    exact_trace_moment,
    load_fixture,
    normalize_path,
    path_sum_moment,
    reduction_summary,
    sample_c0_paths,
    sweep_reductions,
)

logger = logging.getLogger(__name__)

MOMENT_TOL = 1e-10


class WalksHandler:
    """Path enumeration, reductions, sweeps and exact moment oracles"""

    def parse_walk(self, text: str) -> Walk:
        """A fixture name, a path "1,2,1" or a directed pair "1 2 | 1 2" """
        text = text.strip()
        if text in available_fixtures():
            return load_fixture(text)
        if "|" in text:
            first, second = text.split("|", 1)
            return WalkPair.parse(first, second)
        return WalkPath.parse(text)

    def enumerate(
        self, n: int, ell: int, mode: str = "hermitian", show: int = 10
    ) -> Dict[str, Any]:
        """Sizes of C~, C and C_0 with the first few normal paths"""
        mode = WalkMode(mode)
        c_tilde, c = enumerate_paths(n, ell, mode)
        c0 = enumerate_c0(n, ell, mode)
        return {
            "n": n,
            "ell": ell,
            "mode": mode.value,
            "c_tilde": len(c_tilde),
            "c": len(c),
            "c0": len(c0),
            "paths": [str(p) for p in c0[:show]],
        }

    def reduce(self, text: str, normalize: bool = True) -> Dict[str, Any]:
        walk = self.parse_walk(text)
        if normalize:
            walk = normalize_path(walk)
        summary = reduction_summary(walk)
        summary["path"] = str(walk)
        return summary

    def verify(
        self,
        n: int,
        ell: int,
        mode: str = "hermitian",
        samples: Optional[int] = None,
        seed: int = 0,
    ) -> Dict[str, Any]:
        """
        Reduction property sweep

        Args:
            n, ell: vertex count and half length
            mode: hermitian or directed-pair
            samples: sample this many normal paths instead of enumerating C_0
            seed: sampler seed
        """
        mode = WalkMode(mode)
        paths: List[Walk]
        if samples:
            rng = np.random.default_rng(seed)
            paths = sample_c0_paths(n, ell, samples, rng, mode).paths
        else:
            paths = enumerate_c0(n, ell, mode)
        report = sweep_reductions(paths)
        result = report.to_dict()
        result.update(
            {"n": n, "ell": ell, "mode": mode.value, "sampled": bool(samples)}
        )
        return result

    def moment_spec(
        self,
        graph: Optional[str] = None,
        q: Optional[float] = None,
        n: Optional[int] = None,
        d: Optional[float] = None,
    ) -> EnsembleSpec:
        """Rademacher on a named support, or directed ER when n and d are given"""
        if graph is not None:
            if q is None:
                raise ValidationError("rademacher moments need q", field="q")
            size = graph_by_name(graph).number_of_nodes()
            return EnsembleSpec.rademacher(size, q, support_edges(graph))
        if n is None or d is None:
            raise ValidationError("give a graph and q, or n and d", field="graph")
        return EnsembleSpec.erdos_renyi(n, d, directed=True)

    def moments(
        self, spec: EnsembleSpec, ell: int, target: Optional[str] = None
    ) -> Dict[str, Any]:
        """Path-sum expectation against the realization average"""
        target = MomentTarget(
            target or (MomentTarget.B if spec.hermitian else MomentTarget.H)
        )
        via_paths = path_sum_moment(spec, ell, target)
        exact = exact_trace_moment(spec, ell, target)
        if isinstance(via_paths, Fraction) and isinstance(exact, Fraction):
            agree = via_paths == exact
        else:
            agree = abs(complex(via_paths) - complex(exact)) <= MOMENT_TOL * max(
                1.0, abs(complex(exact))
            )
        if not agree:
            logger.warning(f"Path sum {via_paths} differs from exact moment {exact}")
        return {
            "ensemble": spec.describe(),
            "ell": ell,
            "target": target.value,
            "path_sum": str(via_paths),
            "exact": str(exact),
            "value": coerce(exact),
            "passed": agree,
        }
