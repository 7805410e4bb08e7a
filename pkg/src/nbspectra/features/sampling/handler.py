"""
Sampling feature - Business logic handler
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from ...shared.ensembles import EnsembleKind, EnsembleSpec, SeedSpec, sample_pair
from ...shared.errors import ValidationError
from ...shared.models import (
    SparseMatrix,
    graph_by_name,
    load_matrix,
    named_matrix,
    norm_report,
    save_matrix,
    support_edges,
    validate_assumptions,
)

logger = logging.getLogger(__name__)


class SamplingHandler:
    """Builds ensembles and draws seeded realizations"""

    def build_spec(
        self,
        ensemble: str,
        n: Optional[int] = None,
        d: Optional[float] = None,
        q: Optional[float] = None,
        graph: Optional[str] = None,
        blocks: Optional[Sequence[int]] = None,
        block_probs: Optional[Sequence[Sequence[float]]] = None,
        profile_path: Optional[Union[str, Path]] = None,
    ) -> EnsembleSpec:
        """
        EnsembleSpec from flat parameters

        Args:
            ensemble: hermitian-er, directed-er, sbm, rademacher or custom-profile
            n, d: size and expected degree for the ER kinds
            q: sparsity scale for rademacher and custom-profile
            graph: named support graph for rademacher
            blocks, block_probs: SBM block sizes and probabilities
            profile_path: Matrix Market variance profile for custom-profile
        """
        kind = EnsembleKind(ensemble)
        if kind in (EnsembleKind.HERMITIAN_ER, EnsembleKind.DIRECTED_ER):
            if n is None or d is None:
                raise ValidationError(f"{kind.value} needs n and d", field="n")
            return EnsembleSpec.erdos_renyi(
                n, d, directed=kind is EnsembleKind.DIRECTED_ER
            )
        if kind is EnsembleKind.SBM:
            if not blocks or not block_probs:
                raise ValidationError(
                    "sbm needs blocks and block_probs", field="blocks"
                )
            return EnsembleSpec.sbm(blocks, block_probs)
        if q is None:
            raise ValidationError(f"{kind.value} needs q", field="q")
        if kind is EnsembleKind.RADEMACHER:
            if graph is None:
                raise ValidationError("rademacher needs a support graph", field="graph")
            size = graph_by_name(graph).number_of_nodes()
            return EnsembleSpec.rademacher(size, q, support_edges(graph))
        if profile_path is None:
            raise ValidationError(
                "custom-profile needs a profile file", field="profile"
            )
        return EnsembleSpec.custom(load_matrix(profile_path).to_dense().real, q)

    def draw(self, spec: EnsembleSpec, seed: int, trial: int = 0) -> SparseMatrix:
        _, H = sample_pair(spec, SeedSpec(seed, trial))
        return H

    def sample(
        self,
        spec: EnsembleSpec,
        seed: int,
        trial: int = 0,
        out: Optional[Union[str, Path]] = None,
    ) -> Dict[str, Any]:
        """Draw one realization and report its parameters, norms and assumptions"""
        A, H = sample_pair(spec, SeedSpec(seed, trial))
        assumptions = validate_assumptions(H, spec.params, spec.variance_profile())
        result: Dict[str, Any] = {
            "ensemble": spec.describe(),
            "seed": seed,
            "trial": trial,
            "H": repr(H),
            "edges": A.nnz if A is not None else H.nnz,
            "norms": norm_report(H).to_dict(),
            "assumptions": assumptions.to_dict(),
        }
        if out is not None:
            save_matrix(H, out)
            result["output"] = str(out)
        logger.info(f"Sampled {spec} (seed={seed}, trial={trial})")
        return result

    def resolve_matrix(
        self,
        matrix: Optional[Union[str, Path]] = None,
        graph: Optional[str] = None,
        weight: float = 1.0,
        ensemble: Optional[str] = None,
        seed: int = 0,
        **spec_params: Any,
    ) -> SparseMatrix:
        """H from a Matrix Market file, a named graph or a seeded ensemble draw"""
        if matrix is not None:
            return load_matrix(matrix)
        if ensemble is not None:
            spec = self.build_spec(ensemble, graph=graph, **spec_params)
            return self.draw(spec, seed)
        if graph is not None:
            return named_matrix(graph, weight)
        raise ValidationError(
            "give a matrix file, a graph name or an ensemble", field="matrix"
        )

    def ensemble_kinds(self) -> List[str]:
        return [kind.value for kind in EnsembleKind]
