"""Instance configuration module

Which features the tool server loads. NBSPECTRA_FEATURES (comma separated)
narrows the default set.
"""
import logging
import os
from typing import Any, Dict, List

logger = logging.getLogger(__name__)

ALL_FEATURES = ["sampling", "spectra", "ihara_bass", "walks", "experiments"]


def get_instance_config() -> Dict[str, Any]:
    """Features and description of this server instance"""
    features = list(ALL_FEATURES)
    raw = os.getenv("NBSPECTRA_FEATURES")
    if raw:
        requested = [f.strip() for f in raw.split(",") if f.strip()]
        unknown = sorted(set(requested) - set(ALL_FEATURES))
        if unknown:
            logger.warning(
                f"Ignoring unknown features in NBSPECTRA_FEATURES: {unknown}"
            )
        features = [f for f in ALL_FEATURES if f in requested]
    return {
        "features": features,
        "description": "Nonbacktracking spectra of sparse random matrices",
    }


def should_load_feature(feature_name: str) -> bool:
    """Check if a feature should be loaded"""
    return feature_name in get_instance_config()["features"]


def get_all_features() -> List[str]:
    return list(ALL_FEATURES)
