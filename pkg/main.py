"""Main entry point for the nbspectra tool server"""
import logging
import os
import sys

# Add src to path before imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))

from nbspectra.server import serve  # noqa: E402


def main() -> None:
    """Run the nbspectra server on stdio"""
    # Logs go to stderr; stdout carries the protocol
    logging.basicConfig(
        level=os.getenv("LOG_LEVEL", "INFO"),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    sys.exit(serve())


if __name__ == "__main__":
    main()
