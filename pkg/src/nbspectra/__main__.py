"""
Entry point for running nbspectra as a module
"""
import sys


def main() -> None:
    """Main entry point"""
    from .cli import run

    try:
        sys.exit(run())
    except KeyboardInterrupt:
        sys.exit(0)


if __name__ == "__main__":
    main()
