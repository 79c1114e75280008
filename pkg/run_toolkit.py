"""
Toolkit startup script
Runs the LPD step toolkit command line from the repository root
"""

import os
import sys

# Add project root directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli.lpd_cli import main as cli_main


def main():
    """Start the toolkit, passing all command line arguments"""
    try:
        return cli_main(sys.argv[1:])
    except KeyboardInterrupt:
        print("\nToolkit stopped")
        return 130
    except Exception as e:
        print(f"Startup failed: {e}")
        return 1


if __name__ == '__main__':
    sys.exit(main())
