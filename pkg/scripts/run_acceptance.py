"""Run the acceptance test module and print its verdict lines."""

import subprocess
import sys
from pathlib import Path

root = Path(__file__).resolve().parent.parent
sys.exit(subprocess.call([sys.executable, "-m", "pytest", "-q", "-s", str(root / "tests" / "test_acceptance.py")]))
