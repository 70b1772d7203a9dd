"""Run the acceptance criteria outside pytest and print one line each.

    python3 scripts/run_acceptance.py
"""

import runpy
import sys
from pathlib import Path

tests = Path(__file__).resolve().parent.parent / "tests"
sys.path.insert(0, str(tests))
runpy.run_path(str(tests / "test_acceptance.py"), run_name="__main__")
