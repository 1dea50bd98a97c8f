"""Run the acceptance gate and print one line per criterion."""

import pathlib
import runpy
import sys

here = pathlib.Path(__file__).resolve().parent.parent
sys.argv = [str(here / "tests" / "test_acceptance.py")]
runpy.run_path(sys.argv[0], run_name="__main__")
