import sys
from pathlib import Path

# Make tests/helpers.py and tests/strategies.py importable regardless of
# how pytest was invoked.
sys.path.insert(0, str(Path(__file__).parent))
