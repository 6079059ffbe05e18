import sys
from pathlib import Path

# Make `import oracles` work from any pytest invocation directory.
sys.path.insert(0, str(Path(__file__).parent))
