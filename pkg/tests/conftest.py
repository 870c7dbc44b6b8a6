import sys, pathlib
root = pathlib.Path(__file__).resolve().parents[1]
# src/ first: package names like ``noise`` and ``metrics`` must resolve here
sys.path[:0] = [str(root / "src"), str(root)]


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size statistical checks (deselect with -m 'not slow')")
