import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--run-heavy",
        action="store_true",
        default=False,
        help="run long acceptance checks (large spin, big ensembles)",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-heavy"):
        return
    skip = pytest.mark.skip(reason="heavy check; enable with --run-heavy")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)
