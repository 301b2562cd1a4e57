import sys
from pathlib import Path

import numpy as np
import pytest

from ts3c._backend import available_backends

sys.path.insert(0, str(Path(__file__).parent))

DATA_DIR = Path(__file__).parent / "data" / "ucr"


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def coffee_paths():
    return DATA_DIR / "Coffee" / "Coffee_TRAIN", DATA_DIR / "Coffee" / "Coffee_TEST"


# --- acceptance summary -----------------------------------------------------

_CRITERIA: dict[int, list[tuple[str, str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        detail = "; ".join(v for k, v in item.user_properties if k == "detail")
        if rep.skipped:
            status, detail = "SKIP", str(rep.longrepr[-1]) if isinstance(rep.longrepr, tuple) else detail
        else:
            status = "PASS" if rep.passed else "FAIL"
        _CRITERIA.setdefault(marker.args[0], []).append((status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(_CRITERIA):
        results = _CRITERIA[n]
        statuses = {s for s, _ in results}
        if "FAIL" in statuses:
            overall = "FAIL"
        elif "SKIP" in statuses and "PASS" in statuses:
            ran = sum(s == "PASS" for s, _ in results)
            overall = f"PASS (partial: {ran} of {len(results)} cases ran)"
        elif "PASS" in statuses:
            overall = "PASS"
        else:
            overall = "SKIP"
        detail = " | ".join(d for _, d in results if d)
        terminalreporter.write_line(f"criterion {n:>2}: {overall}  {detail}")
