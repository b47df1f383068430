import pytest

_RESULTS = pytest.StashKey[dict]()


class AcceptanceLog:
    """Collects per-criterion outcomes; a criterion passes only if every recorded part passed."""

    def __init__(self, store: dict):
        self.store = store

    def record(self, criterion: int, title: str, ok: bool, detail: str, seconds: float, limit: float):
        in_time = seconds < limit
        entry = self.store.setdefault(criterion, {"title": title, "parts": []})
        entry["parts"].append((ok and in_time, f"{detail} [{seconds:.2f}s / {limit:g}s]"))
        line = f"criterion {criterion:2d} {'PASS' if ok and in_time else 'FAIL'}: {title}: {detail} [{seconds:.2f}s]"
        print(line)
        return ok and in_time


@pytest.fixture(scope="session")
def acceptance(request):
    return AcceptanceLog(request.config.stash.setdefault(_RESULTS, {}))


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_RESULTS, None)
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        entry = store[n]
        ok = all(p for p, _ in entry["parts"])
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {n:2d} {entry['title']}")
        for p, detail in entry["parts"]:
            terminalreporter.write_line(f"        {'ok  ' if p else 'FAIL'} {detail}")
