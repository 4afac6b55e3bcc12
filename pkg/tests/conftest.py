import os
import sys

# keep thread fan-out modest on shared runners
os.environ.setdefault("OVERLAPKIT_THREADS", "4")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        status, desc, why = mod.RESULTS[n]
        line = f"criterion {n}: {status}  {desc}"
        if why:
            line += f"  [{why}]"
        terminalreporter.write_line(line)
