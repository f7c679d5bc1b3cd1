"""Collects the per-criterion verdicts from the acceptance module and prints
them in the terminal summary, one line each."""

ACCEPTANCE: dict[int, tuple[str, str, str]] = {}
FINDINGS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        verdict, title, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {verdict}: {title} ({detail})")
    for line in FINDINGS:
        terminalreporter.write_line(f"FINDING: {line}")
