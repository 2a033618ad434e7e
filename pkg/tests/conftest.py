def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" and outcome == "passed":
                continue
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props:
                rows.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL", props.get("detail", "")))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, verdict, detail in sorted(rows, key=lambda r: int(r[0].split(".")[0])):
        terminalreporter.write_line(f"[{verdict}] {criterion}" + (f" ({detail})" if detail else ""))
