"""Per-criterion outcomes, filled in by test_acceptance and printed at session end."""
RESULTS: dict[int, tuple[str, bool]] = {}
