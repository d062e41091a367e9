"""Shared record of acceptance-criterion outcomes, printed at session end."""

RESULTS: list[tuple[str, bool, str]] = []
