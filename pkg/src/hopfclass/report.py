"""Report objects and their JSON / Markdown renderings.

A report is a plain dict ``{version, config, cases, findings}``. Each case
carries a ``kind`` (verdict, enumeration, elimination or criterion).
"""

from __future__ import annotations

import json
import re

from . import __version__


def make_report(config: dict, cases: list[dict], findings: list[str]) -> dict:
    return {
        "version": __version__,
        "config": dict(config),
        "cases": list(cases),
        "findings": list(findings),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)


def verdict_set(report: dict) -> set[tuple]:
    """(dim, g, outcome) for every verdict case, as listed in JSON."""
    return {
        (c["dim"], c["g_order"], c["outcome"]) for c in report["cases"] if c.get("kind") == "verdict"
    }


_ROW = re.compile(r"^\| (\d+) \| (\S+) \| (\w+) \|")


def markdown_verdict_set(text: str) -> set[tuple]:
    """(dim, g, outcome) rows parsed back from a Markdown rendering."""
    out = set()
    for line in text.splitlines():
        m = _ROW.match(line)
        if m:
            g = None if m.group(2) == "-" else int(m.group(2))
            out.add((int(m.group(1)), g, m.group(3)))
    return out


def _md_verdicts(cases: list[dict]) -> list[str]:
    lines = []
    by_dim: dict[int, list[dict]] = {}
    for c in cases:
        by_dim.setdefault(c["dim"], []).append(c)
    for dim, group in by_dim.items():
        p, q = group[0]["p"], group[0]["q"]
        lines += [f"## dim H = {dim} (p = {p}, q = {q})", ""]
        lines += ["| dim | \\|G(H*)\\| | outcome | surviving types |", "|---|---|---|---|"]
        for c in group:
            g = "-" if c["g_order"] is None else str(c["g_order"])
            surv = c["surviving_types"]
            if surv is None:
                s = "not listed"
            elif len(surv) > 4:
                s = ", ".join(surv[:4]) + f", ... ({len(surv)} total)"
            else:
                s = ", ".join(surv) or "none"
            lines.append(f"| {dim} | {g} | {c['outcome']} | {s} |")
        lines.append("")
        outcomes = {c["outcome"] for c in group} - {"Impossible", "DualGroupAlgebra"}
        if outcomes:
            lines.append(
                "Every admissible case other than a dual group algebra is "
                + " or ".join(sorted(outcomes))
                + "."
            )
            lines.append("")
        for c in group:
            g = "-" if c["g_order"] is None else c["g_order"]
            lines.append(f"### |G(H*)| = {g}: {c['outcome']}")
            for step in c["trace"]:
                lines.append(f"- `{step['rule']}`: {step['detail']} -> {step['conclusion']}")
            lines.append("")
    return lines


def to_markdown(report: dict) -> str:
    lines = [f"# hopfclass report (version {report['version']})", ""]
    cfg = ", ".join(f"{k}={v}" for k, v in sorted(report["config"].items()))
    lines += [f"Configuration: {cfg}", ""]
    kinds: dict[str, list[dict]] = {}
    for c in report["cases"]:
        kinds.setdefault(c["kind"], []).append(c)
    if "verdict" in kinds:
        lines += _md_verdicts(kinds["verdict"])
    for c in kinds.get("enumeration", []):
        lines += [f"## Types of dimension {c['dim']} with |G(H*)| = {c['g_order']}", ""]
        lines += ["| type | a | b | c | filters |", "|---|---|---|---|---|"]
        for s in c["solutions"]:
            verdict = "pass" if s["passed"] else "; ".join(f["rule"] for f in s["failures"])
            lines.append(f"| {s['type']} | {s['a']} | {s['b']} | {s['c']} | {verdict} |")
        lines.append("")
    for c in kinds.get("elimination", []):
        lines += [f"## {c['type']} with G(H*) = {c['group']}: {c['status']}", ""]
        lines.append(f"Search nodes: {c['nodes']}; structures tried: {c['structures']}.")
        for step in c["trace"]:
            lines.append(f"- `{step['rule']}`: {step['detail']}")
        lines.append("")
    if "criterion" in kinds:
        lines += ["## Acceptance criteria", "", "| # | criterion | result | detail |", "|---|---|---|---|"]
        for c in kinds["criterion"]:
            mark = "PASS" if c["passed"] else "FAIL"
            t = f" ({c['seconds']:.2f} s)" if "seconds" in c else ""
            detail = c["detail"].replace("|", "\\|")
            lines.append(f"| {c['id']} | {c['name']} | {mark}{t} | {detail} |")
        lines.append("")
    lines.append("## Findings")
    lines.append("")
    lines += [f"- {f}" for f in report["findings"]] or ["None."]
    return "\n".join(lines) + "\n"
