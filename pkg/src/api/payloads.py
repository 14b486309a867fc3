"""
JSON payloads and table renderings of query results.

The CLI and the HTTP server both build their answers here. Table output is
a line-oriented rendering of the same payload, and ``parse_table_output``
reads it back.
"""
import json
import logging
import re
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.abacus import MultiAbacus, beta_numbers, multicore, multiweight, render_ascii
from src.core.blocks import BlockPartition, TheoremReport
from src.core.orders import INF, Order, is_finite, order_to_json
from src.core.partition import Multipartition, enumerate_multipartitions, parse_multipartition
from src.core.residue import Regime, fayers_weight, hub

logger = logging.getLogger(__name__)

Payload = Dict[str, object]

_LITERAL = re.compile(r"\[([^\]]*)\]")


def dumps(payload: Payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


def _lists(literals: str) -> List[List[List[int]]]:
    return [parse_multipartition(text).to_lists() for text in _LITERAL.findall(literals)]


def blocks_payload(regime: Regime, n: int, partition: BlockPartition) -> Payload:
    multis = enumerate_multipartitions(regime.r, n)
    return {
        "regime": regime.to_dict(),
        "n": n,
        "classes": [[multis[k].to_lists() for k in members] for members in partition.classes],
    }


def jantzen_payload(
    regime: Regime, lam: Multipartition, mu: Multipartition, value: int, oracle: Optional[int] = None
) -> Payload:
    payload: Payload = {
        "regime": regime.to_dict(),
        "n": lam.size,
        "lambda": lam.to_lists(),
        "mu": mu.to_lists(),
        "J": value,
    }
    if oracle is not None:
        payload["oracle"] = oracle
        payload["match"] = oracle == value
    return payload


def abacus_payload(lam: Multipartition, charges: Sequence[int], e: Order, rows: int = 7, top_row: int = 2) -> Payload:
    """
    The display plus its sidecar. Beta heads have one bead per row of the
    longest component; Wt and hub are read in the case-1 regime and are
    null when e = inf.
    """
    abacus = MultiAbacus.from_multipartition(lam, charges, e)
    length = max([1] + [len(part) for part in lam.components])
    weight_regime = Regime(1, e, INF, lam.r, tuple(charges)) if is_finite(e) else None
    return {
        "e": order_to_json(e),
        "charges": list(charges),
        "beta": [beta_numbers(part, c, length) for part, c in zip(lam.components, charges)],
        "core": multicore(lam, charges, e).to_lists(),
        "weight": multiweight(lam, e),
        "Wt": fayers_weight(lam, weight_regime) if weight_regime else None,
        "hub": list(hub(lam, weight_regime).deltas) if weight_regime else None,
        "ascii": render_ascii(abacus, rows=rows, top_row=top_row),
    }


def report_payload(report: TheoremReport) -> Payload:
    pair = report.witness_pair()
    return {
        "regime": report.regime.to_dict(),
        "n": report.n,
        "equal": report.equal,
        "blocks": len(report.by_residue),
        "jantzen_blocks": len(report.by_jantzen),
        "witness": None if pair is None else [pair[0].to_lists(), pair[1].to_lists()],
    }


def sweep_payload(reports: Sequence[TheoremReport], cross_checks: Sequence[Tuple[Order, int, int, bool]]) -> Payload:
    cells = [report_payload(report) for report in reports]
    checks = [{"p": order_to_json(p), "r": r, "n": n, "identical": same} for p, r, n, same in cross_checks]
    failed = sum(1 for cell in cells if not cell["equal"]) + sum(1 for check in checks if not check["identical"])
    return {"cells": cells, "cross_checks": checks, "failed": failed, "passed": failed == 0}


# ----- tables -------------------------------------------------------------

def _regime_line(regime: Dict[str, object]) -> str:
    text = f"case={regime['case']} e={regime['e']} p={regime['p']} r={regime['r']}"
    if regime["charges"]:
        text += " charges=" + ",".join(str(c) for c in regime["charges"])
    return text


def _parse_regime_line(text: str) -> Dict[str, object]:
    fields = dict(token.split("=", 1) for token in text.split())

    def order(value: str):
        return value if value == "inf" else int(value)

    return {
        "case": int(fields["case"]),
        "e": order(fields["e"]),
        "p": order(fields["p"]),
        "r": int(fields["r"]),
        "charges": [int(c) for c in fields["charges"].split(",")] if "charges" in fields else [],
    }


def _literal_of(lists: Sequence[Sequence[int]]) -> str:
    return "[" + "|".join(",".join(str(x) for x in comp) for comp in lists) + "]"


def blocks_table(payload: Payload) -> str:
    lines = [f"regime: {_regime_line(payload['regime'])}", f"n: {payload['n']}"]
    for k, members in enumerate(payload["classes"], start=1):
        lines.append(f"class {k}: " + " ".join(_literal_of(lam) for lam in members))
    return "\n".join(lines) + "\n"


def jantzen_table(payload: Payload) -> str:
    lines = [
        f"regime: {_regime_line(payload['regime'])}",
        f"n: {payload['n']}",
        f"lambda: {_literal_of(payload['lambda'])}",
        f"mu: {_literal_of(payload['mu'])}",
        f"J: {payload['J']}",
    ]
    if "oracle" in payload:
        lines.append(f"oracle: {payload['oracle']}")
        lines.append(f"match: {'true' if payload['match'] else 'false'}")
    return "\n".join(lines) + "\n"


def abacus_table(payload: Payload) -> str:
    sidecar = {key: value for key, value in payload.items() if key != "ascii"}
    return f"{payload['ascii']}\n{dumps(sidecar)}\n"


def sweep_table(payload: Payload) -> str:
    lines = []
    for cell in payload["cells"]:
        status = "PASS" if cell["equal"] else "FAIL"
        line = f"{status} {_regime_line(cell['regime'])} n={cell['n']} blocks={cell['blocks']}"
        if cell["witness"] is not None:
            left, right = cell["witness"]
            line += f" witness={_literal_of(left)} {_literal_of(right)}"
        lines.append(line)
    for check in payload["cross_checks"]:
        status = "PASS" if check["identical"] else "FAIL"
        lines.append(f"{status} cases 3/4 p={check['p']} r={check['r']} n={check['n']}")
    lines.append(f"passed: {'true' if payload['passed'] else 'false'} ({len(payload['cells'])} cells, {payload['failed']} failed)")
    return "\n".join(lines) + "\n"


def parse_table_output(text: str) -> Payload:
    """Recover the JSON payload from blocks, jantzen or abacus table output."""
    if text.startswith("component"):
        ascii_part, brace, sidecar = text.partition("\n{")
        payload = json.loads(brace.strip() + sidecar)
        payload["ascii"] = ascii_part
        return payload

    fields: Dict[str, str] = {}
    classes: List[List[List[List[int]]]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition(":")
        if key.startswith("class "):
            classes.append(_lists(value))
        else:
            fields[key.strip()] = value.strip()

    payload: Payload = {"regime": _parse_regime_line(fields["regime"]), "n": int(fields["n"])}
    if "J" not in fields:
        payload["classes"] = classes
        return payload
    payload["lambda"] = _lists(fields["lambda"])[0]
    payload["mu"] = _lists(fields["mu"])[0]
    payload["J"] = int(fields["J"])
    if "oracle" in fields:
        payload["oracle"] = int(fields["oracle"])
        payload["match"] = fields["match"] == "true"
    return payload


RENDERERS = {
    "blocks": blocks_table,
    "jantzen": jantzen_table,
    "abacus": abacus_table,
    "verify": sweep_table,
}


def render(kind: str, payload: Payload, output_format: str) -> str:
    if output_format == "json":
        return dumps(payload) + "\n"
    return RENDERERS[kind](payload)
