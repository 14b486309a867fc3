import asyncio
import logging
import time
from collections import deque
from typing import Deque, List, Optional, Set, Tuple

from fastapi import WebSocket

from src.api.config import SweepConfig
from src.api.payloads import report_payload
from src.core.blocks import verify_theorem
from src.core.residue import Regime

logger = logging.getLogger(__name__)

SWEEP_FIELDS = ("r_max", "n_max", "e_list", "p_list", "cases")


def _as_text(value) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(str(item) for item in value)
    return str(value)


def sweep_from_message(data: dict) -> SweepConfig:
    """Build sweep bounds from a start_sweep message; missing bounds take the CLI defaults."""
    bounds = {}
    for key in SWEEP_FIELDS:
        if key in data:
            bounds[key] = int(data[key]) if key in ("r_max", "n_max") else _as_text(data[key])
    return SweepConfig.from_strings(
        **bounds,
        audit=bool(data.get("audit", True)),
        seed=int(data.get("seed", 0)),
        cross_check=False,
    )


class SweepRunner:
    """Verifies queued grid cells one per tick and streams the reports to websocket clients"""

    def __init__(self, tick_ms: int = 50):
        self.tick_ms = tick_ms
        self.running = False
        self.websockets: Set[WebSocket] = set()
        self.tick_count = 0

        self.pending: Deque[Tuple[Regime, int]] = deque()
        self.total = 0
        self.done = 0
        self.failed = 0
        self.audit = True
        self.seed = 0

        # Command queue, drained at tick boundaries
        self.command_queue: List[dict] = []

    async def add_client(self, websocket: WebSocket):
        """Add new client and send the current progress"""
        self.websockets.add(websocket)
        await websocket.send_json(self.status())
        logger.info(f"Client added, total: {len(self.websockets)}")

    def remove_client(self, websocket: WebSocket):
        self.websockets.discard(websocket)
        logger.info(f"Client removed, total: {len(self.websockets)}")

    def status(self) -> dict:
        return {
            "type": "status",
            "running": bool(self.pending),
            "done": self.done,
            "total": self.total,
            "failed": self.failed,
        }

    async def broadcast(self, message: dict):
        if not self.websockets:
            return
        disconnected = set()
        for ws in self.websockets:
            try:
                await ws.send_json(message)
            except Exception as e:
                logger.warning(f"Failed to send to client: {e}")
                disconnected.add(ws)
        self.websockets -= disconnected

    async def handle_command(self, websocket: WebSocket, data: dict):
        cmd_type = data.get("type")

        if cmd_type == "start_sweep":
            try:
                sweep = sweep_from_message(data)
                cells = sweep.cells()
            except (TypeError, ValueError) as err:
                await websocket.send_json({"type": "error", "detail": str(err)})
                return
            self.command_queue.append({"type": "start", "cells": cells, "audit": sweep.audit, "seed": sweep.seed})
            logger.info(f"Queued sweep of {len(cells)} cells")
            await websocket.send_json({"type": "sweep_queued", "cells": len(cells)})

        elif cmd_type == "stop_sweep":
            self.command_queue.append({"type": "stop"})
            logger.info("Queued stop")

        elif cmd_type == "status":
            await websocket.send_json(self.status())

        else:
            await websocket.send_json({"type": "error", "detail": f"unknown command {cmd_type!r}"})

    def process_commands(self):
        """Apply queued commands at a tick boundary; a new sweep replaces the running one"""
        for cmd in self.command_queue:
            if cmd["type"] == "start":
                self.pending = deque(cmd["cells"])
                self.total = len(cmd["cells"])
                self.done = self.failed = 0
                self.audit, self.seed = cmd["audit"], cmd["seed"]
            elif cmd["type"] == "stop":
                if self.pending:
                    logger.info(f"Sweep stopped with {len(self.pending)} cells left")
                self.pending.clear()
        self.command_queue.clear()

    async def step(self) -> Optional[dict]:
        """Verify the next pending cell, broadcast its report, and the summary after the last one"""
        if not self.pending:
            return None
        regime, n = self.pending.popleft()
        report = await asyncio.to_thread(verify_theorem, regime, n, self.audit, self.seed)
        self.done += 1
        self.failed += 0 if report.equal else 1
        message = {"type": "cell", "index": self.done - 1, **report_payload(report)}
        await self.broadcast(message)
        if not self.pending:
            summary = {"type": "summary", "passed": self.failed == 0, "cells": self.done, "failed": self.failed}
            logger.info(f"Sweep finished: {self.done} cells, {self.failed} failed")
            await self.broadcast(summary)
        return message

    async def run_loop(self):
        self.running = True
        while self.running:
            tick_start = time.perf_counter()
            self.process_commands()
            await self.step()
            self.tick_count += 1

            elapsed = time.perf_counter() - tick_start
            sleep_time = (self.tick_ms / 1000.0) - elapsed
            await asyncio.sleep(max(sleep_time, 0))

    def stop(self):
        self.running = False
        logger.info("Sweep runner stopped")
