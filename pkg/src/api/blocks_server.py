from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
import asyncio
import json
import logging
from typing import Optional

from src.api.config import RunConfig
from src.api.payloads import abacus_payload, blocks_payload, jantzen_payload
from src.api.sweep_runner import SweepRunner
from src.core.blocks import blocks_by_jantzen, blocks_by_residue
from src.core.jantzen import jantzen_bruteforce, jantzen_fast
from src.core.orders import parse_order
from src.core.partition import parse_multipartition

logger = logging.getLogger(__name__)

app = FastAPI(title="Cyclotomic Blocks Server")

runner: Optional[SweepRunner] = None
runner_task: Optional[asyncio.Task] = None


def _unprocessable(err: ValueError) -> HTTPException:
    return HTTPException(status_code=422, detail=str(err))


@app.get("/")
async def root():
    return {"service": "cyclotomic-blocks", "endpoints": ["/blocks", "/jantzen", "/abacus", "/ws/verify"]}


@app.get("/blocks")
def get_blocks(
    n: int,
    r: int = 1,
    e: Optional[str] = None,
    p: Optional[str] = None,
    case: str = "auto",
    charges: Optional[str] = None,
    zero: bool = False,
    method: str = "residue",
):
    """Block partition; residue classes by default, Jantzen connectivity on request"""
    try:
        regime = RunConfig("blocks", e, p, r, n, charges, case, zero).regime()
        if method == "residue":
            partition = blocks_by_residue(regime, n)
        elif method == "jantzen":
            partition = blocks_by_jantzen(regime, n)
        else:
            raise ValueError(f"method must be residue or jantzen, got {method!r}")
    except ValueError as err:
        raise _unprocessable(err)
    return blocks_payload(regime, n, partition)


@app.get("/jantzen")
def get_jantzen(
    lam: str,
    mu: str,
    e: Optional[str] = None,
    p: Optional[str] = None,
    case: str = "auto",
    charges: Optional[str] = None,
    zero: bool = False,
    oracle: bool = False,
):
    try:
        left = parse_multipartition(lam)
        right = parse_multipartition(mu, r=left.r)
        regime = RunConfig("jantzen", e, p, left.r, left.size, charges, case, zero).regime()
        value = jantzen_fast(left, right, regime)
        check = jantzen_bruteforce(left, right, regime) if oracle else None
    except ValueError as err:
        raise _unprocessable(err)
    return jantzen_payload(regime, left, right, value, check)


@app.get("/abacus")
def get_abacus(lam: str, e: str = "inf", charges: Optional[str] = None, rows: int = 7, top_row: int = 2):
    try:
        multi = parse_multipartition(lam)
        charge_vector = RunConfig("abacus", e, None, multi.r, multi.size, charges).charge_vector() or (0,) * multi.r
        if len(charge_vector) != multi.r:
            raise ValueError(f"need {multi.r} charges, got {len(charge_vector)}")
        return abacus_payload(multi, charge_vector, parse_order(e), rows, top_row)
    except ValueError as err:
        raise _unprocessable(err)


@app.websocket("/ws/verify")
async def verify_endpoint(websocket: WebSocket):
    await websocket.accept()
    await runner.add_client(websocket)

    try:
        while True:
            data = await websocket.receive_text()
            try:
                message = json.loads(data)
            except json.JSONDecodeError:
                message = None
            if not isinstance(message, dict):
                await websocket.send_json({"type": "error", "detail": "messages must be JSON objects"})
                continue
            await runner.handle_command(websocket, message)

    except WebSocketDisconnect:
        runner.remove_client(websocket)


@app.on_event("startup")
async def startup():
    global runner, runner_task
    runner = SweepRunner(tick_ms=50)
    runner_task = asyncio.create_task(runner.run_loop())
    logger.info("Blocks server started, sweep runner ticking every 50ms")


@app.on_event("shutdown")
async def shutdown():
    global runner
    if runner:
        runner.stop()
    logger.info("Blocks server shut down...")
