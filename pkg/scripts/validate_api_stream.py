#!/usr/bin/env python3
"""
Verification Stream Validation Script
Starts the blocks server, queries /blocks over HTTP, then runs a small sweep
over the /ws/verify websocket and checks that every cell report arrives in
order, followed by a passing summary.
"""

import asyncio
import json
import signal
import subprocess
import sys
import time
from pathlib import Path

import httpx
import websockets

PORT = 8011
SWEEP = {"type": "start_sweep", "r_max": 2, "n_max": 3, "e_list": "2,3", "p_list": "2,inf", "cases": "1,2,3,4,5"}


async def validate_stream():
    print("=== Verification Stream Validation ===\n")

    print("Starting blocks server...")
    server_process = subprocess.Popen(
        [sys.executable, "-m", "uvicorn", "src.api.blocks_server:app", "--host", "127.0.0.1", "--port", str(PORT)],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
    )
    await asyncio.sleep(3)

    latencies = []
    cells = []
    summary = None

    try:
        async with httpx.AsyncClient() as client:
            response = await client.get(f"http://127.0.0.1:{PORT}/blocks", params={"n": 3, "case": 2, "p": 2})
            body = response.json()
        print(f"GET /blocks: {len(body['classes'])} classes")
        assert len(body["classes"]) == 2, f"expected 2 blocks for p=2, n=3, got {body['classes']}"

        async with websockets.connect(f"ws://127.0.0.1:{PORT}/ws/verify") as websocket:
            status = json.loads(await websocket.recv())
            print(f"Connected, runner status: {status}")

            await websocket.send(json.dumps(SWEEP))
            queued = json.loads(await websocket.recv())
            print(f"Sweep queued: {queued['cells']} cells\n")

            while summary is None:
                msg_start = time.perf_counter()
                data = json.loads(await asyncio.wait_for(websocket.recv(), timeout=60))
                latencies.append((time.perf_counter() - msg_start) * 1000)
                if data["type"] == "summary":
                    summary = data
                elif data["type"] == "cell":
                    cells.append(data)
                    if len(cells) % 20 == 0:
                        print(f"Cells: {len(cells)}/{queued['cells']}")

    except Exception as e:
        print(f"❌ Stream validation failed: {e}")
        return False

    finally:
        print("\nStopping server...")
        server_process.send_signal(signal.SIGTERM)
        server_process.wait(timeout=5)

    print("\n=== Results ===")
    print(f"Cells received: {len(cells)}")
    print(f"Average gap between messages: {sum(latencies) / len(latencies):.1f}ms")
    print(f"Summary: {summary}")

    log_path = Path("logs/api_stream_validation.txt")
    log_path.parent.mkdir(exist_ok=True)
    with open(log_path, "w") as f:
        f.write("Verification Stream Validation\n")
        f.write("=" * 50 + "\n")
        f.write(f"Cells: {len(cells)}\n")
        f.write(f"Avg gap: {sum(latencies) / len(latencies):.1f}ms\n")
        f.write(f"Max gap: {max(latencies):.1f}ms\n")
        f.write(f"Summary: {json.dumps(summary)}\n")

    assert [cell["index"] for cell in cells] == list(range(queued["cells"])), "cell reports out of order"
    assert summary["passed"], f"{summary['failed']} cells failed"

    print("\n✅ Verification Stream Validation PASSED")
    return True


if __name__ == "__main__":
    result = asyncio.run(validate_stream())
    sys.exit(0 if result else 1)
