#!/usr/bin/env python3
"""
Full Sweep Validation Script
Runs the acceptance grid (r <= 3, n <= 6, e in {2,3,4,inf}, p in {2,3,inf},
all five cases) twice and checks that residue and Jantzen blocks agree in
every cell, that cases 3 and 4 agree, and that both runs serialize to the
same bytes. Logs timing and memory to logs/sweep_validation.log.
"""

import argparse
import os
import sys
import time
from datetime import datetime

import psutil

# Repository root on the path so the src package resolves
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.api.config import SweepConfig
from src.api.payloads import dumps, sweep_payload
from src.core.blocks import cross_check_isomorphic_cases, verify_sweep


def log_message(message, log_file):
    """Log message to console and file with timestamp."""
    timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
    log_entry = f"[{timestamp}] {message}"
    print(log_entry)
    log_file.write(log_entry + "\n")


def run_once(sweep, log_file):
    start = time.time()
    cells = sweep.cells()
    reports = verify_sweep(cells, workers=sweep.workers, audit=sweep.audit, seed=sweep.seed)
    checks = [(p, r, n, cross_check_isomorphic_cases(p, r, n)) for p, r, n in sweep.cross_check_cells()]
    payload = sweep_payload(reports, checks)
    log_message(
        f"{len(cells)} cells, {len(checks)} case 3/4 checks, {payload['failed']} failed "
        f"in {time.time() - start:.1f}s",
        log_file,
    )
    return payload


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--r-max", type=int, default=3)
    parser.add_argument("--n-max", type=int, default=6)
    args = parser.parse_args()

    log_path = os.path.join(os.path.dirname(__file__), '..', 'logs', 'sweep_validation.log')
    os.makedirs(os.path.dirname(log_path), exist_ok=True)

    with open(log_path, 'w') as log_file:
        log_message("Starting full sweep validation", log_file)
        process = psutil.Process()
        initial_mem = process.memory_info().rss / (1024 * 1024)
        log_message(f"Initial memory: {initial_mem:.2f} MB, workers: {args.workers}", log_file)

        sweep = SweepConfig(r_max=args.r_max, n_max=args.n_max, workers=args.workers)
        first = run_once(sweep, log_file)
        second = run_once(sweep, log_file)

        final_mem = process.memory_info().rss / (1024 * 1024)
        log_message(f"Final memory: {final_mem:.2f} MB", log_file)

        for cell in first["cells"]:
            if not cell["equal"]:
                log_message(f"FAIL {cell['regime']} n={cell['n']} witness={cell['witness']}", log_file)
        for check in first["cross_checks"]:
            if not check["identical"]:
                log_message(f"FAIL cases 3/4 at p={check['p']} r={check['r']} n={check['n']}", log_file)

        deterministic = dumps(first) == dumps(second)
        log_message(f"Byte-identical reruns: {deterministic}", log_file)

        if first["passed"] and deterministic:
            log_message("✅ Sweep validation PASSED", log_file)
            return 0
        log_message("❌ Sweep validation FAILED", log_file)
        return 1


if __name__ == "__main__":
    sys.exit(main())
