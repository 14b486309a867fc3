# Phase 2E: block partitions and the verification sweep
