# Phase 2A: partitions, multipartitions, rim hooks
