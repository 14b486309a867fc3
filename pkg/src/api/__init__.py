# CLI and HTTP front ends for the block engine
