# Phase 2B: abacus displays, cores and bead moves
