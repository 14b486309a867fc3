# Phase 2C: regimes, residues, hubs and weights
