# Phase 2D: Jantzen coefficients
