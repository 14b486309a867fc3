# Combinatorial core: partitions, abacus, residues, Jantzen coefficients, blocks
