"""Central table of numerical tolerances.

Every module reads its tolerances from here so there is a single point of
tuning.
"""

HERM_TOL = 1e-9      # max-entry deviation |M - M^†| accepted as Hermitian
RECON_TOL = 1e-10    # eigendecomposition must reconstruct its input this well
DEGEN_GAP = 1e-12    # eigenvalue gap below which the degenerate path is taken
TRACE_TOL = 1e-9     # accepted deviation from unit trace for coherence matrices
PSD_CLAMP = 1e-10    # eigenvalues in [-PSD_CLAMP, 0) are clamped to zero
DEGREE_SLACK = 1e-9  # degrees within this outside [0, 1] are clamped back in
UNITARY_TOL = 1e-10  # unitarity / unit-determinant tolerance for group elements
EDGE_TOL = 1e-12     # positivity-triangle boundary tolerance (boundary counts as inside)
