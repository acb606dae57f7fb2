#pragma once

#include "tesscode/encoder.hpp"

namespace tess {

struct ResolutionReport {
    double dx = 0;               // closed-form value, half the min rotated-vertex distance
    double dx_scan = -1;         // full pairwise scan over the truncated constellation
    int argmin_vertex = -1;      // 0 = A, 1 = B, 2 = C
    SurfacePoint seed;
    bool methods_agree = false;  // |dx - dx_scan| < 1e-7
};

/// Closed-form resolution from the three vertex-rotation distances.
/// Rotations fixing the seed (seed on that vertex) produce no point pair and
/// are skipped. Cross-checked against the full pairwise scan; a disagreement
/// beyond 1e-7 throws.
ResolutionReport resolution(const Code& code, bool run_scan = true, bool parallel = true);

/// Half the minimum pairwise distance of a point set. Reference
/// implementation and OpenMP kernel produce identical results.
double min_pairwise_distance_serial(Surface kind, const std::vector<SurfacePoint>& pts);
double min_pairwise_distance_parallel(Surface kind, const std::vector<SurfacePoint>& pts);

struct SeedOptimum {
    double c1 = 0, c2 = 0;       // chart coordinates of the optimal seed
    SurfacePoint seed;
    double dx = 0;               // half the optimal min vertex-rotation distance
    double equal_residual = 0;   // max pairwise gap of the three distances at the optimum
    bool converged = false;
    int evaluations = 0;
};

/// Derivative-free max-min search for the seed maximizing
/// min{d(p, pA), d(p, pB), d(p, pC)} over the closed unit triangle minus
/// small vertex-exclusion disks. Multi-start Nelder-Mead on the negated
/// objective; result independent of start scheduling order.
SeedOptimum optimize_seed(int p, int q, int r, int starts = 16, int iter_budget = 2000,
                          std::uint64_t rng_seed = 12345);

}  // namespace tess
