#pragma once

#include "rtq/params.hpp"

namespace rtq::optimizer {

// Objective to maximize over theta in [0, d]:
//   skipping — merged-flow thresholded goodput
//   joint    — total two-flow goodput with coding and thresholding; the gain
//              baseline is the same model at theta = 0 (coding alone)
enum class GainModel { skipping, joint };

struct ThresholdResult {
    double theta_star = 0.0;
    double gain_at_star = 0.0;    // dimensionless, relative to theta = 0
    double grid_resolution = 0.0; // grid step h actually used
};

// Exhaustive grid search over theta in {0, h, 2h, ..., d} followed by
// golden-section refinement around the best grid point, run to interval
// width h * 1e-3. Ties break toward smaller theta, and the refined point
// is kept only when it strictly beats the grid. gain_at_star >= 0 because
// theta = 0 is always feasible.
ThresholdResult optimal_threshold(const ModelParams& p, GainModel model,
                                  double resolution);

// Default resolution: h = d / 2000.
ThresholdResult optimal_threshold(const ModelParams& p, GainModel model);

}  // namespace rtq::optimizer
