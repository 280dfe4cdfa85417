#pragma once

#include "rtq/params.hpp"

// Single-flow overwrite queue with lead-time thresholding: a buffered packet is
// removed once its lead-time (deadline minus now) drops below theta. All
// functions use the merged arrival rate lambda1 + lambda2.
namespace rtq::skipping {

// Expected cumulative buffer-occupied time per clearance episode. Overwrites
// refresh the removal clock, so this can exceed d - theta at high load (it
// tends to 1/mu when lambda * (d - theta) is large).
double expected_clearance_time(const ModelParams& p);

// Expected busy-period length: 1/mu plus one service per buffered dispatch.
double expected_busy_period(const ModelParams& p);

// Stationary probability the system is empty. Defined as 1 at lambda = 0
// (continuity of the renewal ratio: idle time dominates).
double prob_empty(const ModelParams& p);

// Stationary goodput: rate of packets whose service completes within their
// deadline. 0 at lambda = 0 or d = 0.
double goodput(const ModelParams& p);

enum class RefKind { mm11, mm12 };

// Limiting reference throughputs (service completion rates) for sanity checks:
//   mm12: lambda (1 + rho) / (1 + rho + rho^2)   (overwrite queue, d -> inf)
//   mm11: lambda / (1 + rho)                     (no buffer, theta = d -> inf)
double reference_goodput(RefKind kind, double lambda, double mu);

}  // namespace rtq::skipping
