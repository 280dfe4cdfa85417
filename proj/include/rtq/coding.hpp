#pragma once

#include <array>

#include "rtq/params.hpp"

// Two-flow router with opportunistic XOR coding: an arrival finding a native
// packet of the other flow in the buffer is coded with it; any other arrival
// to a full buffer overwrites the stored unit. theta > 0 additionally removes
// the stored unit once its lead-time (max constituent deadline minus now)
// drops below theta; theta = 0 is the plain coding model.
namespace rtq::coding {

// P(service completes within d | arrival to an empty system) = 1 - e^{-mu d}.
double success_prob_empty(const ModelParams& p);

// Success probability of a flow-k arrival that is buffered as (or overwrites
// into) a native unit: it survives overwrites by its own flow, tolerates at
// most one partner-flow arrival (which codes with it), and must be dispatched
// within d - theta and served within d.
double success_prob_busy(const ModelParams& p, int flow);

// Success probability of an arrival that codes into a buffered native of the
// other flow: any further arrival overwrites the coded unit, so the integrand
// has no partner-tolerance term. Symmetric in the two rates.
double success_prob_full_other(const ModelParams& p);

// Row i (1-based type) of the clearance-expectation matrix: expected
// cumulative buffer time of type-i units in a clearance period started by a
// type-j unit, for j = 1,2,3. Solved from a 3x3 linear system.
std::array<double, 3> clearance_expectations(const ModelParams& p, int flow_type);

ClearanceExpectations clearance_matrix(const ModelParams& p);

// Stationary distribution over the five router states via the renewal cycle
// (idle + busy period). Throws DomainError when lambda1 + lambda2 = 0.
StateDistribution state_distribution(const ModelParams& p);

// Stationary goodput of one flow (1 or 2).
double flow_goodput(const ModelParams& p, int flow);

// Both flows plus the merged-rate no-coding no-threshold baseline and the
// relative gain against it.
GoodputReport goodput_report(const ModelParams& p);

}  // namespace rtq::coding
