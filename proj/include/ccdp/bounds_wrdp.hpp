#pragma once

#include "ccdp/rate_bound.hpp"

namespace ccdp {

// All rates are in bits per channel use and all state gains are supplied
// squared (c2 = c^2), matching what the formulas consume.

/// Reference outer bound for the 2-receiver channel with independent states,
/// split at c2 = 4. The first branch is evaluated with the log restored around
/// the second fraction (the statement drops it); this makes the two branches
/// meet continuously at c2 = 4.
RateBound lapidoth_outer_2(double P, double c2);

/// Reference inner bound (lattice-code scheme rate), split at c2/2 = 1 and
/// c2/2 = P + 1.
RateBound lapidoth_inner_2(double P, double c2);

/// Reference M-receiver outer bound. The value is capped at the full-state
/// genie bound 1/2 lg(1+P), which also covers the degenerate c -> 0 blowup of
/// the -lg(c2) term.
RateBound lapidoth_outer_M(double P, double c2, int M);

/// 2-receiver outer bound, branches split at c2 = 1 and c2 = P + 1.
RateBound wrdp_outer_2(double P, double c2);

/// Derivation form of the 2-receiver outer: value in the middle branch uses
/// lg(c2) (not lg(c2+1)) and the top branch carries +1/2. Shared with the
/// equi-correlated canonical bounds, which evaluate it at the effective gain.
RateBound wrdp_outer_2_derivation(double P, double c2);

/// Superposition rate with power split alpha (common share) for 2 receivers:
/// 1/2 lg(1 + aP/(c2 + abP + 1)) + 1/4 lg(1 + abP), ab = 1 - alpha.
RateBound wrdp_inner_param_2(double P, double c2, double alpha);

/// Power-optimized 2-receiver inner bound (three branches).
RateBound wrdp_inner_2(double P, double c2);

/// Unclamped M-receiver derivation expression
/// 1/2 lg(1+P+c2) - (M-1)/(2M) lg(c2) + 3/2, evaluated at the given c2.
double wrdp_outer_M_derivation_expr(double P, double c2, int M);

/// M-receiver outer bound. printed: the three-branch statement. canonical:
/// min{ 1/2 lg(1+P), derivation expression at c2 clamped to [1, (M-1)(P+1)] }
/// (the clamp is the capacity-monotonicity tightening at the convexity
/// minimum c2* = (M-1)(P+1)).
RateBound wrdp_outer_M(double P, double c2, int M, Form form);

/// Maximizing private-power share: ab* = clamp((c2 + 1 - M)/(P(M-1)), 0, 1).
double wrdp_alpha_star_M(double P, double c2, int M);

/// Superposition rate with power split alpha for M receivers.
RateBound wrdp_inner_param_M(double P, double c2, int M, double alpha);

/// Power-optimized M-receiver inner bound (three branches, split at
/// c2 = M-1 and c2 = (M-1)(P+1)).
RateBound wrdp_inner_M(double P, double c2, int M);

}  // namespace ccdp
