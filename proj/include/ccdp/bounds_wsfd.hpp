#pragma once

#include <string>
#include <vector>

#include "ccdp/rate_bound.hpp"

namespace ccdp {

/// Scaling coefficients a_1 <= a_2 <= ... <= a_M of the scaled-state model;
/// sortedness is enforced on construction.
class FadingVector {
 public:
    explicit FadingVector(std::vector<double> a);

    int size() const { return static_cast<int>(a_.size()); }
    double operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return a_; }

 private:
    std::vector<double> a_;
};

/// Condition-check outcome; `violated` names the first failing condition.
struct ConditionCheck {
    bool pass = false;
    std::string violated;
};

/// Derivation-form 2-receiver outer bound
///   1/4 lg(P+t+1) + 1/4 lg(P+t*a^2+1) - 1/4 lg(t*(a-1)^2+1) + 1/2
/// minimized over the substituted gain t in [0, c2] for |a| >= 1 (capacity is
/// decreasing in the state gain, so the expression at any t <= c2 is a valid
/// bound; the minimizer has a closed form). For |a| < 1 it evaluates at c2.
RateBound wsfd_outer_raw_2(double P, double c2, double a);

/// Printed four-branch 2-receiver outer bound; the ambiguous strong-fading
/// low branch is read as 1/2 lg((P + 2 c2 (a-1)^2)^2) - 1/4 lg(c2 (a-1)^2 + 1).
/// Reference only; gap tests use wsfd_outer_raw_2.
RateBound wsfd_outer_2(double P, double c2, double a);

/// Common-layer rate with the state partially pre-cancelled, power share
/// alpha in [0, 1); alpha = 1 degenerates the private term and is rejected.
RateBound wsfd_inner_rcr_2(double P, double c2, double a, double alpha);

/// Rate at the mismatched receiver when coding as in the single-receiver
/// dirty-paper channel for receiver 1.
RateBound wsfd_inner_wdp_2(double P, double c2, double a);

/// Medium-fading scheme rate, valid for 1 < a <= 2 and P > 3.
RateBound wsfd_inner_medium_2(double P, double a);

struct PortfolioRate {
    double value = 0.0;
    std::string scheme;
};

/// Best of: treat-state-as-noise at the worst receiver, dirty-paper coding for
/// receiver 1, time sharing, the medium-fading scheme (in regime), and the
/// common-layer rate maximized over a 512-point alpha grid.
PortfolioRate wsfd_inner_2(double P, double c2, double a);

/// The alpha grid used by the portfolio (log-spaced near both endpoints).
std::vector<double> rcr_alpha_grid(int points = 512);

/// Strong-fading conditions for a_1 = 0: c2*a_2^2 > P+1 and
/// a_m^2/a_{m-1}^2 >= P+1 for m in [3..M]. Requires P >= 1, M >= 2.
ConditionCheck strong_fading_check(double P, double c2, const FadingVector& a);

/// (1/2M) lg(1+P) + 1/2 lg(M) + 2.
RateBound wsfd_outer_strong(double P, int M);

/// Time sharing: (1/2M) lg(1+P).
RateBound wsfd_inner_timeshare(double P, int M);

/// General strong-fading conditions on Delta_m = a_m - a_1:
///   c2*Delta_2^2 > max{P+1, a_2^2};  c2*Delta_i^2 > 1 for i > 2;
///   sum_{i=2..m-1} Delta_i^2 >= gamma*a_m^2  and
///   Delta_m^2 >= gamma*P*sum_{i=2..m-1} Delta_i^2 for m in [3..M].
/// The two sum conditions are vacuous at m = 2 where the sum is empty.
ConditionCheck strong_fading_check_v2(double P, double c2, const FadingVector& a, double gamma);

/// (1/2M) lg(1+P) + 1/2 lg(M) + 1/2 lg(gamma) + 2.
RateBound wsfd_outer_strong_v2(double P, int M, double gamma);

/// Fast-fading counterpart with antipodal fading: three branches split at
/// c2 = 1 and c2 = P + 1.
RateBound wffd_outer_antipodal(double P, double c2);

}  // namespace ccdp
