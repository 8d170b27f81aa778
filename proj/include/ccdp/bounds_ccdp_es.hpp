#pragma once

#include <Eigen/Dense>

#include "ccdp/rate_bound.hpp"

namespace ccdp {

/// Equi-correlated channel instance. rho_bar_plus = 1 - max{0, rho} is the
/// residual state share after the common component is pre-cancelled.
struct EsSpec {
    int receivers;
    double power;
    double c2;
    double rho;
    double rho_bar_plus;

    EsSpec(int M, double P, double c2, double rho);
};

/// 2-receiver outer bound, thresholds on c2 * rho_bar_plus. printed keeps raw
/// c2 inside the value terms; canonical substitutes c2 -> c2 * rho_bar_plus
/// (absorbing the residual variance into the gain), which is the form whose
/// 1-bpcu gap claim holds.
RateBound ccdpes_outer_2(double P, double c2, double rho, Form form);

/// 2-receiver inner bound: the independent-states optimized inner evaluated at
/// effective gain c2 * rho_bar_plus (for rho < 0 there is no common part to
/// pre-code, so the effective gain stays c2).
RateBound ccdpes_inner_2(double P, double c2, double rho);

/// M-receiver outer bound. printed: verbatim three branches. canonical: the
/// independent-states canonical M-receiver outer at effective gain
/// c2 * rho_bar_plus.
RateBound ccdpes_outer_M(double P, double c2, double rho, int M, Form form);

/// M-receiver inner bound at effective gain c2 * rho_bar_plus (common
/// component pre-cancelled, residual treated as independent states).
RateBound ccdpes_inner_M(double P, double c2, double rho, int M);

/// Common/private split of a correlated pair with covariance
/// [[1, rho*sqrt(Q)], [rho*sqrt(Q), Q]]:
///   S_1 = kappa*S_c + sqrt(1-kappa^2)*T_1
///   S_2 = sqrt(Q) * ((rho/kappa)*S_c + sqrt(1-(rho/kappa)^2)*T_2)
/// for independent unit Gaussians S_c, T_1, T_2 and kappa in [rho, 1].
struct CommonDecomposition {
    double common_1, private_1;   // receiver-1 coefficients (on S_c, T_1)
    double common_2, private_2;   // receiver-2 coefficients
    Eigen::Matrix2d implied_cov;  // must reproduce the target covariance
};

CommonDecomposition decompose_common(double rho, double Q, double kappa);
inline double default_kappa(double rho) { return std::max(std::sqrt(rho), rho); }

/// Pairwise-antithetic construction for negative correlation: each state is
///   S_m = -sqrt(|rho|) * sum_{j<m} T_{jm} + sqrt(|rho|) * sum_{j>m} T_{mj}
///         + sqrt(1-(M-1)|rho|) * T_{mm}
/// over M(M+1)/2 independent unit Gaussians T_{ij}, i <= j. Returns the
/// M x M(M+1)/2 coefficient matrix; its Gram matrix equals cov_ccdp_es(M, rho).
Eigen::MatrixXd decompose_negative(int M, double rho);

/// 2-receiver outer bound for independent states with variances 1 and Q >= 1,
/// thresholds on c2 * sqrt(Q). The 2-bpcu gap is claimed only for
/// c2 * sqrt(Q) >= P + 1.
RateBound ccdp_unequal_outer_2(double P, double c2, double Q);

}  // namespace ccdp
