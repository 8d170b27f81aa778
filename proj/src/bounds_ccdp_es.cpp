#include "ccdp/bounds_ccdp_es.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ccdp/bounds_wrdp.hpp"
#include "ccdp/channel_model.hpp"

namespace ccdp {

namespace {

double rho_bar_plus(double rho) { return 1.0 - std::max(0.0, rho); }

void check_feasible(int M, double rho) {
    if (!ccdp_es_feasible(M, rho)) {
        std::ostringstream msg;
        msg << "correlation " << rho << " infeasible for M=" << M << " (valid range ["
            << -1.0 / (M - 1) << ", 1])";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

EsSpec::EsSpec(int M, double P_, double c2_, double rho_)
    : receivers(M), power(P_), c2(c2_), rho(rho_), rho_bar_plus(ccdp::rho_bar_plus(rho_)) {
    if (!(P_ > 0)) throw std::invalid_argument("power must be positive");
    if (!(c2_ >= 0)) throw std::invalid_argument("squared state gain must be non-negative");
    check_feasible(M, rho_);
}

RateBound ccdpes_outer_2(double P, double c2, double rho, Form form) {
    check_feasible(2, rho);
    const double x = c2 * rho_bar_plus(rho);
    if (form == Form::printed) {
        if (x <= 1.0) return make_bound(0.5 * lg(P + 1.0), "low");
        if (x < P + 1.0) {
            return make_bound(0.5 * lg(P + c2 + 1.0) - 0.25 * lg(c2) + 0.5, "mid");
        }
        return make_bound(0.25 * lg(P + 1.0) + 0.5, "high");
    }
    RateBound b = wrdp_outer_2_derivation(P, x);
    b.source = "canonical";
    return b;
}

RateBound ccdpes_inner_2(double P, double c2, double rho) {
    check_feasible(2, rho);
    return wrdp_inner_2(P, c2 * rho_bar_plus(rho));
}

RateBound ccdpes_outer_M(double P, double c2, double rho, int M, Form form) {
    check_feasible(M, rho);
    const double x = c2 * rho_bar_plus(rho);
    if (form == Form::printed) {
        if (M - 1.0 >= x) return make_bound(0.5 * lg(1.0 + P / (1.0 + c2)) + 2.25, "low");
        if (x <= (M - 1.0) * (P + 1.0)) {
            const double v = lg(1.0 + P) / (2.0 * M) + (M - 1.0) / (2.0 * M) * lg(c2) + 1.5;
            return make_bound(v, "mid");
        }
        return make_bound(lg(1.0 + P) / (2.0 * M) + 2.0, "high");
    }
    return wrdp_outer_M(P, x, M, Form::canonical);
}

RateBound ccdpes_inner_M(double P, double c2, double rho, int M) {
    check_feasible(M, rho);
    return wrdp_inner_M(P, c2 * rho_bar_plus(rho), M);
}

CommonDecomposition decompose_common(double rho, double Q, double kappa) {
    if (!(Q >= 1.0)) throw std::invalid_argument("decompose_common: Q must be >= 1");
    if (!(rho >= 0.0)) throw std::invalid_argument("decompose_common: rho must be non-negative");
    if (!(kappa >= rho && kappa <= 1.0) || !(kappa > 0.0 || rho == 0.0)) {
        throw std::invalid_argument("decompose_common: kappa must lie in [rho, 1]");
    }
    const double ratio = kappa > 0.0 ? rho / kappa : 0.0;
    CommonDecomposition d{};
    d.common_1 = kappa;
    d.private_1 = std::sqrt(1.0 - kappa * kappa);
    d.common_2 = std::sqrt(Q) * ratio;
    d.private_2 = std::sqrt(Q) * std::sqrt(1.0 - ratio * ratio);
    d.implied_cov(0, 0) = d.common_1 * d.common_1 + d.private_1 * d.private_1;
    d.implied_cov(1, 1) = d.common_2 * d.common_2 + d.private_2 * d.private_2;
    d.implied_cov(0, 1) = d.implied_cov(1, 0) = d.common_1 * d.common_2;
    return d;
}

Eigen::MatrixXd decompose_negative(int M, double rho) {
    if (!(rho < 0.0)) throw std::invalid_argument("decompose_negative: rho must be negative");
    if (M < 2) throw std::invalid_argument("decompose_negative: needs M >= 2");
    const double mag = -rho;
    if ((M - 1) * mag > 1.0 + 1e-15) {
        throw std::invalid_argument("decompose_negative: (M-1)|rho| > 1 is infeasible");
    }
    const double s = std::sqrt(mag);
    const double diag = std::sqrt(std::max(0.0, 1.0 - (M - 1) * mag));

    // Columns indexed by unordered pairs (i, j), i <= j: column of T_ij.
    const int cols = M * (M + 1) / 2;
    Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(M, cols);
    int col = 0;
    for (int i = 1; i <= M; ++i) {
        for (int j = i; j <= M; ++j, ++col) {
            if (i == j) {
                coeff(i - 1, col) = diag;
            } else {
                coeff(i - 1, col) = s;    // T_ij enters S_i with +, S_j with -
                coeff(j - 1, col) = -s;
            }
        }
    }
    return coeff;
}

RateBound ccdp_unequal_outer_2(double P, double c2, double Q) {
    if (!(P > 0)) throw std::invalid_argument("power must be positive");
    if (!(c2 >= 0)) throw std::invalid_argument("squared state gain must be non-negative");
    if (!(Q >= 1.0)) throw std::invalid_argument("ccdp_unequal_outer_2: Q must be >= 1");
    const double x = c2 * std::sqrt(Q);
    if (x <= 1.0) return make_bound(0.5 * lg(P + 1.0), "low");
    if (x < P + 1.0) {
        const double v = 0.25 * lg(1.0 + P + c2) + 0.25 * lg(1.0 + P + c2 * Q) -
                         0.25 * lg(c2 * (1.0 + Q) + 1.0) + 1.5;
        return make_bound(v, "mid");
    }
    return make_bound(0.25 * lg(P + 1.0) + 2.0, "high");
}

}  // namespace ccdp
