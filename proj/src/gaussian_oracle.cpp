#include "ccdp/gaussian_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccdp/rate_bound.hpp"

namespace ccdp {

namespace {

constexpr double kSingularTol = 1e-13;

double entropy_from_eigen(const Vector& lambda) {
    const double lmax = lambda.maxCoeff();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) <= kSingularTol * std::max(lmax, 1.0)) {
            throw std::domain_error("gaussian_entropy: singular covariance");
        }
        sum += lg(lambda(i));
    }
    const double n = static_cast<double>(lambda.size());
    return 0.5 * (n * lg(2.0 * M_PI * M_E) + sum);
}

}  // namespace

double gaussian_entropy(const Matrix& cov) {
    if (cov.rows() != cov.cols() || cov.rows() == 0) {
        throw std::invalid_argument("gaussian_entropy: covariance must be square");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(cov, Eigen::EigenvaluesOnly);
    return entropy_from_eigen(es.eigenvalues());
}

JointGaussian::JointGaussian(std::vector<std::string> names, Matrix cov)
    : names_(std::move(names)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() != static_cast<Eigen::Index>(names_.size())) {
        throw std::invalid_argument("JointGaussian: name/covariance dimension mismatch");
    }
}

int JointGaussian::index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    throw std::invalid_argument("JointGaussian: unknown variable " + name);
}

Matrix JointGaussian::block(const std::vector<std::string>& rows,
                            const std::vector<std::string>& cols) const {
    Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(i, j) = cov_(index(rows[i]), index(cols[j]));
        }
    }
    return out;
}

double JointGaussian::entropy(const std::vector<std::string>& vars) const {
    return gaussian_entropy(block(vars, vars));
}

Matrix JointGaussian::conditional_cov(const std::vector<std::string>& vars,
                                      const std::vector<std::string>& given) const {
    const Matrix aa = block(vars, vars);
    if (given.empty()) return aa;
    const Matrix ab = block(vars, given);
    const Matrix bb = block(given, given);
    return aa - ab * bb.ldlt().solve(ab.transpose());
}

double JointGaussian::conditional_entropy(const std::vector<std::string>& vars,
                                          const std::vector<std::string>& given) const {
    return gaussian_entropy(conditional_cov(vars, given));
}

double gp_rate_gaussian(double P, double c2, const LinearAssignment& assignment) {
    if (!(P > 0)) throw std::invalid_argument("gp_rate_gaussian: power must be positive");
    if (!(c2 >= 0)) throw std::invalid_argument("gp_rate_gaussian: c2 must be non-negative");
    const double k = assignment.k;
    const double c = std::sqrt(c2);
    // (X, S, U, Y) with U = X + k c S, Y = X + c S + Z.
    Matrix cov(4, 4);
    cov << P, 0.0, P, P,
           0.0, 1.0, k * c, c,
           P, k * c, P + k * k * c2, P + k * c2,
           P, c, P + k * c2, P + c2 + 1.0;
    JointGaussian joint({"X", "S", "U", "Y"}, cov);
    const double var_us = joint.conditional_cov({"U"}, {"S"})(0, 0);
    const double var_uy = joint.conditional_cov({"U"}, {"Y"})(0, 0);
    if (!(var_us > 0.0) || !(var_uy > 0.0)) {
        throw std::domain_error("gp_rate_gaussian: singular joint covariance");
    }
    return 0.5 * lg(var_us / var_uy);
}

double compound_common_rate(double P, double c2, const std::vector<double>& a,
                            const LinearAssignment& assignment) {
    if (a.empty()) throw std::invalid_argument("compound_common_rate: no receivers");
    if (!(assignment.alpha >= 0.0 && assignment.alpha <= 1.0)) {
        throw std::invalid_argument("compound_common_rate: alpha must lie in [0, 1]");
    }
    const double alpha = assignment.alpha;
    const double k = assignment.k;
    const double c = std::sqrt(c2);
    const double common_power = alpha * P;
    if (!(common_power > 0.0)) return 0.0;  // no common layer

    const int M = static_cast<int>(a.size());
    const int n = 2 + M;  // U, S, Y_1..Y_M
    Matrix cov(n, n);
    std::vector<std::string> names = {"U", "S"};
    cov(0, 0) = common_power + k * k * c2;
    cov(0, 1) = cov(1, 0) = k * c;
    cov(1, 1) = 1.0;
    for (int m = 0; m < M; ++m) {
        names.push_back("Y" + std::to_string(m + 1));
        const int ym = 2 + m;
        cov(0, ym) = cov(ym, 0) = common_power + k * a[m] * c2;
        cov(1, ym) = cov(ym, 1) = c * a[m];
        for (int j = 0; j <= m; ++j) {
            const int yj = 2 + j;
            cov(ym, yj) = cov(yj, ym) = P + c2 * a[m] * a[j] + (j == m ? 1.0 : 0.0);
        }
    }
    JointGaussian joint(names, cov);
    const double h_us = joint.conditional_entropy({"U"}, {"S"});
    double h_uy = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < M; ++m) {
        h_uy = std::max(h_uy, joint.conditional_entropy({"U"}, {"Y" + std::to_string(m + 1)}));
    }
    return h_us - h_uy;
}

OracleBest optimize_inner_2wsfd(double P, double c2, double a,
                                const std::vector<double>& alpha_grid,
                                const std::vector<double>& k_grid) {
    if (alpha_grid.empty() || k_grid.empty()) {
        throw std::invalid_argument("optimize_inner_2wsfd: grids must be non-empty");
    }
    const std::vector<double> receivers = {1.0, a};
    OracleBest best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (double alpha : alpha_grid) {
        const double priv = 0.25 * lg(1.0 + (1.0 - alpha) * P);
        for (double k : k_grid) {
            const double common =
                std::max(0.0, compound_common_rate(P, c2, receivers, {k, alpha}));
            const double rate = common + priv;
            if (rate > best.rate) best = OracleBest{rate, alpha, k};
        }
    }
    return best;
}

double tridiag_cond_variance(int m) {
    if (m < 1) throw std::invalid_argument("tridiag_cond_variance: m must be >= 1");
    return (m + 1.0) / m;
}

double mrc_sigma_hat(double c2, const FadingVector& a, int m) {
    if (m < 3) throw std::invalid_argument("mrc_sigma_hat: defined from the third receiver on");
    if (m > a.size()) throw std::invalid_argument("mrc_sigma_hat: m exceeds receiver count");
    double sum = 0.0;
    for (int j = 2; j <= m - 1; ++j) sum += c2 * a[j - 1] * a[j - 1];
    if (!(sum > 0.0)) {
        throw std::domain_error("mrc_sigma_hat: degenerate statistic (zero combining weight)");
    }
    return 1.0 / sum;
}

double kappa_m(double P, double c2, const FadingVector& a, int m) {
    if (m < 3) throw std::invalid_argument("kappa_m: defined from the third receiver on");
    if (m > a.size()) throw std::invalid_argument("kappa_m: m exceeds receiver count");
    double s1 = 0.0;
    for (int j = 2; j <= m - 1; ++j) s1 += c2 * a[j - 1] * a[j - 1];
    const double tail = c2 * a[m - 1] * a[m - 1];
    const double s2 = s1 + tail;
    if (!(s1 > 0.0) || !(s2 > 0.0)) {
        throw std::domain_error("kappa_m: degenerate partial sums");
    }
    return 0.5 * lg((s1 + 1.0) / s1 * ((P + 1.0) * s1 + tail) / s2) + 0.5 * lg(m - 1.0);
}

}  // namespace ccdp
