#pragma once

#include <string>
#include <vector>

#include "ccdp/bounds_wsfd.hpp"
#include "ccdp/channel_model.hpp"

namespace ccdp {

/// Differential entropy of a Gaussian with the given covariance, in bits:
/// 1/2 lg((2 pi e)^n det). Determinant taken as a sum of eigenvalue logs;
/// a non-positive eigenvalue is a singularity error.
double gaussian_entropy(const Matrix& cov);

/// Named-variable joint Gaussian used as the mutual-information oracle.
/// Conditional entropies go through Schur complements, never through
/// differences of large near-singular entropies.
class JointGaussian {
 public:
    JointGaussian(std::vector<std::string> names, Matrix cov);

    int dim() const { return static_cast<int>(names_.size()); }
    const Matrix& cov() const { return cov_; }
    Matrix block(const std::vector<std::string>& rows, const std::vector<std::string>& cols) const;
    double entropy(const std::vector<std::string>& vars) const;
    double conditional_entropy(const std::vector<std::string>& vars,
                               const std::vector<std::string>& given) const;
    /// Schur complement Sigma_AA - Sigma_AB Sigma_BB^-1 Sigma_BA.
    Matrix conditional_cov(const std::vector<std::string>& vars,
                           const std::vector<std::string>& given) const;

 private:
    int index(const std::string& name) const;
    std::vector<std::string> names_;
    Matrix cov_;
};

/// Linear auxiliary assignment U = X + k * (c S): k multiplies the state term
/// as it appears in the output, so k = P/(P+1) is the coefficient achieving
/// full pre-cancellation for any state variance. alpha is the common-layer
/// power share used by the superposition constructions.
struct LinearAssignment {
    double k = 0.0;
    double alpha = 1.0;
};

inline double costa_coefficient(double P) { return P / (P + 1.0); }

/// I(Y;U) - I(U;S) = H(U|S) - H(U|Y) for the channel Y = X + cS + Z under the
/// linear assignment, built from the joint Gaussian over (X, S, U, Y).
double gp_rate_gaussian(double P, double c2, const LinearAssignment& assignment);

/// Common-codeword rate H(U|S) - max_m H(U|Y_m) over receivers
/// Y_m = X_c + X_p + c a_m S + Z_m, where X_c carries share alpha of the power
/// and the private layer X_p acts as noise.
double compound_common_rate(double P, double c2, const std::vector<double>& a,
                            const LinearAssignment& assignment);

struct OracleBest {
    double rate = 0.0;
    double alpha = 0.0;
    double k = 0.0;
};

/// Exhaustive deterministic scan of the 2-receiver scaled-state superposition:
/// common layer maximized over (alpha, k), plus the time-shared private part
/// 1/4 lg(1 + (1-alpha) P).
OracleBest optimize_inner_2wsfd(double P, double c2, double a,
                                const std::vector<double>& alpha_grid,
                                const std::vector<double>& k_grid);

/// Conditional variance of the m-th consecutive state difference given the
/// previous ones under the tridiagonal covariance (2 on the diagonal, -1 off):
/// (m+1)/m.
double tridiag_cond_variance(int m);

/// Noise variance of the maximal-ratio-combining estimate of the common state
/// from receivers 2..m-1: 1 / sum_{j=2..m-1} c2 a_j^2.
double mrc_sigma_hat(double c2, const FadingVector& a, int m);

/// Per-step converse constant
///   1/2 lg( (S1+1)/S1 * ((P+1) S1 + c2 a_m^2) / S2 ) + 1/2 lg(m-1),
/// with S1 = sum_{j=2..m-1} c2 a_j^2 and S2 = S1 + c2 a_m^2.
double kappa_m(double P, double c2, const FadingVector& a, int m);

}  // namespace ccdp
