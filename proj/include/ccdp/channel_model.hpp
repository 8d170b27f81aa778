#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ccdp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Symmetric PSD matrix with validation on construction. Symmetry is required
/// to a 1e-12 relative tolerance; positive semidefiniteness is checked lazily
/// where a factorization is needed (eigenvalues >= -1e-9 * lambda_max pass,
/// anything in [-1e-9 * lambda_max, 0) is clipped to 0).
class CovarianceMatrix {
 public:
    explicit CovarianceMatrix(Matrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& entries() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

    bool is_psd() const;
    /// Symmetric square root via eigendecomposition; throws std::domain_error
    /// if an eigenvalue falls below the PSD tolerance.
    Matrix symmetric_sqrt() const;

 private:
    Matrix m_;
};

/// Canonical compound state channel: Y_m = X + c * S_m + Z_m with unit-variance
/// noise, input power P and M receivers.
struct ChannelSpec {
    int receivers;
    double power;
    double state_gain;
    CovarianceMatrix state_cov;

    ChannelSpec(int M, double P, double c, CovarianceMatrix cov);
};

/// Pre-normalization channel: Y'_m = X' + S'_m + Z'_m with noise mean mu_Z and
/// variance sigma2, state mean mu_S and covariance Sigma'_S.
struct GeneralizedChannelSpec {
    int receivers;
    double power;
    Vector noise_mean;
    double noise_var;
    Vector state_mean;
    CovarianceMatrix state_cov;

    GeneralizedChannelSpec(int M, double P, Vector mu_z, double sigma2, Vector mu_s,
                           CovarianceMatrix cov);
};

CovarianceMatrix cov_wrdp(int M);
CovarianceMatrix cov_wsfd(const Vector& a);
CovarianceMatrix cov_ccdp_es(int M, double rho);

/// Valid pairwise-correlation range for the equi-correlated model:
/// -1/(M-1) <= rho <= 1 (for M = 1 any rho in [-1, 1]).
bool ccdp_es_feasible(int M, double rho);

/// Leading principal minor of order m of the equi-correlated covariance,
/// (1-rho)^m * (1 + m*rho/(1-rho)). rho = 1 is singular and rejected.
double det_ccdp_es_principal(int m, double rho);

/// Per-receiver affine map y = (y' - shift_m) / scale returned by the channel
/// reduction so samples can be carried across the two forms.
struct AffineOutputMap {
    Vector shift;
    double scale;
};

struct ReducedChannel {
    ChannelSpec spec;
    AffineOutputMap map;
};

/// Normalize a generalized channel to the canonical form: P = P'/sigma2,
/// c = sqrt(var[S'_min]/sigma2), states rescaled to unit minimum variance.
/// A zero-variance state is rejected (the normalization divides by it).
ReducedChannel reduce_generalized(const GeneralizedChannelSpec& gen);

struct StateSplit {
    ChannelSpec reduced;          // state gain c * sqrt(gamma), same Sigma_S
    CovarianceMatrix genie_cov;   // (1 - gamma) * c^2 * Sigma_S
};

StateSplit split_state_gain(const ChannelSpec& spec, double gamma);

/// Portable deterministic normal sampler (Box-Muller over mt19937_64); the
/// stream depends only on the seed, not on the standard library.
class NormalSampler {
 public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}
    double next();

 private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// n x M zero-mean state samples with covariance Sigma_S, via the symmetric
/// square-root factor. Identical seeds give identical samples bit for bit.
Matrix sample_states(const ChannelSpec& spec, int n, std::uint64_t seed);

/// Y_(i,m) = x_i + c * S_(i,m) + Z_(i,m). Noise is independent across receivers
/// unless identical_noise is set (test-harness use only).
Matrix sample_outputs(const ChannelSpec& spec, const Vector& x, const Matrix& states,
                      std::uint64_t seed, bool identical_noise = false);

}  // namespace ccdp
