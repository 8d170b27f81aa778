#include "ccdp/channel_model.hpp"

#include <cmath>
#include <sstream>

namespace ccdp {

namespace {

constexpr double kSymTol = 1e-12;   // relative symmetry tolerance
constexpr double kPsdTol = 1e-9;    // relative eigenvalue tolerance

}  // namespace

CovarianceMatrix::CovarianceMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw std::invalid_argument("covariance matrix must be square and non-empty");
    }
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m_.cols(); ++j) {
            if (std::abs(m_(i, j) - m_(j, i)) > kSymTol * scale) {
                throw std::invalid_argument("covariance matrix is not symmetric");
            }
        }
    }
}

bool CovarianceMatrix::is_psd() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    const double lmax = std::max(0.0, es.eigenvalues().maxCoeff());
    return es.eigenvalues().minCoeff() >= -kPsdTol * std::max(lmax, 1e-300);
}

Matrix CovarianceMatrix::symmetric_sqrt() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_);
    Vector lambda = es.eigenvalues();
    const double lmax = std::max(0.0, lambda.maxCoeff());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < -kPsdTol * std::max(lmax, 1e-300)) {
            throw std::domain_error("covariance matrix is not positive semidefinite");
        }
        lambda(i) = std::sqrt(std::max(0.0, lambda(i)));
    }
    return es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().transpose();
}

ChannelSpec::ChannelSpec(int M, double P, double c, CovarianceMatrix cov)
    : receivers(M), power(P), state_gain(c), state_cov(std::move(cov)) {
    if (M < 1) throw std::invalid_argument("receiver count must be >= 1");
    if (!(P > 0)) throw std::invalid_argument("input power must be positive");
    if (!(c >= 0)) throw std::invalid_argument("state gain must be non-negative");
    if (state_cov.dim() != M) throw std::invalid_argument("state covariance dimension mismatch");
    if (!state_cov.is_psd()) throw std::invalid_argument("state covariance must be PSD");
}

GeneralizedChannelSpec::GeneralizedChannelSpec(int M, double P, Vector mu_z, double sigma2,
                                               Vector mu_s, CovarianceMatrix cov)
    : receivers(M),
      power(P),
      noise_mean(std::move(mu_z)),
      noise_var(sigma2),
      state_mean(std::move(mu_s)),
      state_cov(std::move(cov)) {
    if (M < 1) throw std::invalid_argument("receiver count must be >= 1");
    if (!(sigma2 > 0)) throw std::invalid_argument("noise variance must be positive");
    if (noise_mean.size() != M || state_mean.size() != M || state_cov.dim() != M) {
        throw std::invalid_argument("generalized channel dimension mismatch");
    }
}

CovarianceMatrix cov_wrdp(int M) {
    if (M < 1) throw std::invalid_argument("cov_wrdp: receiver count must be >= 1");
    return CovarianceMatrix(Matrix::Identity(M, M));
}

CovarianceMatrix cov_wsfd(const Vector& a) {
    if (a.size() < 1) throw std::invalid_argument("cov_wsfd: scaling vector must be non-empty");
    return CovarianceMatrix(a * a.transpose());
}

bool ccdp_es_feasible(int M, double rho) {
    if (M < 1) throw std::invalid_argument("ccdp_es_feasible: receiver count must be >= 1");
    if (M == 1) return rho >= -1.0 && rho <= 1.0;
    return rho >= -1.0 / (M - 1) && rho <= 1.0;
}

CovarianceMatrix cov_ccdp_es(int M, double rho) {
    if (M < 1) throw std::invalid_argument("cov_ccdp_es: receiver count must be >= 1");
    if (!ccdp_es_feasible(M, rho)) {
        std::ostringstream msg;
        msg << "cov_ccdp_es: correlation " << rho << " infeasible for M=" << M
            << " (valid range [" << -1.0 / (M - 1) << ", 1])";
        throw std::invalid_argument(msg.str());
    }
    Matrix m = Matrix::Constant(M, M, rho);
    m.diagonal().setOnes();
    return CovarianceMatrix(std::move(m));
}

double det_ccdp_es_principal(int m, double rho) {
    if (m < 1) throw std::invalid_argument("det_ccdp_es_principal: order must be >= 1");
    if (rho == 1.0) {
        throw std::domain_error(
            "det_ccdp_es_principal: rho = 1 is singular (determinant 0 in the limit)");
    }
    return std::pow(1.0 - rho, m) * (1.0 + m * rho / (1.0 - rho));
}

ReducedChannel reduce_generalized(const GeneralizedChannelSpec& gen) {
    const int M = gen.receivers;
    double var_min = gen.state_cov(0, 0);
    for (int i = 1; i < M; ++i) var_min = std::min(var_min, gen.state_cov(i, i));
    if (!(var_min > 0)) {
        throw std::domain_error(
            "reduce_generalized: degenerate state (zero minimum variance); the "
            "normalization divides by it");
    }
    const double sigma = std::sqrt(gen.noise_var);
    const double P = gen.power / gen.noise_var;
    const double c = std::sqrt(var_min / gen.noise_var);
    CovarianceMatrix sigma_s(gen.state_cov.entries() / var_min);

    AffineOutputMap map{gen.state_mean + gen.noise_mean, sigma};
    return ReducedChannel{ChannelSpec(M, P, c, std::move(sigma_s)), std::move(map)};
}

StateSplit split_state_gain(const ChannelSpec& spec, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("split_state_gain: gamma must lie in [0, 1]");
    }
    const double c2 = spec.state_gain * spec.state_gain;
    ChannelSpec reduced(spec.receivers, spec.power, spec.state_gain * std::sqrt(gamma),
                        spec.state_cov);
    CovarianceMatrix genie((1.0 - gamma) * c2 * spec.state_cov.entries());
    return StateSplit{std::move(reduced), std::move(genie)};
}

double NormalSampler::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // 53-bit uniforms in (0, 1]; u1 > 0 keeps the log finite.
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

Matrix sample_states(const ChannelSpec& spec, int n, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("sample_states: negative sample count");
    const int M = spec.receivers;
    const Matrix root = spec.state_cov.symmetric_sqrt();
    Matrix out(n, M);
    NormalSampler gen(seed);
    Vector g(M);
    for (int i = 0; i < n; ++i) {
        for (int m = 0; m < M; ++m) g(m) = gen.next();
        out.row(i) = (root * g).transpose();
    }
    return out;
}

Matrix sample_outputs(const ChannelSpec& spec, const Vector& x, const Matrix& states,
                      std::uint64_t seed, bool identical_noise) {
    const int n = static_cast<int>(states.rows());
    const int M = spec.receivers;
    if (states.cols() != M || x.size() != n) {
        throw std::invalid_argument("sample_outputs: sample count / receiver count mismatch");
    }
    Matrix out(n, M);
    NormalSampler gen(seed);
    for (int i = 0; i < n; ++i) {
        if (identical_noise) {
            const double z = gen.next();
            for (int m = 0; m < M; ++m) {
                out(i, m) = x(i) + spec.state_gain * states(i, m) + z;
            }
        } else {
            for (int m = 0; m < M; ++m) {
                out(i, m) = x(i) + spec.state_gain * states(i, m) + gen.next();
            }
        }
    }
    return out;
}

}  // namespace ccdp
