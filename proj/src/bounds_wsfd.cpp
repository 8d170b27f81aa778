#include "ccdp/bounds_wsfd.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ccdp {

namespace {

void check_pc(double P, double c2) {
    if (!(P > 0)) throw std::invalid_argument("power must be positive");
    if (!(c2 >= 0)) throw std::invalid_argument("squared state gain must be non-negative");
}

double raw_expr(double P, double t, double a) {
    return 0.25 * lg(P + t + 1.0) + 0.25 * lg(P + t * a * a + 1.0) -
           0.25 * lg(t * (a - 1.0) * (a - 1.0) + 1.0) + 0.5;
}

// Minimizer of raw_expr over the substituted gain t >= 0. The stationary
// condition is the quadratic a^2*B*t^2 + 2*a^2*t + (A*(1+a^2) - A^2*B) = 0
// with A = P+1, B = (a-1)^2; a negative constant term gives the single
// interior minimum, otherwise the expression is increasing from t = 0.
double raw_argmin(double P, double a) {
    const double A = P + 1.0;
    const double B = (a - 1.0) * (a - 1.0);
    const double a2 = a * a;
    if (B == 0.0 || a2 == 0.0) return 0.0;
    const double C = A * (1.0 + a2) - A * A * B;
    if (C >= 0.0) return 0.0;
    return (-a2 + std::sqrt(a2 * a2 - a2 * B * C)) / (a2 * B);
}

}  // namespace

FadingVector::FadingVector(std::vector<double> a) : a_(std::move(a)) {
    if (a_.empty()) throw std::invalid_argument("fading vector must be non-empty");
    for (std::size_t i = 1; i < a_.size(); ++i) {
        if (a_[i] < a_[i - 1]) {
            throw std::invalid_argument("fading coefficients must be sorted ascending");
        }
    }
}

RateBound wsfd_outer_raw_2(double P, double c2, double a) {
    check_pc(P, c2);
    double t = c2;
    if (std::abs(a) >= 1.0) t = std::min(c2, raw_argmin(P, a));
    return make_bound(raw_expr(P, t, a), "raw", "canonical");
}

RateBound wsfd_outer_2(double P, double c2, double a) {
    check_pc(P, c2);
    if (std::abs(a) < 1.0) {
        throw std::invalid_argument("wsfd_outer_2: |a| must be >= 1");
    }
    const double c = std::sqrt(c2);
    const double weak_edge =
        c > 0.0 ? 1.0 + 1.0 / std::min(std::sqrt(P), c) : std::numeric_limits<double>::infinity();
    if (a >= 1.0 && a < weak_edge) {
        return make_bound(0.5 * lg(P + 1.0), "weak");
    }
    if (a >= weak_edge && a <= 2.0) {
        const double v =
            0.25 * lg(P + 1.0) + 0.25 * lg(std::min(P, c2) * (a - 1.0) * (a - 1.0) + 1.0);
        return make_bound(v, "medium");
    }
    // a <= -1 or a > 2
    if (c2 * a * a <= P + 1.0) {
        const double q = P + 2.0 * c2 * (a - 1.0) * (a - 1.0);
        const double v = 0.5 * lg(q * q) - 0.25 * lg(c2 * (a - 1.0) * (a - 1.0) + 1.0);
        return make_bound(v, "strong-low");
    }
    return make_bound(0.25 * lg(P + 1.0) + 0.5, "strong-high");
}

RateBound wsfd_inner_rcr_2(double P, double c2, double a, double alpha) {
    check_pc(P, c2);
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw std::invalid_argument(
            "wsfd_inner_rcr_2: alpha must lie in [0, 1); alpha = 1 degenerates the private term");
    }
    const double ab = 1.0 - alpha;
    const double num = alpha * P + 1.0;
    const double den =
        alpha * P * c2 * (1.0 - a) * (1.0 - a) / (P + c2 + 1.0) + 1.0 + ab * P;
    const double v = 0.5 * lg(num / den + 1.0) + 0.25 * lg(ab * P) - 1.0;
    return make_bound(v, "rcr");
}

RateBound wsfd_inner_wdp_2(double P, double c2, double a) {
    check_pc(P, c2);
    const double v = 0.5 * lg(P + 1.0) -
                     0.5 * lg(P * c2 * (1.0 - a) * (1.0 - a) / (P + c2 + 1.0) + 1.0);
    return make_bound(v, "wdp");
}

RateBound wsfd_inner_medium_2(double P, double a) {
    if (!(a > 1.0 && a <= 2.0) || !(P > 3.0)) {
        throw std::invalid_argument("wsfd_inner_medium_2: requires 1 < a <= 2 and P > 3");
    }
    const double ap = a - 1.0;
    const double den = P * (-ap * ap * ap + ap * ap + ap) + 1.0;
    const double v = 0.25 * lg(P) + 0.25 * lg(P * (ap * P + 1.0) / (den * den));
    return make_bound(v, "medium");
}

std::vector<double> rcr_alpha_grid(int points) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    grid.push_back(0.0);
    const int lo_n = (points - 2) / 2;
    const int hi_n = points - 1 - lo_n;
    const double lo_min = 1e-6;
    for (int i = 0; i < lo_n; ++i) {
        const double f = static_cast<double>(i) / (lo_n - 1);
        grid.push_back(std::exp(std::log(lo_min) + f * (std::log(0.5) - std::log(lo_min))));
    }
    for (int j = 0; j < hi_n; ++j) {
        const double f = static_cast<double>(j + 1) / hi_n;
        grid.push_back(1.0 - std::exp(std::log(0.5) + f * (std::log(lo_min) - std::log(0.5))));
    }
    return grid;
}

PortfolioRate wsfd_inner_2(double P, double c2, double a) {
    check_pc(P, c2);
    PortfolioRate best{clamp_rate(0.5 * lg(1.0 + P / (c2 * std::max(1.0, a * a) + 1.0))), "tan"};
    const auto consider = [&best](double v, const char* scheme) {
        if (v > best.value) best = PortfolioRate{v, scheme};
    };
    consider(wsfd_inner_wdp_2(P, c2, a).value, "wdp");
    consider(0.25 * lg(1.0 + P), "timeshare");
    if (a > 1.0 && a <= 2.0 && P > 3.0) {
        consider(wsfd_inner_medium_2(P, a).value, "medium");
    }
    static const std::vector<double> alphas = rcr_alpha_grid();
    double rcr_best = 0.0;
    for (double al : alphas) rcr_best = std::max(rcr_best, wsfd_inner_rcr_2(P, c2, a, al).value);
    consider(rcr_best, "rcr");
    return best;
}

ConditionCheck strong_fading_check(double P, double c2, const FadingVector& a) {
    const int M = a.size();
    if (M < 2) throw std::invalid_argument("strong_fading_check: needs M >= 2");
    if (a[0] != 0.0) {
        throw std::invalid_argument("strong_fading_check: a_1 must be 0; use strong_fading_check_v2");
    }
    if (!(P >= 1.0)) return {false, "P >= 1"};
    if (!(c2 * a[1] * a[1] > P + 1.0)) return {false, "c2*a2^2 > P+1"};
    for (int m = 3; m <= M; ++m) {
        const double prev = a[m - 2], cur = a[m - 1];
        if (!(cur * cur >= (P + 1.0) * prev * prev)) {
            std::ostringstream msg;
            msg << "a_m^2/a_{m-1}^2 >= P+1 (m=" << m << ")";
            return {false, msg.str()};
        }
    }
    return {true, ""};
}

RateBound wsfd_outer_strong(double P, int M) {
    if (!(P >= 0)) throw std::invalid_argument("power must be non-negative");
    if (M < 2) throw std::invalid_argument("receiver count must be >= 2");
    return make_bound(lg(1.0 + P) / (2.0 * M) + 0.5 * lg(static_cast<double>(M)) + 2.0, "strong");
}

RateBound wsfd_inner_timeshare(double P, int M) {
    if (!(P >= 0)) throw std::invalid_argument("power must be non-negative");
    if (M < 1) throw std::invalid_argument("receiver count must be >= 1");
    return make_bound(lg(1.0 + P) / (2.0 * M), "timeshare");
}

ConditionCheck strong_fading_check_v2(double P, double c2, const FadingVector& a, double gamma) {
    const int M = a.size();
    if (M < 2) throw std::invalid_argument("strong_fading_check_v2: needs M >= 2");
    if (!(gamma > 0)) throw std::invalid_argument("strong_fading_check_v2: gamma must be positive");
    std::vector<double> delta(static_cast<std::size_t>(M), 0.0);  // delta[m-1] = a_m - a_1
    for (int m = 2; m <= M; ++m) delta[m - 1] = a[m - 1] - a[0];

    if (!(c2 * delta[1] * delta[1] > std::max(P + 1.0, a[1] * a[1]))) {
        return {false, "c2*Delta_2^2 > max{P+1, a2^2}"};
    }
    for (int i = 3; i <= M; ++i) {
        if (!(c2 * delta[i - 1] * delta[i - 1] > 1.0)) {
            std::ostringstream msg;
            msg << "c2*Delta_i^2 > 1 (i=" << i << ")";
            return {false, msg.str()};
        }
    }
    double partial = 0.0;  // sum_{i=2..m-1} Delta_i^2
    for (int m = 3; m <= M; ++m) {
        partial += delta[m - 2] * delta[m - 2];
        if (!(partial >= gamma * a[m - 1] * a[m - 1])) {
            std::ostringstream msg;
            msg << "sum Delta_i^2 >= gamma*a_m^2 (m=" << m << ")";
            return {false, msg.str()};
        }
        if (!(delta[m - 1] * delta[m - 1] >= gamma * P * partial)) {
            std::ostringstream msg;
            msg << "Delta_m^2 >= gamma*P*sum Delta_i^2 (m=" << m << ")";
            return {false, msg.str()};
        }
    }
    return {true, ""};
}

RateBound wsfd_outer_strong_v2(double P, int M, double gamma) {
    if (!(gamma > 0)) throw std::invalid_argument("gamma must be positive");
    if (M < 2) throw std::invalid_argument("receiver count must be >= 2");
    const double v =
        lg(1.0 + P) / (2.0 * M) + 0.5 * lg(static_cast<double>(M)) + 0.5 * lg(gamma) + 2.0;
    return make_bound(v, "strong-v2");
}

RateBound wffd_outer_antipodal(double P, double c2) {
    check_pc(P, c2);
    if (c2 <= 1.0) return make_bound(0.5 * lg(P + 1.0), "low");
    if (c2 < P + 1.0) {
        return make_bound(0.5 * lg(P + c2 + 1.0) - 0.25 * lg(c2 + 1.0) + 1.5, "mid");
    }
    return make_bound(0.25 * lg(P + 1.0) + 2.0, "high");
}

}  // namespace ccdp
