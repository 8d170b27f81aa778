#include "ccdp/lindet.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ccdp {

namespace {

int bit_count(double amplitude) {
    if (amplitude <= 1.0) return 0;
    return static_cast<int>(std::ceil(std::log2(amplitude)));
}

}  // namespace

LinDetSpec lindet_params(double P, double c2, const FadingVector& a) {
    if (!(P > 0)) throw std::invalid_argument("lindet_params: power must be positive");
    if (!(c2 >= 0)) throw std::invalid_argument("lindet_params: c2 must be non-negative");
    LinDetSpec spec;
    spec.power = P;
    spec.c = std::sqrt(c2);
    spec.a = a.values();
    spec.n_p = std::max(0, static_cast<int>(std::ceil(std::log2(P))));
    spec.k = spec.n_p;
    for (double am : spec.a) {
        const int na = bit_count(std::abs(spec.c * am));
        spec.n_a.push_back(na);
        spec.k = std::max(spec.k, na);
    }
    return spec;
}

BitVector lindet_output(const BitVector& x, const BitVector& s, const LinDetSpec& spec,
                        int receiver) {
    if (receiver < 1 || receiver > static_cast<int>(spec.n_a.size())) {
        throw std::invalid_argument("lindet_output: receiver index out of range");
    }
    const int k = spec.k;
    if (static_cast<int>(x.size()) != k || static_cast<int>(s.size()) != k) {
        throw std::invalid_argument("lindet_output: bit vectors must have length k");
    }
    // Down-shift by k - n keeps the n most significant bits, moved to the bottom.
    const int sx = k - spec.n_p;
    const int ss = k - spec.n_a[static_cast<std::size_t>(receiver - 1)];
    BitVector y(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
        const std::uint8_t xb = (i - sx >= 0) ? x[static_cast<std::size_t>(i - sx)] : 0;
        const std::uint8_t sb = (i - ss >= 0) ? s[static_cast<std::size_t>(i - ss)] : 0;
        y[static_cast<std::size_t>(i)] = xb ^ sb;
    }
    return y;
}

OverlapReport lindet_overlap(const LinDetSpec& spec) {
    OverlapReport report;
    const double input_level = 0.5 * std::log2(1.0 + spec.power);
    for (double am : spec.a) {
        const double amp = std::abs(spec.c * am);
        BitWindow w;
        if (amp > 1.0) {
            const double state_level = std::log2(amp);
            w.empty = false;
            w.lo = std::max(0.0, state_level - input_level);
            w.hi = state_level;
        }
        report.windows.push_back(w);
    }
    // Windows live on the shared state-significance axis; [lo, hi) half-open.
    for (std::size_t i = 0; i < report.windows.size() && report.pairwise_disjoint; ++i) {
        if (report.windows[i].empty) continue;
        for (std::size_t j = i + 1; j < report.windows.size(); ++j) {
            const auto& wi = report.windows[i];
            const auto& wj = report.windows[j];
            if (wj.empty) continue;
            if (wi.lo < wj.hi && wj.lo < wi.hi) {
                report.pairwise_disjoint = false;
                break;
            }
        }
    }
    return report;
}

void lindet_diagram(const LinDetSpec& spec, std::ostream& os) {
    const int M = static_cast<int>(spec.n_a.size());
    os << "level";
    for (int m = 1; m <= M; ++m) os << "  rx" << m;
    os << '\n';
    for (int level = spec.k; level >= 1; --level) {
        os << (level < 10 ? "    " : "   ") << level;
        for (int m = 0; m < M; ++m) {
            const bool in = level <= spec.n_p;
            const bool st = level <= spec.n_a[static_cast<std::size_t>(m)];
            const char mark = in && st ? '#' : (in ? 'x' : (st ? 's' : '.'));
            os << "    " << mark;
        }
        os << '\n';
    }
}

}  // namespace ccdp
