#pragma once

#include <algorithm>
#include <cmath>
#include <string>

namespace ccdp {

/// A rate value in bits per channel use, tagged with the regime branch that
/// produced it and whether it comes from a printed statement or from the
/// canonical (derivation) form used by the gap verifier.
struct RateBound {
    double value = 0.0;
    std::string branch;
    std::string source = "printed";
};

enum class Form { printed, canonical };

inline double lg(double x) { return std::log2(x); }

/// Achievable rates that come out negative mean the scheme degenerates to
/// rate 0; outer bounds are clamped the same way (0 is always a valid bound).
inline double clamp_rate(double v) { return std::max(0.0, v); }

inline RateBound make_bound(double v, std::string branch, std::string source = "printed") {
    return RateBound{clamp_rate(v), std::move(branch), std::move(source)};
}

}  // namespace ccdp
