#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ccdp/bounds_wsfd.hpp"

namespace ccdp {

/// Bit-level parameters of the binary deterministic approximation:
/// n_p = ceil(lg P) input bits, n_a[m] = ceil(lg(c a_m)) state bits per
/// receiver (0 when c a_m <= 1, the state sits below the noise floor),
/// k = max of all counts. The continuous amplitudes are retained for the
/// real-valued overlap analysis; the sign of a_m is lost (|c a_m| is used).
struct LinDetSpec {
    int n_p = 0;
    std::vector<int> n_a;
    int k = 0;
    double power = 0.0;
    double c = 0.0;
    std::vector<double> a;
};

LinDetSpec lindet_params(double P, double c2, const FadingVector& a);

/// Bits ordered most significant first, length k.
using BitVector = std::vector<std::uint8_t>;

/// Y = D^(k - n_p) x  XOR  D^(k - n_a[m]) s over GF(2), with D the down-shift
/// matrix D_ij = delta_{i-1,j}; implemented by index slicing.
BitVector lindet_output(const BitVector& x, const BitVector& s, const LinDetSpec& spec,
                        int receiver);

/// Depth window (measured downward from the state's most significant visible
/// bit, real-valued, half-open [lo, hi)) of the state bits that collide with
/// input bits at one receiver. Empty when the state is below the noise floor.
struct BitWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
};

struct OverlapReport {
    std::vector<BitWindow> windows;
    bool pairwise_disjoint = true;
};

/// Collision windows per receiver and whether they are pairwise disjoint
/// across receivers. The input occupies 1/2 lg(1+P) amplitude levels above the
/// noise floor; receiver m's visible state spans lg(|c a_m|) levels.
OverlapReport lindet_overlap(const LinDetSpec& spec);

/// Plain-text column diagram: one column per receiver, rows are bit levels
/// from k down to 1; 'x' input bit, 's' state bit, '#' collision, '.' empty.
void lindet_diagram(const LinDetSpec& spec, std::ostream& os);

}  // namespace ccdp
