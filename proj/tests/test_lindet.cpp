#include <doctest.h>

#include <random>
#include <sstream>

#include "ccdp/lindet.hpp"

using namespace ccdp;

namespace {

// Matrix form of the shifted XOR, kept as the fidelity reference for the
// slicing implementation: D_ij = delta_{i-1,j}, Y = D^(k-n_p) x + D^(k-n_a) s.
BitVector matrix_output(const BitVector& x, const BitVector& s, const LinDetSpec& spec, int m) {
    const int k = spec.k;
    std::vector<std::vector<int>> d(k, std::vector<int>(k, 0));
    for (int i = 1; i < k; ++i) d[i][i - 1] = 1;
    const auto mat_pow_vec = [&](int t, const BitVector& v) {
        std::vector<int> cur(v.begin(), v.end());
        for (int rep = 0; rep < t; ++rep) {
            std::vector<int> nxt(k, 0);
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) nxt[i] ^= d[i][j] & cur[j];
            }
            cur = nxt;
        }
        return cur;
    };
    const auto xs = mat_pow_vec(k - spec.n_p, x);
    const auto ss = mat_pow_vec(k - spec.n_a[m - 1], s);
    BitVector y(k);
    for (int i = 0; i < k; ++i) y[i] = static_cast<std::uint8_t>(xs[i] ^ ss[i]);
    return y;
}

BitVector random_bits(std::mt19937_64& rng, int k) {
    BitVector v(k);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng() & 1);
    return v;
}

BitVector xor_bits(const BitVector& a, const BitVector& b) {
    BitVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

}  // namespace

TEST_CASE("bit-count parameters") {
    FadingVector a({1.0});
    CHECK(lindet_params(8, 1, a).n_p == 3);
    CHECK(lindet_params(5, 1, a).n_p == 3);
    CHECK(lindet_params(0.5, 1, a).n_p == 0);

    // c * a_m = 8 -> 3 state bits; at or below the noise floor -> 0.
    LinDetSpec s = lindet_params(3, 16, FadingVector({0.0, 1.0, 2.0}));
    CHECK(s.n_p == 2);
    CHECK(s.n_a == std::vector<int>{0, 2, 3});
    CHECK(s.k == 3);

    // Sign is lost in the approximation.
    LinDetSpec neg = lindet_params(3, 4, FadingVector({-2.0, 1.0}));
    CHECK(neg.n_a == std::vector<int>{2, 1});
}

TEST_CASE("shifted XOR output") {
    LinDetSpec spec;
    spec.n_p = 2;
    spec.n_a = {3};
    spec.k = 3;
    spec.power = 3.0;
    spec.c = 4.0;
    spec.a = {2.0};
    CHECK(lindet_output({1, 0, 1}, {1, 1, 0}, spec, 1) == BitVector{1, 0, 0});

    // Full input span with erased state: the input passes through.
    LinDetSpec pass;
    pass.n_p = 3;
    pass.n_a = {0};
    pass.k = 3;
    CHECK(lindet_output({1, 0, 1}, {1, 1, 1}, pass, 1) == BitVector{1, 0, 1});

    // Zero input leaves the shifted state alone.
    CHECK(lindet_output({0, 0, 0}, {1, 1, 0}, spec, 1) == BitVector{1, 1, 0});

    CHECK_THROWS_AS(lindet_output({1, 0}, {1, 1, 0}, spec, 1), std::invalid_argument);
    CHECK_THROWS_AS(lindet_output({1, 0, 1}, {1, 1, 0}, spec, 2), std::invalid_argument);
}

TEST_CASE("slicing implementation matches the shift-matrix form") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        LinDetSpec spec = lindet_params(1.0 + (rng() % 1000), 1.0 + (rng() % 64),
                                        FadingVector({0.5, 1.0 + (rng() % 8) * 0.5}));
        if (spec.k == 0) continue;
        const BitVector x = random_bits(rng, spec.k);
        const BitVector s = random_bits(rng, spec.k);
        for (int m = 1; m <= 2; ++m) {
            CHECK(lindet_output(x, s, spec, m) == matrix_output(x, s, spec, m));
        }
    }
}

TEST_CASE("output is linear over GF(2)") {
    std::mt19937_64 rng(7);
    LinDetSpec spec = lindet_params(37, 25, FadingVector({0.0, 1.0, 3.0}));
    REQUIRE(spec.k > 0);
    for (int trial = 0; trial < 200; ++trial) {
        const BitVector x1 = random_bits(rng, spec.k), x2 = random_bits(rng, spec.k);
        const BitVector s1 = random_bits(rng, spec.k), s2 = random_bits(rng, spec.k);
        for (int m = 1; m <= 3; ++m) {
            const BitVector lhs = lindet_output(xor_bits(x1, x2), xor_bits(s1, s2), spec, m);
            const BitVector rhs =
                xor_bits(lindet_output(x1, s1, spec, m), lindet_output(x2, s2, spec, m));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("collision windows and disjointness") {
    // Single receiver: trivially disjoint.
    CHECK(lindet_overlap(lindet_params(3, 16, FadingVector({1.0}))).pairwise_disjoint);

    // Strong-fading spec: the per-receiver windows separate.
    const OverlapReport good = lindet_overlap(lindet_params(3, 16, FadingVector({0, 1, 2})));
    CHECK(good.pairwise_disjoint);
    CHECK(good.windows[0].empty);
    CHECK_FALSE(good.windows[1].empty);
    CHECK_FALSE(good.windows[2].empty);

    // Nearby scalings collide on shared state bits.
    const OverlapReport bad = lindet_overlap(lindet_params(3, 16, FadingVector({0, 1, 1.1})));
    CHECK_FALSE(bad.pairwise_disjoint);
}

TEST_CASE("strong fading implies disjoint collision windows") {
    // Implication only; the approximation is illustrative and the converse is
    // not claimed.
    std::mt19937_64 rng(2025);
    const auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    int tested = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int M = 2 + static_cast<int>(rng() % 4);
        const double P = uniform(1.0, 200.0);
        const double c2 = uniform(0.5, 100.0);
        std::vector<double> a{0.0};
        double cur = std::sqrt((P + 1.0) / c2) * (1.0 + uniform(0.01, 2.0));
        a.push_back(cur);
        for (int m = 3; m <= M; ++m) {
            cur *= std::sqrt(P + 1.0) * (1.0 + uniform(0.0, 1.0));
            a.push_back(cur);
        }
        FadingVector fv(a);
        if (!strong_fading_check(P, c2, fv).pass) continue;
        ++tested;
        CHECK(lindet_overlap(lindet_params(P, c2, fv)).pairwise_disjoint);
    }
    CHECK(tested > 100);
}

TEST_CASE("diagram layout") {
    std::ostringstream os;
    lindet_diagram(lindet_params(3, 16, FadingVector({0, 1, 2})), os);
    const std::string out = os.str();
    CHECK(out == "level  rx1  rx2  rx3\n"
                 "    3    .    .    s\n"
                 "    2    x    #    #\n"
                 "    1    x    #    #\n");
}
