#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "ccdp/bounds_wsfd.hpp"

namespace ccdp {

/// Named parameter axes for the sweep engine. The rho axis is per-M when left
/// empty: 17 points spanning [-1/(M-1), 1] plus rho = 0. Iteration order is
/// fixed (M, then rho/Q, then P, then c2, then a), so reports are byte-stable.
struct SweepGrid {
    std::vector<double> P;
    std::vector<double> c2;
    std::vector<double> a;
    std::vector<double> rho;  // empty -> per-M default
    std::vector<double> Q;
    std::vector<int> M;

    static SweepGrid defaults();
    static std::vector<double> default_rho_axis(int M);
    std::string describe() const;
};

/// Parses plain-text grid files, one axis per line:
///   P = log 0.5 1048576 43
///   a = list -1 1 2
/// Scales are `log`, `lin`, or `list`. Unset axes keep their defaults.
/// Syntax errors carry the line number.
SweepGrid parse_grid_file(const std::string& path);

constexpr double kGapSlack = 1e-9;

struct GapRecord {
    std::string theorem;
    double P = std::numeric_limits<double>::quiet_NaN();
    double c2 = std::numeric_limits<double>::quiet_NaN();
    double a = std::numeric_limits<double>::quiet_NaN();
    double rho = std::numeric_limits<double>::quiet_NaN();
    double Q = std::numeric_limits<double>::quiet_NaN();
    int M = 0;
    double inner = 0.0;
    double outer = 0.0;
    double gap = 0.0;
    std::string branch_in;
    std::string branch_out;
    std::string scheme;
    bool asserted = true;  // false: recorded only (outside the claimed regime)
};

/// Per-claim sweep result. `records` carry the canonical bound pair (gaps the
/// claim is asserted on, except where `asserted` is cleared); `reference`
/// carries printed-form evaluations, recorded but never gating.
struct GapReport {
    std::string theorem;
    std::string grid_desc;
    double threshold = 0.0;
    std::vector<GapRecord> records;
    std::vector<GapRecord> reference;
    std::vector<std::string> flags;
    double max_gap = 0.0;
    std::size_t argmax_index = 0;
    bool pass = false;

    const GapRecord* argmax() const {
        return records.empty() ? nullptr : &records[argmax_index];
    }
};

/// 2-receiver independent-states claim, threshold 1.
GapReport gap_sweep_wrdp2(const SweepGrid& grid);

/// M-receiver independent-states claim against the canonical outer form,
/// threshold 2.25; printed-form gaps are recorded in `reference` and any
/// printed-form excess is flagged.
GapReport gap_sweep_wrdpM(const SweepGrid& grid);

/// 2-receiver scaled-states claim: derivation outer vs scheme portfolio,
/// threshold 4; printed four-branch form recorded in `reference`.
GapReport gap_sweep_wsfd2(const SweepGrid& grid);

struct StrongSpecCase {
    double P = 0.0;
    double c2 = 0.0;
    FadingVector a;
    double gamma = 1.0;
    bool v2 = false;
};

/// Strong-fading claim: each case must pass its condition check (a failing
/// case is rejected naming the violated condition). The gap equals
/// 1/2 lg(M) + 2 (+ 1/2 lg(gamma) for the general conditions) identically;
/// pass requires the identity to 1e-12 at every case.
GapReport gap_sweep_strong(const std::vector<StrongSpecCase>& cases);

/// Generates `count` random strong-fading cases (plain conditions), plus
/// `count` general-condition cases with gamma sampled in [0.5, 4].
std::vector<StrongSpecCase> generate_strong_cases(int count, std::uint64_t seed);

/// Equi-correlated claims at 2 receivers (threshold 1) and M receivers
/// (threshold 2.25), canonical substitution asserted, printed recorded.
GapReport gap_sweep_ccdpes2(const SweepGrid& grid);
GapReport gap_sweep_ccdpesM(const SweepGrid& grid);

/// Unequal-variance claim, threshold 2 asserted only where
/// c2 sqrt(Q) >= P + 1; other points recorded with `asserted` cleared.
GapReport gap_sweep_ccdp_uneq(const SweepGrid& grid);

struct ConsistencyReport {
    std::string model;
    std::size_t points = 0;
    std::vector<std::string> violations;
    bool pass = false;
};

/// Asserts inner <= outer + 1e-9 for the canonical pairing of the given model
/// ("wrdp2", "wrdpM", "wsfd2", "ccdp-es-2", "ccdp-es-M", "ccdp-uneq") at every
/// grid point. swap_selftest swaps the two sides to prove the check can fail.
ConsistencyReport consistency_sweep(const SweepGrid& grid, const std::string& model,
                                    bool swap_selftest = false);

struct ZScore {
    std::string name;
    double z = 0.0;
};

struct LemmaValidationReport {
    std::vector<ZScore> reduction_z;   // generalized-channel round trip
    std::vector<ZScore> split_z;       // state-gain split equivalence
    std::size_t sandwich_points = 0;   // outer(at reduced gain) >= inner(at c)
    std::vector<std::string> sandwich_violations;
    double max_abs_z = 0.0;
    bool pass = false;
};

/// Monte Carlo validation of the channel reductions at sample size n:
/// (i) generalized-channel normalization round trip, (ii) the genie split
/// Y_m - c S_2,m matching the reduced-gain channel, (iii) the capacity
/// sandwich outer(c sqrt(gamma)) >= inner(c) across a parameter grid.
LemmaValidationReport lemma_validation(std::uint64_t seed, int n);

void emit_csv(const GapReport& report, std::ostream& os);
void emit_json(const GapReport& report, std::ostream& os);
GapReport parse_report_json(std::istream& is);

/// Number formatting used everywhere a value is printed: 10 significant
/// digits, byte-stable.
std::string format_number(double v);

/// Runs fn(i) for i in [0, n) across worker threads (capped by the
/// CCDP_THREADS environment variable); results must be written to
/// pre-allocated slots so the output is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ccdp
