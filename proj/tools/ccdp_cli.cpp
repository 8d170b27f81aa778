#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ccdp/bounds_ccdp_es.hpp"
#include "ccdp/bounds_wrdp.hpp"
#include "ccdp/bounds_wsfd.hpp"
#include "ccdp/gaussian_oracle.hpp"
#include "ccdp/harness.hpp"
#include "ccdp/lindet.hpp"

namespace {

using namespace ccdp;

// Exit codes: 0 all claims hold, 1 canonical claim violated, 2 usage or
// precondition error.
constexpr int kExitPass = 0;
constexpr int kExitClaimViolated = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string model;
    double P = 0.0;
    double c2 = 0.0;
    int M = 2;
    std::vector<double> a;
    double rho = 0.0;
    double Q = 1.0;
    double gamma = 1.0;
    std::string grid_file;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 1;
    int samples = 100000;
    int count = 100;
    bool printed = false;
    double threshold_override = -1.0;
};

std::string jstr(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

void emit_kv(std::ostream& os, std::initializer_list<std::pair<std::string, std::string>> kv) {
    os << "{";
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) os << ",";
        first = false;
        os << jstr(k) << ":" << v;
    }
    os << "}\n";
}

double wsfd_scalar_a(const Options& opt) {
    if (opt.a.empty()) throw std::invalid_argument("--a is required for the wsfd model");
    if (opt.a.size() == 1) return opt.a[0];  // a single value means a = [1, value]
    if (opt.a.size() == 2 && opt.a[0] == 1.0) return opt.a[1];
    throw std::invalid_argument("the 2-receiver wsfd bounds take --a <value> (receiver 1 has a=1)");
}

int cmd_bounds(const Options& opt) {
    std::ostringstream os;
    if (opt.model == "wrdp") {
        if (opt.M == 2) {
            const RateBound in = wrdp_inner_2(opt.P, opt.c2);
            const RateBound out = wrdp_outer_2(opt.P, opt.c2);
            emit_kv(std::cout, {{"model", jstr("wrdp")},
                                {"P", format_number(opt.P)},
                                {"c2", format_number(opt.c2)},
                                {"M", "2"},
                                {"inner", format_number(in.value)},
                                {"outer", format_number(out.value)},
                                {"gap", format_number(out.value - in.value)},
                                {"branch_in", jstr(in.branch)},
                                {"branch_out", jstr(out.branch)}});
        } else {
            const RateBound in = wrdp_inner_M(opt.P, opt.c2, opt.M);
            const RateBound canon = wrdp_outer_M(opt.P, opt.c2, opt.M, Form::canonical);
            const RateBound printed = wrdp_outer_M(opt.P, opt.c2, opt.M, Form::printed);
            emit_kv(std::cout, {{"model", jstr("wrdp")},
                                {"P", format_number(opt.P)},
                                {"c2", format_number(opt.c2)},
                                {"M", std::to_string(opt.M)},
                                {"inner", format_number(in.value)},
                                {"outer", format_number(canon.value)},
                                {"outer_printed", format_number(printed.value)},
                                {"gap", format_number(canon.value - in.value)},
                                {"branch_in", jstr(in.branch)},
                                {"branch_out", jstr(canon.branch)}});
        }
    } else if (opt.model == "wsfd") {
        const double a = wsfd_scalar_a(opt);
        const PortfolioRate in = wsfd_inner_2(opt.P, opt.c2, a);
        const RateBound raw = wsfd_outer_raw_2(opt.P, opt.c2, a);
        const RateBound printed = wsfd_outer_2(opt.P, opt.c2, a);
        emit_kv(std::cout, {{"model", jstr("wsfd")},
                            {"P", format_number(opt.P)},
                            {"c2", format_number(opt.c2)},
                            {"a", format_number(a)},
                            {"inner", format_number(in.value)},
                            {"outer", format_number(printed.value)},
                            {"outer_canonical", format_number(raw.value)},
                            {"gap", format_number(printed.value - in.value)},
                            {"gap_canonical", format_number(raw.value - in.value)},
                            {"scheme", jstr(in.scheme)},
                            {"branch_out", jstr(printed.branch)}});
    } else if (opt.model == "ccdp-es") {
        if (opt.M == 2) {
            const RateBound in = ccdpes_inner_2(opt.P, opt.c2, opt.rho);
            const RateBound canon = ccdpes_outer_2(opt.P, opt.c2, opt.rho, Form::canonical);
            const RateBound printed = ccdpes_outer_2(opt.P, opt.c2, opt.rho, Form::printed);
            emit_kv(std::cout, {{"model", jstr("ccdp-es")},
                                {"P", format_number(opt.P)},
                                {"c2", format_number(opt.c2)},
                                {"rho", format_number(opt.rho)},
                                {"M", "2"},
                                {"inner", format_number(in.value)},
                                {"outer", format_number(canon.value)},
                                {"outer_printed", format_number(printed.value)},
                                {"gap", format_number(canon.value - in.value)},
                                {"branch_in", jstr(in.branch)},
                                {"branch_out", jstr(canon.branch)}});
        } else {
            const RateBound in = ccdpes_inner_M(opt.P, opt.c2, opt.rho, opt.M);
            const RateBound canon = ccdpes_outer_M(opt.P, opt.c2, opt.rho, opt.M, Form::canonical);
            const RateBound printed = ccdpes_outer_M(opt.P, opt.c2, opt.rho, opt.M, Form::printed);
            emit_kv(std::cout, {{"model", jstr("ccdp-es")},
                                {"P", format_number(opt.P)},
                                {"c2", format_number(opt.c2)},
                                {"rho", format_number(opt.rho)},
                                {"M", std::to_string(opt.M)},
                                {"inner", format_number(in.value)},
                                {"outer", format_number(canon.value)},
                                {"outer_printed", format_number(printed.value)},
                                {"gap", format_number(canon.value - in.value)},
                                {"branch_in", jstr(in.branch)},
                                {"branch_out", jstr(canon.branch)}});
        }
    } else if (opt.model == "ccdp-uneq") {
        const RateBound out = ccdp_unequal_outer_2(opt.P, opt.c2, opt.Q);
        const double tan = clamp_rate(0.5 * lg(1.0 + opt.P / (opt.c2 * opt.Q + 1.0)));
        const double ts = 0.25 * lg(1.0 + opt.P);
        emit_kv(std::cout, {{"model", jstr("ccdp-uneq")},
                            {"P", format_number(opt.P)},
                            {"c2", format_number(opt.c2)},
                            {"Q", format_number(opt.Q)},
                            {"inner", format_number(std::max(tan, ts))},
                            {"outer", format_number(out.value)},
                            {"gap", format_number(out.value - std::max(tan, ts))},
                            {"branch_out", jstr(out.branch)}});
    } else if (opt.model == "wffd") {
        const RateBound out = wffd_outer_antipodal(opt.P, opt.c2);
        emit_kv(std::cout, {{"model", jstr("wffd")},
                            {"P", format_number(opt.P)},
                            {"c2", format_number(opt.c2)},
                            {"outer", format_number(out.value)},
                            {"branch_out", jstr(out.branch)}});
    } else if (opt.model == "lapidoth") {
        const RateBound in = lapidoth_inner_2(opt.P, opt.c2);
        const RateBound out = lapidoth_outer_2(opt.P, opt.c2);
        emit_kv(std::cout, {{"model", jstr("lapidoth")},
                            {"P", format_number(opt.P)},
                            {"c2", format_number(opt.c2)},
                            {"inner", format_number(in.value)},
                            {"outer", format_number(out.value)},
                            {"gap", format_number(out.value - in.value)},
                            {"branch_in", jstr(in.branch)},
                            {"branch_out", jstr(out.branch)}});
    } else {
        throw std::invalid_argument("unknown model: " + opt.model);
    }
    return kExitPass;
}

std::vector<GapReport> run_sweeps(const Options& opt, const SweepGrid& grid) {
    std::vector<GapReport> reports;
    if (opt.model == "wrdp" || opt.model == "all") {
        reports.push_back(gap_sweep_wrdp2(grid));
        reports.push_back(gap_sweep_wrdpM(grid));
    }
    if (opt.model == "wsfd" || opt.model == "all") {
        reports.push_back(gap_sweep_wsfd2(grid));
    }
    if (opt.model == "strong" || opt.model == "all") {
        if (!opt.a.empty()) {
            // A spec given on the command line is checked as-is; a failing
            // condition is a precondition error.
            const bool v2 = opt.a[0] != 0.0;
            StrongSpecCase single{opt.P, opt.c2, FadingVector(opt.a), opt.gamma, v2};
            reports.push_back(gap_sweep_strong({single}));
        } else {
            reports.push_back(gap_sweep_strong(generate_strong_cases(opt.count, opt.seed)));
        }
    }
    if (opt.model == "ccdp-es" || opt.model == "all") {
        reports.push_back(gap_sweep_ccdpes2(grid));
        reports.push_back(gap_sweep_ccdpesM(grid));
    }
    if (opt.model == "ccdp-uneq" || opt.model == "all") {
        reports.push_back(gap_sweep_ccdp_uneq(grid));
    }
    if (reports.empty()) throw std::invalid_argument("unknown sweep model: " + opt.model);
    if (opt.threshold_override >= 0.0) {
        for (auto& r : reports) {
            r.threshold = opt.threshold_override;
            r.pass = r.max_gap <= r.threshold + kGapSlack;
        }
    }
    if (!opt.printed) {
        for (auto& r : reports) r.reference.clear();
    }
    return reports;
}

void write_reports(const std::vector<GapReport>& reports, const Options& opt) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!opt.out_path.empty()) {
        file.open(opt.out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output path: " + opt.out_path);
        os = &file;
    }
    if (opt.format == "csv") {
        bool first = true;
        for (const auto& r : reports) {
            if (first) {
                emit_csv(r, *os);
                first = false;
            } else {  // skip repeated header
                std::ostringstream tmp;
                emit_csv(r, tmp);
                const std::string s = tmp.str();
                (*os) << s.substr(s.find('\n') + 1);
            }
        }
    } else if (opt.format == "json") {
        (*os) << "[";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i) (*os) << ",";
            emit_json(reports[i], *os);
        }
        (*os) << "]\n";
    } else {
        throw std::invalid_argument("unknown format: " + opt.format);
    }
}

int cmd_sweep(const Options& opt, bool gate) {
    SweepGrid grid =
        opt.grid_file.empty() ? SweepGrid::defaults() : parse_grid_file(opt.grid_file);
    const std::vector<GapReport> reports = run_sweeps(opt, grid);
    write_reports(reports, opt);
    if (!gate) return kExitPass;
    for (const auto& r : reports) {
        if (!r.pass) {
            std::cerr << "claim violated: " << r.theorem << " max gap " << format_number(r.max_gap)
                      << " > threshold " << format_number(r.threshold) << "\n";
            return kExitClaimViolated;
        }
    }
    return kExitPass;
}

int cmd_oracle(const Options& opt) {
    if (opt.model == "wsfd") {
        const double a = wsfd_scalar_a(opt);
        std::vector<double> alpha_grid = rcr_alpha_grid(64);
        alpha_grid.push_back(1.0);
        std::vector<double> k_grid;
        for (int i = 0; i <= 256; ++i) k_grid.push_back(-0.5 + 2.5 * i / 256.0);
        k_grid.push_back(costa_coefficient(opt.P));
        const OracleBest best = optimize_inner_2wsfd(opt.P, opt.c2, a, alpha_grid, k_grid);
        emit_kv(std::cout, {{"model", jstr("wsfd")},
                            {"P", format_number(opt.P)},
                            {"c2", format_number(opt.c2)},
                            {"a", format_number(a)},
                            {"rate", format_number(best.rate)},
                            {"alpha", format_number(best.alpha)},
                            {"k", format_number(best.k)}});
        return kExitPass;
    }
    if (opt.model == "wrdp") {
        // Private share scanned on a log grid; the peak sits near c2/P.
        std::vector<double> ab_grid{0.0};
        for (int i = 0; i <= 2048; ++i) ab_grid.push_back(std::pow(10.0, -9.0 + 9.0 * i / 2048.0));
        double best = 0.0, best_alpha = 0.0;
        for (double ab : ab_grid) {
            const double alpha = 1.0 - ab;
            const double v = wrdp_inner_param_M(opt.P, opt.c2, opt.M, alpha).value;
            if (v > best) {
                best = v;
                best_alpha = alpha;
            }
        }
        const double ab_star = wrdp_alpha_star_M(opt.P, opt.c2, opt.M);
        emit_kv(std::cout, {{"model", jstr("wrdp")},
                            {"P", format_number(opt.P)},
                            {"c2", format_number(opt.c2)},
                            {"M", std::to_string(opt.M)},
                            {"rate", format_number(best)},
                            {"alpha", format_number(best_alpha)},
                            {"alpha_bar_star", format_number(ab_star)},
                            {"closed_form", format_number(wrdp_inner_M(opt.P, opt.c2, opt.M).value)}});
        return kExitPass;
    }
    throw std::invalid_argument("oracle supports --model wsfd|wrdp");
}

int cmd_lindet(const Options& opt) {
    if (opt.a.empty()) throw std::invalid_argument("--a is required for lindet");
    const FadingVector a(opt.a);
    const LinDetSpec spec = lindet_params(opt.P, opt.c2, a);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!opt.out_path.empty()) {
        file.open(opt.out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output path: " + opt.out_path);
        os = &file;
    }
    lindet_diagram(spec, *os);
    const OverlapReport overlap = lindet_overlap(spec);
    (*os) << "collision windows:";
    for (std::size_t m = 0; m < overlap.windows.size(); ++m) {
        const auto& w = overlap.windows[m];
        (*os) << " rx" << m + 1 << "=";
        if (w.empty) (*os) << "[]";
        else (*os) << "[" << format_number(w.lo) << "," << format_number(w.hi) << ")";
    }
    (*os) << "\ndisjoint: " << (overlap.pairwise_disjoint ? "yes" : "no") << "\n";
    if (opt.a[0] == 0.0) {
        const ConditionCheck check = strong_fading_check(opt.P, opt.c2, a);
        (*os) << "strong fading: " << (check.pass ? "PASS" : "FAIL (" + check.violated + ")")
              << "\n";
    } else {
        const ConditionCheck check = strong_fading_check_v2(opt.P, opt.c2, a, opt.gamma);
        (*os) << "strong fading (general, gamma=" << format_number(opt.gamma)
              << "): " << (check.pass ? "PASS" : "FAIL (" + check.violated + ")") << "\n";
    }
    return kExitPass;
}

int cmd_simulate(const Options& opt) {
    const LemmaValidationReport report = lemma_validation(opt.seed, opt.samples);
    std::ostringstream zs;
    zs << "[";
    bool first = true;
    for (const auto& z : report.reduction_z) {
        if (!first) zs << ",";
        first = false;
        zs << "{" << jstr("name") << ":" << jstr(z.name) << "," << jstr("z") << ":"
           << format_number(z.z) << "}";
    }
    for (const auto& z : report.split_z) {
        if (!first) zs << ",";
        first = false;
        zs << "{" << jstr("name") << ":" << jstr(z.name) << "," << jstr("z") << ":"
           << format_number(z.z) << "}";
    }
    zs << "]";
    emit_kv(std::cout, {{"seed", std::to_string(opt.seed)},
                        {"n", std::to_string(opt.samples)},
                        {"z_scores", zs.str()},
                        {"max_abs_z", format_number(report.max_abs_z)},
                        {"sandwich_points", std::to_string(report.sandwich_points)},
                        {"pass", report.pass ? "true" : "false"}});
    return report.pass ? kExitPass : kExitClaimViolated;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity-bound laboratory for compound dirty-paper channels"};
    app.require_subcommand(1);

    Options opt;
    const auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--model", opt.model, "wrdp|wsfd|ccdp-es|ccdp-uneq|wffd|lapidoth");
        sub->add_option("--P", opt.P, "input power (linear)");
        sub->add_option("--c2", opt.c2, "squared state gain");
        sub->add_option("--M", opt.M, "receiver count");
        sub->add_option("--a", opt.a, "fading coefficients (comma-separated)")->delimiter(',');
        sub->add_option("--rho", opt.rho, "pairwise state correlation");
        sub->add_option("--Q", opt.Q, "second-state variance (>= 1)");
        sub->add_option("--gamma", opt.gamma, "strong-fading slack parameter");
        sub->add_option("--seed", opt.seed, "RNG seed");
        sub->add_option("--n", opt.samples, "Monte Carlo sample count");
        sub->add_option("--count", opt.count, "generated spec count for strong-fading sweeps");
        sub->add_option("--grid", opt.grid_file, "grid file (axis = log|lin min max points, or list ...)");
        sub->add_option("--out", opt.out_path, "output path (default stdout)");
        sub->add_option("--format", opt.format, "csv|json");
        sub->add_option("--threshold", opt.threshold_override, "override the claim threshold");
        sub->add_flag("--printed", opt.printed, "include printed-form reference records");
    };

    CLI::App* bounds = app.add_subcommand("bounds", "evaluate bounds at one parameter point");
    CLI::App* sweep = app.add_subcommand("sweep", "write a full gap report over a grid");
    CLI::App* gap = app.add_subcommand("gap", "like sweep, and exit 1 on a claim violation");
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force scheme optimization");
    CLI::App* lindet = app.add_subcommand("lindet", "binary deterministic approximation diagram");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo channel-reduction checks");
    for (CLI::App* sub : {bounds, sweep, gap, oracle, lindet, simulate}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(opt);
        if (sweep->parsed()) return cmd_sweep(opt, false);
        if (gap->parsed()) return cmd_sweep(opt, true);
        if (oracle->parsed()) return cmd_oracle(opt);
        if (lindet->parsed()) return cmd_lindet(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
