#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include "mbonacci/chain.hpp"
#include "mbonacci/frame.hpp"
#include "mbonacci/numbersys.hpp"
#include "mbonacci/spectral.hpp"
#include "mbonacci/substitution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mbonacci::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

/// temp file + rename, so readers never see a partial file.
void write_atomic(const std::string& path, const std::string& payload) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open output file: " + tmp.string());
        f << payload;
        if (!f.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

void emit(const std::optional<std::string>& path, const std::string& payload, std::ostream& out) {
    if (path)
        write_atomic(*path, payload);
    else
        out << payload;
}

int default_digits() {
    if (const char* env = std::getenv("MBONACCI_PRECISION_DIGITS")) {
        const int d = std::atoi(env);
        if (d > 0) return d;
    }
    return 15;
}

PerronData solve_perron(int m) { return perron_root(m, 1e-15, default_digits()); }

Chain chain_window(int m, std::int64_t k_min, std::int64_t k_max) {
    return build_chain(solve_perron(m), k_min, k_max);
}

struct CapGuard {
    std::int64_t cap = 100000000;  // digits of word generation a run may request

    void check(std::int64_t requested, const std::string& what) const {
        if (requested > cap) {
            throw std::domain_error(what + " (" + std::to_string(requested) +
                                    " digits) exceeds safety cap " + std::to_string(cap) +
                                    "; raise --cap to override");
        }
    }
};

Json perron_json(const PerronData& p) {
    Json j;
    j["m"] = p.m;
    j["rho"] = p.rho;
    j["eigenvector"] = p.left_eigenvector;
    j["poly_residual"] = p.poly_residual;
    j["eig_residual"] = p.eig_residual;
    return j;
}

std::string density_csv(const DensityReport& r) {
    std::ostringstream s;
    s << "r,n,ratio\n";
    for (const auto& row : r.samples) {
        s << fmt(row.r) << ',' << row.n << ',' << fmt(row.ratio) << '\n';
    }
    return s.str();
}

Json density_summary(const DensityReport& r) {
    Json j;
    j["m"] = r.m;
    j["closed_form"] = r.closed_form;
    j["lower_bound"] = r.lower_bound;
    j["r_min"] = r.r_min;
    j["r_max"] = r.r_max;
    j["samples"] = r.samples.size();
    return j;
}

std::string gaps_csv(const std::vector<GapReport>& rows) {
    std::ostringstream s;
    s << "N,gamma,gamma_sharp,brute_min,holds\n";
    for (const auto& g : rows) {
        s << g.n_len << ',' << fmt(g.gamma) << ',';
        if (g.m == 2) s << fmt(g.gamma_sharp);
        s << ',' << fmt(g.brute_min) << ',' << (g.holds ? "true" : "false") << '\n';
    }
    return s.str();
}

std::string frame_csv(const FrameReport& r) {
    std::ostringstream s;
    s << "L,K,c1,c2,regime\n";
    for (const auto& row : r.probes) {
        s << fmt(row.interval_length) << ',' << row.k_half << ',' << fmt(row.c1) << ','
          << fmt(row.c2) << ',' << (row.above_threshold ? "above-threshold" : "below-threshold")
          << '\n';
    }
    return s.str();
}

Json frame_json(const FrameReport& r) {
    Json j;
    j["m"] = r.m;
    j["threshold"] = r.threshold;
    Json probes = Json::array();
    for (const auto& row : r.probes) {
        probes.push_back({{"L", row.interval_length},
                          {"K", row.k_half},
                          {"c1", row.c1},
                          {"c2", row.c2},
                          {"regime", row.above_threshold ? "above-threshold" : "below-threshold"}});
    }
    j["probes"] = probes;
    return j;
}

std::vector<double> linear_grid(double lo, double hi, std::int64_t steps) {
    std::vector<double> grid;
    if (steps < 1) return grid;
    if (steps == 1) {
        grid.push_back(lo);
        return grid;
    }
    const double step = (hi - lo) / static_cast<double>(steps - 1);
    for (std::int64_t i = 0; i < steps; ++i) grid.push_back(lo + step * static_cast<double>(i));
    return grid;
}

// ---------------------------------------------------------------------------
// repro: regenerate the headline numbers in one deterministic run.
// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    bool pass = false;
    Json detail;
};

class ReproRun {
public:
    ReproRun(bool fast, bool json_only, std::string outdir)
        : fast_(fast), json_only_(json_only), outdir_(std::move(outdir)) {}

    Json run() {
        perron_checks();
        density_checks();
        tribonacci_example_checks();
        weight_formula_check();
        gap_checks();
        density_scan_check();
        frame_checks();

        Json j;
        j["schema"] = 1;
        j["fast"] = fast_;
        bool all = true;
        Json checks = Json::array();
        for (const auto& c : checks_) {
            Json item;
            item["name"] = c.name;
            item["pass"] = c.pass;
            for (auto& [k, v] : c.detail.items()) item[k] = v;
            checks.push_back(item);
            all = all && c.pass;
        }
        j["pass"] = all;
        j["checks"] = checks;
        j["sections"] = sections_;
        return j;
    }

private:
    void add(std::string name, bool pass, Json detail) {
        checks_.push_back({std::move(name), pass, std::move(detail)});
    }

    void side_file(const std::string& name, const std::string& payload) {
        if (json_only_) return;
        write_atomic((std::filesystem::path(outdir_) / name).string(), payload);
    }

    void perron_checks() {
        const PerronData p2 = solve_perron(2);
        const PerronData p3 = solve_perron(3);
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        add("rho2_matches_golden_ratio", std::abs(p2.rho - golden) < 1e-10,
            {{"observed", p2.rho}, {"expected", golden}, {"tolerance", 1e-10}});
        add("rho3_five_decimals", std::abs(p3.rho - 1.83929) < 5e-6,
            {{"observed", p3.rho}, {"expected", 1.83929}, {"tolerance", 5e-6}});
        sections_["perron"] = {{"rho_2", p2.rho}, {"rho_3", p3.rho}};

        bool bracket = true, monotone = true;
        double prev = 0.0;
        for (int m = 2; m <= 30; ++m) {
            const PerronData p = solve_perron(m);
            const double lo = 2.0 * (1.0 - std::ldexp(1.0, -m));
            bracket = bracket && p.rho > lo && p.rho < 2.0;
            monotone = monotone && p.rho > prev;
            prev = p.rho;
        }
        add("rho_bracketed_and_increasing_m2_30", bracket && monotone,
            {{"bracket", bracket}, {"monotone", monotone}});

        double worst_eig = 0.0, worst_sum = 0.0;
        for (int m = 2; m <= 12; ++m) {
            const PerronData p = solve_perron(m);
            worst_eig = std::max(worst_eig, verify_left_eigenvector(p));
            worst_sum = std::max(worst_sum, unit_sum_residual(p));
        }
        add("left_eigenvector_residual_m2_12", worst_eig < 1e-10,
            {{"observed", worst_eig}, {"tolerance", 1e-10}});
        add("eigenvector_unit_sum_m2_12", worst_sum < 1e-12,
            {{"observed", worst_sum}, {"tolerance", 1e-12}});
    }

    void density_checks() {
        const PerronData p2 = solve_perron(2);
        const double d2 = upper_density_closed_form(p2);
        add("density2_closed_form_five_decimals", std::abs(d2 - 1.89443) < 5e-6,
            {{"observed", d2}, {"expected", 1.89443}, {"tolerance", 5e-6}});
        add("density2_lower_bound_exact", density_lower_bound(2) == 1.25,
            {{"observed", density_lower_bound(2)}, {"expected", 1.25}});
        // The refined bound is quoted as 81/52 (the printed decimal is malformed).
        add("density2_refined_bound_consistent", d2 >= 81.0 / 52.0,
            {{"observed", d2}, {"refined_bound", 81.0 / 52.0}});

        bool monotone = true;
        double prev = 0.0;
        for (int m = 2; m <= 30; ++m) {
            const double d = upper_density_closed_form(solve_perron(m));
            monotone = monotone && d > prev && d < 3.0 && d >= density_lower_bound(m);
            prev = d;
        }
        add("density_monotone_below_three_m2_30", monotone && prev > 2.99,
            {{"density_m30", prev}, {"floor_m30", 2.99}});
    }

    void tribonacci_example_checks() {
        const TribExpansion e = trib_expand(10);
        add("trib_expansion_n10", e.L == 6 && e.bit_string() == "1101",
            {{"L", e.L}, {"bits", e.bit_string()}, {"expected_bits", "1101"}});

        const auto w1 = tribonacci_subword_weights(10, 1);
        const auto w2 = tribonacci_subword_weights(10, 2);
        const auto w3 = tribonacci_subword_weights(10, 3);
        add("trib_weights_n10",
            w1.prefix_exact == 6 && w2.prefix_exact == 3 && w3.prefix_exact == 1,
            {{"observed", {w1.prefix_exact, w2.prefix_exact, w3.prefix_exact}},
             {"expected", {6, 3, 1}}});

        const Word prefix = iterate_until_length(3, 10);
        std::string first10;
        for (int i = 0; i < 10; ++i) first10.push_back(static_cast<char>('0' + prefix.digit(i)));
        add("trib_prefix_n10", first10 == "1213121121",
            {{"observed", first10}, {"expected", "1213121121"}});
        sections_["tribonacci_n10"] = {{"n", 10},
                                       {"L", e.L},
                                       {"bits", e.bit_string()},
                                       {"weights", {w1.prefix_exact, w2.prefix_exact,
                                                    w3.prefix_exact}},
                                       {"prefix", first10}};
    }

    void weight_formula_check() {
        const std::int64_t n_max = fast_ ? 1000 : 5000;
        const Word prefix = iterate_until_length(3, n_max);
        std::int64_t counts[3] = {0, 0, 0};
        bool exact = true;
        for (std::int64_t n = 1; n <= n_max && exact; ++n) {
            counts[prefix.digit(n - 1) - 1] += 1;
            for (int j = 1; j <= 3; ++j) {
                exact = exact && tribonacci_subword_weights(n, j).prefix_exact == counts[j - 1];
            }
        }
        add("trib_prefix_weight_formula_exact", exact, {{"n_max", n_max}});
    }

    void gap_checks() {
        const std::int64_t k_range = fast_ ? 10000 : 100000;
        const std::int64_t n_max = 50;
        for (int m : {2, 3}) {
            const Chain chain = chain_window(m, -k_range, k_range + n_max);
            std::vector<GapReport> rows;
            bool all = true;
            double min_margin = std::numeric_limits<double>::infinity();
            for (std::int64_t n = 1; n <= n_max; ++n) {
                GapReport g = verify_gap_condition(chain, n, -k_range, k_range);
                all = all && g.holds;
                const double bound = m == 2 ? std::max(g.gamma, g.gamma_sharp) : g.gamma;
                min_margin = std::min(min_margin, g.brute_min - bound);
                rows.push_back(std::move(g));
            }
            add("gap_conditions_hold_m" + std::to_string(m), all,
                {{"n_max", n_max}, {"k_range", k_range}, {"min_margin", min_margin}});
            Json table = Json::array();
            for (const auto& g : rows) {
                Json row = {{"N", g.n_len}, {"gamma", g.gamma}, {"brute_min", g.brute_min},
                            {"holds", g.holds}};
                if (m == 2) row["gamma_sharp"] = g.gamma_sharp;
                table.push_back(row);
            }
            sections_["gaps_m" + std::to_string(m)] = table;
            side_file("repro_gaps_m" + std::to_string(m) + ".csv", gaps_csv(rows));

            if (m == 2) {
                const double inv_phi2 = 1.0 / (chain.perron().rho * chain.perron().rho);
                const double b1 = rows[0].brute_min;
                const double b2 = rows[1].brute_min;
                add("gap_small_n_exact_m2",
                    std::abs(b1 - inv_phi2) < 1e-10 && std::abs(b2 - 0.5) < 1e-10,
                    {{"min_n1", b1}, {"expected_n1", inv_phi2}, {"min_n2", b2},
                     {"expected_n2", 0.5}});
            }
        }
    }

    void density_scan_check() {
        const std::int64_t points = fast_ ? 5000 : 20000;
        const double r_max = fast_ ? 300.0 : 500.0;
        const Chain chain = chain_window(2, 0, points);
        const DensityReport rep = density_scan(chain, 250.0, r_max, 5.0);
        bool ok = true;
        double worst = 0.0;
        for (const auto& s : rep.samples) {
            const double rel = std::abs(s.ratio - 1.89443) / 1.89443;
            worst = std::max(worst, rel);
            ok = ok && rel < 0.02;
        }
        add("density_scan_within_2pct", ok,
            {{"r_min", 250.0}, {"r_max", r_max}, {"worst_relative_error", worst},
             {"tolerance", 0.02}});
        sections_["density"] = density_summary(rep);
        side_file("repro_density.csv", density_csv(rep));
    }

    void frame_checks() {
        const std::vector<std::int64_t> ks =
            fast_ ? std::vector<std::int64_t>{10, 40} : std::vector<std::int64_t>{10, 20, 40, 80};
        const Chain chain = chain_window(2, -ks.back(), ks.back());
        const double threshold =
            2.0 * std::numbers::pi * upper_density_closed_form(chain.perron());

        std::vector<double> good, bad;
        FrameReport sweep;
        sweep.m = 2;
        sweep.threshold = threshold;
        for (std::int64_t k : ks) {
            const FrameProbe pg = frame_bounds(chain, k, 1.2 * threshold);
            const FrameProbe pb = frame_bounds(chain, k, 0.5 * threshold);
            good.push_back(pg.c1);
            bad.push_back(pb.c1);
            sweep.probes.push_back({pg.interval_length, k, pg.c1, pg.c2, true});
            sweep.probes.push_back({pb.interval_length, k, pb.c1, pb.c2, false});
        }
        const bool floor_ok = good.back() / good.front() > 0.5;
        const bool decay_ok = bad.back() <= bad.front() / 10.0;
        add("frame_floor_above_threshold", floor_ok,
            {{"c1_first", good.front()}, {"c1_last", good.back()},
             {"ratio", good.back() / good.front()}, {"floor", 0.5}});
        add("frame_decay_below_threshold", decay_ok,
            {{"c1_first", bad.front()}, {"c1_last", bad.back()}, {"factor", 10.0}});
        sections_["frame"] = frame_json(sweep);
        side_file("repro_frame.csv", frame_csv(sweep));
    }

    bool fast_;
    bool json_only_;
    std::string outdir_;
    std::vector<Check> checks_;
    Json sections_ = Json::object();
};

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int run_word(int m, std::int64_t length, std::int64_t left, const std::string& format,
             const std::optional<std::string>& output, const CapGuard& cap, std::ostream& out) {
    cap.check(length + left, "word window");
    WordStream stream((Alphabet(m)));
    stream.extend(left, length);

    std::ostringstream s;
    if (format == "digits") {
        for (std::int64_t k = -left; k < length; ++k) {
            s << static_cast<char>('0' + stream.digit(k));
        }
        s << '\n';
    } else {
        s << "index,digit\n";
        for (std::int64_t k = -left; k < length; ++k) {
            s << k << ',' << stream.digit(k) << '\n';
        }
    }
    emit(output, s.str(), out);
    return 0;
}

int run_perron(int m, int digits, const std::optional<std::string>& output, std::ostream& out) {
    const double tolerance = 1e-15;
    const PerronData p = perron_root(m, tolerance, digits);
    emit(output, perron_json(p).dump(2) + "\n", out);
    return 0;
}

int run_chain(int m, std::int64_t from, std::int64_t to, const std::optional<std::string>& output,
              const CapGuard& cap, std::ostream& out) {
    if (from > 0 || to < 0) throw std::domain_error("chain window must satisfy from <= 0 <= to");
    cap.check(to - from + 1, "chain window");
    const Chain chain = chain_window(m, from, to);
    std::ostringstream s;
    s << "k,lambda,gap_digit\n";
    for (std::int64_t k = from; k <= to; ++k) {
        s << k << ',' << fmt(chain.lambda(k)) << ',' << chain.gap_digit(k) << '\n';
    }
    emit(output, s.str(), out);
    return 0;
}

int run_density(int m, double rmin, double rmax, double step, std::int64_t points,
                const std::string& format, const std::optional<std::string>& output,
                const CapGuard& cap, std::ostream& out, std::ostream& err) {
    cap.check(points + 1, "density chain");
    const Chain chain = chain_window(m, 0, points);
    const DensityReport rep = density_scan(chain, rmin, rmax, step);
    if (format == "json") {
        Json j = density_summary(rep);
        Json samples = Json::array();
        for (const auto& row : rep.samples) {
            samples.push_back({{"r", row.r}, {"n", row.n}, {"ratio", row.ratio}});
        }
        j["samples"] = samples;
        emit(output, j.dump(2) + "\n", out);
    } else {
        emit(output, density_csv(rep), out);
        err << density_summary(rep).dump() << '\n';
    }
    return 0;
}

int run_gaps(int m, std::int64_t nmax, std::int64_t krange,
             const std::optional<std::string>& output, const CapGuard& cap, std::ostream& out) {
    if (m != 2 && m != 3) throw std::domain_error("gap constants exist for m = 2, 3 only");
    if (nmax < 1) throw std::domain_error("--nmax must be >= 1");
    cap.check(2 * krange + nmax + 1, "gap scan chain");
    const Chain chain = chain_window(m, -krange, krange + nmax);
    std::vector<GapReport> rows;
    rows.reserve(static_cast<std::size_t>(nmax));
    for (std::int64_t n = 1; n <= nmax; ++n) {
        rows.push_back(verify_gap_condition(chain, n, -krange, krange));
    }
    emit(output, gaps_csv(rows), out);
    return 0;
}

int run_expand(std::int64_t n, const std::optional<std::string>& output, std::ostream& out) {
    const TribExpansion e = trib_expand(n);
    Json j;
    j["n"] = e.n;
    j["L"] = e.L;
    j["bits"] = e.bit_string();
    emit(output, j.dump() + "\n", out);
    return 0;
}

int run_frame(int m, std::int64_t k, double lmin, double lmax, std::int64_t steps,
              const std::string& format, const std::optional<std::string>& output,
              const CapGuard& cap, std::ostream& out, std::ostream& err) {
    if (steps < 1) throw std::domain_error("--steps must be >= 1");
    if (!(lmin > 0) || lmax < lmin) throw std::domain_error("need 0 < lmin <= lmax");
    cap.check(2 * k + 1, "frame chain");
    const Chain chain = chain_window(m, -k, k);
    const FrameReport rep = threshold_sweep(chain, k, linear_grid(lmin, lmax, steps));
    if (format == "json") {
        emit(output, frame_json(rep).dump(2) + "\n", out);
    } else {
        emit(output, frame_csv(rep), out);
        Json summary;
        summary["m"] = rep.m;
        summary["threshold"] = rep.threshold;
        err << summary.dump() << '\n';
    }
    return 0;
}

int run_repro(bool fast, bool json_only, const std::string& outdir,
              const std::optional<std::string>& output, std::ostream& out) {
    ReproRun repro(fast, json_only, outdir);
    const Json j = repro.run();
    emit(output, j.dump(2) + "\n", out);
    return j["pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"m-bonacci words, chains, densities, gap constants and frame probes"};
    app.require_subcommand(1);

    CapGuard cap;
    app.add_option("--cap", cap.cap, "safety cap on generated digits")->capture_default_str();

    std::optional<std::string> output;
    app.add_option("--output", output, "write result to this file (atomic)");

    // word
    auto* word =
        app.add_subcommand("word", "digits of the bi-infinite word v_m")->fallthrough();
    int word_m = 2;
    std::int64_t word_length = 0, word_left = 0;
    std::string word_format = "digits";
    word->add_option("--m", word_m, "substitution order")->required()->check(CLI::Range(2, 255));
    word->add_option("--length", word_length, "digits v_0 .. v_{length-1}")
        ->required()
        ->check(CLI::NonNegativeNumber);
    word->add_option("--left", word_left, "also emit v_{-left} .. v_{-1}")
        ->check(CLI::NonNegativeNumber);
    word->add_option("--format", word_format, "digits | csv")
        ->check(CLI::IsMember({"digits", "csv"}));

    // perron
    auto* perron = app.add_subcommand("perron", "Perron root and left eigenvector of sigma_m")
                       ->fallthrough();
    int perron_m = 2;
    int perron_digits = default_digits();
    perron->add_option("--m", perron_m, "substitution order")->required()->check(CLI::Range(2, 400));
    perron->add_option("--digits", perron_digits, "working precision in decimal digits")
        ->check(CLI::Range(1, 100));

    // chain
    auto* chain =
        app.add_subcommand("chain", "points of the m-bonacci chain")->fallthrough();
    int chain_m = 2;
    std::int64_t chain_from = 0, chain_to = 0;
    chain->add_option("--m", chain_m, "substitution order")->required()->check(CLI::Range(2, 255));
    chain->add_option("--from", chain_from, "first index (<= 0)")->required();
    chain->add_option("--to", chain_to, "last index (>= 0)")->required();

    // density
    auto* density =
        app.add_subcommand("density", "n(r)/r scan against the closed form")->fallthrough();
    int density_m = 2;
    double density_rmin = 250, density_rmax = 500, density_step = 1;
    std::int64_t density_points = 20000;
    std::string density_format = "csv";
    density->add_option("--m", density_m, "substitution order")
        ->required()
        ->check(CLI::Range(2, 255));
    density->add_option("--rmin", density_rmin, "smallest interval length")->required();
    density->add_option("--rmax", density_rmax, "largest interval length")->required();
    density->add_option("--step", density_step, "grid step")->required();
    density->add_option("--points", density_points, "chain points k in [0, points]")
        ->check(CLI::PositiveNumber);
    density->add_option("--format", density_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    // gaps
    auto* gaps = app.add_subcommand("gaps", "gap constants vs brute-force window minima")
                     ->fallthrough();
    int gaps_m = 2;
    std::int64_t gaps_nmax = 50, gaps_krange = 10000;
    gaps->add_option("--m", gaps_m, "2 (Fibonacci) or 3 (Tribonacci)")
        ->required()
        ->check(CLI::IsMember({2, 3}));
    gaps->add_option("--nmax", gaps_nmax, "window sizes N = 1..nmax")->required();
    gaps->add_option("--krange", gaps_krange, "scan |k| <= krange")->check(CLI::NonNegativeNumber);

    // expand
    auto* expand =
        app.add_subcommand("expand", "greedy Tribonacci expansion of n")->fallthrough();
    std::int64_t expand_n = 0;
    expand->add_option("--n", expand_n, "positive integer")->required();

    // frame
    auto* frame =
        app.add_subcommand("frame", "Gram-matrix frame bounds across |I|")->fallthrough();
    int frame_m = 2;
    std::int64_t frame_k = 40, frame_steps = 1;
    double frame_lmin = 0, frame_lmax = 0;
    std::string frame_format = "csv";
    frame->add_option("--m", frame_m, "substitution order")->required()->check(CLI::Range(2, 255));
    frame->add_option("--k", frame_k, "frequencies lambda_k, |k| <= K")
        ->required()
        ->check(CLI::NonNegativeNumber);
    frame->add_option("--lmin", frame_lmin, "smallest |I|")->required();
    frame->add_option("--lmax", frame_lmax, "largest |I|")->required();
    frame->add_option("--steps", frame_steps, "number of grid samples")->required();
    frame->add_option("--format", frame_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    // repro
    auto* repro = app.add_subcommand("repro", "regenerate the headline numbers, tagged pass/fail")
                      ->fallthrough();
    bool repro_fast = false, repro_json_only = false;
    std::string repro_outdir = ".";
    repro->add_flag("--fast", repro_fast, "reduced ranges, same checks");
    repro->add_flag("--json-only", repro_json_only, "skip CSV side files");
    repro->add_option("--outdir", repro_outdir, "directory for CSV side files")
        ->capture_default_str();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    if (word->parsed() && word_format == "digits" && word_m > 9) {
        err << "error: digits format needs m <= 9; use --format csv\n";
        return 2;
    }

    try {
        if (word->parsed()) {
            return run_word(word_m, word_length, word_left, word_format, output, cap, out);
        }
        if (perron->parsed()) return run_perron(perron_m, perron_digits, output, out);
        if (chain->parsed()) return run_chain(chain_m, chain_from, chain_to, output, cap, out);
        if (density->parsed()) {
            return run_density(density_m, density_rmin, density_rmax, density_step, density_points,
                               density_format, output, cap, out, err);
        }
        if (gaps->parsed()) return run_gaps(gaps_m, gaps_nmax, gaps_krange, output, cap, out);
        if (expand->parsed()) return run_expand(expand_n, output, out);
        if (frame->parsed()) {
            return run_frame(frame_m, frame_k, frame_lmin, frame_lmax, frame_steps, frame_format,
                             output, cap, out, err);
        }
        if (repro->parsed()) return run_repro(repro_fast, repro_json_only, repro_outdir, output, out);
        err << "error: no subcommand given\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace mbonacci::cli
