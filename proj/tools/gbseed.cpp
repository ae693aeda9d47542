// gbseed: circle-method experiments over missing-digit sets.
//
// Subcommands: sieve, scan, arcs, l1, discrepancy, approx-check, verify.
// Exit codes: 0 success, 1 precondition error, 2 resource/numeric error.
// Errors go to stderr as one-line JSON {"kind": ..., "error": ...}.
// Reports carry the tool version and the fully resolved config and contain
// no timestamps, so identical configs produce byte-identical files.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "gbseed/approximant.hpp"
#include "gbseed/arith.hpp"
#include "gbseed/characters.hpp"
#include "gbseed/digitset.hpp"
#include "gbseed/dissection.hpp"
#include "gbseed/expsum.hpp"
#include "gbseed/goldbach.hpp"
#include "gbseed/io.hpp"

using nlohmann::json;
using namespace gbseed;

namespace {

constexpr const char* kToolVersion = "gbseed 1.0.0";

// write fully, then read back and require a bit-identical window
arith::SieveWindow cache_roundtrip(const arith::SieveWindow& w,
                                   const std::string& path) {
    io::write_window_cache(path, w);
    arith::SieveWindow r = io::read_window_cache(path);
    bool same = r.start == w.start && r.length == w.length &&
                std::memcmp(r.lambda.data(), w.lambda.data(),
                            w.lambda.size() * sizeof(double)) == 0 &&
                r.mobius == w.mobius && r.d2 == w.d2 && r.d4 == w.d4 &&
                r.is_prime == w.is_prime;
    if (!same) throw format_error("window cache round-trip mismatch: " + path);
    return r;
}

std::string default_cache_path(uint64_t start, uint64_t length) {
    std::string dir = ".";
    if (const char* env = std::getenv("GBSEED_CACHE_DIR")) dir = env;
    return dir + "/window_" + std::to_string(start) + "_" +
           std::to_string(length) + ".gbsv";
}

void emit(const json& doc, const std::string& out_path) {
    std::string text = doc.dump(2);
    text += '\n';
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw format_error("cannot open output: " + out_path);
        out << text;
    }
}

// resolve log_exponent: keep the requested value if the containment check
// holds, otherwise fall back to the largest workable exponent
double resolve_log_exponent(uint64_t x, uint64_t h, double eps,
                            std::optional<double> requested) {
    if (requested) return *requested;
    try {
        dissection::CircleParams probe(x, h, eps);
        return probe.log_exponent;
    } catch (const domain_error&) {
        return dissection::CircleParams::workable_log_exponent(x, h, eps);
    }
}

json scan_record_json(const goldbach::GoldbachRecord& r) {
    json j{{"two_n", r.two_n},
           {"r_star", r.r_star},
           {"m_star", r.m_star},
           {"sigma_trunc", r.sigma_trunc},
           {"sigma_trunc_tail", r.sigma_trunc_tail},
           {"sigma_closed", r.sigma_closed},
           {"predicted", r.predicted},
           {"has_split_rep", r.has_split_rep},
           {"has_any_rep", r.has_any_rep}};
    if (r.ratio) j["ratio"] = *r.ratio;
    else j["ratio"] = nullptr;
    return j;
}

json scan_report_json(const goldbach::ScanReport& rep, const json& config) {
    json records = json::array();
    for (const auto& r : rep.records) records.push_back(scan_record_json(r));
    return json{
        {"version", "scan-v1"},
        {"tool", kToolVersion},
        {"config", config},
        {"summary",
         {{"set_size", rep.set_size},
          {"even_count", rep.even_count},
          {"sum_d4", rep.sum_d4},
          {"sum_d4sharp", rep.sum_d4sharp},
          {"sum_d2_sq", rep.sum_d2_sq},
          {"d4_log7_ratio", rep.d4_log7_ratio},
          {"exceptional_split", rep.exceptional_split},
          {"exceptional_any", rep.exceptional_any},
          {"exceptional_split_fraction",
           rep.even_count ? static_cast<double>(rep.exceptional_split) /
                                static_cast<double>(rep.even_count)
                          : 0.0},
          {"min_ratio", rep.min_ratio},
          {"median_ratio", rep.median_ratio}}},
        {"records", records}};
}

void scan_report_csv(const goldbach::ScanReport& rep, const std::string& path) {
    io::CsvWriter csv(path);
    csv.row({"two_n", "r_star", "m_star", "sigma_trunc", "sigma_trunc_tail",
             "sigma_closed", "predicted", "ratio", "has_split_rep",
             "has_any_rep"});
    for (const auto& r : rep.records)
        csv.row({std::to_string(r.two_n), io::fmt_double(r.r_star),
                 std::to_string(r.m_star), io::fmt_double(r.sigma_trunc),
                 io::fmt_double(r.sigma_trunc_tail),
                 io::fmt_double(r.sigma_closed), io::fmt_double(r.predicted),
                 r.ratio ? io::fmt_double(*r.ratio) : "",
                 r.has_split_rep ? "1" : "0", r.has_any_rep ? "1" : "0"});
}

// ---------------------------------------------------------------------------
// verify: the exact-identity suites
// ---------------------------------------------------------------------------
int run_verify() {
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name);
        if (!ok) ++failures;
    };

    { // Ramanujan closed form vs brute force, q <= 300, |m| <= 300
        bool ok = true;
        for (uint64_t q = 1; q <= 300 && ok; ++q) {
            std::vector<cplx> root(q);
            for (uint64_t j = 0; j < q; ++j)
                root[j] = e_frac(static_cast<int64_t>(j), static_cast<int64_t>(q));
            std::vector<uint64_t> units;
            for (uint64_t a = 1; a <= q; ++a)
                if (std::gcd(a, q) == 1) units.push_back(a);
            for (int64_t m = -300; m <= 300 && ok; ++m) {
                double re = 0.0;
                for (uint64_t a : units) {
                    int64_t idx = (m % static_cast<int64_t>(q)) *
                                  static_cast<int64_t>(a) %
                                  static_cast<int64_t>(q);
                    if (idx < 0) idx += static_cast<int64_t>(q);
                    re += root[static_cast<uint64_t>(idx)].real();
                }
                double rounded = std::round(re);
                if (std::abs(re - rounded) >= 1e-6 ||
                    arith::ramanujan_sum(q, m) != static_cast<int64_t>(rounded))
                    ok = false;
            }
        }
        report("ramanujan closed form == unit-sum brute force (q<=300, |m|<=300)", ok);
    }
    { // Gauss sums and orthogonality
        bool ok = true;
        for (uint64_t q = 1; q <= 100 && ok; ++q)
            for (const auto& chi : arith::characters_mod(q))
                if (chi.primitive &&
                    std::abs(std::abs(arith::gauss_sum(chi)) -
                             std::sqrt(static_cast<double>(q))) > 1e-9)
                    ok = false;
        report("|gauss_sum| == sqrt(q) for primitive characters, q<=100", ok);

        bool orth = true;
        for (uint64_t q = 1; q <= 200 && orth; ++q) {
            auto chars = arith::characters_mod(q);
            double phi = static_cast<double>(chars.size());
            std::vector<std::vector<cplx>> table(chars.size());
            for (size_t i = 0; i < chars.size(); ++i) {
                table[i].resize(q + 1);
                for (uint64_t a = 1; a <= q; ++a) table[i][a] = chars[i](a);
            }
            for (size_t i = 0; i < chars.size() && orth; ++i)
                for (size_t j = i; j < chars.size() && orth; ++j) {
                    cplx s{0.0, 0.0};
                    for (uint64_t a = 1; a <= q; ++a)
                        s += table[i][a] * std::conj(table[j][a]);
                    double expect = (i == j) ? phi : 0.0;
                    if (std::abs(s - cplx{expect, 0.0}) > 1e-9) orth = false;
                }
        }
        report("character orthogonality, q<=200", orth);
    }
    { // Farey tiling and containment
        bool ok = true;
        for (uint64_t Q = 1; Q <= 200 && ok; ++Q) {
            auto arcs = dissection::farey_dissection(Q);
            double total = 0.0;
            for (size_t i = 0; i < arcs.size() && ok; ++i) {
                total += arcs[i].right - arcs[i].left;
                if (i && std::abs(arcs[i].left - arcs[i - 1].right) > 1e-12)
                    ok = false;
                double lim = 1.0 / (static_cast<double>(arcs[i].q) *
                                    static_cast<double>(Q)) +
                             1e-12;
                if (arcs[i].left < arcs[i].center - lim ||
                    arcs[i].right > arcs[i].center + lim)
                    ok = false;
            }
            if (std::abs(total - 1.0) > 1e-12) ok = false;
        }
        report("farey arcs tile [1/Q, 1+1/Q] within the 1/(qQ) containment, Q<=200", ok);
    }
    { // discrete circle-method identity
        const uint64_t X = 10'000, H = 1'000;
        auto w = arith::build_window(1, X + 2);
        auto conv = goldbach::r_star_all(X, H, w);
        bool ok = true;
        for (uint64_t two_n = X + 2; two_n <= X + H && ok; two_n += 2) {
            double direct = goldbach::r_star(two_n, X, H, w);
            if (std::abs(conv.at(two_n) - direct) > 1e-8 * (1.0 + direct))
                ok = false;
        }
        double p1 = 0.0, p2 = 0.0;
        for (uint64_t n = X - H + 1; n <= X; ++n) p1 += w.lambda_at(n);
        for (uint64_t n = 1; n <= H; ++n) p2 += w.lambda_at(n);
        if (std::abs(conv.total() - p1 * p2) > 1e-8 * (1.0 + p1 * p2)) ok = false;
        report("FFT convolution == direct R*(2n) and total-mass identity", ok);
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"circle-method experiments over missing-digit sets"};
    app.set_help_flag("--help", "print help"); // frees -h / --h for H
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    uint64_t seed = 1;
    app.add_option("--seed", seed, "seed for sampled experiments");

    // ---- sieve ----
    auto* sieve = app.add_subcommand("sieve", "build a window and cache it");
    uint64_t sv_start = 1, sv_length = 0;
    std::string sv_out;
    sieve->add_option("--start", sv_start, "window start (>= 1)")->required();
    sieve->add_option("--length", sv_length, "window length")->required();
    sieve->add_option("--out", sv_out, "cache path (default from GBSEED_CACHE_DIR)");

    // ---- scan ----
    auto* scan = app.add_subcommand("scan", "Goldbach scan over [X, X+H]*");
    uint64_t sc_x = 0, sc_h = 0, sc_qmax = 1000;
    uint32_t sc_base = 10, sc_digit = 7;
    double sc_eps = 0.1;
    std::optional<double> sc_logexp;
    std::optional<double> sc_r4;
    std::string sc_out, sc_format = "json";
    scan->add_option("--x", sc_x, "interval start X")->required();
    scan->add_option("--h", sc_h, "interval length H")->required();
    scan->add_option("--base", sc_base, "digit base g (>= 3)");
    scan->add_option("--digit", sc_digit, "forbidden digit b (>= 2)");
    scan->add_option("--epsilon", sc_eps, "delta = X^-epsilon");
    scan->add_option("--log-exponent", sc_logexp,
                     "D(delta) exponent (auto-resolved when omitted)");
    scan->add_option("--r4", sc_r4, "approximant R4 override (> 1)");
    scan->add_option("--sigma-qmax", sc_qmax, "singular series truncation");
    scan->add_option("--out", sc_out, "report path");
    scan->add_option("--format", sc_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // ---- arcs ----
    auto* arcs = app.add_subcommand("arcs", "Farey dissection and arc metrics");
    uint64_t ar_x = 0, ar_h = 0, ar_samples = 0;
    double ar_eps = 0.1;
    std::optional<double> ar_logexp, ar_r4;
    std::optional<uint64_t> ar_two_n;
    std::string ar_out;
    arcs->add_option("--x", ar_x, "interval start X")->required();
    arcs->add_option("--h", ar_h, "interval length H")->required();
    arcs->add_option("--epsilon", ar_eps, "delta = X^-epsilon");
    arcs->add_option("--log-exponent", ar_logexp, "D(delta) exponent");
    arcs->add_option("--out", ar_out, "arc list CSV path");
    arcs->add_option("--two-n", ar_two_n, "also split R*(2n) into major/minor");
    arcs->add_option("--sup-samples", ar_samples,
                     "measure sup |S_i|/H and |S4#|/H over seeded minor samples");
    arcs->add_option("--r4", ar_r4, "approximant R4 for the S4# measurement");

    // ---- l1 ----
    auto* l1 = app.add_subcommand("l1", "L1 estimate of the set transform");
    uint32_t l1_base = 10, l1_digit = 7;
    uint64_t l1_lo = 1, l1_hi = 0, l1_grid = 0;
    std::string l1_out;
    l1->add_option("--base", l1_base, "digit base g");
    l1->add_option("--digit", l1_digit, "forbidden digit b");
    l1->add_option("--lo", l1_lo, "set lower end");
    l1->add_option("--hi", l1_hi, "set upper end")->required();
    l1->add_option("--grid", l1_grid, "grid points (>= 4 (hi+1); 0 = minimum)");
    l1->add_option("--out", l1_out, "CSV path for (alpha, F) rows");

    // ---- discrepancy ----
    auto* disc = app.add_subcommand("discrepancy", "AP discrepancy over [1, X]*");
    uint32_t dc_base = 10, dc_digit = 7;
    uint64_t dc_x = 0, dc_qmax = 50;
    std::string dc_out;
    disc->add_option("--base", dc_base, "digit base g");
    disc->add_option("--digit", dc_digit, "forbidden digit b");
    disc->add_option("--x", dc_x, "range end X")->required();
    disc->add_option("--qmax", dc_qmax, "largest modulus");
    disc->add_option("--out", dc_out, "CSV path for (q, coprime, max_disc)");

    // ---- approx-check ----
    auto* apx = app.add_subcommand("approx-check", "d4# vs d4 diagnostics");
    uint64_t ax_x = 0, ax_h = 0, ax_q = 1, ax_a = 1;
    double ax_beta = 0.0, ax_eps = 0.3;
    std::optional<double> ax_r4;
    std::string ax_out, ax_pm_csv;
    apx->add_option("--x", ax_x, "window start X")->required();
    apx->add_option("--h", ax_h, "window length H")->required();
    apx->add_option("--epsilon", ax_eps, "R4 = X^(epsilon/40) unless --r4");
    apx->add_option("--r4", ax_r4, "approximant R4 override (> 1)");
    apx->add_option("--q", ax_q, "twist denominator");
    apx->add_option("--a", ax_a, "twist numerator (coprime to q)");
    apx->add_option("--beta", ax_beta, "twist offset");
    apx->add_option("--pm-csv", ax_pm_csv, "export P_m coefficients (m, c0..c3)");
    apx->add_option("--out", ax_out, "JSON report path");

    // ---- verify ----
    app.add_subcommand("verify", "run the exact-identity suites");

    for (auto* sub : app.get_subcommands({})) {
        sub->set_help_flag("--help", "print help");
        sub->fallthrough(); // global flags like --seed after the subcommand
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (sieve->parsed()) {
            auto w = arith::build_window(sv_start, sv_length);
            std::string path = sv_out.empty()
                                   ? default_cache_path(sv_start, sv_length)
                                   : sv_out;
            cache_roundtrip(w, path);
            uint64_t primes = 0;
            double psi = 0.0, sum_d4 = 0.0;
            for (uint64_t i = 0; i < w.length; ++i) {
                primes += w.is_prime[i];
                psi += w.lambda[i];
                sum_d4 += static_cast<double>(w.d4[i]);
            }
            emit(json{{"tool", kToolVersion},
                      {"config",
                       {{"command", "sieve"},
                        {"start", sv_start},
                        {"length", sv_length},
                        {"out", path},
                        {"seed", seed}}},
                      {"summary",
                       {{"primes", primes},
                        {"psi_mass", psi},
                        {"sum_d4", sum_d4}}}},
                 "");
            return 0;
        }

        if (scan->parsed()) {
            digitset::DigitSystem sys(sc_base, sc_digit);
            double logexp = resolve_log_exponent(sc_x, sc_h, sc_eps, sc_logexp);
            dissection::CircleParams params(sc_x, sc_h, sc_eps, logexp);
            auto ap = sc_r4 ? approximant::ApproximantParams::with_r4(sc_x, *sc_r4)
                            : approximant::ApproximantParams::from_epsilon(
                                  sc_x, sc_eps);
            auto rep = goldbach::scan(sys, sc_x, sc_h, params, ap, sc_qmax);
            json config{{"command", "scan"},
                        {"x", sc_x},
                        {"h", sc_h},
                        {"base", sc_base},
                        {"digit", sc_digit},
                        {"epsilon", sc_eps},
                        {"log_exponent", logexp},
                        {"r4", ap.r4},
                        {"cutoff", ap.cutoff},
                        {"sigma_qmax", sc_qmax},
                        {"seed", seed},
                        {"format", sc_format}};
            if (sc_format == "csv") {
                if (sc_out.empty())
                    throw domain_error("scan: csv format requires --out");
                scan_report_csv(rep, sc_out);
                json summary = scan_report_json(rep, config);
                summary.erase("records");
                emit(summary, "");
            } else {
                emit(scan_report_json(rep, config), sc_out);
            }
            return 0;
        }

        if (arcs->parsed()) {
            double logexp = resolve_log_exponent(ar_x, ar_h, ar_eps, ar_logexp);
            dissection::CircleParams params(ar_x, ar_h, ar_eps, logexp);
            json result{{"tool", kToolVersion},
                        {"config",
                         {{"command", "arcs"},
                          {"x", ar_x},
                          {"h", ar_h},
                          {"epsilon", ar_eps},
                          {"log_exponent", logexp},
                          {"q", params.Q},
                          {"beta_delta", params.betadelta},
                          {"seed", seed}}}};
            if (!ar_out.empty()) {
                auto list = dissection::farey_dissection(params.Q);
                io::CsvWriter csv(ar_out);
                csv.row({"q", "r", "left", "right", "major_left", "major_right"});
                for (const auto& a : list) {
                    auto [ml, mr] = a.major_window(params.betadelta);
                    csv.row({std::to_string(a.q), std::to_string(a.r),
                             io::fmt_double(a.left), io::fmt_double(a.right),
                             io::fmt_double(ml), io::fmt_double(mr)});
                }
                result["arcs_csv"] = ar_out;
                result["arc_count"] = list.size();
            }
            if (ar_two_n) {
                auto w = arith::build_window(1, ar_x + 2);
                auto split = goldbach::arc_split(*ar_two_n, params, w);
                result["arc_split"] = {{"two_n", *ar_two_n},
                                       {"major", split.major},
                                       {"minor", split.minor},
                                       {"r_star", split.r_star}};
            }
            if (ar_samples > 0) {
                auto w = arith::build_window(1, ar_x + ar_h + 2);
                auto apx_params =
                    ar_r4 ? approximant::ApproximantParams::with_r4(ar_x, *ar_r4)
                          : approximant::ApproximantParams::from_epsilon(ar_x,
                                                                         ar_eps);
                auto d4s = approximant::d4sharp_window(ar_x, ar_h, apx_params);
                expsum::IntervalSpec i1(expsum::IntervalSpec::I1, ar_x, ar_h);
                expsum::IntervalSpec i2(expsum::IntervalSpec::I2, ar_x, ar_h);
                double h = static_cast<double>(ar_h);

                double peak1 = 0.0, peak2 = 0.0, peak4 = 0.0;
                for (uint64_t q = 1; q <= params.Q; ++q)
                    for (uint64_t r = 1; r <= q; ++r) {
                        if (std::gcd(r, q) != 1) continue;
                        double c = static_cast<double>(r) / static_cast<double>(q);
                        peak1 = std::max(peak1, std::abs(expsum::s_sum(i1, c, w)));
                        peak2 = std::max(peak2, std::abs(expsum::s_sum(i2, c, w)));
                        peak4 = std::max(
                            peak4, std::abs(expsum::s4_eval_weighted(c, ar_x, d4s)));
                    }
                auto samples =
                    dissection::sample_minor_arcs(params, ar_samples, seed);
                double m1 = 0.0, m2 = 0.0, m4 = 0.0;
                for (double alpha : samples) {
                    m1 = std::max(m1, std::abs(expsum::s_sum(i1, alpha, w)));
                    m2 = std::max(m2, std::abs(expsum::s_sum(i2, alpha, w)));
                    m4 = std::max(m4,
                                  std::abs(expsum::s4_eval_weighted(alpha, ar_x, d4s)));
                }
                result["minor_sup"] = {
                    {"samples", ar_samples},
                    {"seed", seed},
                    {"s1_minor_over_h", m1 / h},
                    {"s2_minor_over_h", m2 / h},
                    {"s4sharp_minor_over_h", m4 / h},
                    {"s1_peak_over_h", peak1 / h},
                    {"s2_peak_over_h", peak2 / h},
                    {"s4sharp_peak_over_h", peak4 / h},
                    {"s1_ratio", m1 / peak1},
                    {"s2_ratio", m2 / peak2},
                    {"s4sharp_ratio", m4 / peak4}};
            }
            emit(result, "");
            return 0;
        }

        if (l1->parsed()) {
            digitset::DigitSystem sys(l1_base, l1_digit);
            digitset::RestrictedSet set(sys, l1_lo, l1_hi);
            uint64_t grid = l1_grid ? l1_grid : 4 * (l1_hi + 1);
            auto rep = digitset::l1_estimate(set, grid);
            if (!l1_out.empty()) {
                io::CsvWriter csv(l1_out);
                csv.row({"alpha", "F"});
                for (uint64_t j = 0; j < grid; ++j) {
                    double alpha = (static_cast<double>(j) + 0.5) /
                                   static_cast<double>(grid);
                    csv.row({io::fmt_double(alpha),
                             io::fmt_double(digitset::fourier_F(set, alpha))});
                }
            }
            emit(json{{"tool", kToolVersion},
                      {"config",
                       {{"command", "l1"},
                        {"base", l1_base},
                        {"digit", l1_digit},
                        {"lo", l1_lo},
                        {"hi", l1_hi},
                        {"grid", grid},
                        {"seed", seed}}},
                      {"summary",
                       {{"estimate", rep.estimate},
                        {"error_bound", rep.error_bound},
                        {"comparator", rep.comparator},
                        {"ratio", rep.ratio}}}},
                 "");
            return 0;
        }

        if (disc->parsed()) {
            digitset::DigitSystem sys(dc_base, dc_digit);
            auto rep = digitset::ap_discrepancy(sys, dc_x, dc_qmax);
            if (!dc_out.empty()) {
                io::CsvWriter csv(dc_out);
                csv.row({"q", "coprime", "max_a_discrepancy"});
                for (const auto& row : rep.rows)
                    csv.row({std::to_string(row.q), row.coprime ? "1" : "0",
                             io::fmt_double(row.max_disc)});
            }
            emit(json{{"tool", kToolVersion},
                      {"config",
                       {{"command", "discrepancy"},
                        {"base", dc_base},
                        {"digit", dc_digit},
                        {"x", dc_x},
                        {"qmax", dc_qmax},
                        {"seed", seed}}},
                      {"summary",
                       {{"set_count", rep.set_count},
                        {"sum_coprime", rep.sum_coprime},
                        {"ratio", rep.ratio}}}},
                 "");
            return 0;
        }

        if (apx->parsed()) {
            auto ap = ax_r4
                          ? approximant::ApproximantParams::with_r4(ax_x, *ax_r4)
                          : approximant::ApproximantParams::from_epsilon(ax_x,
                                                                         ax_eps);
            auto w = arith::build_window(ax_x, ax_h + 1);
            auto d4s = approximant::d4sharp_window(ax_x, ax_h, ap);
            double mean_d4 = 0.0, mean_sharp = 0.0;
            for (uint64_t i = 0; i <= ax_h; ++i) {
                mean_d4 += static_cast<double>(w.d4_at(ax_x + i));
                mean_sharp += d4s[i];
            }
            mean_d4 /= static_cast<double>(ax_h + 1);
            mean_sharp /= static_cast<double>(ax_h + 1);
            auto gap = approximant::main_term_gap(ax_q, ax_a, ax_beta, ax_x,
                                                   ax_h, ap);
            if (!ax_pm_csv.empty()) {
                io::CsvWriter csv(ax_pm_csv);
                csv.row({"m", "c0", "c1", "c2", "c3"});
                for (uint64_t m : ap.support)
                    csv.row({std::to_string(m), io::fmt_double(ap.pm[m][0]),
                             io::fmt_double(ap.pm[m][1]),
                             io::fmt_double(ap.pm[m][2]),
                             io::fmt_double(ap.pm[m][3])});
            }
            emit(json{{"tool", kToolVersion},
                      {"config",
                       {{"command", "approx-check"},
                        {"x", ax_x},
                        {"h", ax_h},
                        {"r4", ap.r4},
                        {"cutoff", ap.cutoff},
                        {"q", ax_q},
                        {"a", ax_a},
                        {"beta", ax_beta},
                        {"seed", seed}}},
                      {"window_means",
                       {{"d4", mean_d4},
                        {"d4sharp", mean_sharp},
                        {"ratio", mean_sharp / mean_d4}}},
                      {"main_term_gap",
                       {{"direct_re", gap.direct.real()},
                        {"direct_im", gap.direct.imag()},
                        {"mainterm_re", gap.mainterm.real()},
                        {"mainterm_im", gap.mainterm.imag()},
                        {"abs_gap", gap.abs_gap},
                        {"rel_gap", gap.abs_gap / std::abs(gap.direct)},
                        {"paper_errbound", gap.paper_errbound}}}},
                 ax_out);
            return 0;
        }

        // verify
        return run_verify();
    } catch (const domain_error& ex) {
        std::fprintf(stderr, "%s\n",
                     json{{"kind", "precondition"}, {"error", ex.what()}}
                         .dump()
                         .c_str());
        return 1;
    } catch (const resource_error& ex) {
        std::fprintf(stderr, "%s\n",
                     json{{"kind", "resource"}, {"error", ex.what()}}
                         .dump()
                         .c_str());
        return 2;
    } catch (const numeric_error& ex) {
        std::fprintf(stderr, "%s\n",
                     json{{"kind", "numeric"}, {"error", ex.what()}}
                         .dump()
                         .c_str());
        return 2;
    } catch (const format_error& ex) {
        std::fprintf(stderr, "%s\n",
                     json{{"kind", "format"}, {"error", ex.what()}}
                         .dump()
                         .c_str());
        return 2;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "%s\n",
                     json{{"kind", "internal"}, {"error", ex.what()}}
                         .dump()
                         .c_str());
        return 2;
    }
}
