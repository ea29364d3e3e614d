// symvar: command-line front end for the variance laboratory.
//
// Subcommands: constants, moment, gamma, diagonal, variance-t, variance-s,
// variance-n, ratios, oracle-check. Outputs CSV or JSON, deterministically:
// identical configuration gives byte-identical files at any --threads value.
//
// Exit codes: 0 ok, 1 oracle failure, 2 validation, 3 capacity, 4 accuracy.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symvar/core_arith.hpp"
#include "symvar/diagonal_sums.hpp"
#include "symvar/euler_products.hpp"
#include "symvar/gaussian_ideals.hpp"
#include "symvar/numeric.hpp"
#include "symvar/oracles.hpp"
#include "symvar/report.hpp"
#include "symvar/rmt_moments.hpp"
#include "symvar/variance_empirics.hpp"

namespace {

using namespace symvar;

struct GlobalOpts {
    unsigned threads = 0;
    std::string format = "csv";
    std::string output;
    u64 seed = 20240803;
};

void write_artifact(const GlobalOpts& g, const std::string& content,
                    const std::string& summary) {
    if (g.output.empty()) {
        std::cout << content;
        if (!summary.empty()) std::cerr << summary << "\n";
    } else {
        std::ofstream f(g.output, std::ios::binary);
        if (!f) throw validation_error("cannot open output path: " + g.output);
        f << content;
        f.close();
        std::cout << summary << " -> " << g.output << "\n";
    }
}

// ---------------------------------------------------------------------------
// oracle-check: every derived oracle comparison, deterministic order
// ---------------------------------------------------------------------------

struct OracleRun {
    int failures = 0;
    u64 seed = 0;

    void check(const std::string& name, double got, double want, double tol) {
        bool ok = std::abs(got - want) <= tol;
        if (!ok) ++failures;
        std::cout << (ok ? "PASS " : "FAIL ") << name << " computed=" << format_double(got)
                  << " reference=" << format_double(want) << " tol=" << format_double(tol)
                  << "\n";
    }

    void check_exact(const std::string& name, bool ok, const std::string& detail) {
        if (!ok) ++failures;
        std::cout << (ok ? "PASS " : "FAIL ") << name << " " << detail << "\n";
    }

    void info(const std::string& line) { std::cout << "INFO " << line << "\n"; }
};

void oracle_arith(OracleRun& run) {
    std::mt19937_64 rng(run.seed);
    DivisorTable d3 = build_divisor_table(3, 200000);
    bool mult_ok = true;
    for (int trial = 0; trial < 500; ++trial) {
        u64 n = rng() % 1000 + 1, m = rng() % 1000 + 1;
        if (std::gcd(n, m) != 1 || n * m > d3.x_max) continue;
        if (d3(n * m) != d3(n) * d3(m)) mult_ok = false;
    }
    run.check_exact("d_k.multiplicative", mult_ok, "500 random coprime pairs");

    bool kron_ok = true;
    for (int trial = 0; trial < 2000; ++trial) {
        i64 r = static_cast<i64>(rng() % 4000 + 1);
        i64 n = static_cast<i64>(rng() % 4000 + 1);
        i64 m = static_cast<i64>(rng() % 4000 + 1);
        if (kronecker(r, n) * kronecker(r, m) != kronecker(r, n * m)) kron_ok = false;
    }
    run.check_exact("kronecker.multiplicative", kron_ok, "2000 random triples");

    auto discs = enumerate_fundamental_discriminants(1, 3000);
    bool fd_ok = true;
    std::size_t idx = 0;
    for (u64 r = 2; r <= 3000; ++r) {
        bool pred = is_fundamental_discriminant(r);
        bool listed = idx < discs.size() && discs[idx] == r;
        if (listed) ++idx;
        if (pred != listed) fd_ok = false;
    }
    run.check_exact("fundamental_discriminants.sieve_vs_predicate", fd_ok, "r <= 3000");

    bool sq_ok = true;
    for (u64 n = 1; n <= 100000; ++n)
        if (is_perfect_square(n) != (squarefree_kernel(n) == 1)) sq_ok = false;
    run.check_exact("square_iff_trivial_kernel", sq_ok, "n <= 1e5");
}

void oracle_moments(OracleRun& run) {
    for (unsigned k = 1; k <= 2; ++k)
        for (unsigned N = 1; N <= 2; ++N)
            for (unsigned n = 0; moment_in_range(k, n, N); ++n) {
                double formula = static_cast<double>(symplectic_moment(k, n, N));
                double orc = sp_weyl_oracle(k, n, N);
                run.check("moment.k" + std::to_string(k) + ".N" + std::to_string(N) +
                              ".n" + std::to_string(n),
                          formula, orc, 1e-6);
            }
    // the inclusive endpoint of the moment range, recorded rather than asserted
    double endpoint_oracle = sp_weyl_oracle(1, 2, 1);
    run.info("endpoint k=1 N=1 n=2: formula=2 oracle=" + format_double(endpoint_oracle) +
             " -> the formula range is strict (endpoint excluded)");
}

void oracle_constants(OracleRun& run) {
    ConstantResult as1 = a_S(1, 1000000);
    const double closed = 12.0 / (M_PI * M_PI);
    run.check("a_S(1).vs.12/pi^2", static_cast<double>(as1.value), closed, as1.tail_bound);

    ConstantResult an = a_N(1, 20000);
    ConstantResult an6 = a_N_section6(1, 20000);
    run.check("a_N(1).dual_assembly", static_cast<double>(an.value),
              static_cast<double>(an6.value), 1e-10 * static_cast<double>(an.value));

    ConstantResult lr = landau_ramanujan(1000000);
    run.check_exact("landau_ramanujan.range",
                    lr.value > real_hp("0.7640") && lr.value < real_hp("0.7645"),
                    "value in [0.7640, 0.7645]");
}

void oracle_diagonal(OracleRun& run) {
    for (unsigned k = 1; k <= 3; ++k)
        for (u64 x : {50, 200, 500})
            for (bool weighted : {false, true})
                for (int ivi = 0; ivi < 2; ++ivi) {
                    Interval iv;
                    if (ivi == 1) {
                        iv.A = 1;
                        iv.B = 2;
                    }
                    auto fast = diagonal_sum(k, x, iv, weighted);
                    auto brute = diagonal_sum_bruteforce(k, x, iv, weighted);
                    run.check_exact(
                        "diagonal.k" + std::to_string(k) + ".x" + std::to_string(x) +
                            (weighted ? ".w" : ".u") + (ivi ? ".iv12" : ".iv01"),
                        fast.value == brute.value,
                        "exact rational equality fast vs brute");
                }
}

void oracle_lemmas(OracleRun& run) {
    for (unsigned n = 1; n <= 3; ++n)
        for (unsigned m = 0; m <= 2; ++m)
            for (double Y : {2.718281828459045, 7.389056098930650, 10.0}) {
                double closed = lemma_I(m, n, Y);
                double quad = oracle::lemma_I_integral(m, n, Y);
                run.check("lemma_I.m" + std::to_string(m) + ".n" + std::to_string(n),
                          closed, quad, 1e-4 * std::max(1.0, std::abs(closed)));
            }
    for (unsigned n = 1; n <= 3; ++n)
        for (double Y : {2.718281828459045, 10.0}) {
            double closed = lemma_J(n, Y);
            double quad = oracle::lemma_J_integral(n, Y);
            run.check("lemma_J.n" + std::to_string(n), closed, quad,
                      1e-4 * std::max(1.0, std::abs(closed)));
        }
}

void oracle_ideals(OracleRun& run) {
    auto ideals = enumerate_ideals(2000);
    run.check_exact("ideal_count.vs.gauss_circle",
                    ideals.size() == oracle::gauss_circle_quarter_count(2000),
                    "norms <= 2000");

    for (unsigned l = 1; l <= 2; ++l) {
        auto id200 = enumerate_ideals(200);
        double gap = min_positive_angle_gap(id200);
        double K = M_PI / (2 * gap) * 1.25; // pi/(2K) safely below the minimal gap
        double ve = variance_exact(l, K, 200);
        double vd = variance_diagonal(l, K, 200);
        run.check("rw.exact_vs_diagonal.l" + std::to_string(l), ve, vd,
                  1e-10 * std::abs(vd));
    }
    double ve = variance_exact(1, 50, 10);
    double vq = oracle::rw_variance_quadrature(1, 50, 10, 100000);
    run.check("rw.exact_vs_quadrature", ve, vq, 1e-8);
}

int run_oracle_check(const std::string& scope, u64 seed) {
    OracleRun run;
    run.seed = seed;
    if (scope == "arith" || scope == "all") oracle_arith(run);
    if (scope == "moments" || scope == "all") oracle_moments(run);
    if (scope == "constants" || scope == "all") oracle_constants(run);
    if (scope == "diagonal" || scope == "all") oracle_diagonal(run);
    if (scope == "lemmas" || scope == "all") oracle_lemmas(run);
    if (scope == "ideals" || scope == "all") oracle_ideals(run);
    std::cout << (run.failures == 0 ? "ALL PASS" : "FAILURES: " + std::to_string(run.failures))
              << "\n";
    return run.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symvar: divisor-variance laboratory"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags are accepted after the subcommand too
    app.set_config("--config", "", "config file with key=value lines");

    GlobalOpts g;
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)")
        ->envname("SYMVAR_THREADS");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", g.output, "output path (default: stdout)");
    app.add_option("--seed", g.seed, "seed for randomized property checks");

    // constants
    auto* c_cmd = app.add_subcommand("constants", "Euler-product constants");
    std::string c_setting = "S";
    unsigned c_k = 1;
    u64 c_cutoff = 1000000;
    c_cmd->add_option("--setting", c_setting, "T | S | N | landau")
        ->check(CLI::IsMember({"T", "S", "N", "landau"}));
    c_cmd->add_option("--k,--l", c_k, "fold count");
    c_cmd->add_option("--cutoff", c_cutoff, "prime cutoff");

    // moment
    auto* m_cmd = app.add_subcommand("moment", "exact symplectic moment");
    unsigned m_k = 1, m_n = 0, m_N = 1;
    m_cmd->add_option("--k", m_k)->required();
    m_cmd->add_option("--n", m_n)->required();
    m_cmd->add_option("--N", m_N)->required();

    // gamma
    auto* g_cmd = app.add_subcommand("gamma", "leading coefficient / gamma monomial");
    unsigned g_k = 1;
    double g_c = -1.0;
    g_cmd->add_option("--k", g_k)->required();
    g_cmd->add_option("--c", g_c, "evaluate gamma at c in [0, 1/2]");

    // diagonal
    auto* d_cmd = app.add_subcommand("diagonal", "exact diagonal sum");
    unsigned d_k = 1;
    u64 d_x = 100, d_cutoff = 100000;
    double d_A = 0.0, d_B = 1.0;
    bool d_weighted = false, d_brute = false;
    d_cmd->add_option("--k", d_k);
    d_cmd->add_option("--x", d_x)->required();
    d_cmd->add_option("--A", d_A);
    d_cmd->add_option("--B", d_B);
    d_cmd->add_flag("--weighted", d_weighted);
    d_cmd->add_flag("--brute", d_brute, "use the O(x^2) oracle route");
    d_cmd->add_option("--cutoff", d_cutoff, "prime cutoff for the predicted constant");

    // variance-t / variance-s / variance-n
    auto* vt_cmd = app.add_subcommand("variance-t", "empirical T variance");
    auto* vs_cmd = app.add_subcommand("variance-s", "empirical S variance");
    auto* vn_cmd = app.add_subcommand("variance-n", "Rudnick-Waxman variance");
    unsigned v_k = 1;
    u64 v_x = 100;
    double v_y = 0.0, v_K = 0.0, v_c = 0.0;
    u64 v_cutoff = 100000;
    for (auto* cmd : {vt_cmd, vs_cmd}) {
        cmd->add_option("--k", v_k);
        cmd->add_option("--x", v_x)->required();
        cmd->add_option("--y", v_y, "modulus range start (else derived from --c)");
        cmd->add_option("--c", v_c, "c = log x / log y");
        cmd->add_option("--cutoff", v_cutoff);
    }
    vn_cmd->add_option("--l,--k", v_k);
    vn_cmd->add_option("--x", v_x)->required();
    vn_cmd->add_option("--K", v_K, "window scale (else derived from --c)");
    vn_cmd->add_option("--c", v_c, "c = log x / (2 log K)");
    vn_cmd->add_option("--cutoff", v_cutoff);

    // ratios
    auto* r_cmd = app.add_subcommand("ratios", "empirical/predicted ratio table");
    std::string r_setting = "T";
    unsigned r_k = 1;
    double r_c = 0.5;
    std::vector<u64> r_xs;
    u64 r_cutoff = 100000;
    r_cmd->add_option("--setting", r_setting)->check(CLI::IsMember({"T", "S", "N"}));
    r_cmd->add_option("--k,--l", r_k);
    r_cmd->add_option("--c", r_c)->required();
    r_cmd->add_option("--x", r_xs, "x grid")->required()->delimiter(',');
    r_cmd->add_option("--cutoff", r_cutoff);

    // oracle-check
    auto* o_cmd = app.add_subcommand("oracle-check", "run the derived-value oracles");
    std::string o_scope = "all";
    o_cmd->add_option("--scope", o_scope)
        ->check(CLI::IsMember({"arith", "moments", "constants", "diagonal", "lemmas",
                               "ideals", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        set_thread_count(g.threads);

        if (c_cmd->parsed()) {
            ConstantResult r;
            if (c_setting == "T") r = a_T(c_k, c_cutoff);
            else if (c_setting == "S") r = a_S(c_k, c_cutoff);
            else if (c_setting == "N") r = a_N(c_k, c_cutoff);
            else r = landau_ramanujan(c_cutoff);
            // a single constant is a JSON record unless CSV is asked for
            bool as_csv = app.count("--format") > 0 && g.format == "csv";
            std::string content = as_csv ? csv_constant(r)
                                         : constant_to_json(r).dump(2) + "\n";
            write_artifact(g, content,
                           r.name + " = " + r.value.str(20) + " (cutoff " +
                               format_u64(r.prime_cutoff) + ", tail " +
                               format_double(r.tail_bound) + ")");
            return 0;
        }
        if (m_cmd->parsed()) {
            cpp_int v = symplectic_moment(m_k, m_n, m_N);
            write_artifact(g, v.str() + "\n", "moment = " + v.str());
            return 0;
        }
        if (g_cmd->parsed()) {
            cpp_rational lead = gamma_leading_coefficient(g_k);
            std::string content;
            if (g_c >= 0.0)
                content = format_double(gamma_value(g_k, g_c)) + "\n";
            else
                content = lead.str() + "\n";
            write_artifact(g, content, "gamma_leading = " + lead.str());
            return 0;
        }
        if (d_cmd->parsed()) {
            Interval iv;
            iv.A = cpp_rational(static_cast<long long>(d_A * 1000000), 1000000);
            iv.B = cpp_rational(static_cast<long long>(d_B * 1000000), 1000000);
            auto res = d_brute ? diagonal_sum_bruteforce(d_k, d_x, iv, d_weighted)
                               : diagonal_sum(d_k, d_x, iv, d_weighted);
            double pred = 0.0;
            if (d_x >= 3)
                pred = predicted_diagonal(d_k, static_cast<double>(d_x),
                                          d_weighted ? Setting::T : Setting::S, iv,
                                          d_cutoff);
            std::string content = csv_diagonal_rows({res}, {pred});
            write_artifact(g, content, "D = " + rational_decimal_string(res.value, 20));
            return 0;
        }
        if (vt_cmd->parsed() || vs_cmd->parsed()) {
            bool is_t = vt_cmd->parsed();
            double y = v_y;
            double c = v_c;
            if (y <= 0) {
                if (!(c > 0 && c <= 0.5))
                    throw validation_error("need --y or --c in (0, 1/2]");
                y = std::pow(static_cast<double>(v_x), 1.0 / c);
            } else {
                c = std::log(static_cast<double>(v_x)) / std::log(y);
            }
            // the gamma monomial only covers c <= 1/2; outside it the empirical
            // value still makes sense but there is no prediction to compare to
            bool predictable = c <= 0.5 + 1e-12;
            std::vector<VarianceReport> rows;
            VarianceReport row;
            row.setting = is_t ? Setting::T : Setting::S;
            row.k_or_l = v_k;
            row.x = v_x;
            row.y_or_K = y;
            row.empirical = is_t ? empirical_variance_T(v_k, v_x, y)
                                 : empirical_variance_S(v_k, v_x, y);
            if (predictable) {
                ConstantResult a = is_t ? a_T(v_k, v_cutoff) : a_S(v_k, v_cutoff);
                double shape = rational_to_double(gamma_leading_coefficient(v_k)) *
                               std::pow(std::log(static_cast<double>(v_x)),
                                        static_cast<double>(moment_degree(v_k)));
                row.predicted = static_cast<double>(a.value) *
                                (is_t ? static_cast<double>(v_x)
                                      : static_cast<double>(v_x) / 4.0) *
                                shape;
                row.ratio = row.empirical / row.predicted;
            }
            rows.push_back(row);
            std::string content = g.format == "json"
                                      ? json_variance_reports(rows).dump(2) + "\n"
                                      : csv_variance_reports(rows);
            write_artifact(g, content, "empirical = " + format_double(row.empirical) +
                                           ", ratio = " + format_double(row.ratio));
            return 0;
        }
        if (vn_cmd->parsed()) {
            double K = v_K;
            if (K <= 0) {
                if (!(v_c > 0 && v_c <= 0.5))
                    throw validation_error("need --K or --c in (0, 1/2]");
                K = std::pow(static_cast<double>(v_x), 1.0 / (2.0 * v_c));
            }
            RwVarianceRow row;
            row.l = v_k;
            row.x = v_x;
            row.K = K;
            row.var_exact = variance_exact(v_k, K, v_x);
            row.var_diagonal = variance_diagonal(v_k, K, v_x);
            ConstantResult a = a_N(v_k, v_cutoff);
            row.predicted = predicted_variance_N(v_k, K, static_cast<double>(v_x),
                                                 static_cast<double>(a.value));
            row.ratio = row.var_exact / row.predicted;
            std::vector<RwVarianceRow> rows{row};
            std::string content = g.format == "json" ? json_rw_rows(rows).dump(2) + "\n"
                                                     : csv_rw_rows(rows);
            write_artifact(g, content, "var_exact = " + format_double(row.var_exact) +
                                           ", ratio = " + format_double(row.ratio));
            return 0;
        }
        if (r_cmd->parsed()) {
            Setting s = r_setting == "T" ? Setting::T
                                         : r_setting == "S" ? Setting::S : Setting::N;
            auto rows = ratio_report(s, r_k, r_c, r_xs, r_cutoff);
            std::string content = g.format == "json"
                                      ? json_variance_reports(rows).dump(2) + "\n"
                                      : csv_variance_reports(rows);
            write_artifact(g, content,
                           "rows = " + std::to_string(rows.size()) + ", last ratio = " +
                               format_double(rows.empty() ? 0.0 : rows.back().ratio));
            return 0;
        }
        if (o_cmd->parsed()) return run_oracle_check(o_scope, g.seed);
    } catch (const symvar::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
