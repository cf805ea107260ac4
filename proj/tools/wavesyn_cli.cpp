// Command-line surface: ingestion, algorithm dispatch, dataset
// generation, a benchmark harness, and machine-readable CSV reports.
//
// Exit codes: 0 success, 2 usage error, 3 data error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavesyn/best_basis.hpp"
#include "wavesyn/error_metrics.hpp"
#include "wavesyn/greedy.hpp"
#include "wavesyn/haar_dp.hpp"
#include "wavesyn/image2d.hpp"
#include "wavesyn/oracle.hpp"
#include "wavesyn/quantize.hpp"
#include "wavesyn/representation.hpp"
#include "wavesyn/signal_io.hpp"
#include "wavesyn/streaming.hpp"
#include "wavesyn/transform.hpp"

namespace {

using namespace wavesyn;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double parse_p(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return kInf;
    double p = 0.0;
    try {
        size_t used = 0;
        p = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--p", "expected a number >= 1 or 'inf'");
    }
    if (p < 1.0) throw CLI::ValidationError("--p", "p must be >= 1");
    return p;
}

std::string p_to_string(double p) {
    if (p == kInf) return "inf";
    std::ostringstream ss;
    ss << p;
    return ss.str();
}

std::vector<double> load_signal(const std::string& path, int csv_column,
                                bool pad, bool strip_negative = false) {
    std::vector<double> f = read_signal(path, csv_column);
    if (strip_negative)
        std::erase_if(f, [](double v) { return v < 0.0; });
    if (f.empty()) throw DataError(path + ": no data values");
    if (pad) f = pad_to_pow2(std::move(f));
    if (!is_power_of_two(static_cast<std::int64_t>(f.size())))
        throw DataError(path + ": length " + std::to_string(f.size()) +
                        " is not a power of two (use --pad)");
    return f;
}

/// Report files are CSV with the resolved configuration echoed as
/// "# key=value" header lines.
struct Report {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> rows;

    void set(const std::string& k, const std::string& v) {
        config.emplace_back(k, v);
    }
    template <typename T>
    void set(const std::string& k, T v) {
        std::ostringstream ss;
        ss.precision(17);
        ss << v;
        config.emplace_back(k, ss.str());
    }
    void write(const std::string& path, const std::string& columns) const {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!path.empty() && path != "-") {
            file.open(path);
            if (!file) throw DataError("cannot open for writing: " + path);
            os = &file;
        }
        for (const auto& [k, v] : config) *os << "# " << k << '=' << v << '\n';
        *os << columns << '\n';
        for (const auto& r : rows) *os << r << '\n';
    }
};

CostModel load_cost_model(const std::string& table_path, std::int64_t n,
                          const std::string& coding, int value_width) {
    CostModel costs;
    costs.coding = coding == "scale-aware" ? IndexCoding::ScaleAware
                                           : IndexCoding::Flat;
    costs.value_width = value_width;
    if (!table_path.empty()) {
        std::ifstream is(table_path);
        if (!is) throw DataError("cannot open: " + table_path);
        costs.fixed_cost.assign(n, 0);
        std::string line;
        std::int64_t lineno = 0, seen = 0;
        while (std::getline(is, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            if (lineno == 1 && line.find("flat") != std::string::npos) continue;
            std::int64_t flat = 0, bits = 0;
            char comma = 0;
            std::istringstream ss(line);
            if (!(ss >> flat >> comma >> bits) || comma != ',' || flat < 1 ||
                flat > n || bits < 0)
                throw DataError(table_path + ":" + std::to_string(lineno) +
                                ": expected 'flat_index,bits'");
            costs.fixed_cost[flat - 1] = bits;
            ++seen;
        }
        if (seen != n)
            throw DataError(table_path + ": expected " + std::to_string(n) +
                            " cost rows, got " + std::to_string(seen));
    }
    return costs;
}

struct CompressArgs {
    std::string input, output, recon_path, report_path, weights_path;
    std::string algo = "greedy";
    std::string basis = "haar";
    std::string p_str = "2";
    std::string index_coding = "flat";
    std::string cost_table;
    int csv_column = -1;
    int B = 8;
    double eps = 0.1;
    bool pad = false;
    bool stats = false;
    int threads = 1;
    std::int64_t budget_bits = 256;
    int value_width = 32;
    std::int64_t min_block = 2;
};

int run_compress(const CompressArgs& a) {
    const double p = parse_p(a.p_str);
    const std::vector<double> f = load_signal(a.input, a.csv_column, a.pad);
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    if (a.B < 0 || a.B > n)
        throw CLI::ValidationError("--B", "B must be in [0, n]");

    Weights weights;
    const Weights* wptr = nullptr;
    if (!a.weights_path.empty()) {
        weights = Weights::make(read_signal(a.weights_path));
        if (static_cast<std::int64_t>(weights.w.size()) != n)
            throw DataError(a.weights_path + ": expected " +
                            std::to_string(n) + " weights");
        wptr = &weights;
    }

    Report report;
    report.set("command", "compress");
    report.set("input", a.input);
    report.set("n", n);
    report.set("algo", a.algo);
    report.set("basis", a.basis);
    report.set("B", a.B);
    report.set("p", p_to_string(p));
    report.set("eps", a.eps);
    if (wptr) report.set("weights", a.weights_path);
    report.set("threads", a.threads);

    const FilterBank fb = FilterBank::by_name(a.basis);
    GreedyStats gstats;
    DpStats dstats;
    Representation rep;
    std::int64_t used_bits = -1;
    double lower_bound = -1.0;

    const auto t0 = Clock::now();
    if (a.algo == "greedy") {
        rep = greedy_select(f, a.B, p, fb, a.stats ? &gstats : nullptr);
    } else if (a.algo == "universal") {
        rep = universal_select(f, a.B, fb);
    } else if (a.algo == "unrest") {
        rep = fptas(f, a.B, p, a.eps, wptr, a.stats ? &dstats : nullptr);
    } else if (a.algo == "unrest-fine") {
        rep = fptas_finegrain(f, a.B, p, a.eps, wptr,
                              a.stats ? &dstats : nullptr);
    } else if (a.algo == "hybrid") {
        rep = hybrid(f, a.B, p, a.eps, wptr, a.stats ? &dstats : nullptr);
    } else if (a.algo == "rest") {
        rep = rest_optimal(f, a.B, p, wptr);
    } else if (a.algo == "spectrum") {
        const CostModel costs =
            load_cost_model(a.cost_table, n, a.index_coding, a.value_width);
        SpectrumResult res = spectrum_select(f, costs, a.budget_bits, p, fb);
        rep = std::move(res.rep);
        used_bits = res.used_bits;
        lower_bound = res.lower_bound;
        report.set("budget_bits", a.budget_bits);
    } else if (a.algo == "bitcomplexity") {
        const CostModel costs =
            load_cost_model(a.cost_table, n, a.index_coding, a.value_width);
        ValueCostModel values;
        values.max_width = a.value_width;
        BitComplexityResult res =
            bitcomplexity_select(f, costs, values, a.budget_bits, p, fb);
        rep = std::move(res.rep);
        used_bits = res.used_bits;
        report.set("budget_bits", a.budget_bits);
        report.set("guess", res.guess);
        report.set("feasible", res.feasible ? 1 : 0);
    } else if (a.algo == "best-basis") {
        CutSolution cut =
            best_basis_select(f, a.B, p, inner_greedy(p), a.min_block);
        const double wall = elapsed_ms(t0);
        report.set("min_block", a.min_block);
        report.rows.push_back("error," + std::to_string(cut.total_error));
        report.rows.push_back("wall_ms," + std::to_string(wall));
        for (const BlockPick& b : cut.blocks) {
            std::ostringstream ss;
            ss.precision(17);
            ss << "block," << b.j << ',' << b.shift << ',' << b.budget << ','
               << b.error;
            report.rows.push_back(ss.str());
        }
        if (!a.recon_path.empty()) write_signal(a.recon_path, cut.reconstruction);
        report.write(a.report_path, "key,value");
        return 0;
    } else {
        throw CLI::ValidationError("--algo", "unknown algorithm: " + a.algo);
    }
    const double wall = elapsed_ms(t0);

    if (!a.output.empty()) write_representation_file(a.output, rep);
    if (!a.recon_path.empty()) write_signal(a.recon_path, reconstruct(rep, fb));

    report.rows.push_back("error," + std::to_string(rep.reported_error));
    report.rows.push_back("terms," + std::to_string(rep.terms.size()));
    report.rows.push_back("wall_ms," + std::to_string(wall));
    if (used_bits >= 0) report.rows.push_back("used_bits," + std::to_string(used_bits));
    if (lower_bound >= 0.0)
        report.rows.push_back("lower_bound," + std::to_string(lower_bound));
    if (a.stats) {
        if (a.algo == "greedy")
            report.rows.push_back("peak_live_scored," +
                                  std::to_string(gstats.peak_live_scored));
        if (dstats.dp_runs > 0) {
            report.rows.push_back("dp_runs," + std::to_string(dstats.dp_runs));
            report.rows.push_back("peak_live_tables," +
                                  std::to_string(dstats.peak_live_tables));
            report.rows.push_back("table_entries_total," +
                                  std::to_string(dstats.table_entries_total));
            for (const auto& r : dstats.rung_csv)
                report.rows.push_back("rung," + r);
        }
    }
    report.write(a.report_path, "key,value");
    return 0;
}

int run_bench(const std::string& mode, const std::string& input,
              int csv_column, bool strip_negative, std::int64_t saw_n,
              std::int64_t saw_period, const std::string& algos_csv,
              const std::string& p_str, double eps, int B, int bmin, int bmax,
              int bstep, std::int64_t nmin, std::int64_t nmax, int repeats,
              const std::string& out_path) {
    const double p = parse_p(p_str);
    std::vector<double> f;
    if (input.empty()) {
        f = gen_saw(saw_n, saw_period);
    } else {
        try {
            f = load_signal(input, csv_column, true, strip_negative);
        } catch (const DataError& e) {
            throw DataError(std::string(e.what()) +
                            " (daily index series such as the DJIA closes are "
                            "available from the StatLib dataset archive)");
        }
    }
    const std::int64_t n = static_cast<std::int64_t>(f.size());

    std::vector<std::string> algos;
    {
        std::stringstream ss(algos_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) algos.push_back(tok);
    }
    auto run_algo = [&](const std::string& algo,
                        const std::vector<double>& sig, int b) {
        if (algo == "greedy") return greedy_select(sig, b, p, FilterBank::haar());
        if (algo == "unrest") return fptas(sig, b, p, eps);
        if (algo == "unrest-fine") return fptas_finegrain(sig, b, p, eps);
        if (algo == "hybrid") return hybrid(sig, b, p, eps);
        if (algo == "rest") return rest_optimal(sig, b, p);
        throw CLI::ValidationError("--algos", "unknown algorithm: " + algo);
    };

    Report report;
    report.set("command", "bench");
    report.set("mode", mode);
    report.set("dataset", input.empty() ? "saw" : input);
    report.set("n", n);
    report.set("p", p_to_string(p));
    report.set("eps", eps);

    if (mode == "errors") {
        report.set("B_grid", std::to_string(bmin) + ".." + std::to_string(bmax) +
                                 " step " + std::to_string(bstep));
        for (const auto& algo : algos)
            for (int b = bmin; b <= bmax; b += bstep) {
                const Representation rep = run_algo(algo, f, b);
                std::ostringstream row;
                row.precision(17);
                row << algo << ',' << b << ',' << rep.reported_error;
                report.rows.push_back(row.str());
            }
        report.write(out_path, "algo,B,error");
    } else if (mode == "timing") {
        report.set("B", B);
        report.set("repeats", repeats);
        for (const auto& algo : algos)
            for (std::int64_t len = nmin; len <= std::min(nmax, n); len *= 2) {
                const std::vector<double> prefix(f.begin(), f.begin() + len);
                std::vector<double> times;
                for (int r = 0; r < repeats; ++r) {
                    const auto t0 = Clock::now();
                    run_algo(algo, prefix, B);
                    times.push_back(elapsed_ms(t0));
                }
                std::sort(times.begin(), times.end());
                std::ostringstream row;
                row.precision(17);
                row << algo << ',' << len << ',' << times[times.size() / 2];
                report.rows.push_back(row.str());
            }
        report.write(out_path, "algo,n,wall_ms");
    } else {
        throw CLI::ValidationError("--mode", "expected 'errors' or 'timing'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"B-term and bit-budget wavelet representations under lp norms"};
    app.require_subcommand(1);

    // ---- transform ----------------------------------------------------
    std::string t_input, t_output, t_basis = "haar", t_scaling = "orthonormal";
    int t_csv_column = -1;
    bool t_pad = false;
    auto* t = app.add_subcommand("transform",
                                 "Full wavelet transform to a coefficient CSV");
    t->add_option("--input", t_input, "signal file")->required();
    t->add_option("--output", t_output, "coefficient CSV path")->required();
    t->add_option("--basis", t_basis, "haar|db2|db3|db4");
    t->add_option("--scaling", t_scaling, "orthonormal|a|b");
    t->add_option("--csv-column", t_csv_column, "read this CSV column (0-based)");
    t->add_flag("--pad", t_pad, "zero-pad to the next power of two");

    // ---- compress -----------------------------------------------------
    CompressArgs c;
    auto* cc = app.add_subcommand("compress", "Sparse representation of a signal");
    cc->add_option("--input", c.input, "signal file")->required();
    cc->add_option("--algo", c.algo,
                   "greedy|universal|unrest|unrest-fine|hybrid|rest|spectrum|"
                   "bitcomplexity|best-basis");
    cc->add_option("--B", c.B, "term budget");
    cc->add_option("--p", c.p_str, "error norm: number >= 1 or 'inf'");
    cc->add_option("--eps", c.eps, "approximation slack")
        ->check(CLI::PositiveNumber);
    cc->add_option("--basis", c.basis, "filter bank (greedy/universal only)");
    cc->add_option("--weights", c.weights_path, "per-point weights file");
    cc->add_option("--output", c.output, "representation file");
    cc->add_option("--recon", c.recon_path, "reconstruction signal file");
    cc->add_option("--report", c.report_path, "report CSV ('-' = stdout)");
    cc->add_option("--csv-column", c.csv_column, "read this CSV column");
    cc->add_option("--budget-bits", c.budget_bits, "bit budget (quantizing algos)");
    cc->add_option("--value-width", c.value_width, "fixed-point value width");
    cc->add_option("--index-coding", c.index_coding, "flat|scale-aware");
    cc->add_option("--cost-table", c.cost_table, "CSV 'flat_index,bits'");
    cc->add_option("--min-block", c.min_block, "best-basis minimum block length");
    cc->add_option("--threads", c.threads, "parallelism bound")
        ->check(CLI::PositiveNumber);
    cc->add_flag("--pad", c.pad, "zero-pad to the next power of two");
    cc->add_flag("--stats", c.stats, "emit instrumentation rows");

    // ---- reconstruct --------------------------------------------------
    std::string r_input, r_output, r_original, r_p = "2";
    auto* rr = app.add_subcommand("reconstruct",
                                  "Synthesize a signal from a representation");
    rr->add_option("--input", r_input, "representation file")->required();
    rr->add_option("--output", r_output, "signal file")->required();
    rr->add_option("--original", r_original, "optional reference for error");
    rr->add_option("--p", r_p, "norm for the reported error");

    // ---- oracle -------------------------------------------------------
    std::string o_input, o_p = "2";
    int o_B = 2, o_csv_column = -1;
    bool o_restricted = false;
    auto* oo = app.add_subcommand("oracle",
                                  "Exhaustive optimum on tiny inputs (n <= 16)");
    oo->add_option("--input", o_input, "signal file")->required();
    oo->add_option("--B", o_B, "term budget");
    oo->add_option("--p", o_p, "error norm");
    oo->add_option("--csv-column", o_csv_column, "read this CSV column");
    oo->add_flag("--restricted", o_restricted, "fix values to <f,psi>");

    // ---- gen-saw ------------------------------------------------------
    std::int64_t s_n = 2048, s_period = 256;
    std::string s_output;
    auto* ss = app.add_subcommand("gen-saw", "Periodic ramp dataset");
    ss->add_option("--n", s_n, "total length");
    ss->add_option("--period", s_period, "ramp length (must divide n)");
    ss->add_option("--output", s_output, "signal file")->required();

    // ---- bench --------------------------------------------------------
    std::string b_mode = "errors", b_input, b_algos = "greedy,unrest,hybrid,rest";
    std::string b_p = "inf", b_output;
    int b_csv_column = -1, b_B = 16, b_bmin = 4, b_bmax = 64, b_bstep = 4;
    int b_repeats = 3;
    std::int64_t b_saw_n = 2048, b_saw_period = 256, b_nmin = 512, b_nmax = 8192;
    double b_eps = 1.0;
    bool b_strip_negative = false;
    auto* bb = app.add_subcommand("bench", "Error-vs-B and timing sweeps");
    bb->add_option("--mode", b_mode, "errors|timing");
    bb->add_option("--input", b_input, "dataset file (default: generated saw)");
    bb->add_option("--csv-column", b_csv_column, "read this CSV column");
    bb->add_flag("--strip-negative", b_strip_negative,
                 "drop negative values at ingestion");
    bb->add_option("--saw-n", b_saw_n, "generated saw length");
    bb->add_option("--saw-period", b_saw_period, "generated saw period");
    bb->add_option("--algos", b_algos, "comma-separated algorithm list");
    bb->add_option("--p", b_p, "error norm");
    bb->add_option("--eps", b_eps, "approximation slack");
    bb->add_option("--B", b_B, "budget for timing mode");
    bb->add_option("--bmin", b_bmin, "smallest B (errors mode)");
    bb->add_option("--bmax", b_bmax, "largest B (errors mode)");
    bb->add_option("--bstep", b_bstep, "B stride (errors mode)");
    bb->add_option("--nmin", b_nmin, "smallest prefix (timing mode)");
    bb->add_option("--nmax", b_nmax, "largest prefix (timing mode)");
    bb->add_option("--repeats", b_repeats, "runs per point, median reported");
    bb->add_option("--output", b_output, "report CSV ('-' = stdout)");

    // ---- image --------------------------------------------------------
    std::string i_input, i_output, i_report, i_p = "2";
    std::int64_t i_B = 64;
    bool i_ascii = false;
    auto* ii = app.add_subcommand("image", "2D greedy compression of a PGM image");
    ii->add_option("--input", i_input, "PGM file (P2 or P5)")->required();
    ii->add_option("--B", i_B, "coefficient budget");
    ii->add_option("--p", i_p, "error norm");
    ii->add_option("--output", i_output, "reconstructed PGM");
    ii->add_option("--report", i_report, "report CSV ('-' = stdout)");
    ii->add_flag("--ascii", i_ascii, "write P2 instead of P5");

    try {
        app.parse(argc, argv);

        if (t->parsed()) {
            const std::vector<double> f = load_signal(t_input, t_csv_column, t_pad);
            const CoefficientVector coeffs = cascade_forward(
                f, FilterBank::by_name(t_basis),
                t_scaling == "a"   ? Scaling::AScaled
                : t_scaling == "b" ? Scaling::BScaled
                                   : scaling_from_string(t_scaling));
            write_coefficients_csv(t_output, coeffs);
        } else if (cc->parsed()) {
            return run_compress(c);
        } else if (rr->parsed()) {
            const Representation rep = read_representation_file(r_input);
            const std::vector<double> f =
                reconstruct(rep, FilterBank::by_name(rep.basis));
            write_signal(r_output, f);
            if (!r_original.empty()) {
                const std::vector<double> ref = read_signal(r_original);
                std::cout.precision(17);
                std::cout << "error," << lp_error(ref, f, parse_p(r_p)) << '\n';
            }
        } else if (oo->parsed()) {
            const std::vector<double> f = load_signal(o_input, o_csv_column, false);
            const double p = parse_p(o_p);
            const FilterBank fb = FilterBank::haar();
            const OracleResult res =
                o_restricted ? brute_force_restricted(f, o_B, p, fb)
                             : brute_force_unrestricted(f, o_B, p, fb);
            std::cout.precision(17);
            std::cout << "error," << res.error << '\n';
            for (size_t i = 0; i < res.support.size(); ++i)
                std::cout << "term," << res.support[i].flat << ','
                          << res.values[i] << '\n';
        } else if (ss->parsed()) {
            if (s_period <= 0 || s_n % s_period != 0)
                throw CLI::ValidationError("--period", "period must divide n");
            write_signal(s_output, gen_saw(s_n, s_period));
        } else if (bb->parsed()) {
            return run_bench(b_mode, b_input, b_csv_column, b_strip_negative,
                             b_saw_n, b_saw_period, b_algos, b_p, b_eps, b_B,
                             b_bmin, b_bmax, b_bstep, b_nmin, b_nmax,
                             b_repeats, b_output);
        } else if (ii->parsed()) {
            const double p = parse_p(i_p);
            const Image img = read_pgm(i_input);
            const Greedy2DResult res =
                greedy2d(img, i_B, p, FilterBank::haar());
            if (!i_output.empty()) {
                Image out = res.reconstruction;
                out.maxval = img.maxval;
                write_pgm(i_output, out, !i_ascii);
            }
            Report report;
            report.set("command", "image");
            report.set("input", i_input);
            report.set("width", img.width);
            report.set("height", img.height);
            report.rows.push_back(p_to_string(p) + "," + std::to_string(i_B) +
                                  "," + std::to_string(res.error));
            report.write(i_report, "p,B,error");
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
