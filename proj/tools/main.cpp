#include "josc/asymptotics.hpp"
#include "josc/criterion.hpp"
#include "josc/io.hpp"
#include "josc/model.hpp"
#include "josc/model_config.hpp"
#include "josc/recurrence.hpp"
#include "josc/spectral.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

using josc::Index;

struct ModelFlags {
    std::string family = "kneser";
    double c = 0.0;
    int k = 1;
    std::string model_file;
};

void add_model_flags(CLI::App* cmd, ModelFlags& mf) {
    cmd->add_option("--family", mf.family, "Model family")
        ->check(CLI::IsMember({"kneser", "loglog", "variable_a", "table"}));
    cmd->add_option("--c", mf.c, "Coupling constant for kneser/loglog");
    cmd->add_option("--k", mf.k, "Iterated-log depth for loglog")->check(CLI::Range(0, 3));
    cmd->add_option("--model-file", mf.model_file, "JSON model config file");
}

josc::CoefficientModel resolve_model(const ModelFlags& mf) {
    if (!mf.model_file.empty()) return josc::model_from_config_file(mf.model_file);
    if (mf.family == "kneser") return josc::kneser_family(mf.c);
    if (mf.family == "loglog") return josc::loglog_family(mf.k, mf.c);
    throw std::invalid_argument("--family " + mf.family + " requires --model-file");
}

/// --out PATH writes there; otherwise stdout.
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open --out file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void check_window(double window) {
    if (!(window > 0.0 && window < 1.0))
        throw std::invalid_argument("--window must lie strictly between 0 and 1");
}

int exit_code_for(josc::Verdict v) {
    return v == josc::Verdict::Inconclusive ? 2 : 0;
}

int run_classify(const ModelFlags& mf, Index nmax, double margin, double window,
                 const std::string& format, const std::string& out_path) {
    check_window(window);
    if (nmax < 100) throw std::invalid_argument("--nmax must be >= 100 for classify");
    const josc::CoefficientModel model = resolve_model(mf);
    const josc::CriterionSeries series = josc::criterion_series(model, nmax, window);
    const josc::Classification cls = josc::classify(series, margin);
    OutputSink sink(out_path);
    if (format == "csv") {
        josc::write_series_csv(sink.stream(), series);
        std::cerr << "verdict: " << josc::to_string(cls.verdict)
                  << " (tail_inf=" << josc::format_shortest(cls.tail_inf)
                  << ", tail_sup=" << josc::format_shortest(cls.tail_sup) << ")\n";
    } else {
        sink.stream() << josc::classification_json(cls).dump(2) << '\n';
    }
    if (!cls.note.empty()) std::cerr << "note: " << cls.note << '\n';
    return exit_code_for(cls.verdict);
}

int run_trace(const ModelFlags& mf, Index nmax, double lambda,
              const std::string& out_path) {
    const josc::CoefficientModel model = resolve_model(mf);
    josc::SolveOptions opts;
    opts.keep_values = true;
    opts.accumulate_q = true;
    const josc::SolutionTrace trace =
        josc::solve_recurrence(model, lambda, {1.0, 1.0}, nmax, opts);
    OutputSink sink(out_path);
    josc::write_trace_csv(sink.stream(), trace);
    std::cerr << "nodes in [" << trace.first() << ", " << trace.last() - 1
              << "]: " << trace.nodes.size() << '\n';
    return 0;
}

int run_spectrum(const ModelFlags& mf, double lambda, std::vector<Index> sizes,
                 const std::string& format, const std::string& out_path) {
    const josc::CoefficientModel model = resolve_model(mf);
    const josc::SpectralCount profile =
        josc::growth_profile(model, lambda, std::move(sizes));
    OutputSink sink(out_path);
    if (format == "csv")
        josc::write_profile_csv(sink.stream(), profile);
    else
        sink.stream() << josc::profile_json(profile).dump(2) << '\n';
    return 0;
}

int run_verify(const ModelFlags& mf, const std::string& suite, Index nmax,
               bool nmax_given, int k, double epsilon, const std::string& out_path) {
    std::vector<josc::BoundednessReport> reports;
    const auto pick = [&](Index fallback) { return nmax_given ? nmax : fallback; };

    if (suite == "lemma31" || suite == "all") {
        const josc::CoefficientModel model = resolve_model(mf);
        const Index N = pick(1000000);
        reports.push_back(josc::verify_ratio_limit(model, N, 1e-5));
        reports.push_back(josc::verify_lower_bound(model, N));
    }
    if (suite == "cor22" || suite == "all") {
        if (k < 1) throw std::invalid_argument("--suite cor22 requires --k in {1,2,3}");
        const Index N = pick(100000);
        reports.push_back(
            josc::verify_loglog_derivatives(k, {50.0, 100.0, 1000.0, 10000.0, 100000.0}));
        reports.push_back(josc::verify_qk_vs_lnk(k, N));
        reports.push_back(josc::verify_btilde_order(k, N));
    }
    if (suite == "expansion" || suite == "all") {
        const josc::CoefficientModel model = resolve_model(mf);
        const Index N = pick(100000);
        reports.push_back(josc::verify_b1_expansion(model, {0.5, 0.0}, N));
        reports.push_back(josc::verify_b1_expansion(model, {0.5, 1.0}, N));
        reports.push_back(josc::verify_u_weight_relation(model, N));
    }
    if (suite == "kernel" || suite == "all") {
        const josc::CoefficientModel model = resolve_model(mf);
        const josc::KernelBoundChecks checks =
            josc::verify_kernel_bound(model, epsilon, pick(1000));
        reports.push_back(checks.kernel);
        reports.push_back(checks.delta_order);
        reports.push_back(checks.q1_difference);
    }
    if (suite == "all") {
        const josc::CoefficientModel probe_model =
            josc::kneser_family(0.25 + epsilon * epsilon);
        reports.push_back(josc::probe_phase_report(probe_model, epsilon, pick(100000)));
    }

    auto arr = nlohmann::ordered_json::array();
    bool all_passed = true;
    for (const auto& r : reports) {
        arr.push_back(josc::report_json(r));
        all_passed = all_passed && r.passed;
    }
    OutputSink sink(out_path);
    sink.stream() << arr.dump(2) << '\n';
    return all_passed ? 0 : 1;
}

int run_sweep(const ModelFlags& mf, double c_from, double c_to, double c_step,
              Index nmax, double lambda, double margin, double window, int jobs,
              const std::string& out_path) {
    check_window(window);
    if (mf.family != "kneser" && mf.family != "loglog")
        throw std::invalid_argument("sweep supports --family kneser or loglog");
    std::vector<double> grid;
    if (c_step > 0.0) {
        for (Index i = 0;; ++i) {
            const double c = c_from + static_cast<double>(i) * c_step;
            if (c > c_to + c_step * 1e-9) break;
            grid.push_back(c);
        }
    } else if (c_from == c_to) {
        grid.push_back(c_from);
    }
    if (grid.empty()) throw std::invalid_argument("sweep grid is empty");

    std::vector<std::string> rows(grid.size());
    std::vector<std::string> failures(grid.size());
    std::atomic<std::size_t> cursor{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= grid.size()) return;
            try {
                const double c = grid[i];
                const josc::CoefficientModel model =
                    mf.family == "kneser" ? josc::kneser_family(c)
                                          : josc::loglog_family(mf.k, c);
                const josc::Classification cls =
                    josc::classify_model(model, nmax, margin, window);
                const josc::NodeCountCheck chk =
                    josc::nodes_equal_counts(model, lambda, nmax);
                std::ostringstream row;
                row << josc::format_shortest(c) << ','
                    << josc::format_shortest(cls.tail_inf) << ','
                    << josc::format_shortest(cls.tail_sup) << ','
                    << josc::to_string(cls.verdict) << ',' << chk.nodes << ','
                    << chk.count;
                rows[i] = row.str();
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    const int n_threads = std::max(1, jobs);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!failures[i].empty())
            throw std::runtime_error("sweep failed at c = " +
                                     josc::format_shortest(grid[i]) + ": " + failures[i]);
    OutputSink sink(out_path);
    sink.stream() << "c,tail_inf,tail_sup,verdict,node_count,eig_count\n";
    for (const auto& row : rows) sink.stream() << row << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oscillation-based eigenvalue finiteness analysis for half-line Jacobi operators"};
    app.require_subcommand(1);

    ModelFlags mf;
    Index nmax = 100000;
    double lambda = 0.0;
    double margin = 1e-3;
    double window = 0.5;
    double epsilon = 1.0;
    double c_from = 0.0, c_to = 0.0, c_step = 0.0;
    int jobs = 1;
    std::string format = "json";
    std::string out_path;
    std::string suite = "all";
    std::vector<Index> sizes = {1000, 10000, 100000, 1000000};

    CLI::App* classify = app.add_subcommand("classify", "Classify a model as (non)oscillatory at the spectral edge");
    add_model_flags(classify, mf);
    classify->add_option("--nmax", nmax, "Tail length");
    classify->add_option("--margin", margin, "Decision margin around -1/4")
        ->check(CLI::NonNegativeNumber);
    classify->add_option("--window", window, "Trailing window fraction");
    classify->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    classify->add_option("--out", out_path, "Output path (default stdout)");

    CLI::App* trace = app.add_subcommand("trace", "Dump a solution trace as CSV");
    add_model_flags(trace, mf);
    trace->add_option("--nmax", nmax, "Last index");
    trace->add_option("--lambda", lambda, "Spectral parameter");
    trace->add_option("--out", out_path, "Output path (default stdout)");

    CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenvalue counts below lambda across truncation sizes");
    add_model_flags(spectrum, mf);
    spectrum->add_option("--lambda", lambda, "Count eigenvalues below this value");
    spectrum->add_option("--sizes", sizes, "Truncation sizes")->delimiter(',');
    spectrum->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    spectrum->add_option("--out", out_path, "Output path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "Run the asymptotic-estimate verification suite");
    add_model_flags(verify, mf);
    verify->add_option("--suite", suite)
        ->check(CLI::IsMember({"lemma31", "cor22", "expansion", "kernel", "all"}));
    CLI::Option* verify_nmax = verify->add_option("--nmax", nmax, "Range end (suite-specific default)");
    verify->add_option("--epsilon", epsilon, "Oscillation strength for the kernel checks")
        ->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path, "Output path (default stdout)");

    CLI::App* sweep = app.add_subcommand("sweep", "Classify across a grid of coupling constants");
    add_model_flags(sweep, mf);
    sweep->add_option("--c-from", c_from)->required();
    sweep->add_option("--c-to", c_to)->required();
    sweep->add_option("--c-step", c_step)->required();
    sweep->add_option("--nmax", nmax, "Tail length");
    sweep->add_option("--lambda", lambda, "Eigenvalue-count threshold");
    sweep->add_option("--margin", margin)->check(CLI::NonNegativeNumber);
    sweep->add_option("--window", window);
    sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_path, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (classify->parsed())
            return run_classify(mf, nmax, margin, window, format, out_path);
        if (trace->parsed()) return run_trace(mf, nmax, lambda, out_path);
        if (spectrum->parsed())
            return run_spectrum(mf, lambda, sizes, format, out_path);
        if (verify->parsed())
            return run_verify(mf, suite, nmax, verify_nmax->count() > 0, mf.k, epsilon,
                              out_path);
        if (sweep->parsed())
            return run_sweep(mf, c_from, c_to, c_step, nmax, lambda, margin, window,
                             jobs, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
