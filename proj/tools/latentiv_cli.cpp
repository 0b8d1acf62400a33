// latentiv command-line front end: infer, simulate, benchmark, pcurve.
//
// Exit codes: 0 success, 1 data error, 2 usage or configuration error.

#include "latentiv/benchmark.hpp"
#include "latentiv/core.hpp"
#include "latentiv/inference.hpp"
#include "latentiv/instruments.hpp"
#include "latentiv/pcurve.hpp"
#include "latentiv/report.hpp"
#include "latentiv/synthetic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace latentiv;

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
    int k_clusters = 15;
    double alpha = 0.05;
    int folds = 10;
    std::uint64_t seed = 1;
    std::optional<std::string> mode;
    std::string test = "cor";
    bool no_standardize = false;
    int restarts = 10;
    int max_iter = 100;
};

void add_common(CLI::App* cmd, CommonFlags& f)
{
    cmd->add_option("--k-clusters", f.k_clusters, "Clusters per instrument")->capture_default_str();
    cmd->add_option("--alpha", f.alpha, "Significance threshold")->capture_default_str();
    cmd->add_option("--folds", f.folds, "Folds for the ensemble decision")->capture_default_str();
    cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    cmd->add_option("--mode", f.mode, "Decision mode: strict or forced")
        ->check(CLI::IsMember({"strict", "forced"}));
    cmd->add_option("--test", f.test, "CI test: cor or mi")
        ->check(CLI::IsMember({"cor", "mi"}))
        ->capture_default_str();
    cmd->add_flag("--no-standardize", f.no_standardize, "Cluster on raw scales");
    cmd->add_option("--restarts", f.restarts, "k-means restarts")->capture_default_str();
    cmd->add_option("--max-iter", f.max_iter, "k-means iteration cap")->capture_default_str();
}

Config resolve(const CommonFlags& f, DecisionMode default_mode)
{
    Config cfg;
    cfg.k_clusters = f.k_clusters;
    cfg.alpha = f.alpha;
    cfg.n_folds = f.folds;
    cfg.seed = f.seed;
    cfg.decision_mode = f.mode ? (*f.mode == "strict" ? DecisionMode::StrictTree : DecisionMode::ForcedChoice)
                               : default_mode;
    cfg.test_kind = f.test == "mi" ? TestKind::ConditionalMutualInformation : TestKind::PartialCorrelation;
    cfg.standardize = !f.no_standardize;
    cfg.n_restarts = f.restarts;
    cfg.max_iter = f.max_iter;
    cfg.validate();
    std::cerr << "[latentiv] config " << to_json(cfg).dump() << '\n';
    return cfg;
}

void write_text(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << text;
}

template <typename T>
double mean_of(const std::vector<Verdict>& folds, T member)
{
    double s = 0.0;
    for (const Verdict& v : folds) s += v.*member;
    return folds.empty() ? 0.0 : s / static_cast<double>(folds.size());
}

int cmd_infer(const std::string& input, const CommonFlags& flags, bool ensemble, const std::string& out_path)
{
    const Config cfg = resolve(flags, DecisionMode::StrictTree);
    if (!fs::exists(input)) throw Error(ErrorKind::Io, "input file not found: " + input);
    const DataPair d = load_pair(input);
    const RngStream rng(cfg.seed);

    nlohmann::ordered_json doc;
    doc["input"] = input;
    doc["n"] = d.size();
    if (ensemble) {
        const EnsembleVerdict ev = ensemble_infer(d, cfg, rng);
        doc["direction"] = std::string(to_string(ev.majority));
        doc["p_y_indep_ix_given_x"] = mean_of(ev.fold_verdicts, &Verdict::p_y_indep_ix_given_x);
        doc["p_x_indep_iy_given_y"] = mean_of(ev.fold_verdicts, &Verdict::p_x_indep_iy_given_y);
        doc["p_difference"] = ev.mean_p_difference;
        doc["ensemble"] = to_json(ev);
    } else {
        const InstrumentSet s = inference_instruments(d, cfg, rng);
        const Verdict v = infer_with_instruments(d, s, cfg);
        doc["direction"] = std::string(to_string(v.direction));
        doc["p_y_indep_ix_given_x"] = v.p_y_indep_ix_given_x;
        doc["p_x_indep_iy_given_y"] = v.p_x_indep_iy_given_y;
        doc["p_difference"] = v.p_difference();
        doc["forward_test"] = to_json(v.forward);
        doc["backward_test"] = to_json(v.backward);
        doc["instruments"] = to_json(s);
        for (const auto& note : s.notes) std::cerr << "[latentiv] " << note << '\n';
    }
    doc["config"] = to_json(cfg);
    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) write_text(out_path, text);
    return 0;
}

int cmd_simulate(const std::string& scenario_name, const std::string& setting_name, Eigen::Index n,
                 std::uint64_t seed, const std::string& out_dir)
{
    const Scenario scenario = parse_scenario(scenario_name);
    const Setting setting = parse_setting(setting_name);
    if (n < 1) throw Error(ErrorKind::InvalidConfig, "--n must be positive");
    RngStream rng(seed);
    const SyntheticSample s = generate(scenario, setting, n, ScmParams{}, rng);
    const auto files = write_sample(s, out_dir);
    nlohmann::ordered_json manifest;
    manifest["scenario"] = std::string(to_string(scenario));
    manifest["setting"] = std::string(to_string(setting));
    manifest["n"] = n;
    manifest["seed"] = seed;
    manifest["files"] = nlohmann::ordered_json::array();
    for (const auto& f : files) manifest["files"].push_back(f.string());
    std::cout << manifest.dump(2) << '\n';
    return 0;
}

int cmd_benchmark(const std::string& corpus, const CommonFlags& flags, bool single, const std::string& exclusions,
                  const std::string& out_prefix)
{
    const Config cfg = resolve(flags, DecisionMode::ForcedChoice);
    if (!fs::exists(fs::path(corpus) / "pairmeta.txt")) {
        throw Error(ErrorKind::Io, "missing metadata: " + (fs::path(corpus) / "pairmeta.txt").string());
    }
    BenchmarkOptions options;
    options.ensemble = !single;
    if (!exclusions.empty()) options.excluded_ids = load_exclusions(exclusions);

    const BenchmarkReport report = run_benchmark(corpus, cfg, options, RngStream(cfg.seed));
    for (const PairOutcome& p : report.per_pair) {
        if (!p.error.empty()) std::cerr << "[latentiv] pair " << p.id << " failed: " << p.error << '\n';
        for (const auto& note : p.notes) std::cerr << "[latentiv] pair " << p.id << ": " << note << '\n';
    }
    std::ostringstream csv;
    write_benchmark_csv(csv, report);
    write_text(out_prefix + ".json", to_json(report).dump(2) + "\n");
    write_text(out_prefix + ".csv", csv.str());
    std::cout << "pairs: " << report.per_pair.size() << " (excluded " << report.excluded.size() << ")\n"
              << "weighted_accuracy: " << format_real(report.weighted_accuracy) << '\n'
              << "unweighted_accuracy: " << format_real(report.unweighted_accuracy) << '\n';
    return 0;
}

std::vector<Eigen::Index> parse_grid(const std::string& text)
{
    std::vector<Eigen::Index> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            grid.push_back(static_cast<Eigen::Index>(v));
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidConfig, "bad --n-grid entry '" + item + "'");
        }
    }
    return grid;
}

int cmd_pcurve(const std::string& scenario_name, const std::string& setting_name, const std::string& grid_text,
               int replicates, const CommonFlags& flags, const std::string& out_path)
{
    const Scenario scenario = parse_scenario(scenario_name);
    const Setting setting = parse_setting(setting_name);
    const Config cfg = resolve(flags, DecisionMode::StrictTree);
    const auto rows =
        pcurve(scenario, setting, parse_grid(grid_text), replicates, ScmParams{}, cfg, RngStream(cfg.seed));
    std::ostringstream csv;
    write_pcurve_csv(csv, rows);
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        write_text(out_path, csv.str());
        std::cout << "rows: " << rows.size() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Causal direction between two variables via latent instrumental variables"};
    app.require_subcommand(1);

    CommonFlags infer_flags;
    std::string infer_input;
    std::string infer_out;
    bool infer_ensemble = false;
    auto* infer = app.add_subcommand("infer", "Infer the causal direction of a two-column data file");
    infer->add_option("input", infer_input, "Whitespace-separated two-column file")->required();
    infer->add_flag("--ensemble", infer_ensemble, "Vote over --folds random folds");
    infer->add_option("--out", infer_out, "Also write the JSON verdict to this file");
    add_common(infer, infer_flags);

    std::string sim_scenario = "chain";
    std::string sim_setting = "continuous";
    Eigen::Index sim_n = 1000;
    std::uint64_t sim_seed = 1;
    std::string sim_out = "simulated";
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic sample with its latent variables");
    simulate->add_option("--scenario", sim_scenario, "chain or confounded")->capture_default_str();
    simulate->add_option("--setting", sim_setting, "continuous or discrete")->capture_default_str();
    simulate->add_option("--n", sim_n, "Sample size")->capture_default_str();
    simulate->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
    simulate->add_option("--out", sim_out, "Output directory")->capture_default_str();

    CommonFlags bench_flags;
    std::string bench_corpus;
    std::string bench_exclusions;
    std::string bench_out = "benchmark_report";
    bool bench_single = false;
    auto* bench = app.add_subcommand("benchmark", "Score a cause-effect pairs corpus");
    bench->add_option("corpus", bench_corpus, "Directory with pairNNNN.txt and pairmeta.txt")->required();
    bench->add_option("--exclusions", bench_exclusions, "File of pair ids to exclude");
    bench->add_flag("--single", bench_single, "One inference per pair instead of the fold ensemble");
    bench->add_option("--out", bench_out, "Output prefix for .json and .csv")->capture_default_str();
    add_common(bench, bench_flags);

    CommonFlags pc_flags;
    std::string pc_scenario = "chain";
    std::string pc_setting = "continuous";
    std::string pc_grid = "10,100,1000,10000";
    int pc_replicates = 10;
    std::string pc_out;
    auto* pc = app.add_subcommand("pcurve", "p-values of the instrument tests versus sample size");
    pc->add_option("--scenario", pc_scenario, "chain or confounded")->capture_default_str();
    pc->add_option("--setting", pc_setting, "continuous or discrete")->capture_default_str();
    pc->add_option("--n-grid", pc_grid, "Ascending comma-separated sample sizes")->capture_default_str();
    pc->add_option("--replicates", pc_replicates, "Replicates per sample size")->capture_default_str();
    pc->add_option("--out", pc_out, "CSV output path (default: standard output)");
    add_common(pc, pc_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*infer) return cmd_infer(infer_input, infer_flags, infer_ensemble, infer_out);
        if (*simulate) return cmd_simulate(sim_scenario, sim_setting, sim_n, sim_seed, sim_out);
        if (*bench) return cmd_benchmark(bench_corpus, bench_flags, bench_single, bench_exclusions, bench_out);
        if (*pc) return cmd_pcurve(pc_scenario, pc_setting, pc_grid, pc_replicates, pc_flags, pc_out);
    } catch (const Error& e) {
        std::cerr << "latentiv: " << e.what() << '\n';
        return e.kind() == ErrorKind::InvalidConfig ? kExitUsage : kExitData;
    } catch (const std::exception& e) {
        std::cerr << "latentiv: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
