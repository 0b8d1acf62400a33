#include "latentiv/benchmark.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace latentiv {

namespace {

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == ',' || c == '\v' || c == '\f'; };
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

std::optional<double> parse_real(std::string_view token)
{
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

std::ifstream open_or_throw(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return in;
}

Error parse_error(const std::filesystem::path& path, std::size_t line, const std::string& what)
{
    return Error(ErrorKind::ParseError, path.string() + ":" + std::to_string(line) + ": " + what);
}

bool is_correct(Direction verdict, GroundTruth truth)
{
    return (verdict == Direction::CauseToEffect && truth == GroundTruth::XCausesY) ||
           (verdict == Direction::EffectToCause && truth == GroundTruth::YCausesX);
}

}  // namespace

std::string_view to_string(GroundTruth truth)
{
    return truth == GroundTruth::XCausesY ? "x_to_y" : "y_to_x";
}

std::vector<int> default_exclusions() { return {52, 53, 54, 55, 70, 71, 81, 82, 83}; }

DataPair load_pair(const std::filesystem::path& path)
{
    std::ifstream in = open_or_throw(path);
    std::vector<double> xs;
    std::vector<double> ys;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() > 2) {
            throw Error(ErrorKind::MultivariatePair, path.string() + ":" + std::to_string(line_no) + ": " +
                                                         std::to_string(fields.size()) + " columns");
        }
        if (fields.size() != 2) throw parse_error(path, line_no, "expected 2 numeric fields");
        const auto x = parse_real(fields[0]);
        const auto y = parse_real(fields[1]);
        if (!x || !y) throw parse_error(path, line_no, "non-numeric field");
        xs.push_back(*x);
        ys.push_back(*y);
    }
    if (xs.size() < 2) throw Error(ErrorKind::TooFewSamples, path.string() + ": fewer than 2 rows");
    return DataPair(Eigen::Map<Vector>(xs.data(), static_cast<Eigen::Index>(xs.size())),
                    Eigen::Map<Vector>(ys.data(), static_cast<Eigen::Index>(ys.size())));
}

std::vector<PairMeta> load_metadata(const std::filesystem::path& path)
{
    std::ifstream in = open_or_throw(path);
    std::vector<PairMeta> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 6) throw parse_error(path, line_no, "expected 6 fields");
        std::array<double, 6> v{};
        for (std::size_t i = 0; i < 6; ++i) {
            const auto parsed = parse_real(fields[i]);
            if (!parsed) throw parse_error(path, line_no, "non-numeric field '" + std::string(fields[i]) + "'");
            v[i] = *parsed;
        }
        PairMeta m;
        m.id = static_cast<int>(v[0]);
        m.cause_first = static_cast<int>(v[1]);
        m.cause_last = static_cast<int>(v[2]);
        m.effect_first = static_cast<int>(v[3]);
        m.effect_last = static_cast<int>(v[4]);
        m.weight = v[5];
        if (!(m.weight > 0.0)) throw parse_error(path, line_no, "weight must be positive");
        rows.push_back(m);
    }
    return rows;
}

std::vector<int> load_exclusions(const std::filesystem::path& path)
{
    std::ifstream in = open_or_throw(path);
    std::vector<int> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        for (auto field : split_fields(line)) {
            int id = 0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), id);
            if (ec != std::errc() || ptr != field.data() + field.size()) {
                throw parse_error(path, line_no, "not an integer id: '" + std::string(field) + "'");
            }
            ids.push_back(id);
        }
    }
    return ids;
}

std::filesystem::path pair_file(const std::filesystem::path& corpus_dir, int id)
{
    char name[32];
    std::snprintf(name, sizeof name, "pair%04d.txt", id);
    return corpus_dir / name;
}

PairOutcome evaluate_record(const BenchmarkRecord& record, const Config& cfg, bool ensemble, const RngStream& rng)
{
    PairOutcome out;
    out.id = record.id;
    out.weight = record.weight;
    out.ground_truth = record.ground_truth;
    if (!record.data) {
        out.error = "no data";
        return out;
    }
    const DataPair& d = *record.data;
    out.n = d.size();
    try {
        if (ensemble) {
            const EnsembleVerdict ev = ensemble_infer(d, cfg, rng);
            out.verdict = ev.majority;
            out.p_difference = ev.mean_p_difference;
            if (ev.failed_folds > 0) {
                out.notes.push_back(std::to_string(ev.failed_folds) + " fold(s) abstained");
            }
        } else {
            const Verdict v = infer_single(d, cfg, rng);
            out.verdict = v.direction;
            out.p_difference = v.p_difference();
        }
        out.correct = is_correct(*out.verdict, record.ground_truth);
        // Cluster-count shrinking is reported once per pair from the full data.
        const auto distinct_x = count_distinct(d.x());
        const auto distinct_y = count_distinct(d.y());
        if (distinct_x < cfg.k_clusters || distinct_y < cfg.k_clusters) {
            out.notes.push_back("few distinct values (x: " + std::to_string(distinct_x) + ", y: " +
                                std::to_string(distinct_y) + "); k shrinks where needed");
        }
    } catch (const Error& e) {
        out.verdict.reset();
        out.correct = false;
        out.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    return out;
}

void score(BenchmarkReport& report)
{
    double weight_sum = 0.0;
    double weighted_hits = 0.0;
    double hits = 0.0;
    for (const auto& p : report.per_pair) {
        weight_sum += p.weight;
        if (p.correct) {
            weighted_hits += p.weight;
            hits += 1.0;
        }
    }
    report.weighted_accuracy = weight_sum > 0.0 ? weighted_hits / weight_sum : 0.0;
    report.unweighted_accuracy =
        report.per_pair.empty() ? 0.0 : hits / static_cast<double>(report.per_pair.size());
}

BenchmarkReport run_benchmark(const std::filesystem::path& corpus_dir, const Config& cfg,
                              const BenchmarkOptions& options, const RngStream& rng)
{
    cfg.validate();
    std::vector<PairMeta> meta = load_metadata(corpus_dir / "pairmeta.txt");
    std::sort(meta.begin(), meta.end(), [](const PairMeta& a, const PairMeta& b) { return a.id < b.id; });

    BenchmarkReport report;
    report.mode = cfg.decision_mode;
    report.ensemble = options.ensemble;
    report.config = cfg;

    for (const PairMeta& m : meta) {
        BenchmarkRecord record;
        record.id = m.id;
        record.ground_truth = m.ground_truth();
        record.weight = m.weight;
        const bool listed = std::find(options.excluded_ids.begin(), options.excluded_ids.end(), m.id) !=
                            options.excluded_ids.end();
        if (listed || !m.univariate()) {
            report.excluded.push_back({m.id, "multivariate"});
            continue;
        }
        PairOutcome outcome;
        try {
            record.data = load_pair(pair_file(corpus_dir, m.id));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::MultivariatePair) {
                report.excluded.push_back({m.id, "multivariate"});
                continue;
            }
            outcome.id = m.id;
            outcome.weight = m.weight;
            outcome.ground_truth = record.ground_truth;
            outcome.error = std::string(to_string(e.kind())) + ": " + e.what();
            report.per_pair.push_back(std::move(outcome));
            continue;
        }
        report.per_pair.push_back(
            evaluate_record(record, cfg, options.ensemble, rng.derive(static_cast<std::uint64_t>(m.id))));
    }
    score(report);
    return report;
}

}  // namespace latentiv
