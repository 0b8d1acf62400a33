#include "latentiv/report.hpp"

#include <charconv>
#include <cmath>

namespace latentiv {

namespace {

// JSON has no infinity; non-finite statistics are written as null.
nlohmann::ordered_json real_or_null(double v)
{
    if (!std::isfinite(v)) return nullptr;
    return v;
}

}  // namespace

std::string format_real(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

nlohmann::ordered_json to_json(const Config& cfg)
{
    return {
        {"k_clusters", cfg.k_clusters},
        {"alpha", cfg.alpha},
        {"n_folds", cfg.n_folds},
        {"seed", cfg.seed},
        {"test_kind", std::string(to_string(cfg.test_kind))},
        {"distance_kind", "euclidean"},
        {"standardize", cfg.standardize},
        {"decision_mode", std::string(to_string(cfg.decision_mode))},
        {"max_iter", cfg.max_iter},
        {"n_restarts", cfg.n_restarts},
        {"mi_level_cap", cfg.mi_level_cap},
    };
}

nlohmann::ordered_json to_json(const CiResult& r)
{
    return {
        {"test_kind", std::string(to_string(r.test_kind))},
        {"statistic", real_or_null(r.statistic)},
        {"dof", r.dof},
        {"p_value", r.p_value},
    };
}

nlohmann::ordered_json to_json(const Verdict& v)
{
    return {
        {"direction", std::string(to_string(v.direction))},
        {"p_y_indep_ix_given_x", v.p_y_indep_ix_given_x},
        {"p_x_indep_iy_given_y", v.p_x_indep_iy_given_y},
        {"p_difference", v.p_difference()},
        {"forward_test", to_json(v.forward)},
        {"backward_test", to_json(v.backward)},
    };
}

nlohmann::ordered_json to_json(const EnsembleVerdict& v)
{
    nlohmann::ordered_json votes = nlohmann::ordered_json::object();
    for (Direction d : {Direction::CauseToEffect, Direction::EffectToCause, Direction::Confounded}) {
        const auto it = v.vote_counts.find(d);
        votes[std::string(to_string(d))] = it == v.vote_counts.end() ? 0 : it->second;
    }
    nlohmann::ordered_json folds = nlohmann::ordered_json::array();
    for (const Verdict& f : v.fold_verdicts) folds.push_back(to_json(f));
    return {
        {"majority", std::string(to_string(v.majority))},
        {"vote_counts", votes},
        {"mean_p_difference", v.mean_p_difference},
        {"failed_folds", v.failed_folds},
        {"fold_verdicts", folds},
    };
}

nlohmann::ordered_json to_json(const InstrumentSet& s)
{
    return {
        {"dist_x", s.dist_x},
        {"dist_y", s.dist_y},
        {"branch", s.x_from_x ? "ix_from_x" : "ix_from_xy"},
        {"k_x", s.k_x},
        {"k_y", s.k_y},
        {"k_xy", s.k_xy},
        {"notes", s.notes},
    };
}

nlohmann::ordered_json to_json(const BenchmarkReport& report)
{
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const PairOutcome& p : report.per_pair) {
        nlohmann::ordered_json row = {
            {"id", p.id},
            {"verdict", p.verdict ? nlohmann::ordered_json(std::string(to_string(*p.verdict))) : nullptr},
            {"ground_truth", std::string(to_string(p.ground_truth))},
            {"p_difference", p.p_difference},
            {"correct", p.correct},
            {"weight", p.weight},
            {"n", p.n},
        };
        if (!p.error.empty()) row["error"] = p.error;
        if (!p.notes.empty()) row["notes"] = p.notes;
        pairs.push_back(std::move(row));
    }
    nlohmann::ordered_json excluded = nlohmann::ordered_json::array();
    for (const ExcludedPair& e : report.excluded) excluded.push_back({{"id", e.id}, {"reason", e.reason}});
    return {
        {"weighted_accuracy", report.weighted_accuracy},
        {"unweighted_accuracy", report.unweighted_accuracy},
        {"mode", std::string(to_string(report.mode))},
        {"ensemble", report.ensemble},
        {"n_pairs", report.per_pair.size()},
        {"config", to_json(report.config)},
        {"per_pair", pairs},
        {"excluded", excluded},
    };
}

void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report)
{
    out << "id,verdict,p_difference,correct,weight\n";
    for (const PairOutcome& p : report.per_pair) {
        out << p.id << ',' << (p.verdict ? to_string(*p.verdict) : std::string_view("error")) << ','
            << format_real(p.p_difference) << ',' << (p.correct ? 1 : 0) << ',' << format_real(p.weight) << '\n';
    }
}

void write_pcurve_csv(std::ostream& out, const std::vector<PCurveRow>& rows)
{
    out << "scenario,setting,n,replicate,test,p_value\n";
    for (const PCurveRow& r : rows) {
        out << to_string(r.scenario) << ',' << to_string(r.setting) << ',' << r.n << ',' << r.replicate << ','
            << r.test << ',' << format_real(r.p_value) << '\n';
    }
}

}  // namespace latentiv
