#include "latentiv/inference.hpp"

#include <array>
#include <cmath>
#include <numeric>

namespace latentiv {

namespace {

constexpr std::uint64_t kInstrumentStream = 0;
constexpr std::uint64_t kFoldPartitionStream = 1;
constexpr std::uint64_t kFoldStreamBase = 100;

CiResult trivially_independent(const Config& cfg, Eigen::Index n)
{
    CiResult r;
    r.test_kind = cfg.test_kind;
    r.statistic = 0.0;
    r.dof = static_cast<double>(n) - 3.0;
    r.p_value = 1.0;
    return r;
}

CiResult guarded_test(const Vector& a, const Vector& b, const Vector& z, const Config& cfg)
{
    try {
        return ci_test(a, b, z, cfg);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NearSingular) throw;
        return trivially_independent(cfg, a.size());
    }
}

// Comparable evidence against independence for two tests of the same kind.
double evidence(const CiResult& r)
{
    if (r.test_kind == TestKind::PartialCorrelation) return std::abs(r.statistic);
    if (r.dof <= 0.0) return 0.0;
    return (r.statistic - r.dof) / std::sqrt(2.0 * r.dof);
}

}  // namespace

Verdict run_instrument_tests(const Vector& x, const Vector& y, const Vector& i_x, const Vector& i_y,
                             const Config& cfg)
{
    Verdict v;
    v.forward = guarded_test(y, i_x, x, cfg);
    v.backward = guarded_test(x, i_y, y, cfg);
    v.p_y_indep_ix_given_x = v.forward.p_value;
    v.p_x_indep_iy_given_y = v.backward.p_value;
    return v;
}

Direction decide_strict(double p_forward, double p_backward, double alpha)
{
    if (p_forward > alpha) return Direction::CauseToEffect;
    if (p_backward > alpha) return Direction::EffectToCause;
    return Direction::Confounded;
}

Direction decide_forced(const CiResult& forward, const CiResult& backward)
{
    const double diff = backward.p_value - forward.p_value;
    if (diff < 0.0) return Direction::CauseToEffect;
    if (diff > 0.0) return Direction::EffectToCause;
    return evidence(backward) > evidence(forward) ? Direction::CauseToEffect : Direction::EffectToCause;
}

Verdict decide(Verdict v, const Config& cfg)
{
    v.direction = cfg.decision_mode == DecisionMode::StrictTree
                      ? decide_strict(v.p_y_indep_ix_given_x, v.p_x_indep_iy_given_y, cfg.alpha)
                      : decide_forced(v.forward, v.backward);
    return v;
}

Verdict infer_with_instruments(const DataPair& d, const InstrumentSet& s, const Config& cfg)
{
    return decide(run_instrument_tests(d.x(), d.y(), s.selected_ix, s.selected_iy, cfg), cfg);
}

InstrumentSet inference_instruments(const DataPair& d, const Config& cfg, const RngStream& rng)
{
    return construct_instruments(d, cfg, rng.derive(kInstrumentStream));
}

namespace {

Verdict infer_in_mode(const DataPair& d, Config cfg, const RngStream& rng, DecisionMode mode)
{
    cfg.decision_mode = mode;
    return infer_with_instruments(d, inference_instruments(d, cfg, rng), cfg);
}

}  // namespace

Verdict infer_direction(const DataPair& d, const Config& cfg, const RngStream& rng)
{
    return infer_in_mode(d, cfg, rng, DecisionMode::StrictTree);
}

double p_difference(const DataPair& d, const Config& cfg, const RngStream& rng)
{
    return infer_direction(d, cfg, rng).p_difference();
}

Verdict forced_choice(const DataPair& d, const Config& cfg, const RngStream& rng)
{
    return infer_in_mode(d, cfg, rng, DecisionMode::ForcedChoice);
}

Verdict infer_single(const DataPair& d, const Config& cfg, const RngStream& rng)
{
    return infer_in_mode(d, cfg, rng, cfg.decision_mode);
}

std::vector<IndexVector> random_folds(Eigen::Index n, int folds, const RngStream& rng)
{
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    RngStream stream = rng;
    for (std::size_t i = order.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(stream.below(i));
        std::swap(order[i - 1], order[j]);
    }
    std::vector<IndexVector> out;
    out.reserve(static_cast<std::size_t>(folds));
    for (int f = 0; f < folds; ++f) {
        const Eigen::Index begin = n * f / folds;
        const Eigen::Index end = n * (f + 1) / folds;
        std::vector<int> rows(order.begin() + begin, order.begin() + end);
        std::sort(rows.begin(), rows.end());
        out.push_back(Eigen::Map<const IndexVector>(rows.data(), static_cast<Eigen::Index>(rows.size())));
    }
    return out;
}

Direction aggregate_votes(const std::map<Direction, int>& votes, double mean_p_difference)
{
    int top = 0;
    for (const auto& [direction, count] : votes) top = std::max(top, count);
    auto count_of = [&](Direction direction) {
        const auto it = votes.find(direction);
        return it == votes.end() ? 0 : it->second;
    };
    std::array<Direction, 3> preference{Direction::CauseToEffect, Direction::EffectToCause,
                                        Direction::Confounded};
    if (mean_p_difference > 0.0) std::swap(preference[0], preference[1]);
    for (Direction direction : preference) {
        if (count_of(direction) == top) return direction;
    }
    return Direction::CauseToEffect;
}

EnsembleVerdict ensemble_infer(const DataPair& d, const Config& cfg, const RngStream& rng)
{
    if (d.size() < static_cast<Eigen::Index>(cfg.n_folds) * 4) {
        throw Error(ErrorKind::TooFewSamples, "ensemble needs at least 4 samples per fold (n = " +
                                                  std::to_string(d.size()) + ", folds = " +
                                                  std::to_string(cfg.n_folds) + ")");
    }
    EnsembleVerdict out;
    const auto folds = random_folds(d.size(), cfg.n_folds, rng.derive(kFoldPartitionStream));
    std::string last_error;
    ErrorKind last_kind = ErrorKind::DegenerateData;
    double diff_sum = 0.0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        try {
            const DataPair part = d.subset(folds[f]);
            const Verdict v = infer_single(part, cfg, rng.derive(kFoldStreamBase + f));
            ++out.vote_counts[v.direction];
            diff_sum += v.p_difference();
            out.fold_verdicts.push_back(v);
        } catch (const Error& e) {
            ++out.failed_folds;
            last_error = e.what();
            last_kind = e.kind();
        }
    }
    if (out.fold_verdicts.empty()) {
        throw Error(last_kind, "every fold failed; last error: " + last_error);
    }
    out.mean_p_difference = diff_sum / static_cast<double>(out.fold_verdicts.size());
    out.majority = aggregate_votes(out.vote_counts, out.mean_p_difference);
    return out;
}

}  // namespace latentiv
