#include "latentiv/inference.hpp"
#include "latentiv/synthetic.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace latentiv;

namespace {

struct Tally {
    int cause_to_effect = 0;
    int effect_to_cause = 0;
    int confounded = 0;
    int negative_difference = 0;

    void add(const Verdict& v)
    {
        add(v.direction);
        negative_difference += v.p_difference() < 0.0;
    }
    void add(const EnsembleVerdict& v)
    {
        add(v.majority);
        negative_difference += v.mean_p_difference < 0.0;
    }
    void add(Direction d)
    {
        cause_to_effect += d == Direction::CauseToEffect;
        effect_to_cause += d == Direction::EffectToCause;
        confounded += d == Direction::Confounded;
    }
};

std::ostream& operator<<(std::ostream& os, const Tally& t)
{
    return os << "x_to_y " << t.cause_to_effect << ", y_to_x " << t.effect_to_cause << ", confounded "
              << t.confounded << ", negative p-difference " << t.negative_difference;
}

CiResult with_p(double p, double statistic = 0.0)
{
    CiResult r;
    r.p_value = p;
    r.statistic = statistic;
    return r;
}

bool strict_invariant_holds(const Verdict& v, double alpha)
{
    const double f = v.p_y_indep_ix_given_x, b = v.p_x_indep_iy_given_y;
    switch (v.direction) {
    case Direction::CauseToEffect: return f > alpha;
    case Direction::EffectToCause: return f <= alpha && b > alpha;
    case Direction::Confounded: return f <= alpha && b <= alpha;
    }
    return false;
}

constexpr int kSeeds = 100;
constexpr Eigen::Index kLargeN = 10000;

}  // namespace

TEST(DecideStrict, DecisionTree)
{
    EXPECT_EQ(decide_strict(0.3, 0.0, 0.05), Direction::CauseToEffect);
    EXPECT_EQ(decide_strict(0.3, 0.9, 0.05), Direction::CauseToEffect);
    EXPECT_EQ(decide_strict(0.05, 0.2, 0.05), Direction::EffectToCause);
    EXPECT_EQ(decide_strict(0.01, 0.05, 0.05), Direction::Confounded);
}

TEST(DecideForced, SignOfDifferenceThenEvidence)
{
    EXPECT_EQ(decide_forced(with_p(0.4), with_p(0.1)), Direction::CauseToEffect);
    EXPECT_EQ(decide_forced(with_p(0.1), with_p(0.4)), Direction::EffectToCause);
    // both p-values underflow: the stronger rejection marks the effect side
    EXPECT_EQ(decide_forced(with_p(0.0, 9.0), with_p(0.0, 30.0)), Direction::CauseToEffect);
    EXPECT_EQ(decide_forced(with_p(0.0, -30.0), with_p(0.0, 9.0)), Direction::EffectToCause);
}

TEST(AggregateVotes, MajorityAndTies)
{
    using D = Direction;
    EXPECT_EQ(aggregate_votes({{D::EffectToCause, 10}}, 0.3), D::EffectToCause);
    EXPECT_EQ(aggregate_votes({{D::CauseToEffect, 4}, {D::EffectToCause, 6}}, -0.5), D::EffectToCause);
    EXPECT_EQ(aggregate_votes({{D::Confounded, 6}, {D::CauseToEffect, 4}}, 0.0), D::Confounded);
    // ties: a negative mean difference points to x -> y
    EXPECT_EQ(aggregate_votes({{D::CauseToEffect, 5}, {D::EffectToCause, 5}}, -0.1), D::CauseToEffect);
    EXPECT_EQ(aggregate_votes({{D::CauseToEffect, 5}, {D::EffectToCause, 5}}, 0.1), D::EffectToCause);
    EXPECT_EQ(aggregate_votes({{D::CauseToEffect, 5}, {D::EffectToCause, 5}}, 0.0), D::CauseToEffect);
    EXPECT_EQ(aggregate_votes({{D::Confounded, 4}, {D::EffectToCause, 4}, {D::CauseToEffect, 2}}, -0.2),
              D::EffectToCause);
}

TEST(RandomFolds, PartitionIsCompleteBalancedAndSeeded)
{
    const auto folds = random_folds(103, 10, RngStream(4));
    ASSERT_EQ(folds.size(), 10u);
    std::set<int> seen;
    for (const auto& f : folds) {
        EXPECT_TRUE(f.size() == 10 || f.size() == 11);
        EXPECT_TRUE(std::is_sorted(f.data(), f.data() + f.size()));
        for (int i : f) EXPECT_TRUE(seen.insert(i).second);
    }
    EXPECT_EQ(seen.size(), 103u);
    EXPECT_EQ(folds.front(), random_folds(103, 10, RngStream(4)).front());
    // not contiguous blocks
    EXPECT_NE(folds.front(), IndexVector(Eigen::VectorXi::LinSpaced(10, 0, 9)));
}

TEST(EnsembleInfer, RequiresFourSamplesPerFold)
{
    const auto d = fixtures::clustered_chain(39, RngStream(1));
    try {
        ensemble_infer(d, Config{}, RngStream(1));
        FAIL() << "expected TooFewSamples";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooFewSamples);
    }
}

TEST(EnsembleInfer, UnanimousFoldsAndVoteBookkeeping)
{
    const auto d = fixtures::clustered_chain(3000, RngStream(12));
    Config cfg;
    cfg.decision_mode = DecisionMode::ForcedChoice;
    const auto e = ensemble_infer(d, cfg, RngStream(12));
    int total = 0;
    for (const auto& [direction, count] : e.vote_counts) total += count;
    EXPECT_EQ(total, cfg.n_folds);
    EXPECT_EQ(static_cast<int>(e.fold_verdicts.size()), cfg.n_folds);
    EXPECT_EQ(e.failed_folds, 0);
    if (e.vote_counts.size() == 1) {
        EXPECT_EQ(e.vote_counts.begin()->first, e.majority);
    }
    EXPECT_EQ(e.majority, aggregate_votes(e.vote_counts, e.mean_p_difference));
}

TEST(Inference, StrictVerdictInvariantAndForcedAgreement)
{
    for (int seed = 0; seed < 30; ++seed) {
        const auto d = seed % 3 == 0   ? fixtures::clustered_confounder(800, RngStream(seed))
                       : seed % 3 == 1 ? fixtures::clustered_chain(800, RngStream(seed))
                                       : fixtures::gaussian_chain(800, RngStream(seed));
        Config cfg;
        const auto strict = infer_direction(d, cfg, RngStream(seed));
        EXPECT_TRUE(strict_invariant_holds(strict, cfg.alpha)) << "seed " << seed;
        const auto forced = forced_choice(d, cfg, RngStream(seed));
        EXPECT_NE(forced.direction, Direction::Confounded);
        EXPECT_EQ(forced.p_difference(), strict.p_difference());
        EXPECT_EQ(p_difference(d, cfg, RngStream(seed)), strict.p_difference());
        const bool forward_accepts = strict.p_y_indep_ix_given_x > cfg.alpha;
        const bool backward_accepts = strict.p_x_indep_iy_given_y > cfg.alpha;
        if (forward_accepts != backward_accepts) {
            EXPECT_EQ(forced.direction, strict.direction) << "seed " << seed;
        }
    }
}

TEST(Inference, IdenticalVariablesGiveZeroDifference)
{
    const auto d = fixtures::gaussian_chain(500, RngStream(3));
    EXPECT_EQ(p_difference(DataPair(d.x(), d.x()), Config{}, RngStream(3)), 0.0);
}

TEST(Inference, SwappingInputsMirrorsVerdicts)
{
    int strict_checked = 0;
    for (int seed = 0; seed < 30; ++seed) {
        const auto d = seed % 2 ? fixtures::clustered_chain(1000, RngStream(seed))
                                : fixtures::gaussian_chain(1000, RngStream(seed));
        Config cfg;
        const auto v = infer_direction(d, cfg, RngStream(seed));
        const auto w = infer_direction(d.swapped(), cfg, RngStream(seed));
        EXPECT_EQ(v.p_difference(), -w.p_difference());
        EXPECT_EQ(v.p_y_indep_ix_given_x, w.p_x_indep_iy_given_y);
        // the strict tree checks the forward test first, so it only mirrors
        // when the two tests do not both accept
        if (!(v.p_y_indep_ix_given_x > cfg.alpha && v.p_x_indep_iy_given_y > cfg.alpha)) {
            EXPECT_EQ(w.direction, mirrored(v.direction));
            ++strict_checked;
        }
        EXPECT_EQ(forced_choice(d.swapped(), cfg, RngStream(seed)).direction,
                  mirrored(forced_choice(d, cfg, RngStream(seed)).direction));

        cfg.decision_mode = DecisionMode::ForcedChoice;
        const auto e = ensemble_infer(d, cfg, RngStream(seed));
        const auto f = ensemble_infer(d.swapped(), cfg, RngStream(seed));
        EXPECT_EQ(f.majority, mirrored(e.majority));
        EXPECT_EQ(f.mean_p_difference, -e.mean_p_difference);
    }
    EXPECT_GT(strict_checked, 15);
}

// Clustered cause, N = 10,000, 100 seeds.
TEST(InferenceSimulation, ClusteredChainIsOrientedAndMirrored)
{
    Tally forward, backward;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        const auto d = fixtures::clustered_chain(kLargeN, RngStream(seed));
        const auto v = infer_direction(d, Config{}, RngStream(seed));
        forward.add(v);
        backward.add(mirrored(v.direction));
        const auto w = infer_direction(d.swapped(), Config{}, RngStream(seed));
        EXPECT_EQ(w.p_difference(), -v.p_difference());
    }
    EXPECT_GE(forward.cause_to_effect, 90) << forward;
    EXPECT_GE(forward.negative_difference, 90) << forward;
    EXPECT_EQ(backward.effect_to_cause, forward.cause_to_effect);
}

TEST(InferenceSimulation, ClusteredChainEnsembleMajority)
{
    Tally t;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        const auto d = fixtures::clustered_chain(kLargeN, RngStream(seed));
        t.add(ensemble_infer(d, Config{}, RngStream(seed)).majority);
    }
    EXPECT_GE(t.cause_to_effect, 95) << t;
}

TEST(InferenceSimulation, ClusteredConfounderIsConfounded)
{
    Tally t;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        const auto d = fixtures::clustered_confounder(kLargeN, RngStream(seed));
        t.add(infer_direction(d, Config{}, RngStream(seed)));
    }
    EXPECT_GE(t.confounded, 90) << t;
}

// The linear Gaussian scenarios of the synthetic module. After
// standardization (x, y) and (y, x) have the same distribution, and the
// procedure maps one to the other exactly, so x -> y and y -> x verdicts
// are equally likely. The published 0.9 targets cannot be met; the test
// checks the symmetry the theory predicts and reports the measured rates.
TEST(InferenceSimulation, LinearGaussianScenariosAreNotIdentifiable)
{
    Tally chain, chain_ensemble, confounded;
    const ScmParams params;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        RngStream gen(seed);
        const auto c = generate_chain_continuous(kLargeN, params, gen);
        chain.add(infer_direction(c.pair(), Config{}, RngStream(seed)));
        chain_ensemble.add(ensemble_infer(c.pair(), Config{}, RngStream(seed)));
        RngStream gen2(seed);
        const auto u = generate_confounded_continuous(kLargeN, params, gen2);
        confounded.add(infer_direction(u.pair(), Config{}, RngStream(seed)));
    }
    std::cout << "[ linear Gaussian chain      ] " << chain << '\n'
              << "[ linear Gaussian chain, 10-fold ensemble ] " << chain_ensemble << '\n'
              << "[ linear Gaussian confounded ] " << confounded << '\n';
    // binomial(100, 1/2) sd is 5: the orientation rate stays near chance
    EXPECT_LE(chain.negative_difference, 70) << chain;
    EXPECT_GE(chain.negative_difference, 30) << chain;
    EXPECT_LE(chain_ensemble.cause_to_effect, 70) << chain_ensemble;
    EXPECT_LT(confounded.confounded, 90) << confounded;
}
