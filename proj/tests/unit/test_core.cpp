#include "latentiv/core.hpp"
#include "latentiv/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace latentiv;

TEST(Standardize, HandComputedThreePoints)
{
    // mean 2, population sd sqrt(2/3)
    const double expected = 1.0 / std::sqrt(2.0 / 3.0);
    const Vector z = standardize(Vector{{1.0, 2.0, 3.0}});
    EXPECT_NEAR(z[0], -expected, 1e-12);
    EXPECT_NEAR(z[1], 0.0, 1e-12);
    EXPECT_NEAR(z[2], expected, 1e-12);
    EXPECT_NEAR(expected, 1.2247, 1e-4);
}

TEST(Standardize, ConstantInputGivesZeros)
{
    EXPECT_EQ(standardize(Vector{{5.0, 5.0, 5.0}}), Vector::Zero(3));
    EXPECT_EQ(standardize(Vector::Constant(7, 0.1)), Vector::Zero(7));
}

TEST(Standardize, UnitMomentsAndIdempotence)
{
    RngStream rng(11);
    Vector v(500);
    for (auto& e : v) e = 3.0 + 40.0 * rng.normal();
    const Vector z = standardize(v);
    EXPECT_NEAR(z.mean(), 0.0, 1e-12);
    EXPECT_NEAR(std::sqrt(z.squaredNorm() / z.size()), 1.0, 1e-12);
    EXPECT_LT((standardize(z) - z).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Standardize, RejectsNonFiniteAndTinyInput)
{
    Vector v{{1.0, std::numeric_limits<double>::quiet_NaN(), 2.0}};
    try {
        standardize(v);
        FAIL() << "expected NonFinite";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonFinite);
    }
    EXPECT_THROW(standardize(Vector{{1.0}}), Error);
}

TEST(DataPair, EnforcesInvariants)
{
    EXPECT_NO_THROW(DataPair(Vector{{1.0, 2.0}}, Vector{{3.0, 4.0}}));
    EXPECT_THROW(DataPair(Vector{{1.0, 2.0}}, Vector{{3.0}}), Error);
    EXPECT_THROW(DataPair(Vector{{1.0}}, Vector{{3.0}}), Error);
    try {
        DataPair(Vector{{1.0, std::numeric_limits<double>::infinity()}}, Vector{{3.0, 4.0}});
        FAIL() << "expected NonFinite";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonFinite);
    }
}

TEST(DataPair, SwapAndSubset)
{
    const DataPair d(Vector{{1.0, 2.0, 3.0}}, Vector{{4.0, 5.0, 6.0}});
    EXPECT_EQ(d.swapped().x(), d.y());
    EXPECT_EQ(d.swapped().y(), d.x());
    const DataPair s = d.subset(IndexVector{{2, 0}});
    EXPECT_EQ(s.x(), Vector({{3.0, 1.0}}));
    EXPECT_EQ(s.y(), Vector({{6.0, 4.0}}));
}

TEST(Config, DefaultsMatchPublishedSettings)
{
    const Config cfg;
    EXPECT_EQ(cfg.k_clusters, 15);
    EXPECT_DOUBLE_EQ(cfg.alpha, 0.05);
    EXPECT_EQ(cfg.n_folds, 10);
    EXPECT_TRUE(cfg.standardize);
    EXPECT_EQ(cfg.test_kind, TestKind::PartialCorrelation);
    EXPECT_EQ(cfg.distance_kind, DistanceKind::Euclidean);
    EXPECT_EQ(cfg.decision_mode, DecisionMode::StrictTree);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, ValidationRejectsOutOfRangeFields)
{
    auto kind_of = [](Config cfg) {
        try {
            cfg.validate();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;  // sentinel: no error
    };
    Config c;
    c.alpha = 1.5;
    EXPECT_EQ(kind_of(c), ErrorKind::InvalidConfig);
    c = {};
    c.alpha = 0.0;
    EXPECT_EQ(kind_of(c), ErrorKind::InvalidConfig);
    c = {};
    c.k_clusters = 1;
    EXPECT_EQ(kind_of(c), ErrorKind::InvalidConfig);
    c = {};
    c.n_folds = 0;
    EXPECT_EQ(kind_of(c), ErrorKind::InvalidConfig);
}

TEST(Direction, MirrorAndNames)
{
    EXPECT_EQ(mirrored(Direction::CauseToEffect), Direction::EffectToCause);
    EXPECT_EQ(mirrored(Direction::EffectToCause), Direction::CauseToEffect);
    EXPECT_EQ(mirrored(Direction::Confounded), Direction::Confounded);
    EXPECT_EQ(to_string(Direction::CauseToEffect), "x_to_y");
    EXPECT_EQ(to_string(Direction::EffectToCause), "y_to_x");
    EXPECT_EQ(to_string(Direction::Confounded), "confounded");
}

TEST(RngStream, EqualSeedsGiveEqualDraws)
{
    RngStream a(12345), b(12345);
    for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64()) << "draw " << i;
}

TEST(RngStream, PinnedSequenceAcrossPlatforms)
{
    // The stream is SplitMix64 over a counter; the first value for seed 0
    // is the well-known SplitMix64 output.
    RngStream r(0);
    EXPECT_EQ(mix64(0x9e3779b97f4a7c15ULL), 0xe220a8397b1dcdafULL);
    const std::uint64_t first = r.next_u64();
    RngStream again(0);
    EXPECT_EQ(first, again.next_u64());
}

TEST(RngStream, DeriveIsPureAndDistinct)
{
    const RngStream parent(99);
    RngStream c1 = parent.derive(3), c2 = parent.derive(3), other = parent.derive(4);
    EXPECT_EQ(parent.counter(), 0u);
    const auto v1 = c1.next_u64();
    EXPECT_EQ(v1, c2.next_u64());
    EXPECT_NE(v1, other.next_u64());
}

TEST(RngStream, DistributionsLookRight)
{
    RngStream r(5);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0, u_sum = 0.0;
    int below_hits = 0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        sum += z;
        sum_sq += z * z;
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        u_sum += u;
        const auto b = r.below(7);
        ASSERT_LT(b, 7u);
        below_hits += b == 3;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sum_sq / n, 1.0, 0.02);
    EXPECT_NEAR(u_sum / n, 0.5, 0.005);
    EXPECT_NEAR(below_hits / double(n), 1.0 / 7.0, 0.005);
}
