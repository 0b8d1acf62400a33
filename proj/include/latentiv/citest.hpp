#pragma once

#include "latentiv/core.hpp"

namespace latentiv {

struct CiResult {
    double statistic = 0.0;  // t for PartialCorrelation, G^2 for ConditionalMutualInformation
    double dof = 0.0;
    double p_value = 1.0;
    TestKind test_kind = TestKind::PartialCorrelation;
};

/// Pearson correlation. Throws DegenerateData when either input is constant.
double pearson(const Vector& a, const Vector& b);

/// First-order partial correlation r_{xy.z}, clamped to [-1, 1].
/// Throws DegenerateData on a constant input and NearSingular when z
/// explains x or y almost perfectly (1 - r^2 < 1e-12).
double partial_correlation(const Vector& x, const Vector& y, const Vector& z);

/// Exact t-test of x _||_ y | z on the partial correlation, dof = n - 3.
CiResult ci_test_cor(const Vector& x, const Vector& y, const Vector& z, const Config& cfg = {});

/// Plug-in MI(X; Y | Z) in nats over observed cells.
double conditional_mutual_information(const IndexVector& x, const IndexVector& y, const IndexVector& z);

/// Asymptotic G-test: G^2 = 2 N MI, dof = (|X| - 1)(|Y| - 1)|Z| from observed levels.
CiResult ci_test_mi(const IndexVector& x, const IndexVector& y, const IndexVector& z, const Config& cfg = {});

/// Maps values to levels 0..L-1. Up to `level_cap` distinct values each get
/// their own level (in value order); more than that are binned by equal
/// frequency, equal values always sharing a level.
IndexVector discretize_for_mi(const Vector& v, int level_cap = 20);

/// Dispatches on cfg.test_kind. Continuous inputs are discretized with
/// cfg.mi_level_cap for the MI test.
CiResult ci_test(const Vector& x, const Vector& y, const Vector& z, const Config& cfg);

}  // namespace latentiv
