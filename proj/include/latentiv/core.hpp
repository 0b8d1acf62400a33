#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latentiv {

using Vector = Eigen::VectorXd;
using IndexVector = Eigen::VectorXi;

enum class ErrorKind {
    NonFinite,
    DegenerateData,
    NearSingular,
    TooFewDistinctPoints,
    TooFewSamples,
    ParseError,
    MultivariatePair,
    InvalidCpt,
    InvalidConfig,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` lets callers tell data
/// problems apart from usage problems without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

enum class TestKind { PartialCorrelation, ConditionalMutualInformation };
enum class DistanceKind { Euclidean };
enum class DecisionMode { StrictTree, ForcedChoice };

enum class Direction {
    CauseToEffect,  // X -> Y
    EffectToCause,  // Y -> X
    Confounded,     // X <- U -> Y
};

std::string_view to_string(TestKind kind);
std::string_view to_string(DecisionMode mode);
std::string_view to_string(Direction direction);

/// Swaps CauseToEffect and EffectToCause; Confounded maps to itself.
Direction mirrored(Direction direction);

struct Config {
    int k_clusters = 15;
    double alpha = 0.05;
    int n_folds = 10;
    std::uint64_t seed = 1;
    TestKind test_kind = TestKind::PartialCorrelation;
    DistanceKind distance_kind = DistanceKind::Euclidean;
    bool standardize = true;
    DecisionMode decision_mode = DecisionMode::StrictTree;

    // k-means knobs
    int max_iter = 100;
    int n_restarts = 10;

    // Maximum number of levels a continuous variable gets in the MI test.
    int mi_level_cap = 20;

    /// Throws Error(InvalidConfig) naming the first offending field.
    void validate() const;
};

/// Two aligned observation vectors. Construction enforces equal length,
/// n >= 2 and finite entries.
class DataPair {
public:
    DataPair(Vector x, Vector y);

    const Vector& x() const noexcept { return x_; }
    const Vector& y() const noexcept { return y_; }
    Eigen::Index size() const noexcept { return x_.size(); }

    /// Roles of x and y exchanged.
    DataPair swapped() const { return DataPair(y_, x_); }

    /// Rows picked by `rows`, in that order.
    DataPair subset(const IndexVector& rows) const;

private:
    Vector x_;
    Vector y_;
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v.derived().coeff(i))) return false;
    }
    return true;
}

template <typename Derived>
bool is_constant(const Eigen::MatrixBase<Derived>& v)
{
    return v.size() == 0 || (v.array() == v.derived().coeff(0)).all();
}

/// z-score with the population (divisor n) standard deviation. A constant
/// input maps to the zero vector.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
standardize(const Eigen::MatrixBase<Derived>& v)
{
    using Scalar = typename Derived::Scalar;
    using Out = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    if (v.size() < 2) {
        throw Error(ErrorKind::TooFewSamples, "standardize needs at least 2 values");
    }
    if (!all_finite(v)) {
        throw Error(ErrorKind::NonFinite, "standardize: input contains NaN or infinity");
    }
    if (is_constant(v)) return Out::Zero(v.size());
    const auto n = static_cast<Scalar>(v.size());
    const Scalar mean = v.sum() / n;
    Out centered = v.array() - mean;
    return centered / std::sqrt(centered.squaredNorm() / n);
}

/// Number of distinct values in a vector.
template <typename Derived>
Eigen::Index count_distinct(const Eigen::MatrixBase<Derived>& v)
{
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> sorted = v;
    std::sort(sorted.data(), sorted.data() + sorted.size());
    return static_cast<Eigen::Index>(
        std::unique(sorted.data(), sorted.data() + sorted.size()) - sorted.data());
}

}  // namespace latentiv
