#include "latentiv/core.hpp"

namespace latentiv {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::TooFewDistinctPoints: return "TooFewDistinctPoints";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MultivariatePair: return "MultivariatePair";
    case ErrorKind::InvalidCpt: return "InvalidCpt";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind)
{
}

std::string_view to_string(TestKind kind)
{
    return kind == TestKind::PartialCorrelation ? "cor" : "mi";
}

std::string_view to_string(DecisionMode mode)
{
    return mode == DecisionMode::StrictTree ? "strict" : "forced";
}

std::string_view to_string(Direction direction)
{
    switch (direction) {
    case Direction::CauseToEffect: return "x_to_y";
    case Direction::EffectToCause: return "y_to_x";
    case Direction::Confounded: return "confounded";
    }
    return "unknown";
}

Direction mirrored(Direction direction)
{
    switch (direction) {
    case Direction::CauseToEffect: return Direction::EffectToCause;
    case Direction::EffectToCause: return Direction::CauseToEffect;
    case Direction::Confounded: return Direction::Confounded;
    }
    return direction;
}

void Config::validate() const
{
    auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
    if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1), got " + std::to_string(alpha));
    if (k_clusters < 2) fail("k_clusters must be at least 2, got " + std::to_string(k_clusters));
    if (n_folds < 1) fail("n_folds must be at least 1, got " + std::to_string(n_folds));
    if (max_iter < 1) fail("max_iter must be positive");
    if (n_restarts < 1) fail("n_restarts must be positive");
    if (mi_level_cap < 2) fail("mi_level_cap must be at least 2");
}

DataPair::DataPair(Vector x, Vector y) : x_(std::move(x)), y_(std::move(y))
{
    if (x_.size() != y_.size()) {
        throw Error(ErrorKind::DegenerateData,
                    "x and y differ in length (" + std::to_string(x_.size()) + " vs " +
                        std::to_string(y_.size()) + ")");
    }
    if (x_.size() < 2) throw Error(ErrorKind::TooFewSamples, "a data pair needs at least 2 samples");
    if (!all_finite(x_) || !all_finite(y_)) {
        throw Error(ErrorKind::NonFinite, "data pair contains NaN or infinity");
    }
}

DataPair DataPair::subset(const IndexVector& rows) const
{
    return DataPair(x_(rows), y_(rows));
}

}  // namespace latentiv
