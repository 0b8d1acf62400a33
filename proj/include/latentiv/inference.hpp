#pragma once

#include "latentiv/citest.hpp"
#include "latentiv/core.hpp"
#include "latentiv/instruments.hpp"
#include "latentiv/rng.hpp"

#include <map>

namespace latentiv {

struct Verdict {
    Direction direction = Direction::CauseToEffect;
    double p_y_indep_ix_given_x = 1.0;
    double p_x_indep_iy_given_y = 1.0;
    CiResult forward;   // Y _||_ I_X | X
    CiResult backward;  // X _||_ I_Y | Y

    /// p(X _||_ I_Y | Y) - p(Y _||_ I_X | X); negative values point to X -> Y.
    double p_difference() const { return p_x_indep_iy_given_y - p_y_indep_ix_given_x; }
};

struct EnsembleVerdict {
    std::vector<Verdict> fold_verdicts;
    Direction majority = Direction::CauseToEffect;
    std::map<Direction, int> vote_counts;
    double mean_p_difference = 0.0;
    int failed_folds = 0;
};

/// Both instrument tests, no decision yet. An instrument or response that
/// is an affine function of the conditioning variable is trivially
/// independent of the other given it, so a NearSingular partial
/// correlation yields p = 1 here.
Verdict run_instrument_tests(const Vector& x, const Vector& y, const Vector& i_x, const Vector& i_y,
                             const Config& cfg);

/// Decision tree: Y _||_ I_X | X accepted -> X -> Y; else X _||_ I_Y | Y
/// accepted -> Y -> X; else a hidden common cause.
Direction decide_strict(double p_forward, double p_backward, double alpha);

/// Sign of the p-value difference, never Confounded. Exactly equal p-values
/// (both underflowed to 0, say) fall back to the strength of the two test
/// statistics; a complete tie answers Y -> X.
Direction decide_forced(const CiResult& forward, const CiResult& backward);

/// Applies cfg.decision_mode to a verdict whose tests are filled in.
Verdict decide(Verdict v, const Config& cfg);

/// Full pipeline with instruments built and selected from the data.
Verdict infer_with_instruments(const DataPair& d, const InstrumentSet& s, const Config& cfg);

/// Instruments exactly as the single-shot inference builds them for `rng`.
InstrumentSet inference_instruments(const DataPair& d, const Config& cfg, const RngStream& rng);

Verdict infer_direction(const DataPair& d, const Config& cfg, const RngStream& rng);
double p_difference(const DataPair& d, const Config& cfg, const RngStream& rng);
Verdict forced_choice(const DataPair& d, const Config& cfg, const RngStream& rng);

/// Mode-dispatching single-shot inference (StrictTree or ForcedChoice).
Verdict infer_single(const DataPair& d, const Config& cfg, const RngStream& rng);

/// Seeded random partition of [0, n) into `folds` near-equal index sets,
/// each sorted ascending.
std::vector<IndexVector> random_folds(Eigen::Index n, int folds, const RngStream& rng);

/// Majority vote over fold verdicts; ties go to the direction favoured by
/// the sign of the mean p-difference, then X -> Y, Y -> X, Confounded.
Direction aggregate_votes(const std::map<Direction, int>& votes, double mean_p_difference);

/// Runs the configured per-fold decision on each fold's subset. A fold
/// whose data is degenerate abstains; if every fold fails the last error is
/// rethrown. Throws TooFewSamples when n < 4 * n_folds.
EnsembleVerdict ensemble_infer(const DataPair& d, const Config& cfg, const RngStream& rng);

}  // namespace latentiv
