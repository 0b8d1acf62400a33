#pragma once

#include "latentiv/core.hpp"
#include "latentiv/rng.hpp"
#include "latentiv/synthetic.hpp"

#include <string>
#include <vector>

namespace latentiv {

/// One p-value of a p-value-versus-sample-size sweep.
struct PCurveRow {
    Scenario scenario = Scenario::Chain;
    Setting setting = Setting::ContinuousGaussian;
    Eigen::Index n = 0;
    int replicate = 0;
    std::string test;  // y_indep_ix_given_x, x_indep_iy_given_y, x_indep_y_given_u
    double p_value = 1.0;
};

/// The instrument tests on one synthetic sample with its generated
/// instruments: the partial-correlation t-test for continuous data and the
/// G-test for binary data. Confounded samples add the X _||_ Y | U check.
std::vector<PCurveRow> instrument_test_pvalues(const SyntheticSample& s, const Config& cfg);

/// Replicate r at grid point g draws from rng.derive(g * replicates + r).
/// Throws InvalidConfig unless the grid is strictly ascending and positive.
std::vector<PCurveRow> pcurve(Scenario scenario, Setting setting, const std::vector<Eigen::Index>& n_grid,
                              int replicates, const ScmParams& params, const Config& cfg, const RngStream& rng);

}  // namespace latentiv
