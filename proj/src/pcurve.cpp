#include "latentiv/pcurve.hpp"

#include "latentiv/citest.hpp"

namespace latentiv {

namespace {

IndexVector as_levels(const Vector& v) { return v.cast<int>(); }

CiResult test_for(const SyntheticSample& s, const Vector& a, const Vector& b, const Vector& z, const Config& cfg)
{
    if (s.setting == Setting::DiscreteBinary) return ci_test_mi(as_levels(a), as_levels(b), as_levels(z), cfg);
    try {
        return ci_test_cor(a, b, z, cfg);
    } catch (const Error& e) {
        // Tiny samples can be constant or collinear; report "no evidence".
        if (e.kind() != ErrorKind::DegenerateData && e.kind() != ErrorKind::NearSingular &&
            e.kind() != ErrorKind::TooFewSamples) {
            throw;
        }
        return CiResult{0.0, 0.0, 1.0, TestKind::PartialCorrelation};
    }
}

}  // namespace

std::vector<PCurveRow> instrument_test_pvalues(const SyntheticSample& s, const Config& cfg)
{
    std::vector<PCurveRow> rows;
    auto add = [&](const char* name, const CiResult& r) {
        PCurveRow row;
        row.scenario = s.scenario;
        row.setting = s.setting;
        row.n = s.size();
        row.test = name;
        row.p_value = r.p_value;
        rows.push_back(row);
    };
    add("y_indep_ix_given_x", test_for(s, s.y, s.i_x, s.x, cfg));
    add("x_indep_iy_given_y", test_for(s, s.x, s.i_y, s.y, cfg));
    if (s.u) add("x_indep_y_given_u", test_for(s, s.x, s.y, *s.u, cfg));
    return rows;
}

std::vector<PCurveRow> pcurve(Scenario scenario, Setting setting, const std::vector<Eigen::Index>& n_grid,
                              int replicates, const ScmParams& params, const Config& cfg, const RngStream& rng)
{
    if (n_grid.empty()) throw Error(ErrorKind::InvalidConfig, "n-grid is empty");
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        if (n_grid[g] < 1 || (g > 0 && n_grid[g] <= n_grid[g - 1])) {
            throw Error(ErrorKind::InvalidConfig, "n-grid must be strictly ascending positive integers");
        }
    }
    if (replicates < 1) throw Error(ErrorKind::InvalidConfig, "replicates must be positive");

    std::vector<PCurveRow> rows;
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        for (int r = 0; r < replicates; ++r) {
            RngStream stream = rng.derive(static_cast<std::uint64_t>(g) * replicates + r);
            const SyntheticSample s = generate(scenario, setting, n_grid[g], params, stream);
            for (PCurveRow row : instrument_test_pvalues(s, cfg)) {
                row.replicate = r;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

}  // namespace latentiv
