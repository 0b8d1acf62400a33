#pragma once

#include "latentiv/core.hpp"
#include "latentiv/rng.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace latentiv {

enum class Scenario { Chain, Confounded };
enum class Setting { DiscreteBinary, ContinuousGaussian };

std::string_view to_string(Scenario scenario);
std::string_view to_string(Setting setting);
Scenario parse_scenario(std::string_view name);
Setting parse_setting(std::string_view name);

/// Bernoulli tables for the binary networks. Entries are P(child = 1 | parents).
struct BinaryCpts {
    double p_ix = 0.5;
    std::array<double, 2> p_x_given_ix{0.2, 0.8};
    std::array<double, 2> p_y_given_x{0.2, 0.8};

    double p_u = 0.5;
    std::array<std::array<double, 2>, 2> p_x_given_ix_u{{{0.05, 0.5}, {0.5, 0.95}}};  // [i_x][u]
    std::array<double, 2> p_y_given_u{0.2, 0.8};

    // The instrument of the effect is a noisy parity child of X and Y.
    std::array<std::array<double, 2>, 2> p_iy_given_xy{{{0.2, 0.8}, {0.8, 0.2}}};  // [x][y]

    /// Throws Error(InvalidCpt) when any entry is outside [0, 1].
    void validate() const;
};

/// Linear Gaussian SCM:
///   X = alpha0 + alpha I_X + delta U + eps_X,  Y = beta0 + beta X + gamma U + eps_Y
/// with I_X ~ N(0, sigma_i^2), U ~ N(0, sigma_u^2), eps ~ N(0, sigma^2).
struct ScmParams {
    double alpha0 = 0.0;
    double alpha = 1.0;
    double beta0 = 0.0;
    double beta = 1.0;
    double gamma = 1.0;
    double delta = 1.0;
    double sigma_x = 1.0;
    double sigma_y = 1.0;
    double sigma_u = 1.0;
    double sigma_i = 1.0;
    BinaryCpts cpts;
};

struct SyntheticSample {
    Vector x;
    Vector y;
    Vector i_x;
    Vector i_y;
    std::optional<Vector> u;  // confounded scenario only
    Scenario scenario = Scenario::Chain;
    Setting setting = Setting::ContinuousGaussian;

    Eigen::Index size() const { return x.size(); }
    DataPair pair() const { return DataPair(x, y); }
};

// In every generator the instrument of the effect, i_y, is generated as a
// child of both x and y (continuous: i_y = x + y + sigma_i * noise). It
// stands in for the joint-clustering instrument; inference on real data
// never sees generated instruments.

SyntheticSample generate_chain_continuous(Eigen::Index n, const ScmParams& params, RngStream& rng);
SyntheticSample generate_confounded_continuous(Eigen::Index n, const ScmParams& params, RngStream& rng);
SyntheticSample generate_chain_discrete(Eigen::Index n, const ScmParams& params, RngStream& rng);
SyntheticSample generate_confounded_discrete(Eigen::Index n, const ScmParams& params, RngStream& rng);

SyntheticSample generate(Scenario scenario, Setting setting, Eigen::Index n, const ScmParams& params,
                         RngStream& rng);

/// Writes <dir>/data.txt (two columns) and i_x.txt, i_y.txt and, when
/// present, u.txt. Returns the written paths in that order.
std::vector<std::filesystem::path> write_sample(const SyntheticSample& s, const std::filesystem::path& dir);

}  // namespace latentiv
