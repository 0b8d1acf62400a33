#pragma once

// Data sets shared by the unit and acceptance tests.
//
// Linear Gaussian pairs are exchangeable after standardization, so no
// procedure that builds its instruments from (x, y) alone can orient them.
// The identifiable fixtures give the cause a clustered marginal instead:
// the cause's own cluster centers then act as an instrument that the
// effect only sees through the cause.

#include "latentiv/core.hpp"
#include "latentiv/rng.hpp"

#include <filesystem>
#include <fstream>
#include <string>

namespace fixtures {

using latentiv::RngStream;
using latentiv::Vector;

// Cause drawn around three well separated centers, effect = cause + noise.
inline latentiv::DataPair clustered_chain(Eigen::Index n, RngStream rng, double cause_spread = 0.5,
                                          double effect_noise = 1.0)
{
    Vector x(n), y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double center = 3.0 * (static_cast<double>(rng.below(3)) - 1.0);
        x[i] = center + cause_spread * rng.normal();
        y[i] = x[i] + effect_noise * rng.normal();
    }
    return {x, y};
}

// A clustered hidden cause drives both variables.
inline latentiv::DataPair clustered_confounder(Eigen::Index n, RngStream rng, double noise = 0.5)
{
    Vector x(n), y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double center = 3.0 * (static_cast<double>(rng.below(3)) - 1.0);
        x[i] = center + noise * rng.normal();
        y[i] = center + noise * rng.normal();
    }
    return {x, y};
}

inline latentiv::DataPair gaussian_chain(Eigen::Index n, RngStream rng)
{
    Vector x(n), y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x[i] = rng.normal();
        y[i] = x[i] + rng.normal();
    }
    return {x, y};
}

inline void write_pair(const std::filesystem::path& file, const latentiv::DataPair& d)
{
    std::ofstream out(file);
    out.precision(17);
    for (Eigen::Index i = 0; i < d.size(); ++i) out << d.x()[i] << ' ' << d.y()[i] << '\n';
}

// A fresh scratch directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("latentiv_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace fixtures
