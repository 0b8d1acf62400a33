#pragma once

#include "latentiv/core.hpp"
#include "latentiv/rng.hpp"

#include <string>
#include <vector>

namespace latentiv {

/// The four instrument candidates built from cluster centers, plus the pair
/// chosen by the cross-distance rule.
struct InstrumentSet {
    Vector i_xx;   // X from clustering X alone
    Vector i_xxy;  // X-coordinate of the joint (X, Y) clustering
    Vector i_yy;   // Y from clustering Y alone
    Vector i_yyx;  // Y-coordinate of the joint (X, Y) clustering

    Vector selected_ix;
    Vector selected_iy;
    double dist_x = 0.0;
    double dist_y = 0.0;
    bool selected = false;
    bool x_from_x = true;  // true: (i_xx, i_yyx); false: (i_xxy, i_yy)

    // Effective cluster counts after shrinking to the distinct-value count.
    int k_x = 0;
    int k_y = 0;
    int k_xy = 0;
    std::vector<std::string> notes;

    /// Roles of X and Y exchanged, as if built from the swapped pair.
    InstrumentSet swapped() const;
};

/// Builds the candidates. The 1-D clusterings of x and of y share one
/// derived stream, so swapping the inputs swaps the candidates exactly.
/// Throws DegenerateData when x or y is constant.
InstrumentSet build_candidates(const DataPair& d, const Config& cfg, const RngStream& rng);

/// Fills dist_x = ||i_xx - i_xxy||, dist_y = ||i_yy - i_yyx|| and the
/// selected pair; dist_x == dist_y resolves to (i_xx, i_yyx).
InstrumentSet select_instruments(InstrumentSet s, const Config& cfg);

/// build_candidates followed by select_instruments.
InstrumentSet construct_instruments(const DataPair& d, const Config& cfg, const RngStream& rng);

}  // namespace latentiv
