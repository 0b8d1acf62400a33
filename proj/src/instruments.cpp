#include "latentiv/instruments.hpp"

#include "latentiv/kmeans.hpp"

#include <algorithm>

namespace latentiv {

namespace {

constexpr std::uint64_t kMarginalStream = 0;
constexpr std::uint64_t kJointStream = 1;

Eigen::Index shrink_k(int requested, Eigen::Index distinct, const char* what, std::vector<std::string>& notes)
{
    const Eigen::Index k = std::min<Eigen::Index>(requested, distinct);
    if (k < requested) {
        notes.push_back(std::string(what) + ": k shrunk from " + std::to_string(requested) + " to " +
                        std::to_string(k) + " (distinct values)");
    }
    return k;
}

Vector marginal_instrument(const Vector& v, Eigen::Index k, const RngStream& rng, const KMeansOptions& opts)
{
    const auto c = kmeans(v, k, rng, opts);
    return assigned_center_coordinate(c, 0);
}

}  // namespace

InstrumentSet InstrumentSet::swapped() const
{
    InstrumentSet s = *this;
    std::swap(s.i_xx, s.i_yy);
    std::swap(s.i_xxy, s.i_yyx);
    std::swap(s.selected_ix, s.selected_iy);
    std::swap(s.dist_x, s.dist_y);
    std::swap(s.k_x, s.k_y);
    return s;
}

InstrumentSet build_candidates(const DataPair& d, const Config& cfg, const RngStream& rng)
{
    if (is_constant(d.x())) throw Error(ErrorKind::DegenerateData, "x is constant");
    if (is_constant(d.y())) throw Error(ErrorKind::DegenerateData, "y is constant");

    PointMatrix<double> joint(d.size(), 2);
    if (cfg.standardize) {
        joint.col(0) = standardize(d.x());
        joint.col(1) = standardize(d.y());
    } else {
        joint.col(0) = d.x();
        joint.col(1) = d.y();
    }

    InstrumentSet s;
    const KMeansOptions opts{cfg.max_iter, cfg.n_restarts};
    const Eigen::Index kx = shrink_k(cfg.k_clusters, count_distinct(joint.col(0)), "x", s.notes);
    const Eigen::Index ky = shrink_k(cfg.k_clusters, count_distinct(joint.col(1)), "y", s.notes);
    const Eigen::Index kxy = shrink_k(cfg.k_clusters, detail::count_distinct_rows(joint), "(x,y)", s.notes);

    const RngStream marginal = rng.derive(kMarginalStream);
    s.i_xx = marginal_instrument(joint.col(0), kx, marginal, opts);
    s.i_yy = marginal_instrument(joint.col(1), ky, marginal, opts);

    const auto joint_clusters = kmeans(joint, kxy, rng.derive(kJointStream), opts);
    s.i_xxy = assigned_center_coordinate(joint_clusters, 0);
    s.i_yyx = assigned_center_coordinate(joint_clusters, 1);

    s.k_x = static_cast<int>(kx);
    s.k_y = static_cast<int>(ky);
    s.k_xy = static_cast<int>(kxy);
    return s;
}

InstrumentSet select_instruments(InstrumentSet s, const Config& cfg)
{
    // Euclidean is the only distance for now; cfg.distance_kind is the extension point.
    (void)cfg;
    s.dist_x = (s.i_xx - s.i_xxy).norm();
    s.dist_y = (s.i_yy - s.i_yyx).norm();
    s.x_from_x = !(s.dist_x > s.dist_y);
    if (s.x_from_x) {
        s.selected_ix = s.i_xx;
        s.selected_iy = s.i_yyx;
    } else {
        s.selected_ix = s.i_xxy;
        s.selected_iy = s.i_yy;
    }
    s.selected = true;
    return s;
}

InstrumentSet construct_instruments(const DataPair& d, const Config& cfg, const RngStream& rng)
{
    return select_instruments(build_candidates(d, cfg, rng), cfg);
}

}  // namespace latentiv
