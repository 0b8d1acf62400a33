#pragma once

#include "latentiv/core.hpp"
#include "latentiv/rng.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

namespace latentiv {

template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Result of a k-means run over n points in d dimensions (d is 1 or 2 here).
template <typename Scalar>
struct Clustering {
    PointMatrix<Scalar> centers;  // k x d
    IndexVector assignment;       // n entries in [0, k)
    Scalar inertia = Scalar(0);
    int iterations = 0;
    int restart = 0;  // which restart won
    std::vector<Scalar> inertia_history;  // after each Lloyd update of the winning restart

    Eigen::Index k() const noexcept { return centers.rows(); }
    Eigen::Index dims() const noexcept { return centers.cols(); }
};

struct KMeansOptions {
    int max_iter = 100;
    int n_restarts = 10;
};

namespace detail {

// Coordinate-wise accumulation in a fixed order: swapping the two columns of
// a 2-D point set yields bit-identical distances.
template <typename Scalar>
Scalar squared_distance(const PointMatrix<Scalar>& points, Eigen::Index i,
                        const PointMatrix<Scalar>& centers, Eigen::Index c)
{
    Scalar s(0);
    for (Eigen::Index d = 0; d < points.cols(); ++d) {
        const Scalar diff = points(i, d) - centers(c, d);
        s += diff * diff;
    }
    return s;
}

template <typename Scalar>
Eigen::Index count_distinct_rows(const PointMatrix<Scalar>& points)
{
    std::vector<Eigen::Index> order(static_cast<std::size_t>(points.rows()));
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    auto row_less = [&](Eigen::Index a, Eigen::Index b) {
        for (Eigen::Index d = 0; d < points.cols(); ++d) {
            if (points(a, d) != points(b, d)) return points(a, d) < points(b, d);
        }
        return false;
    };
    std::sort(order.begin(), order.end(), row_less);
    Eigen::Index distinct = order.empty() ? 0 : 1;
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (row_less(order[i - 1], order[i])) ++distinct;
    }
    return distinct;
}

// Distance-weighted seeding: each further center is drawn with probability
// proportional to the squared distance to the nearest center chosen so far.
template <typename Scalar>
PointMatrix<Scalar> seed_centers(const PointMatrix<Scalar>& points, Eigen::Index k, RngStream& rng)
{
    const Eigen::Index n = points.rows();
    PointMatrix<Scalar> centers(k, points.cols());
    centers.row(0) = points.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));

    std::vector<Scalar> nearest(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) nearest[i] = squared_distance(points, i, centers, 0);

    for (Eigen::Index c = 1; c < k; ++c) {
        const Scalar total = std::accumulate(nearest.begin(), nearest.end(), Scalar(0));
        const Scalar target = static_cast<Scalar>(rng.uniform()) * total;
        Eigen::Index pick = -1;
        Scalar cumulative(0);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (nearest[i] <= Scalar(0)) continue;
            cumulative += nearest[i];
            pick = i;
            if (cumulative > target) break;
        }
        centers.row(c) = points.row(pick);
        for (Eigen::Index i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(points, i, centers, c));
        }
    }
    return centers;
}

template <typename Scalar>
bool store_assignment(IndexVector& assignment, Eigen::Index i, int best)
{
    if (assignment[i] == best) return false;
    assignment[i] = best;
    return true;
}

// 1-D: with points visited in sorted order the nearest center is one of the
// two centers bracketing the point, so a single sweep suffices. Distances
// and tie-breaking match the general path exactly.
template <typename Scalar>
bool assign_nearest_1d(const PointMatrix<Scalar>& points, const std::vector<Eigen::Index>& sorted_rows,
                       const PointMatrix<Scalar>& centers, IndexVector& assignment)
{
    // Distinct center values in increasing order, each with its lowest index.
    std::vector<std::pair<Scalar, int>> by_value;
    by_value.reserve(static_cast<std::size_t>(centers.rows()));
    for (Eigen::Index c = 0; c < centers.rows(); ++c) by_value.emplace_back(centers(c, 0), static_cast<int>(c));
    std::sort(by_value.begin(), by_value.end());
    std::vector<std::pair<Scalar, int>> unique;
    for (const auto& entry : by_value) {
        if (unique.empty() || unique.back().first != entry.first) unique.push_back(entry);
    }

    bool changed = false;
    std::size_t hi = 0;  // first center value >= current point
    for (const Eigen::Index i : sorted_rows) {
        const Scalar v = points(i, 0);
        while (hi < unique.size() && unique[hi].first < v) ++hi;
        int best = -1;
        Scalar best_dist = Scalar(0);
        auto consider = [&](std::size_t u) {
            const Scalar diff = v - unique[u].first;
            const Scalar dist = diff * diff;
            if (best < 0 || dist < best_dist || (dist == best_dist && unique[u].second < best)) {
                best = unique[u].second;
                best_dist = dist;
            }
        };
        if (hi > 0) consider(hi - 1);
        if (hi < unique.size()) consider(hi);
        changed |= store_assignment<Scalar>(assignment, i, best);
    }
    return changed;
}

template <typename Scalar>
bool assign_nearest_2d(const PointMatrix<Scalar>& points, const PointMatrix<Scalar>& centers,
                       IndexVector& assignment)
{
    const Scalar* px = points.col(0).data();
    const Scalar* py = points.col(1).data();
    const Scalar* cx = centers.col(0).data();
    const Scalar* cy = centers.col(1).data();
    const Eigen::Index k = centers.rows();
    bool changed = false;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        int best = 0;
        Scalar best_dist = std::numeric_limits<Scalar>::infinity();
        for (Eigen::Index c = 0; c < k; ++c) {
            const Scalar dx = px[i] - cx[c];
            const Scalar dy = py[i] - cy[c];
            Scalar dist(0);
            dist += dx * dx;
            dist += dy * dy;
            if (dist < best_dist) {
                best_dist = dist;
                best = static_cast<int>(c);
            }
        }
        changed |= store_assignment<Scalar>(assignment, i, best);
    }
    return changed;
}

// Returns true when any assignment changed.
template <typename Scalar>
bool assign_nearest(const PointMatrix<Scalar>& points, const std::vector<Eigen::Index>& sorted_rows,
                    const PointMatrix<Scalar>& centers, IndexVector& assignment)
{
    if (points.cols() == 1) return assign_nearest_1d(points, sorted_rows, centers, assignment);
    if (points.cols() == 2) return assign_nearest_2d(points, centers, assignment);
    bool changed = false;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        int best = 0;
        Scalar best_dist = squared_distance(points, i, centers, 0);
        for (Eigen::Index c = 1; c < centers.rows(); ++c) {
            const Scalar dist = squared_distance(points, i, centers, c);
            if (dist < best_dist) {
                best_dist = dist;
                best = static_cast<int>(c);
            }
        }
        changed |= store_assignment<Scalar>(assignment, i, best);
    }
    return changed;
}

template <typename Scalar>
void update_means(const PointMatrix<Scalar>& points, const IndexVector& assignment,
                  PointMatrix<Scalar>& centers, std::vector<Eigen::Index>& counts)
{
    const Eigen::Index k = centers.rows();
    PointMatrix<Scalar> sums = PointMatrix<Scalar>::Zero(k, points.cols());
    counts.assign(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        sums.row(assignment[i]) += points.row(i);
        ++counts[assignment[i]];
    }
    for (Eigen::Index c = 0; c < k; ++c) {
        if (counts[c] > 0) centers.row(c) = sums.row(c) / static_cast<Scalar>(counts[c]);
    }
}

template <typename Scalar>
Scalar total_inertia(const PointMatrix<Scalar>& points, const PointMatrix<Scalar>& centers,
                     const IndexVector& assignment)
{
    Scalar s(0);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        s += squared_distance(points, i, centers, assignment[i]);
    }
    return s;
}

// An empty cluster takes over the point farthest from its own center, as a
// singleton. Donor means are recomputed afterwards.
template <typename Scalar>
void repair_empty(const PointMatrix<Scalar>& points, IndexVector& assignment,
                  PointMatrix<Scalar>& centers, std::vector<Eigen::Index>& counts)
{
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
        if (counts[c] > 0) continue;
        Eigen::Index farthest = -1;
        Scalar far_dist(-1);
        for (Eigen::Index i = 0; i < points.rows(); ++i) {
            if (counts[assignment[i]] < 2) continue;
            const Scalar dist = squared_distance(points, i, centers, assignment[i]);
            if (dist > far_dist) {
                far_dist = dist;
                farthest = i;
            }
        }
        if (farthest < 0) return;
        --counts[assignment[farthest]];
        assignment[farthest] = static_cast<int>(c);
        counts[c] = 1;
        update_means(points, assignment, centers, counts);
    }
}

template <typename Scalar>
Clustering<Scalar> lloyd(const PointMatrix<Scalar>& points, const std::vector<Eigen::Index>& sorted_rows,
                         Eigen::Index k, RngStream& rng, int max_iter)
{
    Clustering<Scalar> out;
    out.centers = seed_centers(points, k, rng);
    out.assignment = IndexVector::Constant(points.rows(), -1);
    std::vector<Eigen::Index> counts;
    for (int iter = 0; iter < max_iter; ++iter) {
        const bool changed = assign_nearest(points, sorted_rows, out.centers, out.assignment);
        if (!changed && iter > 0) break;
        update_means(points, out.assignment, out.centers, counts);
        repair_empty(points, out.assignment, out.centers, counts);
        out.inertia_history.push_back(total_inertia(points, out.centers, out.assignment));
        out.iterations = iter + 1;
    }
    out.inertia = total_inertia(points, out.centers, out.assignment);
    return out;
}

}  // namespace detail

/// Lloyd k-means with distance-weighted seeding. Runs `n_restarts`
/// independent restarts (restart r draws from rng.derive(r)) and keeps the
/// one with the lowest inertia, the earliest restart winning ties.
/// Nearest-center ties go to the lowest center index.
///
/// Throws Error(TooFewDistinctPoints) when k exceeds the number of distinct
/// points; callers shrink k beforehand.
template <typename Derived>
Clustering<typename Derived::Scalar> kmeans(const Eigen::MatrixBase<Derived>& points, Eigen::Index k,
                                            const RngStream& rng, const KMeansOptions& options = {})
{
    using Scalar = typename Derived::Scalar;
    const PointMatrix<Scalar> pts = points;
    if (k < 1) throw Error(ErrorKind::TooFewDistinctPoints, "kmeans: k must be positive");
    if (!all_finite(pts)) throw Error(ErrorKind::NonFinite, "kmeans: non-finite coordinate");
    const Eigen::Index distinct = detail::count_distinct_rows(pts);
    if (k > distinct) {
        throw Error(ErrorKind::TooFewDistinctPoints,
                    "kmeans: k = " + std::to_string(k) + " exceeds the " + std::to_string(distinct) +
                        " distinct points");
    }

    // Sorted order feeds the 1-D assignment sweep.
    std::vector<Eigen::Index> sorted_rows;
    if (pts.cols() == 1) {
        sorted_rows.resize(static_cast<std::size_t>(pts.rows()));
        std::iota(sorted_rows.begin(), sorted_rows.end(), Eigen::Index(0));
        std::stable_sort(sorted_rows.begin(), sorted_rows.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return pts(a, 0) < pts(b, 0); });
    }

    Clustering<Scalar> best;
    best.inertia = std::numeric_limits<Scalar>::infinity();
    for (int r = 0; r < std::max(1, options.n_restarts); ++r) {
        RngStream stream = rng.derive(static_cast<std::uint64_t>(r));
        Clustering<Scalar> run = detail::lloyd(pts, sorted_rows, k, stream, std::max(1, options.max_iter));
        if (run.inertia < best.inertia) {
            best = std::move(run);
            best.restart = r;
        }
    }
    return best;
}

/// Per-sample coordinate `coord` of the center each sample is assigned to.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> assigned_center_coordinate(const Clustering<Scalar>& c,
                                                                    Eigen::Index coord)
{
    if (coord < 0 || coord >= c.dims()) {
        throw Error(ErrorKind::InvalidConfig, "assigned_center_coordinate: coordinate out of range");
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(c.assignment.size());
    for (Eigen::Index i = 0; i < c.assignment.size(); ++i) out[i] = c.centers(c.assignment[i], coord);
    return out;
}

}  // namespace latentiv
