#include "latentiv/citest.hpp"

#include "latentiv/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

namespace latentiv {

namespace {

constexpr double kSingularTol = 1e-12;
constexpr double kUnitTol = 1e-12;

void require_same_length(const Vector& x, const Vector& y, const Vector& z)
{
    if (x.size() != y.size() || x.size() != z.size()) {
        throw Error(ErrorKind::DegenerateData, "CI test inputs differ in length");
    }
    if (!all_finite(x) || !all_finite(y) || !all_finite(z)) {
        throw Error(ErrorKind::NonFinite, "CI test input contains NaN or infinity");
    }
}

// Relabels arbitrary integer codes to 0..L-1 in increasing code order.
IndexVector compact_levels(const IndexVector& v, int& n_levels)
{
    std::vector<int> codes(v.data(), v.data() + v.size());
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    IndexVector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[i] = static_cast<int>(std::lower_bound(codes.begin(), codes.end(), v[i]) - codes.begin());
    }
    n_levels = static_cast<int>(codes.size());
    return out;
}

}  // namespace

double pearson(const Vector& a, const Vector& b)
{
    const Vector da = a.array() - a.mean();
    const Vector db = b.array() - b.mean();
    const double saa = da.squaredNorm();
    const double sbb = db.squaredNorm();
    if (saa == 0.0 || sbb == 0.0 || is_constant(a) || is_constant(b)) {
        throw Error(ErrorKind::DegenerateData, "correlation of a constant variable");
    }
    double sab = 0.0;
    for (Eigen::Index i = 0; i < da.size(); ++i) sab += da[i] * db[i];
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double partial_correlation(const Vector& x, const Vector& y, const Vector& z)
{
    require_same_length(x, y, z);
    if (x.size() < 4) throw Error(ErrorKind::TooFewSamples, "partial correlation needs n >= 4");
    const double rxy = pearson(x, y);
    const double rxz = pearson(x, z);
    const double ryz = pearson(y, z);
    const double ux = 1.0 - rxz * rxz;
    const double uy = 1.0 - ryz * ryz;
    if (ux < kSingularTol || uy < kSingularTol) {
        throw Error(ErrorKind::NearSingular, "conditioning variable explains a tested variable almost perfectly");
    }
    return std::clamp((rxy - rxz * ryz) / std::sqrt(ux * uy), -1.0, 1.0);
}

CiResult ci_test_cor(const Vector& x, const Vector& y, const Vector& z, const Config&)
{
    const double r = partial_correlation(x, y, z);
    CiResult out;
    out.test_kind = TestKind::PartialCorrelation;
    out.dof = static_cast<double>(x.size()) - 3.0;
    if (out.dof < 1.0) throw Error(ErrorKind::TooFewSamples, "t-test needs n - 3 >= 1");
    if (std::abs(r) >= 1.0 - kUnitTol) {
        out.statistic = std::copysign(std::numeric_limits<double>::infinity(), r);
        out.p_value = 0.0;
        return out;
    }
    out.statistic = r * std::sqrt(out.dof / (1.0 - r * r));
    out.p_value = student_t_two_sided_p(out.statistic, out.dof);
    return out;
}

double conditional_mutual_information(const IndexVector& x, const IndexVector& y, const IndexVector& z)
{
    if (x.size() != y.size() || x.size() != z.size()) {
        throw Error(ErrorKind::DegenerateData, "CI test inputs differ in length");
    }
    const Eigen::Index n = x.size();
    if (n == 0) return 0.0;
    int lx = 0, ly = 0, lz = 0;
    const IndexVector cx = compact_levels(x, lx);
    const IndexVector cy = compact_levels(y, ly);
    const IndexVector cz = compact_levels(z, lz);

    // Dense table indexed [z][x][y]; level counts are small in practice.
    std::vector<double> nxyz(static_cast<std::size_t>(lx) * ly * lz, 0.0);
    std::vector<double> nxz(static_cast<std::size_t>(lx) * lz, 0.0);
    std::vector<double> nyz(static_cast<std::size_t>(ly) * lz, 0.0);
    std::vector<double> nz(static_cast<std::size_t>(lz), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        nxyz[(static_cast<std::size_t>(cz[i]) * lx + cx[i]) * ly + cy[i]] += 1.0;
        nxz[static_cast<std::size_t>(cz[i]) * lx + cx[i]] += 1.0;
        nyz[static_cast<std::size_t>(cz[i]) * ly + cy[i]] += 1.0;
        nz[cz[i]] += 1.0;
    }
    double mi = 0.0;
    for (int c = 0; c < lz; ++c) {
        for (int a = 0; a < lx; ++a) {
            for (int b = 0; b < ly; ++b) {
                const double cell = nxyz[(static_cast<std::size_t>(c) * lx + a) * ly + b];
                if (cell == 0.0) continue;
                mi += cell * std::log(cell * nz[c] / (nxz[c * lx + a] * nyz[c * ly + b]));
            }
        }
    }
    return std::max(0.0, mi / static_cast<double>(n));
}

CiResult ci_test_mi(const IndexVector& x, const IndexVector& y, const IndexVector& z, const Config&)
{
    CiResult out;
    out.test_kind = TestKind::ConditionalMutualInformation;
    const double mi = conditional_mutual_information(x, y, z);
    int lx = 0, ly = 0, lz = 0;
    compact_levels(x, lx);
    compact_levels(y, ly);
    compact_levels(z, lz);
    out.statistic = 2.0 * static_cast<double>(x.size()) * mi;
    out.dof = static_cast<double>(lx - 1) * (ly - 1) * lz;
    out.p_value = out.dof > 0.0 ? chi_square_sf(out.statistic, out.dof) : 1.0;
    return out;
}

IndexVector discretize_for_mi(const Vector& v, int level_cap)
{
    if (!all_finite(v)) throw Error(ErrorKind::NonFinite, "discretize_for_mi: non-finite value");
    if (level_cap < 1) throw Error(ErrorKind::InvalidConfig, "discretize_for_mi: level cap must be positive");
    const Eigen::Index n = v.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return v[a] < v[b]; });

    const Eigen::Index distinct = count_distinct(v);
    IndexVector raw(n);
    int level = -1;
    for (Eigen::Index rank = 0; rank < n; ++rank) {
        const Eigen::Index i = order[rank];
        const bool new_value = rank == 0 || v[order[rank - 1]] != v[i];
        if (new_value) {
            // A value's level is fixed by the rank of its first occurrence.
            level = distinct <= level_cap ? level + 1 : static_cast<int>(rank * level_cap / n);
        }
        raw[i] = level;
    }
    int levels = 0;
    return compact_levels(raw, levels);
}

CiResult ci_test(const Vector& x, const Vector& y, const Vector& z, const Config& cfg)
{
    if (cfg.test_kind == TestKind::PartialCorrelation) return ci_test_cor(x, y, z, cfg);
    require_same_length(x, y, z);
    return ci_test_mi(discretize_for_mi(x, cfg.mi_level_cap), discretize_for_mi(y, cfg.mi_level_cap),
                      discretize_for_mi(z, cfg.mi_level_cap), cfg);
}

}  // namespace latentiv
