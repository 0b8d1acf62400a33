#include "latentiv/special_functions.hpp"

#include "latentiv/core.hpp"

#include <cmath>
#include <limits>

namespace latentiv {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double a, double b, double x)
{
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double gamma_series(double a, double x)
{
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_continued_fraction(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void require(bool ok, const char* what)
{
    if (!ok) throw Error(ErrorKind::InvalidConfig, what);
}

}  // namespace

double incomplete_beta(double a, double b, double x)
{
    require(a > 0.0 && b > 0.0, "incomplete_beta: shape parameters must be positive");
    require(x >= 0.0 && x <= 1.0, "incomplete_beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double incomplete_gamma_lower(double a, double x)
{
    require(a > 0.0, "incomplete_gamma: shape must be positive");
    require(x >= 0.0, "incomplete_gamma: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return gamma_series(a, x);
    return 1.0 - gamma_continued_fraction(a, x);
}

double incomplete_gamma_upper(double a, double x)
{
    require(a > 0.0, "incomplete_gamma: shape must be positive");
    require(x >= 0.0, "incomplete_gamma: x must be non-negative");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - gamma_series(a, x);
    return gamma_continued_fraction(a, x);
}

double student_t_two_sided_p(double t, double dof)
{
    require(dof > 0.0, "student_t_two_sided_p: dof must be positive");
    if (std::isnan(t)) throw Error(ErrorKind::NonFinite, "student_t_two_sided_p: t is NaN");
    if (std::isinf(t)) return 0.0;
    if (t == 0.0) return 1.0;
    // P(|T| > t) = I_{dof / (dof + t^2)}(dof / 2, 1 / 2)
    const double x = dof / (dof + t * t);
    const double p = incomplete_beta(0.5 * dof, 0.5, x);
    return std::clamp(p, 0.0, 1.0);
}

double chi_square_sf(double g, double dof)
{
    require(dof > 0.0, "chi_square_sf: dof must be positive");
    if (std::isnan(g)) throw Error(ErrorKind::NonFinite, "chi_square_sf: statistic is NaN");
    if (g <= 0.0) return 1.0;
    return std::clamp(incomplete_gamma_upper(0.5 * dof, 0.5 * g), 0.0, 1.0);
}

}  // namespace latentiv
