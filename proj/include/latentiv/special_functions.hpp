#pragma once

namespace latentiv {

/// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// Regularized lower / upper incomplete gamma P(a, x) and Q(a, x), a > 0, x >= 0.
double incomplete_gamma_lower(double a, double x);
double incomplete_gamma_upper(double a, double x);

/// Two-sided p-value 2 * (1 - F_t(|t|; dof)). Infinite |t| gives 0.
double student_t_two_sided_p(double t, double dof);

/// Survival function of the chi-square distribution.
double chi_square_sf(double g, double dof);

}  // namespace latentiv
