#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace qbell {

/// Smallest and largest Bell bound accepted by lambda_from_gamma: 2 sqrt(5) and 6.
double gamma_domain_min();
double gamma_domain_max();

/// lambda_pm^2 = (1 pm sqrt(9/4 - gamma^2/16)) / 2 for the 6-site Wen-Plaquette family. The
/// inversion is valid for gamma in [2 sqrt(5), 6], the branch where the site-swapped bound
/// 2 sqrt(5 + 4 C^2) is a function of the concurrence (C^2 >= 3/4). Throws DomainError outside.
std::pair<double, double> lambda_from_gamma(double gamma_m);

/// Entanglement entropy of the family state rebuilt from gamma_m: the binary entropy of
/// lambda_+^2 for a one-site region (delta = 1), plus ln 2 for the two-site region (delta = 2).
/// Throws DomainError for delta outside {1, 2} or gamma_m outside the domain.
double entropy_from_gamma(double gamma_m, std::size_t delta);

struct AreaLawPoint {
    double L;
    double s;
};

struct TeeFit {
    /// Slope of s against L.
    double slope_alpha = 0;
    /// Minus the intercept: s = alpha L - s_tee.
    double s_tee = 0;
    /// exp(2 s_tee).
    double d_quasi = 0;
    /// Sum of squared residuals.
    double residual = 0;
};

/// Least-squares line through (L, s). Throws ValidationError for fewer than two points or when
/// every L is equal.
TeeFit area_law_fit(std::span<const AreaLawPoint> points);

}  // namespace qbell
