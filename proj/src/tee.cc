#include "qbell/tee.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qbell/error.h"
#include "qbell/states.h"

namespace qbell {

namespace {

constexpr double kDomainSlack = 1e-12;

}  // namespace

double gamma_domain_min() {
    return 2 * std::sqrt(5.0);
}

double gamma_domain_max() {
    return 6;
}

std::pair<double, double> lambda_from_gamma(double gamma_m) {
    if (!(gamma_m >= gamma_domain_min() - kDomainSlack && gamma_m <= gamma_domain_max() + kDomainSlack)) {
        throw DomainError("gamma_M = " + std::to_string(gamma_m) +
                          " is outside [2 sqrt(5), 6]; the inversion needs the branch C^2 >= 3/4 of the "
                          "site-swapped bound");
    }
    double r = std::sqrt(std::clamp(9.0 / 4.0 - gamma_m * gamma_m / 16.0, 0.0, 1.0));
    return {(1 + r) / 2, (1 - r) / 2};
}

double entropy_from_gamma(double gamma_m, std::size_t delta) {
    if (delta != 1 && delta != 2) {
        throw DomainError("entropy_from_gamma supports delta 1 or 2, got " + std::to_string(delta));
    }
    auto [lp2, lm2] = lambda_from_gamma(gamma_m);
    double probabilities[2] = {lp2, lm2};
    double s = shannon_entropy(probabilities);
    return delta == 2 ? s + std::numbers::ln2 : s;
}

TeeFit area_law_fit(std::span<const AreaLawPoint> points) {
    if (points.size() < 2) {
        throw ValidationError("area-law fit needs at least two points");
    }
    double n = static_cast<double>(points.size());
    double mean_l = 0;
    double mean_s = 0;
    for (const auto &p : points) {
        mean_l += p.L;
        mean_s += p.s;
    }
    mean_l /= n;
    mean_s /= n;
    double sxx = 0;
    double sxy = 0;
    for (const auto &p : points) {
        sxx += (p.L - mean_l) * (p.L - mean_l);
        sxy += (p.L - mean_l) * (p.s - mean_s);
    }
    if (sxx == 0) {
        throw ValidationError("area-law fit needs at least two distinct boundary lengths");
    }
    TeeFit fit;
    fit.slope_alpha = sxy / sxx;
    fit.s_tee = fit.slope_alpha * mean_l - mean_s;
    fit.d_quasi = std::exp(2 * fit.s_tee);
    for (const auto &p : points) {
        double r = p.s - (fit.slope_alpha * p.L - fit.s_tee);
        fit.residual += r * r;
    }
    return fit;
}

}  // namespace qbell
