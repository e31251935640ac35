#include "anisofem/spectral.hpp"

#include <cmath>
#include <string>

#include "anisofem/errors.hpp"

namespace anisofem {

void FourierRhs::validate() const {
    for (const Mode& m : modes) {
        if (m.k < 1 || m.l < 0) {
            throw ConfigError("Fourier mode requires k >= 1 and l >= 0, got (" +
                              std::to_string(m.k) + ", " + std::to_string(m.l) + ")");
        }
    }
}

double FourierRhs::value(double x, double y) const {
    double s = 0.0;
    for (const Mode& m : modes) {
        s += m.coeff * std::sin(m.k * x) * std::cos(m.l * y);
    }
    return s;
}

SpectralSolution spectral_solve(const FourierRhs& f, double eps, double sigma) {
    f.validate();
    if (eps < 0.0 || sigma < 0.0) {
        throw ConfigError("spectral_solve requires eps >= 0 and sigma >= 0");
    }
    SpectralSolution sol;
    sol.eps = eps;
    sol.sigma = sigma;
    for (const Mode& m : f.modes) {
        const double k2 = static_cast<double>(m.k) * m.k;
        const double l2 = static_cast<double>(m.l) * m.l;
        const double l4 = l2 * l2;
        if (m.l == 0) {
            sol.u.push_back({m.k, m.l, m.coeff / k2});
            continue;
        }
        const double d = eps * l2 + sigma;
        if (d == 0.0) {
            throw DegenerateFieldError("spectral_solve: eps = sigma = 0 with a mode l >= 1");
        }
        sol.u.push_back({m.k, m.l, m.coeff / (k2 + l2 + (1.0 - eps) * l4 / d)});
        sol.xi.push_back({m.k, m.l, l2 * m.coeff / (d * (k2 + l2) + (1.0 - eps) * l4)});
    }
    return sol;
}

double eval_series(const SpectralSolution& sol, SeriesQuantity which, double x, double y) {
    double s = 0.0;
    switch (which) {
        case SeriesQuantity::U:
            for (const Mode& m : sol.u) {
                s += m.coeff * std::sin(m.k * x) * std::cos(m.l * y);
            }
            return s;
        case SeriesQuantity::Xi:
            for (const Mode& m : sol.xi) {
                s += m.coeff * std::sin(m.k * x) * std::cos(m.l * y);
            }
            return s;
        case SeriesQuantity::Q:
            if (sol.sigma != 0.0 || !(sol.eps > 0.0)) {
                throw DomainError("q series requires sigma = 0 and eps > 0");
            }
            for (const Mode& m : sol.xi) {
                s += m.coeff * std::sin(m.k * x) * (std::cos(m.l * y) - 1.0);
            }
            return s;
    }
    return s;
}

SeriesGradient eval_series_gradient(const SpectralSolution& sol, SeriesQuantity which, double x,
                                    double y) {
    if (which == SeriesQuantity::Q) {
        throw DomainError("gradient of the q series is not provided");
    }
    const auto& modes = which == SeriesQuantity::U ? sol.u : sol.xi;
    SeriesGradient g;
    for (const Mode& m : modes) {
        g.dx += m.coeff * m.k * std::cos(m.k * x) * std::cos(m.l * y);
        g.dy -= m.coeff * m.l * std::sin(m.k * x) * std::sin(m.l * y);
    }
    return g;
}

double sobolev_seminorm(const std::vector<Mode>& modes, double s) {
    double sum = 0.0;
    for (const Mode& m : modes) {
        const double r = static_cast<double>(m.k) * m.k + static_cast<double>(m.l) * m.l;
        sum += std::pow(r, s) * m.coeff * m.coeff;
    }
    return std::sqrt(sum);
}

}  // namespace anisofem
