#pragma once

#include <vector>

namespace anisofem {

/// One term f_kl sin(k x) cos(l y) on (0, pi)^2.
struct Mode {
    int k = 1;
    int l = 0;
    double coeff = 0.0;
};

/// Finite sine-cosine expansion of a right-hand side with b = e_y, A_par = 1, A_perp = Id.
struct FourierRhs {
    std::vector<Mode> modes;

    /// Throws ConfigError for k < 1 or l < 0.
    void validate() const;
    [[nodiscard]] double value(double x, double y) const;
};

/// Closed-form solution of the stabilized problem:
///   u_kl  = f_kl / (k^2 + l^2 + (1-eps) l^4 / (eps l^2 + sigma))
///   xi_kl = l^2 f_kl / ((eps l^2 + sigma)(k^2 + l^2) + (1-eps) l^4)
struct SpectralSolution {
    double eps = 0.0;
    double sigma = 0.0;
    std::vector<Mode> u;
    std::vector<Mode> xi;
};

/// Throws DegenerateFieldError when eps = sigma = 0 and some mode has l >= 1.
SpectralSolution spectral_solve(const FourierRhs& f, double eps, double sigma);

enum class SeriesQuantity { U, Xi, Q };

/// Pointwise sum. Q = xi(x, y) - xi(x, 0) requires sigma = 0 and eps > 0.
double eval_series(const SpectralSolution& sol, SeriesQuantity which, double x, double y);

/// x and y derivatives of the U or Xi series.
struct SeriesGradient {
    double dx = 0.0;
    double dy = 0.0;
};
SeriesGradient eval_series_gradient(const SpectralSolution& sol, SeriesQuantity which, double x,
                                    double y);

/// (sum (k^2 + l^2)^s c_kl^2)^(1/2).
double sobolev_seminorm(const std::vector<Mode>& modes, double s);

}  // namespace anisofem
