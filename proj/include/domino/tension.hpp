#pragma once

#include <array>
#include <optional>
#include <vector>

#include "domino/error.hpp"

namespace domino {

/// Slope (s,t) of a height function; must lie in the Newton polygon
/// N = { |s| + |t| <= 2 }.
struct Slope {
    double s = 0;
    double t = 0;
};

inline double newton_polygon_gap(Slope p) { return 2.0 - (std::abs(p.s) + std::abs(p.t)); }
inline bool in_newton_polygon(Slope p, double tol = 1e-12) {
    return newton_polygon_gap(p) >= -tol;
}

/// Lobachevsky function L(z) = -Integral_0^z log|2 sin t| dt on [0, pi];
/// absolute error below 1e-12.
double lobachevsky(double z);

struct SlopeTension {
    Slope slope;
    std::array<double, 4> p{};  // p_a, p_b, p_c, p_d
    double sigma = 0;
    std::optional<std::array<double, 2>> grad;  // absent on the boundary
};

/// Solves the four-probability system at a slope: the two linear constraints
/// exactly, the transcendental one by bisection to 1e-12.
SlopeTension solve_slope_system(Slope slope);

/// Surface tension sigma(s,t); zero on the boundary of the Newton polygon.
double sigma(Slope slope);

/// Central finite differences of sigma, step 1e-6; requires the slope to be
/// at least eps_bnd inside the Newton polygon.
std::array<double, 2> sigma_gradient(Slope slope, double eps_bnd = 1e-3);

/// Dense samples of sigma on the 45-degree-rotated square with bicubic
/// interpolation; read-only after construction.
class SigmaGrid {
  public:
    explicit SigmaGrid(int n = 769);
    double value(Slope p) const;  // 0 outside the polygon
    std::array<double, 2> gradient(Slope p) const;
    int size() const { return n_; }

  private:
    double at(int i, int j) const { return table_[size_t(i) * size_t(n_) + size_t(j)]; }
    double value_uw(double u, double w) const;
    int n_;
    double step_;
    std::vector<double> table_;  // sigma over (u,w) in [-1,1]^2, u=(s+t)/2, w=(t-s)/2
};

}  // namespace domino
