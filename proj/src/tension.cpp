#include "domino/tension.hpp"

#include <cmath>

namespace domino {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Gauss-Legendre nodes/weights on [-1,1], computed once by Newton iteration.
struct GaussLegendre {
    static constexpr int N = 48;
    std::array<double, N> x{}, w{};
    GaussLegendre() {
        for (int i = 0; i < N; ++i) {
            double t = std::cos(kPi * (i + 0.75) / (N + 0.5));
            double p0 = 1, p1 = t, dp = 0;
            for (int it = 0; it < 100; ++it) {
                p0 = 1;
                p1 = t;
                for (int k = 2; k <= N; ++k) {
                    double pk = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = N * (t * p1 - p0) / (t * t - 1);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            x[size_t(i)] = t;
            w[size_t(i)] = 2.0 / ((1 - t * t) * dp * dp);
        }
    }
};

const GaussLegendre& gl() {
    static const GaussLegendre g;
    return g;
}

/// log(sin t / t), analytic on [0, pi/2], removable at 0.
double log_sinc(double t) {
    if (t < 1e-8) return -t * t / 6.0;
    return std::log(std::sin(t) / t);
}

/// L on [0, pi/2]: the log(2t) part integrates exactly, the rest is smooth.
double lobachevsky_half(double z) {
    if (z <= 0) return 0.0;
    double smooth = 0;
    const auto& g = gl();
    for (int i = 0; i < GaussLegendre::N; ++i)
        smooth += g.w[size_t(i)] * log_sinc(0.5 * z * (g.x[size_t(i)] + 1.0));
    smooth *= 0.5 * z;
    return -(z * (std::log(2.0 * z) - 1.0) + smooth);
}

/// Root A of cos(2 pi A) = (cos(pi t/2) - cos(pi s/2)) / 2 in the admissible
/// interval [|t|/4, 1/2 - |s|/4]; the left side is strictly decreasing there.
double solve_mean_parameter(double s, double t) {
    double lo = std::abs(t) / 4, hi = 0.5 - std::abs(s) / 4;
    double target = 0.5 * (std::cos(kPi * t / 2) - std::cos(kPi * s / 2));
    auto f = [&](double A) { return target - std::cos(2 * kPi * A); };
    require(f(lo) <= 1e-15 && f(hi) >= -1e-15, Errc::NoRoot,
            "bisection bracket failed for an interior slope");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double lobachevsky(double z) {
    require(z >= -1e-12 && z <= kPi + 1e-12, Errc::DomainError,
            "lobachevsky argument outside [0, pi]");
    z = std::min(std::max(z, 0.0), kPi);
    if (z <= kPi / 2) return lobachevsky_half(z);
    return -lobachevsky_half(kPi - z);  // L(pi - z) = -L(z)
}

SlopeTension solve_slope_system(Slope slope) {
    require(in_newton_polygon(slope, 1e-9), Errc::DomainError, "slope outside the Newton polygon");
    SlopeTension out;
    out.slope = slope;
    double s = slope.s, t = slope.t;

    if (newton_polygon_gap(slope) <= 1e-9) {
        // frozen boundary: the linear constraints pin all four probabilities
        out.p = {std::max(t, 0.0) / 2, std::max(-t, 0.0) / 2, std::max(-s, 0.0) / 2,
                 std::max(s, 0.0) / 2};
        out.sigma = 0.0;
        return out;
    }

    double A = solve_mean_parameter(s, t);
    double D = 0.5 - A;
    out.p = {A + t / 4, A - t / 4, D - s / 4, D + s / 4};
    for (double& p : out.p) p = std::min(std::max(p, 0.0), 1.0);
    double sig = 0;
    for (double p : out.p) sig += lobachevsky(kPi * p);
    out.sigma = sig / kPi;
    if (newton_polygon_gap(slope) >= 1e-3) out.grad = sigma_gradient(slope);
    return out;
}

double sigma(Slope slope) {
    require(in_newton_polygon(slope, 1e-9), Errc::DomainError, "slope outside the Newton polygon");
    if (newton_polygon_gap(slope) <= 1e-9) return 0.0;
    double A = solve_mean_parameter(slope.s, slope.t);
    double D = 0.5 - A;
    return (lobachevsky(kPi * (A + slope.t / 4)) + lobachevsky(kPi * (A - slope.t / 4)) +
            lobachevsky(kPi * (D - slope.s / 4)) + lobachevsky(kPi * (D + slope.s / 4))) /
           kPi;
}

std::array<double, 2> sigma_gradient(Slope slope, double eps_bnd) {
    require(newton_polygon_gap(slope) >= eps_bnd, Errc::BoundaryGradient,
            "slope too close to the Newton polygon boundary for a gradient");
    const double h = 1e-6;
    auto clamped = [&](double s, double t) {
        Slope q{s, t};
        if (!in_newton_polygon(q, 0)) {
            double scale = 2.0 / (std::abs(s) + std::abs(t));
            q.s *= scale;
            q.t *= scale;
        }
        return sigma(q);
    };
    return {(clamped(slope.s + h, slope.t) - clamped(slope.s - h, slope.t)) / (2 * h),
            (clamped(slope.s, slope.t + h) - clamped(slope.s, slope.t - h)) / (2 * h)};
}

SigmaGrid::SigmaGrid(int n) : n_(n), step_(2.0 / (n - 1)), table_(size_t(n) * size_t(n), 0.0) {
    for (int i = 0; i < n_; ++i) {
        double u = -1.0 + step_ * i;
        for (int j = 0; j < n_; ++j) {
            double w = -1.0 + step_ * j;
            // (u,w) = ((s+t)/2, (t-s)/2) maps the Newton polygon to the square
            Slope p{u - w, u + w};
            table_[size_t(i) * size_t(n_) + size_t(j)] = sigma(p);
        }
    }
}

namespace {

inline double catmull_rom(double pm1, double p0, double p1, double p2, double x) {
    return p0 + 0.5 * x * (p1 - pm1 +
                           x * (2 * pm1 - 5 * p0 + 4 * p1 - p2 + x * (3 * (p0 - p1) + p2 - pm1)));
}

}  // namespace

double SigmaGrid::value_uw(double u, double w) const {
    if (std::abs(u) >= 1.0 || std::abs(w) >= 1.0) return 0.0;
    double fi = (u + 1.0) / step_;
    double fj = (w + 1.0) / step_;
    int i = std::min(int(fi), n_ - 2);
    int j = std::min(int(fj), n_ - 2);
    double x = fi - i, y = fj - j;
    std::array<double, 4> col{};
    for (int di = -1; di <= 2; ++di) {
        int ii = std::min(std::max(i + di, 0), n_ - 1);
        std::array<double, 4> row{};
        for (int dj = -1; dj <= 2; ++dj) {
            int jj = std::min(std::max(j + dj, 0), n_ - 1);
            row[size_t(dj + 1)] = at(ii, jj);
        }
        col[size_t(di + 1)] = catmull_rom(row[0], row[1], row[2], row[3], y);
    }
    return catmull_rom(col[0], col[1], col[2], col[3], x);
}

double SigmaGrid::value(Slope p) const { return value_uw((p.s + p.t) / 2, (p.t - p.s) / 2); }

std::array<double, 2> SigmaGrid::gradient(Slope p) const {
    double h = 0.5 * step_;
    double u = (p.s + p.t) / 2, w = (p.t - p.s) / 2;
    double du = (value_uw(u + h, w) - value_uw(u - h, w)) / (2 * h);
    double dw = (value_uw(u, w + h) - value_uw(u, w - h)) / (2 * h);
    return {0.5 * (du - dw), 0.5 * (du + dw)};
}

}  // namespace domino
