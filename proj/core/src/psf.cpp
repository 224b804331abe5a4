#include "gaussres/psf.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gaussres {

GaussianPsf::GaussianPsf(double width) : w(width) {
    if (!(width > 0.0)) {
        throw std::invalid_argument("GaussianPsf: width must be positive");
    }
}

double overlap_delta(const GaussianPsf& psf, double d) {
    if (d < 0.0) throw std::invalid_argument("overlap_delta: d must be >= 0");
    return std::exp(-d * d / (2.0 * psf.w * psf.w));
}

double delta_k_squared(const GaussianPsf& psf) {
    return 1.0 / (psf.w * psf.w);
}

double beta(const GaussianPsf& psf, double d) {
    if (d < 0.0) throw std::invalid_argument("beta: d must be >= 0");
    const double w2 = psf.w * psf.w;
    return (1.0 - d * d / w2) * std::exp(-d * d / (2.0 * w2)) / w2;
}

double d_delta(const GaussianPsf& psf, double d) {
    if (d < 0.0) throw std::invalid_argument("d_delta: d must be >= 0");
    const double w2 = psf.w * psf.w;
    return -(d / w2) * std::exp(-d * d / (2.0 * w2));
}

namespace {

// g-(t) = 1 - 2t e^-t - e^-2t = sum_{k>=3} (-1)^k (2k - 2^k) t^k / k!
// The direct form loses all digits for t << 1; the series converges fast
// for t < 1/2.
double g_minus(double t) {
    if (t < 0.5) {
        double sum = 0.0;
        double tk = t * t * t;       // t^3
        double fact = 6.0;           // 3!
        double pow2 = 8.0;           // 2^3
        double sign = -1.0;          // (-1)^3
        for (int k = 3; k < 40; ++k) {
            const double term = sign * (2.0 * k - pow2) / fact * tk;
            sum += term;
            if (std::abs(term) < 1e-20 * std::max(std::abs(sum), 1e-300)) break;
            tk *= t;
            fact *= k + 1;
            pow2 *= 2.0;
            sign = -sign;
        }
        return sum;
    }
    return -std::expm1(-2.0 * t) - 2.0 * t * std::exp(-t);
}

}  // namespace

std::pair<double, double> eta_squared(const GaussianPsf& psf, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("eta_squared: d must be > 0");
    const double w2 = psf.w * psf.w;
    const double t = d * d / (2.0 * w2);
    const double em = std::exp(-t);
    const double g_plus = -std::expm1(-2.0 * t) + 2.0 * t * em;
    const double den_plus = 1.0 + em;
    const double den_minus = -std::expm1(-t);
    const double eta_p2 = g_plus / (4.0 * w2 * den_plus * den_plus);
    const double eta_m2 = g_minus(t) / (4.0 * w2 * den_minus * den_minus);
    return {eta_p2, eta_m2};
}

ModeGeometry mode_geometry(const GaussianPsf& psf, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("mode_geometry: d must be > 0");
    ModeGeometry g;
    g.d = d;
    g.delta = overlap_delta(psf, d);
    g.d_delta = d_delta(psf, d);
    g.dk2 = delta_k_squared(psf);
    g.beta = beta(psf, d);
    std::tie(g.eta_plus2, g.eta_minus2) = eta_squared(psf, d);
    return g;
}

// ---------------------------------------------------------------------------
// quadrature oracle
// ---------------------------------------------------------------------------

namespace {

struct GaussLegendreRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Nodes/weights on [-1, 1] by Newton iteration on the Legendre recurrence.
GaussLegendreRule gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

double tensor_integrate(const std::function<double(double, double)>& f, double L, int n) {
    const GaussLegendreRule rule = gauss_legendre(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = L * rule.x[i];
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            row += rule.w[j] * f(x, L * rule.x[j]);
        }
        sum += rule.w[i] * row;
    }
    return sum * L * L;
}

double adaptive_integrate(const std::function<double(double, double)>& f, double L,
                          double scale) {
    double prev = tensor_integrate(f, L, 48);
    for (int n = 96; n <= 1536; n *= 2) {
        const double cur = tensor_integrate(f, L, n);
        if (std::abs(cur - prev) <= 1e-9 * std::max(std::abs(cur), scale)) {
            return cur;
        }
        prev = cur;
    }
    throw std::runtime_error("quadrature_oracle: node doubling did not converge");
}

double u0(double w, double x, double y) {
    return std::sqrt(2.0 / (std::numbers::pi * w * w)) * std::exp(-(x * x + y * y) / (w * w));
}

double du0_dx(double w, double x, double y) {
    return -2.0 * x / (w * w) * u0(w, x, y);
}

}  // namespace

double quadrature_oracle(const GaussianPsf& psf, double d, GeometryQuantity which) {
    if (d < 0.0) throw std::invalid_argument("quadrature_oracle: d must be >= 0");
    const double w = psf.w;
    const double L = d / 2.0 + 8.0 * w;
    const double scale = (which == GeometryQuantity::delta) ? 1.0 : 1.0 / (w * w);
    switch (which) {
        case GeometryQuantity::delta:
            return adaptive_integrate(
                [&](double x, double y) { return u0(w, x - d / 2, y) * u0(w, x + d / 2, y); },
                L, scale);
        case GeometryQuantity::dk2:
            return adaptive_integrate(
                [&](double x, double y) {
                    const double g = du0_dx(w, x, y);
                    return g * g;
                },
                L, scale);
        case GeometryQuantity::beta:
            return adaptive_integrate(
                [&](double x, double y) {
                    return du0_dx(w, x - d / 2, y) * du0_dx(w, x + d / 2, y);
                },
                L, scale);
        case GeometryQuantity::eta:
            throw std::invalid_argument("quadrature_oracle: use quadrature_oracle_eta for eta");
    }
    throw std::logic_error("quadrature_oracle: unknown quantity");
}

std::pair<double, double> quadrature_oracle_eta(const GaussianPsf& psf, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("quadrature_oracle_eta: d must be > 0");
    const double w = psf.w;
    const double L = d / 2.0 + 8.0 * w;
    const double h = 1e-5 * w;

    // Mode normalizations at the four stencil separations, by quadrature.
    const auto norm2 = [&](double sep, int sign) {
        return adaptive_integrate(
            [&](double x, double y) {
                const double v = u0(w, x - sep / 2, y) + sign * u0(w, x + sep / 2, y);
                return v * v;
            },
            L, 1.0);
    };

    const double seps[4] = {d - h, d + h, d - h / 2, d + h / 2};
    double np[4], nm[4];
    for (int i = 0; i < 4; ++i) {
        np[i] = std::sqrt(norm2(seps[i], +1));
        nm[i] = std::sqrt(norm2(seps[i], -1));
    }

    const auto mode = [&](double sep, int sign, double norm, double x, double y) {
        return (u0(w, x - sep / 2, y) + sign * u0(w, x + sep / 2, y)) / norm;
    };
    // central difference with Richardson extrapolation over (h, h/2)
    const auto du = [&](int sign, const double* norms, double x, double y) {
        const double d1 = (mode(seps[1], sign, norms[1], x, y) -
                           mode(seps[0], sign, norms[0], x, y)) / (2.0 * h);
        const double d2 = (mode(seps[3], sign, norms[3], x, y) -
                           mode(seps[2], sign, norms[2], x, y)) / h;
        return (4.0 * d2 - d1) / 3.0;
    };

    const double ep2 = adaptive_integrate(
        [&](double x, double y) {
            const double v = du(+1, np, x, y);
            return v * v;
        },
        L, 1.0 / (w * w));
    const double em2 = adaptive_integrate(
        [&](double x, double y) {
            const double v = du(-1, nm, x, y);
            return v * v;
        },
        L, 1.0 / (w * w));
    return {ep2, em2};
}

}  // namespace gaussres
