#include "ekg/flat_oracle.hpp"

#include "ekg/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ekg {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr double pi = std::numbers::pi;

// Bisection on the 15-point rule until each piece meets its share of an absolute tolerance.
template <class F>
double adapt(F& f, double a, double b, double tol, unsigned depth, double& err) {
    double e = 0.0;
    const double v = GK::integrate(f, a, b, 0, 0.0, &e);
    if (e <= tol || depth == 0) {
        err += e;
        return v;
    }
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth - 1, err) + adapt(f, m, b, 0.5 * tol, depth - 1, err);
}

template <class F>
double integrate(F f, double a, double b, const OracleOptions& opt, double tol) {
    double err = 0.0;
    const double v = adapt(f, a, b, tol, opt.max_depth, err);
    if (!std::isfinite(v) || err > tol)
        throw QuadratureError("adaptive quadrature missed tolerance (error estimate " + std::to_string(err) + ")");
    return v;
}

// Same integral after x = c + (d - c)(3u^2 - 2u^3), which smooths square-root corners at both ends.
template <class F>
double integrate_graded(F f, double c, double d, const OracleOptions& opt, double tol) {
    const double L = d - c;
    auto g = [&](double u) { return f(c + L * u * u * (3.0 - 2.0 * u)) * 6.0 * L * u * (1.0 - u); };
    return integrate(g, 0.0, 1.0, opt, tol);
}

// Arc length of psi in [0, pi] with |x + rho e^{i psi}| < a, where |x| = R.
double arc_inside(double R, double rho, double a) {
    if (R == 0.0 || rho == 0.0) return std::max(R, rho) < a ? pi : 0.0;
    const double c = (a * a - R * R - rho * rho) / (2.0 * R * rho);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

} // namespace

double SourceSpec::value(double t, double r) const {
    switch (kind) {
    case SourceKind::zero: return 0.0;
    case SourceKind::constant_ball: return r < support_radius ? amplitude : 0.0;
    case SourceKind::gaussian_pulse: {
        const double a = (r - center) / width, b = (t - t_center) / t_width;
        return amplitude * std::exp(-a * a - b * b);
    }
    }
    return 0.0;
}

double kernel_homogeneous(const FlatData& d, double T, double R, const OracleOptions& opt) {
    if (d.f.is_zero() && d.g.is_zero()) return 0.0;
    if (T == 0.0) return d.f.value(R);
    // y = x + T w, |w| = sin(theta); the kernel weight becomes sin(theta) d theta d psi.
    auto over_psi = [&](double th) {
        const double rho = std::sin(th);
        auto f = [&](double psi) {
            const double c = std::cos(psi);
            const double y2 = R * R + 2.0 * R * T * rho * c + T * T * rho * rho;
            const double y = std::sqrt(std::max(y2, 0.0));
            const double wy = rho * R * c + T * rho * rho;
            const double grad = y > 0.0 ? d.f.d1(y) * wy / y : 0.0;
            return d.f.value(y) + T * grad + T * d.g.value(y);
        };
        return 2.0 * integrate(f, 0.0, pi, opt, 1e-2 * opt.tolerance) * rho;
    };
    return integrate(over_psi, 0.0, 0.5 * pi, opt, opt.tolerance) / (2.0 * pi);
}

double kernel_duhamel(const SourceSpec& src, double T, double R, const OracleOptions& opt) {
    if (src.kind == SourceKind::zero || T <= 0.0) return 0.0;
    const double inner = 1e-2 * opt.tolerance;
    auto over_tau = [&](double tau) {
        const double s = T - tau;
        auto over_theta = [&](double th) {
            const double rho = s * std::sin(th);
            double ring;
            if (src.kind == SourceKind::constant_ball) {
                ring = src.amplitude * arc_inside(R, rho, src.support_radius);
            } else {
                auto over_psi = [&](double psi) {
                    const double y2 = R * R + 2.0 * R * rho * std::cos(psi) + rho * rho;
                    return src.value(tau, std::sqrt(std::max(y2, 0.0)));
                };
                ring = integrate(over_psi, 0.0, pi, opt, inner);
            }
            return 2.0 * ring * s * std::sin(th);
        };
        if (src.kind != SourceKind::constant_ball) return integrate(over_theta, 0.0, 0.5 * pi, opt, inner);
        // The arc is only piecewise smooth in rho; break at its corners.
        std::vector<double> cuts{0.0, 0.5 * pi};
        for (double rk : {std::abs(src.support_radius - R), src.support_radius + R})
            if (rk > 0.0 && rk < s) cuts.push_back(std::asin(rk / s));
        std::sort(cuts.begin(), cuts.end());
        double v = 0.0;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
            if (cuts[k + 1] > cuts[k]) v += integrate_graded(over_theta, cuts[k], cuts[k + 1], opt, inner);
        return v;
    };
    std::vector<double> cuts{0.0, T};
    if (src.kind == SourceKind::constant_ball)
        for (double rk : {std::abs(src.support_radius - R), src.support_radius + R})
            if (rk > 0.0 && rk < T) cuts.push_back(T - rk);
    std::sort(cuts.begin(), cuts.end());
    double v = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        if (cuts[k + 1] > cuts[k]) v += integrate_graded(over_tau, cuts[k], cuts[k + 1], opt, opt.tolerance);
    return -v / (2.0 * pi);
}

std::vector<double> kernel_solve(const SourceSpec& src, const FlatData& d,
                                 const std::vector<std::pair<double, double>>& events, const OracleOptions& opt) {
    std::vector<double> out;
    out.reserve(events.size());
    for (const auto& [T, R] : events) out.push_back(kernel_homogeneous(d, T, R, opt) + kernel_duhamel(src, T, R, opt));
    return out;
}

std::vector<double> kernel_solve(const SourceSpec& src, const FreeData& d,
                                 const std::vector<std::pair<double, double>>& events, const OracleOptions& opt) {
    return kernel_solve(src, FlatData{d.p0, d.p1}, events, opt);
}

TailIntegral weighted_tail_integral(double mu, double a, double b) {
    if (!(mu > 0.0) || !(a > 0.0) || !(b > 0.0) || !(b < 1.0) || !(a + b > 1.0))
        throw ConfigError("tail integral needs mu > 0, a > 0, 0 < b < 1, a + b > 1");
    auto f = [&](double x) { return std::pow(mu + x, -a) * std::pow(x, -b); };
    boost::math::quadrature::tanh_sinh<double> near;
    boost::math::quadrature::exp_sinh<double> far;
    const double lo = near.integrate(f, 0.0, mu);
    const double hi = far.integrate([&](double x) { return f(x + mu); });
    const double v = lo + hi;
    if (!std::isfinite(v)) throw QuadratureError("tail integral did not converge");
    return {v, v * std::pow(mu, a + b - 1.0)};
}

} // namespace ekg
