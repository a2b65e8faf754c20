#include "swp/quadrature.hpp"

#include <cmath>

namespace swp::quadrature {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_rec(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tolerance, int depth,
                    int force) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    // The convergence test is only trustworthy once the grid is fine enough
    // to have seen the integrand at all: the moment integrands live on a
    // small left fraction of a long tail interval, where three coarse probes
    // can all read ~0. Force the first splits unconditionally.
    if (force <= 0 && (depth <= 0 || std::fabs(delta) <= 15.0 * tolerance))
        return left + right + delta / 15.0;
    return adaptive_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tolerance, depth - 1,
                        force - 1) +
           adaptive_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tolerance, depth - 1,
                        force - 1);
}

constexpr double kTail = 80.0;  // sech(pi x / 2) < 1e-54 beyond x = 80
constexpr int kForcedSplits = 10;  // initial spacing <= (b-a)/1024 before bailing

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    return adaptive_rec(f, a, fa, b, fb, m, fm, simpson(a, fa, b, fb, fm), tolerance, 48,
                        kForcedSplits);
}

double kernel_h(double x, double y) {
    return 0.5 / std::cosh(0.5 * M_PI * (x - y)) - 0.5 / std::cosh(0.5 * M_PI * (x + y));
}

double sech_moment(int n) {
    return adaptive_simpson(
        [n](double x) { return std::pow(x, 2 * n) / std::cosh(0.5 * M_PI * x); }, 0.0, kTail,
        1e-12);
}

double h_moment(int a, double t) {
    return adaptive_simpson(
        [a, t](double x) { return std::pow(x, 2 * a + 1) * kernel_h(x, t); }, 0.0,
        kTail + std::fabs(t), 1e-11);
}

double d_moment(int a, int b, double L) {
    const double upper = kTail + std::fabs(L);
    return adaptive_simpson(
        [a, b, L, upper](double x) {
            const double inner = adaptive_simpson(
                [a, b, L, x](double y) {
                    return std::pow(y, 2 * b + 1) * kernel_h(x + y, L);
                },
                0.0, upper, 1e-10);
            return std::pow(x, 2 * a + 1) * inner;
        },
        0.0, upper, 1e-8);
}

}  // namespace swp::quadrature
