#pragma once

// Numerical oracles for the kernel module: adaptive Simpson quadrature of the
// sech-type kernel, used by the tests to confirm the exact moment formulas
// independently of the combinatorial derivation. Everything here is double
// precision; the exact side of each comparison lives in kernel.hpp.

#include <functional>

namespace swp::quadrature {

// Adaptive Simpson integration of f over [a, b] to the given absolute
// tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance);

// H(x, y) = 1/2 (sech(pi (x-y)/2) - sech(pi (x+y)/2)).
double kernel_h(double x, double y);

// int_0^inf x^{2n} sech(pi x / 2) dx  (equals the n-th secant number).
double sech_moment(int n);

// int_0^inf x^{2a+1} H(x, t) dx  (equals M_{2a+1}(t)).
double h_moment(int a, double t);

// iint_{x,y>0} x^{2a+1} y^{2b+1} H(x+y, L) dx dy
// (equals the pair-kernel constant times M at L).
double d_moment(int a, int b, double L);

}  // namespace swp::quadrature
