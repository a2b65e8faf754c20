#pragma once

// Recursion kernels for the volume polynomials.
//
// The volumes satisfy a Mirzakhani-type identity driven by the kernel
//   H(x, y) = 1/2 ( sech(pi (x-y)/2) - sech(pi (x+y)/2) ),
// whose odd moments are polynomials:
//   int_0^inf x^{2k+1} H(x, t) dx = M_{2k+1}(t) = (2k+1)! h_{2k+1}(t),
//   h_{2k+1}(t) = sum_{i=0}^{k} a_{k-i} / (2k-2i)! * t^{2i+1} / (2i+1)!,
// with a_j the secant numbers. The pair kernel D(L, x, y) = H(x+y, L) has
//   iint x^{2a+1} y^{2b+1} D(L, x, y) dx dy
//       = (2a+1)!(2b+1)!/(2a+2b+3)! * M_{2(a+b+1)+1}(L),
// and the boundary kernel R(L, L', x) = (H(x, L+L') + H(x, L-L'))/2 has
//   int_0^inf x^{2a+1} R(L, L', x) dx = (M_{2a+1}(L+L') + M_{2a+1}(L-L'))/2.
//
// The identity itself reads, for the pi-free volumes v_{g,n},
//
//   L_1 v_{g,n}(L) = c_D iint x y D(L_1, x, y) P_{g,n+1}(x, y, Lrest) dx dy
//                  + sum_{j>=2} int x R(L_1, L_j, x) v_{g,n-1}(x, Lrest \ L_j) dx
//
// with P_{g,n+1}(x, y, ...) = v_{g-1,n+1}(x, y, ...) +
// sum_{g_1+g_2=g, I sqcup J} v_{g_1}(x, L_I) v_{g_2}(y, L_J), every factor of
// genus >= 1, and a single global constant c_D; both sides are polynomials,
// so the identity is checked exactly. calibrate_cd recovers the constant.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "swp/correlator.hpp"
#include "swp/rational.hpp"
#include "swp/volumes.hpp"

namespace swp {

// Polynomial in L_1..L_n with arbitrary (mixed-parity) exponents; the key is
// the exponent vector of length n.
class LengthPolynomial {
  public:
    LengthPolynomial() = default;
    explicit LengthPolynomial(int boundaries) : boundaries_(boundaries) {}

    int boundaries() const { return boundaries_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<std::vector<int>, ExactRational>& terms() const { return terms_; }

    void add_term(const std::vector<int>& exponents, const ExactRational& c);
    ExactRational coefficient(const std::vector<int>& exponents) const;
    LengthPolynomial scaled(const ExactRational& c) const;

    LengthPolynomial& operator+=(const LengthPolynomial& o);
    LengthPolynomial& operator-=(const LengthPolynomial& o);
    friend bool operator==(const LengthPolynomial& a, const LengthPolynomial& b) {
        return a.boundaries_ == b.boundaries_ && a.terms_ == b.terms_;
    }

    std::string to_string() const;  // e.g. "1/8*L1 + 3/128*L1^3"

  private:
    int boundaries_ = 0;
    std::map<std::vector<int>, ExactRational> terms_;
};

// Coefficients of h_{2k+1}: entry i is the coefficient of t^{2i+1}.
std::vector<ExactRational> h_polynomial(int k);

// Coefficients of M_{2k+1} = (2k+1)! h_{2k+1}, same layout. The single (not
// double) factorial is forced by quadrature: int x^3 H(x,1) dx = 4 = 3! h_3(1).
std::vector<ExactRational> m_polynomial(int k);

// The constant and moment order of the pair-kernel integral:
//   iint x^{2a+1} y^{2b+1} D(L,x,y) = c * M_{2m+1}(L),  returned as (c, m).
std::pair<ExactRational, int> beta_moment_constant(int a, int b);

// int x^{2a+1} R(L, L', x) dx expanded as sum of c * L^p * L'^q, returned as
// (p, q, c) triples with p odd and q even.
std::vector<std::tuple<int, int, ExactRational>> r_moment(int a);

// L_1 * v_{g,n}(L) as a length polynomial.
LengthPolynomial sw_lhs(CorrelatorEngine& engine, int g, int n);

// The right-hand side of the identity for a given pair-kernel constant.
LengthPolynomial sw_rhs(CorrelatorEngine& engine, int g, int n, const ExactRational& c_d);

// lhs - rhs; the zero polynomial exactly when the identity holds with c_d.
LengthPolynomial sw_residual(CorrelatorEngine& engine, int g, int n, const ExactRational& c_d);

bool sw_verify(CorrelatorEngine& engine, int g, int n, const ExactRational& c_d);

// Solves lhs - (R-part) = c_d * (D-part with c_d = 1) for c_d. Returns the
// unique exact solution, std::nullopt if the D-part vanishes (no information),
// and throws StrategyDisagreementError if no single constant fits.
std::optional<ExactRational> calibrate_cd(CorrelatorEngine& engine, int g, int n);

}  // namespace swp
