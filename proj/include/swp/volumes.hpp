#pragma once

// Super Weil-Petersson volume polynomials.
//
// The volume of the moduli space of super hyperbolic surfaces of genus g with
// n geodesic boundaries of lengths L_1..L_n is a polynomial in the L_i^2
// whose coefficients are intersection numbers:
//
//   V_{g,n}(L) = sum_{d_0+...+d_n = g-1} (2 pi^2)^{d_0} / d_0!
//                  < kappa_1^{d_0} tau_{d_1} ... tau_{d_n} >_g
//                  prod_i L_i^{2 d_i} / (2^{d_i} d_i!)
//
// Three normalizations are provided:
//   volume_polynomial    V_{g,n}(L)        (powers of pi attached to kappa_1)
//   normalized_volume    v_{g,n}(L) = V_{g,n}(2 pi L) / (2 pi^2)^{g-1}, pi-free
//   super_volume         2^{1-g-n} V_{g,n}(L)
//
// The module also exposes the "higher" volumes V_{g,n}(kappa(b)) =
// < tau_0^n kappa(b) >_g together with residual forms of the two structural
// identities they satisfy (adding a boundary, and removing all boundaries);
// each residual is identically zero when the identity holds.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "swp/correlator.hpp"
#include "swp/multi_index.hpp"
#include "swp/rational.hpp"

namespace swp {

// Polynomial in L_1^2, ..., L_n^2 with exact rational coefficients. A term is
// keyed by its exponent vector (d_0, d_1, ..., d_n): d_0 counts kappa_1
// insertions (structural bookkeeping) and d_i is the exponent of L_i^2. When
// carries_pi is set, the term keyed by d_0 carries an implicit factor
// pi^{2 d_0}; otherwise the polynomial is free of pi.
class VolumePolynomial {
  public:
    VolumePolynomial() = default;
    VolumePolynomial(int boundaries, bool carries_pi)
        : boundaries_(boundaries), carries_pi_(carries_pi) {}

    int boundaries() const { return boundaries_; }
    bool carries_pi() const { return carries_pi_; }
    bool empty() const { return terms_.empty(); }
    const std::map<std::vector<int>, ExactRational>& terms() const { return terms_; }

    // Adds c to the coefficient of the given exponent vector (d_0, ..., d_n).
    void add_term(const std::vector<int>& exponents, const ExactRational& c);

    // Coefficient of the exponent vector, zero if absent.
    ExactRational coefficient(const std::vector<int>& exponents) const;

    // Multiplies every coefficient by c.
    VolumePolynomial scaled(const ExactRational& c) const;

    // Evaluates at boundary lengths L (exact). The result is grouped by the
    // power of pi: a list of (pi_power, value) pairs with zero values dropped,
    // sorted by increasing power. For pi-free polynomials the list has at most
    // one entry, with pi_power 0.
    std::vector<std::pair<int, ExactRational>> evaluate(
        const std::vector<ExactRational>& lengths) const;

    // Human-readable form, e.g. "9/64*pi^2 + 3/256*L1^2". Terms are ordered by
    // the exponents of L_1..L_n (constant term first).
    std::string to_string() const;

  private:
    int boundaries_ = 0;
    bool carries_pi_ = false;
    std::map<std::vector<int>, ExactRational> terms_;
};

// V_{g,n}(L); coefficients carry powers of pi through the kappa_1 exponent.
VolumePolynomial volume_polynomial(CorrelatorEngine& engine, int g, int n);

// v_{g,n}(L) = V_{g,n}(2 pi L) / (2 pi^2)^{g-1}: the pi-free normalization
//   v_{g,n}(L) = sum < kappa_1^{d_0} prod tau_{d_i} >_g prod L_i^{2 d_i} / prod_j d_j!.
VolumePolynomial normalized_volume(CorrelatorEngine& engine, int g, int n);

// 2^{1-g-n} V_{g,n}(L).
VolumePolynomial super_volume(CorrelatorEngine& engine, int g, int n);

// V_{g,n}(kappa(b)) = < tau_0^n kappa(b) >_g, the constant term of the volume
// with the kappa_1 class replaced by an arbitrary kappa monomial.
ExactRational higher_volume(CorrelatorEngine& engine, int g, int n, const MultiIndex& b);

// Residual of the add-a-boundary identity
//   V_{g,n+1}(kappa(b)) = (2g-2+n+||b||) V_{g,n}(kappa(b))
//       + sum_{L+L'=b, ||L'||>=2} binom(b,L) V_{g,n}(kappa(L) kappa_{|L'|});
// zero whenever the identity holds.
ExactRational thm16_residual(CorrelatorEngine& engine, int g, int n, const MultiIndex& b);

// The boundary-removal identity for V_g = V_{g,0} exists in two readings that
// differ in whether the final sum carries a multi-index binomial weight; the
// readings first diverge at g = 4, b = kappa_1^3.
enum class Thm17Variant { AsStated, WithBinomial };

// Residual of the boundary-removal identity
//   ||b|| V_g(kappa(b)) =
//       sum_{L+L1+L2=b, ||L||>=1} (-1)^{||L||-1} binom(b; L, L1, L2)
//           V_g(kappa(L1) kappa_{|L|+|L2|})
//     - sum_{L+L'=b, ||L'||>=2} [binom(b,L)] V_g(kappa(L) kappa_{|L'|}),
// where the bracketed weight is present only in the WithBinomial variant.
ExactRational thm17_residual(CorrelatorEngine& engine, int g, const MultiIndex& b,
                             Thm17Variant variant);

}  // namespace swp
