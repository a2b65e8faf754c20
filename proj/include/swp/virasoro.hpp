#pragma once

// Virasoro-type constraints on the partition function G = exp(F).
//
// Two families of differential operators annihilate G:
//
//   hat V_k = -(2k+1)!!/2 d_{t_k}
//        + 1/2 sum_{L,j} (2|L|+2j+2k+1)!!/(2j-1)!! beta_L s^L t_j d_{t_{|L|+j+k}}
//        + hbar/4 sum_L sum_{i+j=|L|+k-1} (2i+1)!!(2j+1)!! beta_L s^L d_{t_i} d_{t_j}
//        + 1/16 [k=0]
//
//   V_k = -1/2 sum_L (2|L|+2k+1)!! gamma_L s^L d_{t_{|L|+k}}
//        + 1/2 sum_j (2j+2k+1)!!/(2j-1)!! t_j d_{t_{j+k}}
//        + hbar/4 sum_{i+j=k-1} (2i+1)!!(2j+1)!! d_{t_i} d_{t_j}
//        + 1/16 [k=0]
//
// for k >= 0, with beta_L = alpha_L/L! and gamma_L its convolution inverse.
// The second family is the gamma-weighted combination of the first,
// V_k = sum_L gamma_L s^L hat V_{k+|L|}, and they close into the brackets
//
//   [hat V_n, hat V_m] = (n-m) sum_L beta_L s^L hat V_{n+m+|L|},
//   [V_n, V_m]         = (n-m) V_{n+m}.
//
// The first bracket follows from the second: the s-multipliers are central,
// so expanding hat V = sum beta_L s^L V makes the |L|-asymmetric part of the
// bracket cancel, leaving (n-m) sum_M (beta*beta)_M s^M V_{n+m+|M|}, which
// resums to the hat family. (Stating the right side with a single beta and
// the plain V family is NOT equivalent and fails already at [hat V_1, hat
// V_0] on s-weight-1 monomials.)
//
// Operators are represented as finite term lists in normal form (first
// differentiate, then multiply), generated inside an explicit index/weight
// universe; window predicates identify which coefficients of an application
// to a truncated series are exact.

#include <string>
#include <vector>

#include "swp/combinatorics.hpp"
#include "swp/rational.hpp"
#include "swp/series.hpp"

namespace swp {

// One normal-form term: c * hbar^h t^{t_mul} s^{s_mul} * prod d/dt_u.
struct OperatorTerm {
    ExactRational coeff;
    int hbar = 0;
    std::map<int, int> t_mul;
    MultiIndex s_mul;
    std::vector<int> partials;  // kept sorted
};

class DifferentialOperator {
  public:
    void add_term(OperatorTerm term);
    const std::vector<OperatorTerm>& terms() const { return terms_; }

    // Applies the operator; the result is truncated to `cutoff`.
    TruncatedSeries apply(const TruncatedSeries& f, const SeriesCutoff& cutoff) const;
    TruncatedSeries apply(const TruncatedSeries& f) const { return apply(f, f.cutoff()); }

    // c * s^L * (*this).
    DifferentialOperator scaled_shift(const ExactRational& c, const MultiIndex& L) const;

    DifferentialOperator& operator+=(const DifferentialOperator& o);
    DifferentialOperator& operator-=(const DifferentialOperator& o);

    // Merges terms with identical structure and drops zero terms; afterwards
    // two operators built from the same universe agree iff their canonical
    // term lists are equal.
    DifferentialOperator canonical() const;

    // Keeps only terms whose multiplications and partials fit the universe.
    DifferentialOperator restricted(int max_t_index, int max_s_weight) const;

    friend bool operator==(const DifferentialOperator& a, const DifferentialOperator& b);

  private:
    std::vector<OperatorTerm> terms_;
};

// Generation universe: indices of t handled up to max_t_index, s-monomials up
// to total weight max_s_weight.
struct OperatorBounds {
    int max_t_index = 0;
    int max_s_weight = 0;
};

// hat V_k over the given universe.
DifferentialOperator virasoro_hat(int k, const OperatorBounds& bounds);

// V_k in its explicit form.
DifferentialOperator virasoro_direct(int k, const OperatorBounds& bounds);

// V_k as the combination sum_L gamma_L s^L hat V_{k+|L|}; agrees with
// virasoro_direct on the shared universe after canonicalization.
DifferentialOperator virasoro_combination(int k, const OperatorBounds& bounds);

// Right-hand sides of the two brackets, over the universe:
// (n-m) sum_L beta_L s^L hat V_{n+m+|L|} and (n-m) V_{n+m}. The brackets
// themselves cannot be materialized as finite term lists on a truncated
// universe (composition reaches past any index bound), so bracket checks
// apply both sides to a basis of test monomials instead.
DifferentialOperator commutator_rhs_hat(int n, int m, const OperatorBounds& bounds);
DifferentialOperator commutator_rhs_direct(int n, int m, const OperatorBounds& bounds);

enum class VirasoroForm { Hat, Direct };

// True when the coefficient of m in (operator k of the given form, applied to
// the partition function truncated to `cutoff`) equals the untruncated value.
bool annihilation_window(VirasoroForm form, int k, const SeriesCutoff& cutoff, const Monomial& m);

// Applies the k-th operator of the given form to the truncated partition
// function and keeps exactly the trustworthy coefficients; the result is the
// zero series when the constraint holds.
TruncatedSeries annihilation_residual(VirasoroForm form, int k, const TruncatedSeries& g);

}  // namespace swp
