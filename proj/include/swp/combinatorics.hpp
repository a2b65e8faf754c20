#pragma once

// Combinatorial layer: double factorials, multi-index binomials and splits,
// and the three coefficient families (secant numbers a_n, cosine-inversion
// coefficients beta_l, and the multi-index alpha/gamma system) used by the
// kappa-removing recursions and the operator algebra.

#include <map>
#include <vector>

#include "swp/multi_index.hpp"
#include "swp/rational.hpp"

namespace swp::combinatorics {

// Spec-named accessors for the two gradings.
inline int weight(const MultiIndex& b) { return b.weight(); }
inline int size(const MultiIndex& b) { return b.size(); }

// Multi-index binomial: binom(b, L) = prod_i C(b(i), L(i)). Zero when L is
// not componentwise <= b.
ExactRational mi_binomial(const MultiIndex& b, const MultiIndex& L);

// Multi-index multinomial: binom(b; m_1, ..., m_k) = prod_i b(i)! / prod_j m_j(i)!.
// Zero unless the parts sum to b.
ExactRational mi_multinomial(const MultiIndex& b, const std::vector<MultiIndex>& parts);

// Ordered k-tuples (m_1, ..., m_k) of multi-indices with m_1 + ... + m_k = b,
// in a deterministic order. With nonzero_parts, tuples containing the zero
// multi-index are omitted. The k = 2 count is prod_i (b(i) + 1).
std::vector<std::vector<MultiIndex>> splits(const MultiIndex& b, int k, bool nonzero_parts = false);

// n!! with the conventions (-1)!! = 0!! = 1. Throws std::domain_error for n < -1.
ExactRational double_factorial(int n);

// Secant numbers a_0..a_N from 1/cos(x) = sum a_n x^{2n}/(2n)!.
// a = 1, 1, 5, 61, 1385, ... (all positive integers).
std::vector<ExactRational> secant_numbers(int N);

// beta_0..beta_N from 1/cos(sqrt(2) x) = sum beta_l x^{2l}; equivalently
// beta_l = 2^l a_l / (2l)!.
std::vector<ExactRational> beta_coefficients(int N);

// alpha_b for a multi-index b, from the recursion
//   alpha_0 = 1,
//   alpha_b = b! * sum_{L + L' = b, L' != 0} (-1)^{||L'||-1} alpha_L / (L! L'! (2|L'|-1)!!).
// One-row specialization: alpha_{(l)} = l! beta_l. Memoized and thread-safe.
ExactRational alpha_coefficient(const MultiIndex& b);

// gamma_L = (-1)^{||L||} / (L! (2|L|-1)!!), the convolution inverse of
// beta_L := alpha_L / L! in the sense sum_{L+L'=b} beta_L gamma_{L'} = [b = 0].
ExactRational gamma_coefficient(const MultiIndex& L);

// beta_L = alpha_L / L! (multi-index version; agrees with beta_l on one-row
// indices (l, 0, 0, ...)).
ExactRational beta_multi(const MultiIndex& L);

// Shift polynomials p_k(s) = sum_L (-1)^{||L||-1} / L! * s^L, returned as a
// coefficient map L -> rational.
//   weighted: sum over |L| = k (finite; max_weight is ignored),
//   counted:  sum over ||L|| = k (infinite family; truncated to |L| <= max_weight).
enum class PMode { weighted, counted };
std::map<MultiIndex, ExactRational> p_polynomial(int k, PMode mode, int max_weight);

// All multi-indices with weight exactly w (partitions of w), deterministic order.
std::vector<MultiIndex> indices_of_weight(int w);

// All multi-indices with weight <= w, deterministic order.
std::vector<MultiIndex> indices_up_to_weight(int w);

}  // namespace swp::combinatorics
