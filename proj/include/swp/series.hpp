#pragma once

// Generating series for the intersection numbers.
//
// The free energy is the formal series
//
//   F(hbar, s, t) = sum_{g >= 1} hbar^{g-1} sum_{n, L}
//       < kappa(L) tau_{d_1} ... tau_{d_n} >_g  s^L / L!  prod_d t_d^{e_d} / e_d!
//
// where e_d counts the insertions tau_d, and the partition function is
// G = exp(F). Both live here as sparse truncated series in the variables
// hbar, t_0, t_1, ..., and s_1, s_2, ....
//
// Every monomial appearing with a nonzero coefficient satisfies the grading
//   wdeg := (sum of t-indices, with multiplicity) + |s| - (hbar exponent) = 0,
// which is the degree constraint on the correlators. Truncation windows are
// chosen around this grading, so that cutting the series at a maximal genus,
// point count, t-index, and s-weight loses nothing inside the window.

#include <map>
#include <string>
#include <vector>

#include "swp/combinatorics.hpp"
#include "swp/correlator.hpp"
#include "swp/multi_index.hpp"
#include "swp/rational.hpp"

namespace swp {

// hbar^{hbar} * prod_d t_d^{t[d]} * s^{s}; exponents in t are >= 1.
struct Monomial {
    int hbar = 0;
    std::map<int, int> t;
    MultiIndex s;

    int points() const;       // total t-exponent (number of tau insertions)
    int t_weight() const;     // sum of index * exponent
    int max_t_index() const;  // largest t-index present, -1 if none
    int wdeg() const { return t_weight() + s.weight() - hbar; }

    // Multiplicative combination of two monomials.
    friend Monomial operator*(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.hbar == b.hbar && a.t == b.t && a.s == b.s;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.hbar != b.hbar) return a.hbar < b.hbar;
        if (a.t != b.t) return a.t < b.t;
        return a.s < b.s;
    }

    std::string to_string() const;  // e.g. "hbar^1 t[0,0,1] s[(1,2)]"
};

// Rectangular truncation window: a monomial is kept when its genus marker
// (hbar exponent + 1), point count, largest t-index, and s-weight all fit.
struct SeriesCutoff {
    int max_genus = 0;
    int max_points = 0;
    int max_t_index = 0;
    int max_s_weight = 0;

    bool contains(const Monomial& m) const {
        return m.hbar <= max_genus - 1 && m.points() <= max_points &&
               m.max_t_index() <= max_t_index && m.s.weight() <= max_s_weight;
    }
};

class TruncatedSeries {
  public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(SeriesCutoff cutoff) : cutoff_(cutoff) {}

    const SeriesCutoff& cutoff() const { return cutoff_; }
    const std::map<Monomial, ExactRational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    ExactRational coefficient(const Monomial& m) const;

    // Adds c * m, silently dropping monomials outside the window.
    void add_term(const Monomial& m, const ExactRational& c);

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries scaled(const ExactRational& c) const;

    // Product truncated to this->cutoff().
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

    // Keeps only the monomials satisfying the predicate.
    template <typename Pred>
    TruncatedSeries filtered(Pred keep) const {
        TruncatedSeries out(cutoff_);
        for (const auto& [m, c] : terms_)
            if (keep(m)) out.add_term(m, c);
        return out;
    }

    std::string to_string() const;

  private:
    SeriesCutoff cutoff_;
    std::map<Monomial, ExactRational> terms_;
};

// The free energy F truncated to the window. When with_kappa is false only
// the s-free part (pure tau correlators) is produced.
TruncatedSeries build_free_energy(CorrelatorEngine& engine, const SeriesCutoff& cutoff,
                                  bool with_kappa = true);

// exp(F) for a series without constant term, truncated to F's window.
TruncatedSeries exponentiate(const TruncatedSeries& f);

// Residual of the KdV-type equation satisfied by the free energy,
//   d0 d1 F = (hbar/12) d0^4 F + (hbar/2) (d0^2 F)^2,
// as the series LHS - RHS. All of its trustworthy coefficients (those inside
// kdv_window) vanish when F is a genuine free-energy window.
TruncatedSeries kdv_pde_residual(const TruncatedSeries& f);

// True when the coefficient of m in kdv_pde_residual(F) is fully determined
// by a window of the given cutoff.
bool kdv_window(const SeriesCutoff& cutoff, const Monomial& m);

// Substitutes t_i -> t_i + p_i(s) (i >= 1; t_0 untouched) into a t-only
// series, with the shift polynomials of the given mode. The result is
// truncated to `target`.
TruncatedSeries substitute_shift(const TruncatedSeries& fz, combinatorics::PMode mode,
                                 const SeriesCutoff& target);

// True when the coefficient of m in substitute_shift(F_Z, ...) is fully
// determined by F_Z truncated to `zcut`: every contributing monomial of the
// t-only series fits inside zcut.
bool shift_window(const SeriesCutoff& zcut, const Monomial& m);

}  // namespace swp
