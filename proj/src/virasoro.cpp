#include "swp/virasoro.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace swp {

using combinatorics::beta_multi;
using combinatorics::double_factorial;
using combinatorics::gamma_coefficient;
using combinatorics::indices_up_to_weight;

void DifferentialOperator::add_term(OperatorTerm term) {
    if (term.coeff.is_zero()) return;
    std::sort(term.partials.begin(), term.partials.end());
    terms_.push_back(std::move(term));
}

TruncatedSeries DifferentialOperator::apply(const TruncatedSeries& f,
                                            const SeriesCutoff& cutoff) const {
    TruncatedSeries out(cutoff);
    for (const auto& [m, c] : f.terms()) {
        for (const auto& term : terms_) {
            Monomial target = m;
            ExactRational coeff = c * term.coeff;
            bool dead = false;
            for (int u : term.partials) {
                auto it = target.t.find(u);
                if (it == target.t.end()) {
                    dead = true;
                    break;
                }
                coeff *= it->second;
                if (--it->second == 0) target.t.erase(it);
            }
            if (dead) continue;
            target.hbar += term.hbar;
            for (const auto& [j, e] : term.t_mul) target.t[j] += e;
            target.s += term.s_mul;
            out.add_term(target, coeff);
        }
    }
    return out;
}

DifferentialOperator DifferentialOperator::scaled_shift(const ExactRational& c,
                                                        const MultiIndex& L) const {
    DifferentialOperator out;
    if (c.is_zero()) return out;
    for (OperatorTerm term : terms_) {
        term.coeff *= c;
        term.s_mul += L;
        out.terms_.push_back(std::move(term));
    }
    return out;
}

DifferentialOperator& DifferentialOperator::operator+=(const DifferentialOperator& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

DifferentialOperator& DifferentialOperator::operator-=(const DifferentialOperator& o) {
    for (OperatorTerm term : o.terms_) {
        term.coeff = -term.coeff;
        terms_.push_back(std::move(term));
    }
    return *this;
}

namespace {

// Structural order on terms, ignoring the coefficient.
bool term_shape_less(const OperatorTerm& a, const OperatorTerm& b) {
    return std::tie(a.hbar, a.t_mul, a.s_mul, a.partials) <
           std::tie(b.hbar, b.t_mul, b.s_mul, b.partials);
}

bool term_shape_equal(const OperatorTerm& a, const OperatorTerm& b) {
    return a.hbar == b.hbar && a.t_mul == b.t_mul && a.s_mul == b.s_mul &&
           a.partials == b.partials;
}

}  // namespace

DifferentialOperator DifferentialOperator::canonical() const {
    std::vector<OperatorTerm> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(), term_shape_less);
    DifferentialOperator out;
    for (auto& term : sorted) {
        if (!out.terms_.empty() && term_shape_equal(out.terms_.back(), term)) {
            out.terms_.back().coeff += term.coeff;
            if (out.terms_.back().coeff.is_zero()) out.terms_.pop_back();
        } else {
            out.terms_.push_back(std::move(term));
        }
    }
    return out;
}

DifferentialOperator DifferentialOperator::restricted(int max_t_index, int max_s_weight) const {
    DifferentialOperator out;
    for (const auto& term : terms_) {
        bool ok = term.s_mul.weight() <= max_s_weight;
        for (const auto& [j, e] : term.t_mul) ok = ok && j <= max_t_index;
        for (int u : term.partials) ok = ok && u <= max_t_index;
        if (ok) out.terms_.push_back(term);
    }
    return out;
}

bool operator==(const DifferentialOperator& a, const DifferentialOperator& b) {
    const auto ca = a.canonical().terms();
    const auto cb = b.canonical().terms();
    if (ca.size() != cb.size()) return false;
    for (size_t i = 0; i < ca.size(); ++i)
        if (!term_shape_equal(ca[i], cb[i]) || ca[i].coeff != cb[i].coeff) return false;
    return true;
}

DifferentialOperator virasoro_hat(int k, const OperatorBounds& bounds) {
    if (k < 0) throw std::invalid_argument("virasoro_hat: k must be >= 0");
    const int T = bounds.max_t_index;
    const int S = bounds.max_s_weight;
    DifferentialOperator op;

    if (k <= T) {
        OperatorTerm t0;
        t0.coeff = -double_factorial(2 * k + 1) / ExactRational(2);
        t0.partials = {k};
        op.add_term(std::move(t0));
    }

    for (const auto& L : indices_up_to_weight(S)) {
        const ExactRational bL = beta_multi(L);
        const int w = L.weight();

        for (int j = 0; j <= T; ++j) {
            const int u = w + j + k;
            if (u > T) continue;
            OperatorTerm t;
            t.coeff = ExactRational(1, 2) * bL * double_factorial(2 * w + 2 * j + 2 * k + 1) /
                      double_factorial(2 * j - 1);
            t.t_mul[j] = 1;
            t.s_mul = L;
            t.partials = {u};
            op.add_term(std::move(t));
        }

        for (int i = 0; i <= w + k - 1; ++i) {
            const int j = w + k - 1 - i;
            if (i > T || j > T) continue;
            OperatorTerm t;
            t.coeff = ExactRational(1, 4) * bL * double_factorial(2 * i + 1) *
                      double_factorial(2 * j + 1);
            t.hbar = 1;
            t.s_mul = L;
            t.partials = {i, j};
            op.add_term(std::move(t));
        }
    }

    if (k == 0) {
        OperatorTerm t;
        t.coeff = ExactRational(1, 16);
        op.add_term(std::move(t));
    }
    return op;
}

DifferentialOperator virasoro_direct(int k, const OperatorBounds& bounds) {
    if (k < 0) throw std::invalid_argument("virasoro_direct: k must be >= 0");
    const int T = bounds.max_t_index;
    const int S = bounds.max_s_weight;
    DifferentialOperator op;

    for (const auto& L : indices_up_to_weight(S)) {
        const int u = L.weight() + k;
        if (u > T) continue;
        OperatorTerm t;
        t.coeff = -ExactRational(1, 2) * double_factorial(2 * L.weight() + 2 * k + 1) *
                  gamma_coefficient(L);
        t.s_mul = L;
        t.partials = {u};
        op.add_term(std::move(t));
    }

    for (int j = 0; j + k <= T && j <= T; ++j) {
        OperatorTerm t;
        t.coeff = ExactRational(1, 2) * double_factorial(2 * j + 2 * k + 1) /
                  double_factorial(2 * j - 1);
        t.t_mul[j] = 1;
        t.partials = {j + k};
        op.add_term(std::move(t));
    }

    for (int i = 0; i <= k - 1; ++i) {
        const int j = k - 1 - i;
        if (i > T || j > T) continue;
        OperatorTerm t;
        t.coeff =
            ExactRational(1, 4) * double_factorial(2 * i + 1) * double_factorial(2 * j + 1);
        t.hbar = 1;
        t.partials = {i, j};
        op.add_term(std::move(t));
    }

    if (k == 0) {
        OperatorTerm t;
        t.coeff = ExactRational(1, 16);
        op.add_term(std::move(t));
    }
    return op;
}

DifferentialOperator virasoro_combination(int k, const OperatorBounds& bounds) {
    DifferentialOperator op;
    for (const auto& L : indices_up_to_weight(bounds.max_s_weight))
        op += virasoro_hat(k + L.weight(), bounds).scaled_shift(gamma_coefficient(L), L);
    return op;
}

DifferentialOperator commutator_rhs_hat(int n, int m, const OperatorBounds& bounds) {
    DifferentialOperator op;
    for (const auto& L : indices_up_to_weight(bounds.max_s_weight))
        op += virasoro_hat(n + m + L.weight(), bounds)
                  .scaled_shift(ExactRational(n - m) * beta_multi(L), L);
    return op;
}

DifferentialOperator commutator_rhs_direct(int n, int m, const OperatorBounds& bounds) {
    return virasoro_direct(n + m, bounds).scaled_shift(ExactRational(n - m), MultiIndex());
}

bool annihilation_window(VirasoroForm form, int k, const SeriesCutoff& cutoff,
                         const Monomial& m) {
    if (m.wdeg() != -k) return true;  // structurally zero coefficient
    const int N = cutoff.max_points;
    const int T = cutoff.max_t_index;
    const int n = m.points();
    const int jmax = std::max(0, m.max_t_index());
    const int sw = m.s.weight();
    if (form == VirasoroForm::Hat) {
        if (n + 1 > N || k > T) return false;
        if (jmax + sw + k > T) return false;
        if (m.hbar >= 1 && (n + 2 > N || sw + k - 1 > T)) return false;
        return true;
    }
    if (n + 1 > N || sw + k > T || jmax + k > T) return false;
    if (m.hbar >= 1 && n + 2 > N) return false;
    return true;
}

TruncatedSeries annihilation_residual(VirasoroForm form, int k, const TruncatedSeries& g) {
    const SeriesCutoff& cut = g.cutoff();
    OperatorBounds bounds{cut.max_t_index, cut.max_s_weight};
    DifferentialOperator op =
        form == VirasoroForm::Hat ? virasoro_hat(k, bounds) : virasoro_direct(k, bounds);
    return op.apply(g, cut).filtered(
        [&](const Monomial& m) { return annihilation_window(form, k, cut, m); });
}

}  // namespace swp
