#include "swp/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace swp {

int Monomial::points() const {
    int n = 0;
    for (const auto& [i, e] : t) n += e;
    return n;
}

int Monomial::t_weight() const {
    int w = 0;
    for (const auto& [i, e] : t) w += i * e;
    return w;
}

int Monomial::max_t_index() const { return t.empty() ? -1 : t.rbegin()->first; }

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    m.hbar += b.hbar;
    for (const auto& [i, e] : b.t) m.t[i] += e;
    m.s += b.s;
    return m;
}

std::string Monomial::to_string() const {
    std::ostringstream os;
    os << "hbar^" << hbar << " t[";
    bool first = true;
    for (const auto& [i, e] : t)
        for (int k = 0; k < e; ++k) {
            os << (first ? "" : ",") << i;
            first = false;
        }
    os << "] s[";
    first = true;
    for (const auto& [i, c] : s.entries()) {
        os << (first ? "" : ",") << "(" << i << "," << c << ")";
        first = false;
    }
    os << "]";
    return os.str();
}

ExactRational TruncatedSeries::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ExactRational(0) : it->second;
}

void TruncatedSeries::add_term(const Monomial& m, const ExactRational& c) {
    if (c.is_zero() || !cutoff_.contains(m)) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

TruncatedSeries TruncatedSeries::scaled(const ExactRational& c) const {
    TruncatedSeries out(cutoff_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(a.cutoff());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) out.add_term(ma * mb, ca * cb);
    return out;
}

std::string TruncatedSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        os << (first ? "" : "\n") << m.to_string() << " = " << c.to_string();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

// Descending tuples (d_1 >= ... >= d_n >= 0) with sum `total` and entries
// bounded by max_entry.
void tau_multisets(int slots, int total, int max_entry, std::vector<int>& acc,
                   std::vector<std::vector<int>>& out) {
    if (slots == 0) {
        if (total == 0) out.push_back(acc);
        return;
    }
    for (int v = std::min(max_entry, total); v >= 0; --v) {
        acc.push_back(v);
        tau_multisets(slots - 1, total - v, v, acc, out);
        acc.pop_back();
    }
}

}  // namespace

TruncatedSeries build_free_energy(CorrelatorEngine& engine, const SeriesCutoff& cutoff,
                                  bool with_kappa) {
    TruncatedSeries f(cutoff);
    for (int g = 1; g <= cutoff.max_genus; ++g) {
        const int deg = g - 1;
        std::vector<MultiIndex> kappas;
        if (with_kappa) {
            for (const auto& L : combinatorics::indices_up_to_weight(
                     std::min(deg, cutoff.max_s_weight)))
                kappas.push_back(L);
        } else {
            kappas.emplace_back();
        }
        for (const auto& L : kappas) {
            const int rest = deg - L.weight();
            for (int n = 0; n <= cutoff.max_points; ++n) {
                if (g == 1 && n == 0) continue;  // no correlator in this slot
                if (n == 0 && rest != 0) continue;
                std::vector<std::vector<int>> psis;
                std::vector<int> acc;
                tau_multisets(n, rest, std::min(rest, cutoff.max_t_index), acc, psis);
                for (const auto& psi : psis) {
                    ExactRational value = engine.evaluate(g, L, psi);
                    if (value.is_zero()) continue;
                    Monomial m;
                    m.hbar = g - 1;
                    for (int d : psi) ++m.t[d];
                    m.s = L;
                    ExactRational denom = L.index_factorial();
                    for (const auto& [d, e] : m.t) denom *= factorial(e);
                    f.add_term(m, value / denom);
                }
            }
        }
    }
    return f;
}

TruncatedSeries exponentiate(const TruncatedSeries& f) {
    if (!f.coefficient(Monomial{}).is_zero())
        throw std::invalid_argument("exponentiate: series has a constant term");
    TruncatedSeries g(f.cutoff());
    g.add_term(Monomial{}, ExactRational(1));
    TruncatedSeries power = g;  // f^0
    const int kmax = f.cutoff().max_points + f.cutoff().max_s_weight + 1;
    for (int k = 1; k <= kmax; ++k) {
        power = power * f;
        if (power.empty()) break;
        g += power.scaled(ExactRational(1) / factorial(k));
    }
    return g;
}

namespace {

// Repeated d/dt_u for (u, multiplicity) pairs; stays inside the cutoff.
TruncatedSeries derive(const TruncatedSeries& f, const std::vector<int>& partials) {
    TruncatedSeries out(f.cutoff());
    for (const auto& [m, c] : f.terms()) {
        Monomial d = m;
        ExactRational coeff = c;
        bool dead = false;
        for (int u : partials) {
            auto it = d.t.find(u);
            if (it == d.t.end()) {
                dead = true;
                break;
            }
            coeff *= it->second;
            if (--it->second == 0) d.t.erase(it);
        }
        if (!dead) out.add_term(d, coeff);
    }
    return out;
}

TruncatedSeries shifted_hbar(const TruncatedSeries& f) {
    TruncatedSeries out(f.cutoff());
    for (const auto& [m, c] : f.terms()) {
        Monomial shifted = m;
        ++shifted.hbar;
        out.add_term(shifted, c);
    }
    return out;
}

}  // namespace

TruncatedSeries kdv_pde_residual(const TruncatedSeries& f) {
    TruncatedSeries residual = derive(f, {0, 1});
    residual -= shifted_hbar(derive(f, {0, 0, 0, 0})).scaled(ExactRational(1, 12));
    TruncatedSeries d2 = derive(f, {0, 0});
    residual -= shifted_hbar(d2 * d2).scaled(ExactRational(1, 2));
    return residual;
}

bool kdv_window(const SeriesCutoff& cutoff, const Monomial& m) {
    if (m.wdeg() != -1) return true;  // structurally zero on both sides
    if (m.points() + 2 > cutoff.max_points || cutoff.max_t_index < 1) return false;
    if (m.hbar >= 1 && m.points() + 4 > cutoff.max_points) return false;
    return true;
}

TruncatedSeries substitute_shift(const TruncatedSeries& fz, combinatorics::PMode mode,
                                 const SeriesCutoff& target) {
    // Shift polynomials p_1, p_2, ... as little s-only series, built on demand.
    std::map<int, TruncatedSeries> shifts;
    auto shift_series = [&](int i) -> const TruncatedSeries& {
        auto it = shifts.find(i);
        if (it == shifts.end()) {
            TruncatedSeries p(target);
            for (const auto& [L, c] : combinatorics::p_polynomial(i, mode, target.max_s_weight)) {
                Monomial m;
                m.s = L;
                p.add_term(m, c);
            }
            it = shifts.emplace(i, std::move(p)).first;
        }
        return it->second;
    };

    TruncatedSeries out(target);
    for (const auto& [m, c] : fz.terms()) {
        if (!m.s.is_zero())
            throw std::invalid_argument("substitute_shift: input series must be t-only");
        TruncatedSeries acc(target);
        Monomial base;
        base.hbar = m.hbar;
        auto it0 = m.t.find(0);
        if (it0 != m.t.end()) base.t[0] = it0->second;  // t_0 is not shifted
        acc.add_term(base, c);
        for (const auto& [i, e] : m.t) {
            if (i == 0) continue;
            TruncatedSeries factor(target);
            Monomial ti;
            ti.t[i] = 1;
            factor.add_term(ti, ExactRational(1));
            factor += shift_series(i);
            for (int k = 0; k < e; ++k) acc = acc * factor;
        }
        out += acc;
    }
    return out;
}

bool shift_window(const SeriesCutoff& zcut, const Monomial& m) {
    return m.hbar <= zcut.max_genus - 1 && m.points() + m.s.weight() <= zcut.max_points &&
           std::max(m.max_t_index(), m.s.weight()) <= zcut.max_t_index;
}

}  // namespace swp
