#include "swp/correlator.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace swp {

using combinatorics::alpha_coefficient;
using combinatorics::double_factorial;
using combinatorics::mi_binomial;
using combinatorics::mi_multinomial;
using combinatorics::splits;

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Auto: return "auto";
        case Strategy::KmzDvv: return "kmz";
        case Strategy::Thm14: return "thm14";
        case Strategy::Thm15: return "thm15";
        case Strategy::Closed: return "closed";
    }
    return "?";
}

CorrelatorKey CorrelatorKey::make(int genus, MultiIndex kappa, std::vector<int> psi) {
    if (genus < 0) throw std::invalid_argument("CorrelatorKey: negative genus");
    for (int d : psi)
        if (d < 0) throw std::invalid_argument("CorrelatorKey: negative psi exponent");
    std::sort(psi.begin(), psi.end(), std::greater<int>());
    return CorrelatorKey{genus, std::move(kappa), std::move(psi)};
}

int CorrelatorKey::psi_degree() const {
    int s = 0;
    for (int d : psi) s += d;
    return s;
}

bool CorrelatorKey::degree_valid() const { return kappa.weight() + psi_degree() == genus - 1; }

std::string CorrelatorKey::to_string() const {
    std::ostringstream os;
    os << "<";
    if (!kappa.is_zero()) os << "kappa(" << kappa.to_string() << ")";
    for (size_t i = 0; i < psi.size(); ++i) os << (i || !kappa.is_zero() ? " " : "") << "tau_" << psi[i];
    if (kappa.is_zero() && psi.empty()) os << "1";
    os << ">_" << genus;
    return os.str();
}

std::vector<std::pair<std::vector<int>, ExactRational>> kmz_expand(const MultiIndex& b) {
    std::map<std::vector<int>, ExactRational> agg;
    if (b.is_zero()) {
        agg[{}] = ExactRational(1);
    } else {
        int B = b.size();
        for (int k = 1; k <= B; ++k) {
            ExactRational outer = ExactRational(1) / factorial(k);
            if ((B - k) % 2 == 1) outer = -outer;
            for (const auto& parts : splits(b, k, /*nonzero_parts=*/true)) {
                std::vector<int> ins;
                ins.reserve(parts.size());
                for (const auto& m : parts) ins.push_back(m.weight());
                std::sort(ins.begin(), ins.end(), std::greater<int>());
                auto [it, fresh] = agg.emplace(std::move(ins), ExactRational(0));
                it->second += outer * mi_multinomial(b, parts);
            }
        }
    }
    std::vector<std::pair<std::vector<int>, ExactRational>> out;
    for (auto& [ins, c] : agg)
        if (!c.is_zero()) out.emplace_back(ins, c);
    return out;
}

ExactRational closed_genus1(int n) {
    if (n < 1) throw std::invalid_argument("closed_genus1: n must be >= 1");
    return factorial(n - 1) / ExactRational(8);
}

ExactRational closed_one_point(int g) {
    if (g < 1) throw std::invalid_argument("closed_one_point: g must be >= 1");
    ExactRational df = double_factorial(2 * g - 1);
    return df * df / (ExactRational(8).pow(g) * factorial(g) * ExactRational(2 * g - 1));
}

ExactRational closed_two_point(int g, int k) {
    if (g < 1 || k < 0 || 2 * k > g - 1)
        throw std::invalid_argument("closed_two_point: need g >= 1 and 0 <= 2k <= g-1");
    ExactRational df = double_factorial(2 * g - 1);
    ExactRational prefactor = df * df / (ExactRational(8).pow(g) * factorial(g));
    prefactor *= df / (double_factorial(2 * k + 1) * double_factorial(2 * (g - 1 - k) + 1));
    ExactRational s(0);
    for (int i = 0; i <= k; ++i) {
        ExactRational term = ExactRational(g - 2 * i, g);
        term *= binomial(g, i).pow(4);
        term /= binomial(2 * g, 2 * i).pow(3);
        s += term;
    }
    return prefactor * s;
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

ExactRational CorrelatorEngine::evaluate(const CorrelatorKey& key, Strategy s) {
    {
        std::shared_lock lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            ++hits_;
            return it->second;
        }
        ++misses_;
    }
    ExactRational v = compute(key, s);
    return store_or_compare(key, v);
}

ExactRational CorrelatorEngine::check(const CorrelatorKey& key, Strategy s) {
    ExactRational v = compute(key, s);
    return store_or_compare(key, v);
}

ExactRational CorrelatorEngine::evaluate(int genus, const MultiIndex& kappa, std::vector<int> psi,
                                         Strategy s) {
    return evaluate(CorrelatorKey::make(genus, kappa, std::move(psi)), s);
}

ExactRational CorrelatorEngine::eval(int genus, const MultiIndex& kappa, std::vector<int> psi,
                                     Strategy s) {
    if (genus <= 0) return ExactRational(0);
    return evaluate(CorrelatorKey::make(genus, kappa, std::move(psi)), s);
}

ExactRational CorrelatorEngine::store_or_compare(const CorrelatorKey& key, const ExactRational& v) {
    std::unique_lock lock(mu_);
    auto [it, fresh] = memo_.emplace(key, v);
    if (!fresh && it->second != v)
        throw StrategyDisagreementError("strategies disagree on " + key.to_string() + ": cached " +
                                        it->second.to_string() + " vs recomputed " + v.to_string());
    return it->second;
}

ExactRational CorrelatorEngine::compute(const CorrelatorKey& key, Strategy s) {
    if (key.genus == 0) return ExactRational(0);
    if (key.genus == 1 && key.points() == 0) {
        if (key.kappa.is_zero())
            throw UndefinedCorrelatorError("undefined by construction: genus 1 with no insertions");
        throw UndefinedCorrelatorError("rejected: genus 1, no insertions, nonzero kappa");
    }
    if (!key.degree_valid()) return ExactRational(0);
    // Seed of every recursion: < tau_0 >_1 = 1/8.
    if (key.genus == 1 && key.kappa.is_zero() && key.psi == std::vector<int>{0})
        return ExactRational(1, 8);

    switch (s) {
        case Strategy::Auto:
        case Strategy::KmzDvv:
            return key.kappa.is_zero() ? dvv_reduce(key, Strategy::KmzDvv)
                                       : kmz_reduce(key, Strategy::KmzDvv);
        case Strategy::Thm14:
            return key.points() == 0 ? n0_reduce(key.genus, key.kappa, Strategy::Thm14)
                                     : thm14_reduce(key, 0, Strategy::Thm14);
        case Strategy::Thm15:
            return key.points() == 0 ? n0_reduce(key.genus, key.kappa, Strategy::Thm15)
                                     : thm15_reduce(key, 0, Strategy::Thm15);
        case Strategy::Closed:
            return closed_reduce(key);
    }
    throw std::logic_error("unreachable strategy");
}

// DVV-type recursion on pure-psi correlators, peeling tau_k with k the largest
// exponent:
//   (2k+1)!! < tau_k prod tau_{d_i} >_g =
//       sum_i (2k+2d_i+1)!!/(2d_i-1)!! < tau_{k+d_i} prod_{j != i} tau_{d_j} >_g
//     + 1/2 sum_{r+s=k-1} (2r+1)!!(2s+1)!! [ < tau_r tau_s prod tau_{d_i} >_{g-1}
//         + sum_{I sqcup J, g_1+g_2=g} < tau_r tau_{d_I} >_{g_1} < tau_s tau_{d_J} >_{g_2} ]
ExactRational CorrelatorEngine::dvv_reduce(const CorrelatorKey& key, Strategy s) {
    const int g = key.genus;
    const int k = key.psi[0];
    std::vector<int> rest(key.psi.begin() + 1, key.psi.end());
    const int n = static_cast<int>(rest.size());
    const MultiIndex none;

    ExactRational sum(0);

    for (int i = 0; i < n; ++i) {
        std::vector<int> p(rest);
        p.erase(p.begin() + i);
        p.push_back(k + rest[i]);
        sum += double_factorial(2 * k + 2 * rest[i] + 1) / double_factorial(2 * rest[i] - 1) *
               eval(g, none, std::move(p), s);
    }

    const ExactRational half(1, 2);
    for (int r = 0; r <= k - 1; ++r) {
        const int t = k - 1 - r;
        const ExactRational w = half * double_factorial(2 * r + 1) * double_factorial(2 * t + 1);

        if (g >= 2) {
            std::vector<int> p(rest);
            p.push_back(r);
            p.push_back(t);
            sum += w * eval(g - 1, none, std::move(p), s);
        }

        // Separating splits: the genus of the first factor is forced by its
        // degree, so only the subset of spectators is enumerated.
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> pI{r}, pJ{t};
            int degI = r;
            for (int i = 0; i < n; ++i) {
                if (mask & (1u << i)) {
                    pI.push_back(rest[i]);
                    degI += rest[i];
                } else {
                    pJ.push_back(rest[i]);
                }
            }
            const int g1 = degI + 1;
            const int g2 = g - g1;
            if (g1 < 1 || g2 < 1) continue;
            ExactRational v1 = eval(g1, none, std::move(pI), s);
            if (v1.is_zero()) continue;
            sum += w * v1 * eval(g2, none, std::move(pJ), s);
        }
    }

    return sum / double_factorial(2 * k + 1);
}

ExactRational CorrelatorEngine::kmz_reduce(const CorrelatorKey& key, Strategy s) {
    ExactRational sum(0);
    const MultiIndex none;
    for (const auto& [ins, c] : kmz_expand(key.kappa)) {
        std::vector<int> p(key.psi);
        p.insert(p.end(), ins.begin(), ins.end());
        sum += c * eval(key.genus, none, std::move(p), s);
    }
    return sum;
}

// kappa-removing recursion, solved for the L = 0 term of its alternating sum:
//   sum_{L+L'=b} (-1)^{||L||} binom(b,L) (2d_1+2|L|+1)!!/(2|L|-1)!!
//       < kappa(L') tau_{d_1+|L|} prod_{j>=2} tau_{d_j} >_g
//   = sum_{j>=2} (2d_1+2d_j+1)!!/(2d_j-1)!! < kappa(b) tau_{d_1+d_j} prod_{i != 1,j} >_g
//   + 1/2 sum_{r+s=d_1-1} (2r+1)!!(2s+1)!! [ < kappa(b) tau_r tau_s ... >_{g-1}
//       + sum_{e+f=b, I sqcup J, g_1+g_2=g} binom(b,e)
//             < kappa(e) tau_r tau_{d_I} >_{g_1} < kappa(f) tau_s tau_{d_J} >_{g_2} ]
ExactRational CorrelatorEngine::thm14_reduce(const CorrelatorKey& key, size_t peel_pos, Strategy s) {
    const int g = key.genus;
    const MultiIndex& b = key.kappa;
    const int d1 = key.psi.at(peel_pos);
    std::vector<int> rest(key.psi);
    rest.erase(rest.begin() + static_cast<long>(peel_pos));
    const int n = static_cast<int>(rest.size());

    ExactRational rhs(0);

    for (int j = 0; j < n; ++j) {
        std::vector<int> p(rest);
        p.erase(p.begin() + j);
        p.push_back(d1 + rest[j]);
        rhs += double_factorial(2 * d1 + 2 * rest[j] + 1) / double_factorial(2 * rest[j] - 1) *
               eval(g, b, std::move(p), s);
    }

    const ExactRational half(1, 2);
    for (int r = 0; r <= d1 - 1; ++r) {
        const int t = d1 - 1 - r;
        const ExactRational w = half * double_factorial(2 * r + 1) * double_factorial(2 * t + 1);

        if (g >= 2) {
            std::vector<int> p(rest);
            p.push_back(r);
            p.push_back(t);
            rhs += w * eval(g - 1, b, std::move(p), s);
        }

        for (const auto& ef : splits(b, 2)) {
            const MultiIndex& e = ef[0];
            const MultiIndex& f = ef[1];
            const ExactRational be = mi_binomial(b, e);
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                std::vector<int> pI{r}, pJ{t};
                int degI = r + e.weight();
                for (int i = 0; i < n; ++i) {
                    if (mask & (1u << i)) {
                        pI.push_back(rest[i]);
                        degI += rest[i];
                    } else {
                        pJ.push_back(rest[i]);
                    }
                }
                const int g1 = degI + 1;
                const int g2 = g - g1;
                if (g1 < 1 || g2 < 1) continue;
                ExactRational v1 = eval(g1, e, std::move(pI), s);
                if (v1.is_zero()) continue;
                rhs += w * be * v1 * eval(g2, f, std::move(pJ), s);
            }
        }
    }

    // Move the L != 0 part of the alternating sum to the right-hand side.
    ExactRational moved(0);
    for (const auto& L : b.sub_indices()) {
        if (L.is_zero()) continue;
        std::vector<int> p(rest);
        p.push_back(d1 + L.weight());
        ExactRational term = mi_binomial(b, L) *
                             double_factorial(2 * d1 + 2 * L.weight() + 1) /
                             double_factorial(2 * L.weight() - 1) * eval(g, b - L, std::move(p), s);
        if (L.size() % 2 == 1) term = -term;
        moved += term;
    }

    return (rhs - moved) / double_factorial(2 * d1 + 1);
}

// alpha-weighted recursion peeling tau_{d_1}:
//   (2d_1+1)!! < kappa(b) prod tau_{d_i} >_g =
//     sum_{j>=2} sum_{L+L'=b} alpha_L binom(b,L) (2|L|+2d_1+2d_j+1)!!/(2d_j-1)!!
//         < kappa(L') tau_{|L|+d_1+d_j} prod_{i != 1,j} >_g
//   + 1/2 sum_{L+L'=b} sum_{r+s=|L|+d_1-1} alpha_L binom(b,L) (2r+1)!!(2s+1)!!
//         < kappa(L') tau_r tau_s ... >_{g-1}
//   + 1/2 sum_{L+e+f=b} sum_{r+s=|L|+d_1-1, I sqcup J, g_1+g_2=g}
//         alpha_L binom(b;L,e,f) (2r+1)!!(2s+1)!!
//         < kappa(e) tau_r tau_{d_I} >_{g_1} < kappa(f) tau_s tau_{d_J} >_{g_2}
ExactRational CorrelatorEngine::thm15_reduce(const CorrelatorKey& key, size_t peel_pos, Strategy s) {
    const int g = key.genus;
    const MultiIndex& b = key.kappa;
    const int d1 = key.psi.at(peel_pos);
    std::vector<int> rest(key.psi);
    rest.erase(rest.begin() + static_cast<long>(peel_pos));
    const int n = static_cast<int>(rest.size());

    ExactRational rhs(0);
    const ExactRational half(1, 2);

    for (const auto& L : b.sub_indices()) {
        const MultiIndex Lp = b - L;
        const ExactRational aL = alpha_coefficient(L) * mi_binomial(b, L);
        const int w = L.weight();

        for (int j = 0; j < n; ++j) {
            std::vector<int> p(rest);
            p.erase(p.begin() + j);
            p.push_back(w + d1 + rest[j]);
            rhs += aL * double_factorial(2 * w + 2 * d1 + 2 * rest[j] + 1) /
                   double_factorial(2 * rest[j] - 1) * eval(g, Lp, std::move(p), s);
        }

        if (g >= 2) {
            for (int r = 0; r <= w + d1 - 1; ++r) {
                const int t = w + d1 - 1 - r;
                std::vector<int> p(rest);
                p.push_back(r);
                p.push_back(t);
                rhs += half * aL * double_factorial(2 * r + 1) * double_factorial(2 * t + 1) *
                       eval(g - 1, Lp, std::move(p), s);
            }
        }
    }

    for (const auto& lef : splits(b, 3)) {
        const MultiIndex& L = lef[0];
        const MultiIndex& e = lef[1];
        const MultiIndex& f = lef[2];
        const ExactRational cL = alpha_coefficient(L) * mi_multinomial(b, lef);
        const int w = L.weight();
        for (int r = 0; r <= w + d1 - 1; ++r) {
            const int t = w + d1 - 1 - r;
            const ExactRational wr =
                half * cL * double_factorial(2 * r + 1) * double_factorial(2 * t + 1);
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                std::vector<int> pI{r}, pJ{t};
                int degI = r + e.weight();
                for (int i = 0; i < n; ++i) {
                    if (mask & (1u << i)) {
                        pI.push_back(rest[i]);
                        degI += rest[i];
                    } else {
                        pJ.push_back(rest[i]);
                    }
                }
                const int g1 = degI + 1;
                const int g2 = g - g1;
                if (g1 < 1 || g2 < 1) continue;
                ExactRational v1 = eval(g1, e, std::move(pI), s);
                if (v1.is_zero()) continue;
                rhs += wr * v1 * eval(g2, f, std::move(pJ), s);
            }
        }
    }

    return rhs / double_factorial(2 * d1 + 1);
}

ExactRational CorrelatorEngine::closed_reduce(const CorrelatorKey& key) {
    if (!key.kappa.is_zero())
        throw std::invalid_argument("no closed form for kappa correlator " + key.to_string());
    const int g = key.genus;
    const auto& psi = key.psi;
    const bool all_zero = std::all_of(psi.begin(), psi.end(), [](int d) { return d == 0; });
    if (g == 1 && all_zero) return closed_genus1(key.points());
    if (key.points() == 1) return closed_one_point(g);
    if (key.points() == 2) return closed_two_point(g, psi[1]);  // psi[1] is the smaller index
    throw std::invalid_argument("no closed form for " + key.to_string());
}

ExactRational CorrelatorEngine::n0_reduce(int genus, const MultiIndex& b, Strategy s) {
    if (genus < 2) throw std::invalid_argument("n0_reduce: genus must be >= 2");
    if (b.is_zero()) throw std::invalid_argument("n0_reduce: kappa must be nonzero");
    ExactRational sum(0);
    for (const auto& L : b.sub_indices()) {
        ExactRational term = mi_binomial(b, L) * eval(genus, b - L, {L.weight()}, s);
        if (L.size() % 2 == 1) term = -term;
        sum += term;
    }
    return sum / ExactRational(2 * genus - 2);
}

ExactRational CorrelatorEngine::reduce_thm14_at(const CorrelatorKey& key, size_t peel_pos) {
    return thm14_reduce(key, peel_pos, Strategy::Thm14);
}

ExactRational CorrelatorEngine::reduce_thm15_at(const CorrelatorKey& key, size_t peel_pos) {
    return thm15_reduce(key, peel_pos, Strategy::Thm15);
}

ExactRational CorrelatorEngine::identity_residual(IdentityKind kind, const CorrelatorKey& key) {
    const int g = key.genus;
    const MultiIndex& b = key.kappa;
    const std::vector<int>& psi = key.psi;
    const int n = key.points();
    const MultiIndex none;

    auto with = [&](std::vector<int> base, std::initializer_list<int> extra) {
        base.insert(base.end(), extra.begin(), extra.end());
        return base;
    };

    switch (kind) {
        case IdentityKind::Dilaton: {
            if (!b.is_zero())
                throw std::invalid_argument("Dilaton residual expects a pure-psi key");
            return eval(g, none, with(psi, {0}), Strategy::Auto) -
                   ExactRational(2 * g - 2 + n) * eval(g, none, psi, Strategy::Auto);
        }
        case IdentityKind::DilatonKappa: {
            ExactRational lhs(0);
            for (const auto& L : b.sub_indices()) {
                ExactRational term =
                    mi_binomial(b, L) * eval(g, b - L, with(psi, {L.weight()}), Strategy::Auto);
                if (L.size() % 2 == 1) term = -term;
                lhs += term;
            }
            return lhs - ExactRational(2 * g - 2 + n) * eval(g, b, psi, Strategy::Auto);
        }
        case IdentityKind::Kdv:
            if (!b.is_zero()) throw std::invalid_argument("Kdv residual expects a pure-psi key");
            [[fallthrough]];
        case IdentityKind::KdvKappa: {
            ExactRational res = eval(g, b, with(psi, {1, 0}), Strategy::Auto);
            if (g >= 2)
                res -= ExactRational(1, 12) * eval(g - 1, b, with(psi, {0, 0, 0, 0}), Strategy::Auto);
            const ExactRational half(1, 2);
            for (const auto& ef : splits(b, 2)) {
                const ExactRational be = mi_binomial(b, ef[0]);
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    std::vector<int> pI{0, 0}, pJ{0, 0};
                    int degI = ef[0].weight();
                    for (int i = 0; i < n; ++i) {
                        if (mask & (1u << i)) {
                            pI.push_back(psi[i]);
                            degI += psi[i];
                        } else {
                            pJ.push_back(psi[i]);
                        }
                    }
                    const int g1 = degI + 1;
                    const int g2 = g - g1;
                    if (g1 < 1 || g2 < 1) continue;
                    ExactRational v1 = eval(g1, ef[0], std::move(pI), Strategy::Auto);
                    if (v1.is_zero()) continue;
                    res -= half * be * v1 * eval(g2, ef[1], std::move(pJ), Strategy::Auto);
                }
            }
            return res;
        }
    }
    throw std::logic_error("unreachable identity kind");
}

void CorrelatorEngine::preload(const CorrelatorKey& key, const ExactRational& value) {
    store_or_compare(key, value);
}

std::map<CorrelatorKey, ExactRational> CorrelatorEngine::snapshot() const {
    std::shared_lock lock(mu_);
    return memo_;
}

CorrelatorEngine::Stats CorrelatorEngine::stats() const {
    return Stats{hits_.load(), misses_.load()};
}

// ---------------------------------------------------------------------------
// Key enumeration
// ---------------------------------------------------------------------------

namespace {

void psi_multisets(int slots, int total, int max_entry, std::vector<int>& acc,
                   std::vector<std::vector<int>>& out) {
    if (slots == 0) {
        if (total == 0) out.push_back(acc);
        return;
    }
    for (int v = std::min(max_entry, total); v >= 0; --v) {
        acc.push_back(v);
        psi_multisets(slots - 1, total - v, v, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<CorrelatorKey> degree_valid_keys(int g_max, int budget, int max_psi_points,
                                             int max_kappa_size) {
    std::vector<CorrelatorKey> keys;
    for (int g = 1; g <= g_max; ++g) {
        const int deg = g - 1;
        for (const auto& b : combinatorics::indices_up_to_weight(deg)) {
            if (max_kappa_size >= 0 && b.size() > max_kappa_size) continue;
            const int r = deg - b.weight();
            int n_cap = budget - b.size();
            if (max_psi_points >= 0) n_cap = std::min(n_cap, max_psi_points);
            for (int n = 0; n <= n_cap; ++n) {
                if (g == 1 && n == 0) continue;  // undefined slot
                if (n == 0 && r != 0) continue;
                std::vector<std::vector<int>> multisets;
                std::vector<int> acc;
                psi_multisets(n, r, r, acc, multisets);
                for (auto& p : multisets) keys.push_back(CorrelatorKey{g, b, std::move(p)});
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace swp
