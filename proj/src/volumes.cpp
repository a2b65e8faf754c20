#include "swp/volumes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "swp/combinatorics.hpp"

namespace swp {

using combinatorics::mi_binomial;
using combinatorics::mi_multinomial;
using combinatorics::splits;

void VolumePolynomial::add_term(const std::vector<int>& exponents, const ExactRational& c) {
    if (static_cast<int>(exponents.size()) != boundaries_ + 1)
        throw std::invalid_argument("VolumePolynomial: exponent vector has wrong length");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(exponents, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ExactRational VolumePolynomial::coefficient(const std::vector<int>& exponents) const {
    if (static_cast<int>(exponents.size()) != boundaries_ + 1)
        throw std::invalid_argument("VolumePolynomial: exponent vector has wrong length");
    auto it = terms_.find(exponents);
    return it == terms_.end() ? ExactRational(0) : it->second;
}

VolumePolynomial VolumePolynomial::scaled(const ExactRational& c) const {
    VolumePolynomial out(boundaries_, carries_pi_);
    if (c.is_zero()) return out;
    for (const auto& [key, val] : terms_) out.terms_.emplace(key, val * c);
    return out;
}

std::vector<std::pair<int, ExactRational>> VolumePolynomial::evaluate(
    const std::vector<ExactRational>& lengths) const {
    if (static_cast<int>(lengths.size()) != boundaries_)
        throw std::invalid_argument("VolumePolynomial: expected " + std::to_string(boundaries_) +
                                    " boundary lengths");
    std::map<int, ExactRational> grouped;
    for (const auto& [key, coeff] : terms_) {
        ExactRational term = coeff;
        for (int i = 1; i <= boundaries_; ++i)
            if (key[i] > 0) term *= lengths[i - 1].pow(2 * static_cast<unsigned>(key[i]));
        const int pi_power = carries_pi_ ? 2 * key[0] : 0;
        auto [it, fresh] = grouped.emplace(pi_power, term);
        if (!fresh) it->second += term;
    }
    std::vector<std::pair<int, ExactRational>> out;
    for (auto& [p, v] : grouped)
        if (!v.is_zero()) out.emplace_back(p, v);
    return out;
}

std::string VolumePolynomial::to_string() const {
    if (terms_.empty()) return "0";

    // Constant term first, then ascending total degree in the L_i; within a
    // degree, L1-major reading order (L1^4 before L1^2*L2^2 before L2^4).
    std::vector<const std::pair<const std::vector<int>, ExactRational>*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        const int da = std::accumulate(a->first.begin() + 1, a->first.end(), 0);
        const int db = std::accumulate(b->first.begin() + 1, b->first.end(), 0);
        if (da != db) return da < db;
        if (std::lexicographical_compare(b->first.begin() + 1, b->first.end(),
                                         a->first.begin() + 1, a->first.end()))
            return true;
        if (std::lexicographical_compare(a->first.begin() + 1, a->first.end(),
                                         b->first.begin() + 1, b->first.end()))
            return false;
        return a->first[0] < b->first[0];
    });

    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
        const auto& key = t->first;
        ExactRational c = t->second;
        const bool negative = c.sign() < 0;
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        if (negative) c = -c;

        std::vector<std::string> factors;
        if (carries_pi_ && key[0] > 0)
            factors.push_back("pi^" + std::to_string(2 * key[0]));
        for (int i = 1; i <= boundaries_; ++i)
            if (key[i] > 0)
                factors.push_back("L" + std::to_string(i) + "^" + std::to_string(2 * key[i]));

        if (factors.empty()) {
            os << c.to_string();
        } else {
            if (c != ExactRational(1)) os << c.to_string() << "*";
            for (size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
        }
    }
    return os.str();
}

namespace {

void compositions_rec(int slots, int total, std::vector<int>& acc,
                      std::vector<std::vector<int>>& out) {
    if (slots == 1) {
        acc.push_back(total);
        out.push_back(acc);
        acc.pop_back();
        return;
    }
    for (int v = 0; v <= total; ++v) {
        acc.push_back(v);
        compositions_rec(slots - 1, total - v, acc, out);
        acc.pop_back();
    }
}

// Ordered vectors (d_0, ..., d_n) of nonnegative integers summing to total.
std::vector<std::vector<int>> compositions(int total, int slots) {
    std::vector<std::vector<int>> out;
    std::vector<int> acc;
    compositions_rec(slots, total, acc, out);
    return out;
}

enum class Normalization { Geometric, PiFree };

VolumePolynomial build_volume(CorrelatorEngine& engine, int g, int n, Normalization norm) {
    if (g < 1 || n < 0) throw std::invalid_argument("volume polynomial needs g >= 1, n >= 0");
    VolumePolynomial poly(n, norm == Normalization::Geometric);
    for (const auto& d : compositions(g - 1, n + 1)) {
        MultiIndex kappa;
        if (d[0] > 0) kappa = MultiIndex({{1, d[0]}});
        std::vector<int> psi(d.begin() + 1, d.end());
        ExactRational value = engine.evaluate(g, kappa, std::move(psi));
        if (value.is_zero()) continue;
        ExactRational coeff = value / factorial(d[0]);
        if (norm == Normalization::Geometric) {
            coeff *= ExactRational(2).pow(static_cast<unsigned>(d[0]));
            for (int i = 1; i <= n; ++i)
                coeff /= ExactRational(2).pow(static_cast<unsigned>(d[i])) * factorial(d[i]);
        } else {
            for (int i = 1; i <= n; ++i) coeff /= factorial(d[i]);
        }
        poly.add_term(d, coeff);
    }
    return poly;
}

}  // namespace

VolumePolynomial volume_polynomial(CorrelatorEngine& engine, int g, int n) {
    return build_volume(engine, g, n, Normalization::Geometric);
}

VolumePolynomial normalized_volume(CorrelatorEngine& engine, int g, int n) {
    return build_volume(engine, g, n, Normalization::PiFree);
}

VolumePolynomial super_volume(CorrelatorEngine& engine, int g, int n) {
    ExactRational scale = ExactRational(1) / ExactRational(2).pow(static_cast<unsigned>(g + n - 1));
    return volume_polynomial(engine, g, n).scaled(scale);
}

ExactRational higher_volume(CorrelatorEngine& engine, int g, int n, const MultiIndex& b) {
    return engine.evaluate(g, b, std::vector<int>(static_cast<size_t>(n), 0));
}

ExactRational thm16_residual(CorrelatorEngine& engine, int g, int n, const MultiIndex& b) {
    ExactRational res = higher_volume(engine, g, n + 1, b);
    res -= ExactRational(2 * g - 2 + n + b.size()) * higher_volume(engine, g, n, b);
    for (const auto& L : b.sub_indices()) {
        const MultiIndex rest = b - L;
        if (rest.size() < 2) continue;
        res -= mi_binomial(b, L) * higher_volume(engine, g, n, L + MultiIndex::delta(rest.weight()));
    }
    return res;
}

ExactRational thm17_residual(CorrelatorEngine& engine, int g, const MultiIndex& b,
                             Thm17Variant variant) {
    if (g < 2) throw std::invalid_argument("boundary-removal identity needs genus >= 2");
    ExactRational res = ExactRational(b.size()) * higher_volume(engine, g, 0, b);

    for (const auto& parts : splits(b, 3)) {
        const MultiIndex& L = parts[0];
        const MultiIndex& L1 = parts[1];
        const MultiIndex& L2 = parts[2];
        if (L.size() < 1) continue;
        ExactRational c = mi_multinomial(b, parts);
        if (L.size() % 2 == 0) c = -c;
        res -= c * higher_volume(engine, g, 0,
                                 L1 + MultiIndex::delta(L.weight() + L2.weight()));
    }

    for (const auto& L : b.sub_indices()) {
        const MultiIndex rest = b - L;
        if (rest.size() < 2) continue;
        ExactRational c =
            variant == Thm17Variant::WithBinomial ? mi_binomial(b, L) : ExactRational(1);
        res += c * higher_volume(engine, g, 0, L + MultiIndex::delta(rest.weight()));
    }
    return res;
}

}  // namespace swp
