#include "swp/kernel.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "swp/combinatorics.hpp"

namespace swp {

using combinatorics::secant_numbers;

void LengthPolynomial::add_term(const std::vector<int>& exponents, const ExactRational& c) {
    if (static_cast<int>(exponents.size()) != boundaries_)
        throw std::invalid_argument("LengthPolynomial: exponent vector has wrong length");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(exponents, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ExactRational LengthPolynomial::coefficient(const std::vector<int>& exponents) const {
    if (static_cast<int>(exponents.size()) != boundaries_)
        throw std::invalid_argument("LengthPolynomial: exponent vector has wrong length");
    auto it = terms_.find(exponents);
    return it == terms_.end() ? ExactRational(0) : it->second;
}

LengthPolynomial LengthPolynomial::scaled(const ExactRational& c) const {
    LengthPolynomial out(boundaries_);
    if (c.is_zero()) return out;
    for (const auto& [key, val] : terms_) out.terms_.emplace(key, val * c);
    return out;
}

LengthPolynomial& LengthPolynomial::operator+=(const LengthPolynomial& o) {
    for (const auto& [key, val] : o.terms_) add_term(key, val);
    return *this;
}

LengthPolynomial& LengthPolynomial::operator-=(const LengthPolynomial& o) {
    for (const auto& [key, val] : o.terms_) add_term(key, -val);
    return *this;
}

std::string LengthPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, coeff] : terms_) {
        ExactRational c = coeff;
        const bool negative = c.sign() < 0;
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        if (negative) c = -c;
        std::vector<std::string> factors;
        for (int i = 0; i < boundaries_; ++i) {
            if (key[i] == 0) continue;
            std::string f = "L" + std::to_string(i + 1);
            if (key[i] > 1) f += "^" + std::to_string(key[i]);
            factors.push_back(std::move(f));
        }
        if (factors.empty()) {
            os << c.to_string();
        } else {
            if (c != ExactRational(1)) os << c.to_string() << "*";
            for (size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
        }
    }
    return os.str();
}

std::vector<ExactRational> h_polynomial(int k) {
    if (k < 0) throw std::invalid_argument("h_polynomial: k must be >= 0");
    const auto a = secant_numbers(k);
    std::vector<ExactRational> coeffs(static_cast<size_t>(k) + 1);
    for (int i = 0; i <= k; ++i)
        coeffs[static_cast<size_t>(i)] =
            a[static_cast<size_t>(k - i)] / (factorial(2 * (k - i)) * factorial(2 * i + 1));
    return coeffs;
}

std::vector<ExactRational> m_polynomial(int k) {
    auto coeffs = h_polynomial(k);
    const ExactRational fac = factorial(2 * k + 1);
    for (auto& c : coeffs) c *= fac;
    return coeffs;
}

std::pair<ExactRational, int> beta_moment_constant(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("beta_moment_constant: negative exponent");
    return {factorial(2 * a + 1) * factorial(2 * b + 1) / factorial(2 * a + 2 * b + 3),
            a + b + 1};
}

std::vector<std::tuple<int, int, ExactRational>> r_moment(int a) {
    std::vector<std::tuple<int, int, ExactRational>> out;
    const auto mc = m_polynomial(a);
    for (int i = 0; i <= a; ++i)
        for (int m = 0; m <= i; ++m)
            out.emplace_back(2 * m + 1, 2 * (i - m),
                             mc[static_cast<size_t>(i)] * binomial(2 * i + 1, 2 * m + 1));
    return out;
}

namespace {

// Terms of P_{g,n+1}(x, y, L_2..L_n), keyed by (a, b, spectator exponents):
// the coefficient of x^{2a} y^{2b} prod L^{2 e}.
using PairTerms = std::map<std::tuple<int, int, std::vector<int>>, ExactRational>;

PairTerms pair_function(CorrelatorEngine& engine, int g, int n) {
    PairTerms p;
    const int spectators = n - 1;

    if (g - 1 >= 1) {
        const VolumePolynomial inner = normalized_volume(engine, g - 1, n + 1);
        for (const auto& [key, c] : inner.terms()) {
            std::vector<int> rest(key.begin() + 3, key.end());
            auto idx = std::make_tuple(key[1], key[2], std::move(rest));
            auto [it, fresh] = p.emplace(std::move(idx), c);
            if (!fresh) it->second += c;
        }
    }

    for (int g1 = 1; g1 <= g - 1; ++g1) {
        const int g2 = g - g1;
        for (unsigned mask = 0; mask < (1u << spectators); ++mask) {
            std::vector<int> left, right;
            for (int i = 0; i < spectators; ++i)
                (mask & (1u << i) ? left : right).push_back(i);
            const VolumePolynomial va =
                normalized_volume(engine, g1, 1 + static_cast<int>(left.size()));
            const VolumePolynomial vb =
                normalized_volume(engine, g2, 1 + static_cast<int>(right.size()));
            for (const auto& [ka, ca] : va.terms()) {
                for (const auto& [kb, cb] : vb.terms()) {
                    std::vector<int> rest(static_cast<size_t>(spectators), 0);
                    for (size_t i = 0; i < left.size(); ++i)
                        rest[static_cast<size_t>(left[i])] = ka[i + 2];
                    for (size_t i = 0; i < right.size(); ++i)
                        rest[static_cast<size_t>(right[i])] = kb[i + 2];
                    auto idx = std::make_tuple(ka[1], kb[1], std::move(rest));
                    ExactRational c = ca * cb;
                    auto [it, fresh] = p.emplace(std::move(idx), c);
                    if (!fresh) it->second += c;
                }
            }
        }
    }
    return p;
}

// The pair-kernel half of the identity, with c_d = 1.
LengthPolynomial d_part(CorrelatorEngine& engine, int g, int n) {
    LengthPolynomial out(n);
    for (const auto& [idx, c] : pair_function(engine, g, n)) {
        const auto& [a, b, rest] = idx;
        const auto [bc, m] = beta_moment_constant(a, b);
        const auto mc = m_polynomial(m);
        for (int i = 0; i <= m; ++i) {
            std::vector<int> exps(static_cast<size_t>(n), 0);
            exps[0] = 2 * i + 1;
            for (int j = 0; j < n - 1; ++j) exps[static_cast<size_t>(j) + 1] = 2 * rest[j];
            out.add_term(exps, c * bc * mc[static_cast<size_t>(i)]);
        }
    }
    return out;
}

LengthPolynomial r_part(CorrelatorEngine& engine, int g, int n) {
    LengthPolynomial out(n);
    if (n < 2) return out;
    const VolumePolynomial inner = normalized_volume(engine, g, n - 1);
    for (int j = 0; j < n - 1; ++j) {  // spectator j stands for the boundary L_{j+2}
        for (const auto& [key, c] : inner.terms()) {
            // key = (d0, a, e...) with e listing the spectators other than j.
            for (const auto& [p, q, rc] : r_moment(key[1])) {
                std::vector<int> exps(static_cast<size_t>(n), 0);
                exps[0] = p;
                exps[static_cast<size_t>(j) + 1] = q;
                int pos = 0;
                for (int i = 0; i < n - 1; ++i) {
                    if (i == j) continue;
                    exps[static_cast<size_t>(i) + 1] += 2 * key[static_cast<size_t>(pos) + 2];
                    ++pos;
                }
                out.add_term(exps, c * rc);
            }
        }
    }
    return out;
}

}  // namespace

LengthPolynomial sw_lhs(CorrelatorEngine& engine, int g, int n) {
    if (n < 1) throw std::invalid_argument("sw_lhs: need at least one boundary");
    LengthPolynomial out(n);
    const VolumePolynomial volume = normalized_volume(engine, g, n);
    for (const auto& [key, c] : volume.terms()) {
        std::vector<int> exps(static_cast<size_t>(n), 0);
        exps[0] = 2 * key[1] + 1;
        for (int i = 2; i <= n; ++i) exps[static_cast<size_t>(i) - 1] = 2 * key[static_cast<size_t>(i)];
        out.add_term(exps, c);
    }
    return out;
}

LengthPolynomial sw_rhs(CorrelatorEngine& engine, int g, int n, const ExactRational& c_d) {
    if (n < 1) throw std::invalid_argument("sw_rhs: need at least one boundary");
    LengthPolynomial out = d_part(engine, g, n).scaled(c_d);
    out += r_part(engine, g, n);
    return out;
}

LengthPolynomial sw_residual(CorrelatorEngine& engine, int g, int n, const ExactRational& c_d) {
    LengthPolynomial out = sw_lhs(engine, g, n);
    out -= sw_rhs(engine, g, n, c_d);
    return out;
}

bool sw_verify(CorrelatorEngine& engine, int g, int n, const ExactRational& c_d) {
    return sw_residual(engine, g, n, c_d).empty();
}

std::optional<ExactRational> calibrate_cd(CorrelatorEngine& engine, int g, int n) {
    LengthPolynomial target = sw_lhs(engine, g, n);
    target -= r_part(engine, g, n);
    const LengthPolynomial d1 = d_part(engine, g, n);
    if (d1.empty()) {
        if (!target.empty())
            throw StrategyDisagreementError("pair-kernel part vanishes but the identity fails at g=" +
                                            std::to_string(g) + ", n=" + std::to_string(n));
        return std::nullopt;
    }
    const auto& probe = *d1.terms().begin();
    const ExactRational c = target.coefficient(probe.first) / probe.second;
    LengthPolynomial check = target;
    check -= d1.scaled(c);
    if (!check.empty())
        throw StrategyDisagreementError("no single pair-kernel constant fits at g=" +
                                        std::to_string(g) + ", n=" + std::to_string(n) +
                                        "; residual " + check.to_string());
    return c;
}

}  // namespace swp
