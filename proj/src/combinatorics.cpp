#include "swp/combinatorics.hpp"

#include <mutex>
#include <stdexcept>

namespace swp::combinatorics {

ExactRational mi_binomial(const MultiIndex& b, const MultiIndex& L) {
    if (!b.contains(L)) return ExactRational(0);
    ExactRational r(1);
    for (const auto& [i, c] : L.entries()) r *= binomial(b.count(i), c);
    return r;
}

ExactRational mi_multinomial(const MultiIndex& b, const std::vector<MultiIndex>& parts) {
    MultiIndex total;
    for (const auto& p : parts) total += p;
    if (total != b) return ExactRational(0);
    ExactRational r = b.index_factorial();
    for (const auto& p : parts) r /= p.index_factorial();
    return r;
}

namespace {

void splits_rec(const MultiIndex& remaining, int k, bool nonzero_parts,
                std::vector<MultiIndex>& acc, std::vector<std::vector<MultiIndex>>& out) {
    if (k == 1) {
        if (nonzero_parts && remaining.is_zero()) return;
        acc.push_back(remaining);
        out.push_back(acc);
        acc.pop_back();
        return;
    }
    for (const auto& L : remaining.sub_indices()) {
        if (nonzero_parts && L.is_zero()) continue;
        acc.push_back(L);
        splits_rec(remaining - L, k - 1, nonzero_parts, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<std::vector<MultiIndex>> splits(const MultiIndex& b, int k, bool nonzero_parts) {
    if (k < 1) throw std::invalid_argument("splits: k must be >= 1");
    std::vector<std::vector<MultiIndex>> out;
    std::vector<MultiIndex> acc;
    splits_rec(b, k, nonzero_parts, acc, out);
    return out;
}

ExactRational double_factorial(int n) {
    if (n < -1) throw std::domain_error("double_factorial: argument must be >= -1");
    ExactRational r(1);
    for (int i = n; i >= 2; i -= 2) r *= ExactRational(i);
    return r;
}

std::vector<ExactRational> secant_numbers(int N) {
    if (N < 0) throw std::domain_error("secant_numbers: N must be >= 0");
    // cos(x) * sec(x) = 1 gives a_n = sum_{j=1..n} (-1)^{j+1} C(2n, 2j) a_{n-j}.
    std::vector<ExactRational> a(N + 1);
    a[0] = ExactRational(1);
    for (int n = 1; n <= N; ++n) {
        ExactRational s(0);
        for (int j = 1; j <= n; ++j) {
            ExactRational term = binomial(2 * n, 2 * j) * a[n - j];
            if (j % 2 == 0) term = -term;
            s += term;
        }
        a[n] = s;
    }
    return a;
}

std::vector<ExactRational> beta_coefficients(int N) {
    std::vector<ExactRational> a = secant_numbers(N);
    std::vector<ExactRational> beta(N + 1);
    ExactRational two_pow(1);
    for (int l = 0; l <= N; ++l) {
        beta[l] = two_pow * a[l] / factorial(2 * l);
        two_pow *= ExactRational(2);
    }
    return beta;
}

ExactRational alpha_coefficient(const MultiIndex& b) {
    static std::map<MultiIndex, ExactRational> memo;
    static std::mutex mu;
    if (b.is_zero()) return ExactRational(1);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(b);
        if (it != memo.end()) return it->second;
    }
    ExactRational s(0);
    for (const auto& L : b.sub_indices()) {
        MultiIndex Lp = b - L;
        if (Lp.is_zero()) continue;
        ExactRational term = alpha_coefficient(L) /
                             (L.index_factorial() * Lp.index_factorial() *
                              double_factorial(2 * Lp.weight() - 1));
        if (Lp.size() % 2 == 0) term = -term;
        s += term;
    }
    s *= b.index_factorial();
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(b, s);
    return s;
}

ExactRational gamma_coefficient(const MultiIndex& L) {
    ExactRational r = ExactRational(1) /
                      (L.index_factorial() * double_factorial(2 * L.weight() - 1));
    return (L.size() % 2 == 0) ? r : -r;
}

ExactRational beta_multi(const MultiIndex& L) {
    return alpha_coefficient(L) / L.index_factorial();
}

namespace {

// Partitions of w as multi-indices, recursing on the largest allowed index.
void weight_rec(int w, int max_part, MultiIndex& acc, std::vector<MultiIndex>& out) {
    if (w == 0) {
        out.push_back(acc);
        return;
    }
    for (int i = std::min(w, max_part); i >= 1; --i) {
        acc.set(i, acc.count(i) + 1);
        weight_rec(w - i, i, acc, out);
        acc.set(i, acc.count(i) - 1);
    }
}

}  // namespace

std::vector<MultiIndex> indices_of_weight(int w) {
    if (w < 0) throw std::domain_error("indices_of_weight: negative weight");
    std::vector<MultiIndex> out;
    MultiIndex acc;
    weight_rec(w, w, acc, out);
    return out;
}

std::vector<MultiIndex> indices_up_to_weight(int w) {
    std::vector<MultiIndex> out;
    for (int v = 0; v <= w; ++v)
        for (auto& L : indices_of_weight(v)) out.push_back(std::move(L));
    return out;
}

std::map<MultiIndex, ExactRational> p_polynomial(int k, PMode mode, int max_weight) {
    if (k < 1) throw std::invalid_argument("p_polynomial: k must be >= 1");
    std::map<MultiIndex, ExactRational> out;
    auto coeff = [](const MultiIndex& L) {
        ExactRational c = ExactRational(1) / L.index_factorial();
        return (L.size() % 2 == 1) ? c : -c;  // (-1)^{||L||-1} / L!
    };
    if (mode == PMode::weighted) {
        for (const auto& L : indices_of_weight(k)) out.emplace(L, coeff(L));
    } else {
        // ||L|| = k is an infinite family; enumerate up to the weight cap.
        for (const auto& L : indices_up_to_weight(max_weight))
            if (L.size() == k) out.emplace(L, coeff(L));
    }
    return out;
}

}  // namespace swp::combinatorics
