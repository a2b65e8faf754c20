#pragma once

// MultiIndex: a finitely supported map b : {1, 2, 3, ...} -> nonnegative
// integers, written b = (b(1), b(2), ...). Encodes a kappa-class monomial
// kappa_1^{b(1)} kappa_2^{b(2)} ... .
//
// Canonical form: only strictly positive counts are stored, so equality of
// maps is equality of multi-indices. Two gradings are used throughout:
//   weight |b|  = sum_i i * b(i)   (cohomological degree of kappa(b))
//   size  ||b|| = sum_i b(i)       (number of kappa factors)

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "swp/rational.hpp"

namespace swp {

class MultiIndex {
public:
    MultiIndex() = default;

    // From (index, count) pairs; indices must be >= 1, counts >= 0
    // (zero counts are dropped).
    explicit MultiIndex(const std::vector<std::pair<int, int>>& entries) {
        for (const auto& [i, c] : entries) set(i, count(i) + c);
    }

    // delta_i: the multi-index with a single 1 in slot i.
    static MultiIndex delta(int i) {
        MultiIndex b;
        b.set(i, 1);
        return b;
    }

    int count(int i) const {
        auto it = c_.find(i);
        return it == c_.end() ? 0 : it->second;
    }

    void set(int i, int cnt) {
        if (i < 1) throw std::invalid_argument("MultiIndex: index must be >= 1");
        if (cnt < 0) throw std::invalid_argument("MultiIndex: negative count");
        if (cnt == 0)
            c_.erase(i);
        else
            c_[i] = cnt;
    }

    bool is_zero() const { return c_.empty(); }

    // |b| = sum i*b(i)
    int weight() const {
        int w = 0;
        for (const auto& [i, c] : c_) w += i * c;
        return w;
    }

    // ||b|| = sum b(i)
    int size() const {
        int s = 0;
        for (const auto& [i, c] : c_) s += c;
        return s;
    }

    // b! = prod b(i)!
    ExactRational index_factorial() const {
        ExactRational r(1);
        for (const auto& [i, c] : c_) r *= factorial(c);
        return r;
    }

    MultiIndex& operator+=(const MultiIndex& o) {
        for (const auto& [i, c] : o.c_) set(i, count(i) + c);
        return *this;
    }
    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }

    // Componentwise subtraction; requires o <= *this.
    MultiIndex& operator-=(const MultiIndex& o) {
        for (const auto& [i, c] : o.c_) {
            int mine = count(i);
            if (mine < c) throw std::domain_error("MultiIndex: subtraction underflow");
            set(i, mine - c);
        }
        return *this;
    }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }

    // Componentwise <=.
    bool contains(const MultiIndex& o) const {
        for (const auto& [i, c] : o.c_)
            if (count(i) < c) return false;
        return true;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.c_ == b.c_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.c_ < b.c_; }

    const std::map<int, int>& entries() const { return c_; }

    // All L with L <= b componentwise, in a deterministic (odometer) order.
    std::vector<MultiIndex> sub_indices() const {
        std::vector<MultiIndex> out;
        std::vector<std::pair<int, int>> slots(c_.begin(), c_.end());
        std::vector<int> pick(slots.size(), 0);
        for (;;) {
            MultiIndex L;
            for (size_t k = 0; k < slots.size(); ++k)
                if (pick[k] > 0) L.set(slots[k].first, pick[k]);
            out.push_back(L);
            size_t k = 0;
            while (k < slots.size() && pick[k] == slots[k].second) pick[k++] = 0;
            if (k == slots.size()) break;
            ++pick[k];
        }
        return out;
    }

    // Rendering: "1:2,3:1" for kappa_1^2 kappa_3; "" for the empty index.
    std::string to_string() const {
        std::string s;
        for (const auto& [i, c] : c_) {
            if (!s.empty()) s += ',';
            s += std::to_string(i) + ':' + std::to_string(c);
        }
        return s;
    }

private:
    std::map<int, int> c_;  // index -> positive count
};

}  // namespace swp
