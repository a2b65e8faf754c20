#pragma once

// Exact evaluation of the intersection numbers
//
//   < kappa(b) tau_{d_1} ... tau_{d_n} >_g
//
// against the theta class, for genus g >= 1. The numbers vanish unless
// |b| + sum_i d_i = g - 1 (the complementary degree of the theta class),
// and vanish identically in genus 0. The engine offers several independent
// evaluation strategies that must agree exactly:
//
//   KmzDvv : expand kappa classes into extra tau insertions (with signs and
//            multinomials), then run the dilaton-shifted DVV-type recursion
//            on pure-psi correlators. Default.
//   Thm14  : the kappa-removing recursion whose left side is an alternating
//            sum over kappa splittings (solved for the top term).
//   Thm15  : the alpha-weighted recursion that peels one psi insertion while
//            redistributing kappa among the branches.
//   Closed : closed forms for the genus-1 tower, one-point and two-point
//            correlators; errors on keys with no closed form.
//
// A shared strategy-independent memo table stores first-computed values;
// later strategies must reproduce them exactly or the engine throws.

#include <cstdint>
#include <map>
#include <atomic>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "swp/combinatorics.hpp"
#include "swp/multi_index.hpp"
#include "swp/rational.hpp"

namespace swp {

enum class Strategy { Auto, KmzDvv, Thm14, Thm15, Closed };

std::string strategy_name(Strategy s);

struct CorrelatorKey {
    int genus = 0;
    MultiIndex kappa;
    std::vector<int> psi;  // canonical: sorted descending

    // Canonicalizes psi (descending sort) and validates entries.
    static CorrelatorKey make(int genus, MultiIndex kappa, std::vector<int> psi);

    int points() const { return static_cast<int>(psi.size()); }
    int psi_degree() const;
    // |kappa| + sum psi == genus - 1
    bool degree_valid() const;

    std::string to_string() const;

    friend bool operator==(const CorrelatorKey& a, const CorrelatorKey& b) {
        return a.genus == b.genus && a.kappa == b.kappa && a.psi == b.psi;
    }
    friend bool operator<(const CorrelatorKey& a, const CorrelatorKey& b) {
        if (a.genus != b.genus) return a.genus < b.genus;
        if (a.kappa != b.kappa) return a.kappa < b.kappa;
        return a.psi < b.psi;
    }
};

// g = 1, n = 0 has no defined value (with or without kappa); requesting it is
// an input error, not a zero.
class UndefinedCorrelatorError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Two strategies (or a preloaded cache entry) produced different exact values
// for the same key. This is always a bug or a corrupted cache; never ignored.
class StrategyDisagreementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// kappa expansion into pure-psi correlators:
//   < kappa(b) X >_g = sum_k (-1)^{||b||-k}/k! sum_{m_1+...+m_k=b, m_j != 0}
//                      binom(b; m_1...m_k) < X prod_j tau_{|m_j|} >_g.
// Returns aggregated (insertion multiset -> coefficient) pairs, insertions
// sorted descending.
std::vector<std::pair<std::vector<int>, ExactRational>> kmz_expand(const MultiIndex& b);

// Closed forms (all exact):
//   genus-1 tower:      < tau_0^n >_1 = (n-1)!/8, n >= 1
//   one-point:          < tau_{g-1} >_g = (2g-1)!!^2 / (8^g g! (2g-1))
//   two-point (2k <= g-1):
//     < tau_k tau_{g-1-k} >_g = (2g-1)!!^2/(8^g g!) * (2g-1)!!/((2k+1)!!(2g-1-2k)!!)
//                               * sum_{i=0}^k (g-2i)/g * C(g,i)^4 / C(2g,2i)^3
ExactRational closed_genus1(int n);
ExactRational closed_one_point(int g);
ExactRational closed_two_point(int g, int k);

enum class IdentityKind { Dilaton, DilatonKappa, Kdv, KdvKappa };

class CorrelatorEngine {
public:
    CorrelatorEngine() = default;

    // Cache-first evaluation; on a miss, computes with the given strategy
    // (Auto = KmzDvv) and stores the result. Thread-safe.
    ExactRational evaluate(const CorrelatorKey& key, Strategy s = Strategy::Auto);

    // Recomputes the key's one-step reduction under the given strategy (sub-
    // calls still use the shared cache) and compares against the cached value
    // if present. Throws StrategyDisagreementError on mismatch.
    ExactRational check(const CorrelatorKey& key, Strategy s);

    // Convenience wrapper building the canonical key first.
    ExactRational evaluate(int genus, const MultiIndex& kappa, std::vector<int> psi,
                           Strategy s = Strategy::Auto);

    // < kappa(b) >_g reduced to one-point kappa correlators:
    //   < kappa(b) >_g = 1/(2g-2) sum_{L+L'=b} (-1)^{||L||} binom(b,L)
    //                    < tau_{|L|} kappa(L') >_g,    g >= 2.
    ExactRational n0_reduce(int genus, const MultiIndex& b, Strategy s = Strategy::Auto);

    // Residual of a correlator identity at a spectator key (g, kappa, psi);
    // zero when the identity holds:
    //   Dilaton       < tau_0 X >_g - (2g-2+n) < X >_g          (kappa must be 0)
    //   DilatonKappa  sum_{L+L'=b} (-1)^{||L||} binom(b,L) < tau_{|L|} X kappa(L') >_g
    //                 - (2g-2+n) < X kappa(b) >_g
    //   Kdv           < tau_0 tau_1 X >_g - 1/2 sum < tau_0^2 X_I >_{g'} < tau_0^2 X_J >_{g-g'}
    //                 - 1/12 < tau_0^4 X >_{g-1}                 (kappa must be 0)
    //   KdvKappa      same with kappa(b) split by binom(b,e) across the factors
    ExactRational identity_residual(IdentityKind kind, const CorrelatorKey& key);

    // One-step reduction with an explicit choice of the peeled psi position
    // (canonical order; position 0 is the default largest-entry peel). Used to
    // test that the recursions are insensitive to the peel choice.
    ExactRational reduce_thm14_at(const CorrelatorKey& key, size_t peel_pos);
    ExactRational reduce_thm15_at(const CorrelatorKey& key, size_t peel_pos);

    // Cache plumbing (used by the CLI cache file).
    void preload(const CorrelatorKey& key, const ExactRational& value);
    std::map<CorrelatorKey, ExactRational> snapshot() const;

    struct Stats {
        std::uint64_t hits = 0;
        std::uint64_t misses = 0;
    };
    Stats stats() const;

private:
    ExactRational compute(const CorrelatorKey& key, Strategy s);
    ExactRational eval(int genus, const MultiIndex& kappa, std::vector<int> psi, Strategy s);
    ExactRational store_or_compare(const CorrelatorKey& key, const ExactRational& value);

    ExactRational dvv_reduce(const CorrelatorKey& key, Strategy s);
    ExactRational kmz_reduce(const CorrelatorKey& key, Strategy s);
    ExactRational thm14_reduce(const CorrelatorKey& key, size_t peel_pos, Strategy s);
    ExactRational thm15_reduce(const CorrelatorKey& key, size_t peel_pos, Strategy s);
    ExactRational closed_reduce(const CorrelatorKey& key);

    mutable std::shared_mutex mu_;
    std::map<CorrelatorKey, ExactRational> memo_;
    mutable std::atomic<std::uint64_t> hits_{0};
    mutable std::atomic<std::uint64_t> misses_{0};
};

// Degree-valid canonical keys with genus <= g_max and n + ||kappa|| <= budget,
// sorted. Optional caps: max_psi_points / max_kappa_size bound n and ||kappa||
// separately when >= 0. Excludes the undefined (g=1, n=0) slot.
std::vector<CorrelatorKey> degree_valid_keys(int g_max, int budget, int max_psi_points = -1,
                                             int max_kappa_size = -1);

}  // namespace swp
