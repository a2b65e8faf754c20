#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <utility>
#include <vector>

#include "swp/combinatorics.hpp"
#include "swp/correlator.hpp"
#include "swp/multi_index.hpp"
#include "swp/rational.hpp"
#include "swp/series.hpp"

using swp::build_free_energy;
using swp::CorrelatorEngine;
using swp::exponentiate;
using swp::kdv_pde_residual;
using swp::kdv_window;
using swp::Monomial;
using swp::MultiIndex;
using swp::SeriesCutoff;
using swp::shift_window;
using swp::substitute_shift;
using swp::TruncatedSeries;
using Q = swp::ExactRational;
using swp::combinatorics::PMode;

namespace {

Monomial mono(int hbar, std::map<int, int> t, std::vector<std::pair<int, int>> s = {}) {
    Monomial m;
    m.hbar = hbar;
    m.t = std::move(t);
    m.s = MultiIndex(s);
    return m;
}

}  // namespace

TEST_CASE("monomial gradings, products, and rendering") {
    const Monomial unit;
    CHECK(unit.points() == 0);
    CHECK(unit.t_weight() == 0);
    CHECK(unit.max_t_index() == -1);
    CHECK(unit.wdeg() == 0);
    CHECK(unit.to_string() == "hbar^0 t[] s[]");

    const Monomial m = mono(1, {{0, 2}, {2, 1}}, {{1, 2}});
    CHECK(m.points() == 3);
    CHECK(m.t_weight() == 2);
    CHECK(m.max_t_index() == 2);
    CHECK(m.wdeg() == 2 + 2 - 1);
    CHECK(m.to_string() == "hbar^1 t[0,0,2] s[(1,2)]");

    const Monomial a = mono(1, {{0, 1}}, {{1, 1}});
    const Monomial b = mono(0, {{0, 1}, {1, 1}}, {{1, 1}});
    CHECK(a * b == mono(1, {{0, 2}, {1, 1}}, {{1, 2}}));
    CHECK(a * unit == a);

    // operator< is a strict weak order compatible with equality.
    const Monomial c = mono(1, {{0, 1}}, {{1, 1}});
    CHECK(a == c);
    CHECK_FALSE(a < c);
    CHECK_FALSE(c < a);
    CHECK(((a < b) != (b < a)));
}

TEST_CASE("series cutoff window membership") {
    const SeriesCutoff cut{2, 4, 1, 1};
    CHECK(cut.contains(Monomial{}));
    CHECK(cut.contains(mono(1, {{0, 3}, {1, 1}}, {{1, 1}})));
    CHECK_FALSE(cut.contains(mono(2, {{0, 1}})));        // genus 3
    CHECK_FALSE(cut.contains(mono(0, {{0, 5}})));        // five points
    CHECK_FALSE(cut.contains(mono(1, {{2, 1}})));        // t-index 2
    CHECK_FALSE(cut.contains(mono(1, {}, {{2, 1}})));    // s-weight 2
}

TEST_CASE("free energy window pins the low correlators") {
    CorrelatorEngine engine;
    const SeriesCutoff cut{2, 4, 1, 1};
    const TruncatedSeries f = build_free_energy(engine, cut);

    // No constant term: the (g, n) = (1, 0) slot is excluded.
    CHECK(f.coefficient(Monomial{}).is_zero());

    // Genus-one tower: coefficient of t_0^n is <tau_0^n>_1 / n! = 1/(8n).
    CHECK(f.coefficient(mono(0, {{0, 1}})) == Q(1, 8));
    CHECK(f.coefficient(mono(0, {{0, 2}})) == Q(1, 16));
    CHECK(f.coefficient(mono(0, {{0, 3}})) == Q(1, 24));
    CHECK(f.coefficient(mono(0, {{0, 4}})) == Q(1, 32));

    // Genus-two slots, with and without a kappa factor.
    CHECK(f.coefficient(mono(1, {{1, 1}})) == Q(3, 128));            // <tau_1>_2
    CHECK(f.coefficient(mono(1, {}, {{1, 1}})) == Q(3, 128));        // <kappa_1>_2
    CHECK(f.coefficient(mono(1, {{0, 1}, {1, 1}})) == Q(9, 128));    // <tau_0 tau_1>_2
    CHECK(f.coefficient(mono(1, {{0, 1}}, {{1, 1}})) == Q(9, 128));  // <kappa_1 tau_0>_2
    CHECK(f.coefficient(mono(1, {{0, 2}}, {{1, 1}})) == Q(9, 64));   // <kappa_1 tau_0^2>_2 / 2!

    // Every stored monomial obeys the grading and fits the window.
    for (const auto& [m, c] : f.terms()) {
        CHECK(m.wdeg() == 0);
        CHECK(cut.contains(m));
        CHECK_FALSE(c.is_zero());
    }

    // Dropping the kappa variables keeps exactly the s-free part.
    const TruncatedSeries fz = build_free_energy(engine, cut, /*with_kappa=*/false);
    for (const auto& [m, c] : fz.terms()) CHECK(m.s.is_zero());
    CHECK(fz.coefficient(mono(1, {{1, 1}})) == Q(3, 128));
    CHECK(fz.coefficient(mono(1, {}, {{1, 1}})).is_zero());
    for (const auto& [m, c] : f.terms())
        if (m.s.is_zero()) CHECK(fz.coefficient(m) == c);
}

TEST_CASE("partition function is the exponential of the free energy") {
    CorrelatorEngine engine;

    // Over the genus-one t_0 tower, F = -(1/8) log(1 - t_0), so the partition
    // function is (1 - t_0)^{-1/8} and its t_0^n coefficient is the rising
    // factorial (1/8)(1/8 + 1)...(1/8 + n - 1) / n!.
    const SeriesCutoff zcut{1, 4, 0, 0};
    const TruncatedSeries g = exponentiate(build_free_energy(engine, zcut, false));
    CHECK(g.coefficient(Monomial{}) == Q(1));
    CHECK(g.coefficient(mono(0, {{0, 2}})) == Q(9, 128));
    CHECK(g.coefficient(mono(0, {{0, 3}})) == Q(51, 1024));
    CHECK(g.coefficient(mono(0, {{0, 4}})) == Q(1275, 32768));
    Q rising(1);
    for (int n = 1; n <= 4; ++n) {
        rising *= (Q(1, 8) + Q(n - 1)) / Q(n);
        CHECK(g.coefficient(mono(0, {{0, n}})) == rising);
    }

    // A mixed coefficient assembles from both exponential layers:
    // [t_0 s_1] exp(F) = F_{t_0} F_{s_1} + F_{t_0 s_1}.
    const SeriesCutoff cut{2, 4, 1, 1};
    const TruncatedSeries big = exponentiate(build_free_energy(engine, cut));
    CHECK(big.coefficient(Monomial{}) == Q(1));
    CHECK(big.coefficient(mono(1, {{0, 1}}, {{1, 1}})) ==
          Q(1, 8) * Q(3, 128) + Q(9, 128));

    TruncatedSeries with_constant(cut);
    with_constant.add_term(Monomial{}, Q(1));
    CHECK_THROWS_AS(exponentiate(with_constant), std::invalid_argument);
}

TEST_CASE("series container plumbing") {
    const SeriesCutoff cut{2, 3, 1, 1};
    TruncatedSeries s(cut);
    CHECK(s.empty());

    // Out-of-window terms are dropped silently.
    s.add_term(mono(3, {{0, 1}}), Q(5));
    CHECK(s.empty());

    // In-window terms accumulate and cancel away exactly.
    const Monomial m = mono(0, {{0, 1}});
    s.add_term(m, Q(1, 8));
    s.add_term(m, Q(1, 8));
    CHECK(s.coefficient(m) == Q(1, 4));
    s.add_term(m, Q(-1, 4));
    CHECK(s.empty());

    s.add_term(m, Q(1, 8));
    s.add_term(mono(1, {{1, 1}}), Q(3, 128));
    CHECK(s.size() == 2);
    CHECK(s.scaled(Q(4)).coefficient(m) == Q(1, 2));

    TruncatedSeries t(cut);
    t.add_term(m, Q(1, 8));
    TruncatedSeries diff = s;
    diff -= t;
    CHECK(diff.coefficient(m).is_zero());
    CHECK(diff.coefficient(mono(1, {{1, 1}})) == Q(3, 128));
    diff += t;
    CHECK(diff.coefficient(m) == Q(1, 8));

    // Product respects the receiving window.
    const TruncatedSeries sq = t * t;
    CHECK(sq.coefficient(mono(0, {{0, 2}})) == Q(1, 64));

    const TruncatedSeries only_hbar =
        s.filtered([](const Monomial& mm) { return mm.hbar >= 1; });
    CHECK(only_hbar.size() == 1);
    CHECK(only_hbar.coefficient(mono(1, {{1, 1}})) == Q(3, 128));

    CHECK(t.to_string() == "hbar^0 t[0] s[] = 1/8");
    CHECK(s.to_string() == "hbar^0 t[0] s[] = 1/8\nhbar^1 t[1] s[] = 3/128");
}

TEST_CASE("kdv flow equation holds on the free energy") {
    CorrelatorEngine engine;
    const SeriesCutoff cut{3, 8, 2, 0};
    const TruncatedSeries f = build_free_energy(engine, cut, /*with_kappa=*/false);
    const TruncatedSeries residual = kdv_pde_residual(f).filtered(
        [&](const Monomial& m) { return kdv_window(cut, m); });
    CHECK(residual.empty());

    // Perturbing a single window coefficient must surface in the residual:
    // adding (1/7) hbar t_0 t_1 feeds d_0 d_1 F alone, so the residual picks
    // up exactly 1/7 at the bare hbar monomial.
    TruncatedSeries mutated = f;
    mutated.add_term(mono(1, {{0, 1}, {1, 1}}), Q(1, 7));
    const TruncatedSeries broken = kdv_pde_residual(mutated).filtered(
        [&](const Monomial& m) { return kdv_window(cut, m); });
    CHECK_FALSE(broken.empty());
    CHECK(broken.coefficient(mono(1, {})) == Q(1, 7));
}

TEST_CASE("boundary insertion shift reproduces the kappa series") {
    CorrelatorEngine engine;
    const int genus = 3;
    const int sweight = genus - 1;
    const SeriesCutoff gcut{genus, genus + 2, genus + 1, sweight};
    const SeriesCutoff zcut{genus, gcut.max_points + sweight,
                            std::max(gcut.max_t_index, sweight), 0};
    const TruncatedSeries fg = build_free_energy(engine, gcut);
    const TruncatedSeries fz = build_free_energy(engine, zcut, /*with_kappa=*/false);

    auto residual_for = [&](PMode mode) {
        TruncatedSeries r = substitute_shift(fz, mode, gcut);
        r -= fg;
        return r.filtered([&](const Monomial& m) {
            return !m.s.is_zero() && shift_window(zcut, m);
        });
    };

    // The weighted shift polynomials turn the pure-tau series into the full
    // kappa-tau series; the counted variant does not.
    CHECK(residual_for(PMode::weighted).empty());
    CHECK_FALSE(residual_for(PMode::counted).empty());

    // Only t-only series may be shifted.
    CHECK_THROWS_AS(substitute_shift(fg, PMode::weighted, gcut), std::invalid_argument);
}
