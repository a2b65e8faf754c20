// Acceptance gate: each advertised guarantee of the library and CLI is
// re-verified here from scratch, one verdict line per criterion:
//
//   CRITERION  n: PASS — <what was established>
//
// The binary exits nonzero if any criterion fails. Everything exact is
// compared with tolerance zero; the quadrature cross-checks in criterion 9
// are explicitly numeric with the stated tolerances.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "swp/combinatorics.hpp"
#include "swp/correlator.hpp"
#include "swp/kernel.hpp"
#include "swp/multi_index.hpp"
#include "swp/rational.hpp"
#include "swp/series.hpp"
#include "swp/virasoro.hpp"
#include "swp/volumes.hpp"

using swp::CorrelatorEngine;
using swp::CorrelatorKey;
using swp::ExactRational;
using swp::IdentityKind;
using swp::Monomial;
using swp::MultiIndex;
using swp::SeriesCutoff;
using swp::Strategy;
using swp::TruncatedSeries;
using Q = ExactRational;
namespace cb = swp::combinatorics;
using Clock = std::chrono::steady_clock;

namespace {

// ---------------------------------------------------------------- utilities

struct Verdict {
    bool pass;
    std::string detail;
};

long elapsed_ms(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
        .count();
}

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SWP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {};
    RunResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

Monomial mono(int hbar, std::map<int, int> t) {
    Monomial m;
    m.hbar = hbar;
    m.t = std::move(t);
    return m;
}

// Composite Simpson rule; the integrands decay exponentially, so a finite
// window with an O(h^4) rule is far more accurate than the tolerances below.
template <typename F>
double simpson(F f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

const double kPi = std::acos(-1.0);

double sech(double x) { return 1.0 / std::cosh(x); }

double kernel_h(double x, double y) {
    return 0.5 * (sech(kPi * (x - y) / 2.0) - sech(kPi * (x + y) / 2.0));
}

bool rel_close(double got, double want, double tol) {
    return std::fabs(got - want) <= tol * std::max(1.0, std::fabs(want));
}

// ---------------------------------------------------------------- criteria

Verdict criterion_1() {
    const auto start = Clock::now();
    CorrelatorEngine engine;
    const std::vector<std::pair<CorrelatorKey, Q>> pins = {
        {CorrelatorKey::make(1, MultiIndex(), {0}), Q(1, 8)},
        {CorrelatorKey::make(2, MultiIndex::delta(1), {}), Q(3, 128)},
        {CorrelatorKey::make(3, MultiIndex(), {1, 1}), Q(63, 512)},
        {CorrelatorKey::make(6, MultiIndex(), {2, 3}), Q::from_string("7949025/2097152")},
        {CorrelatorKey::make(9, MultiIndex(), {4, 4}),
         Q::from_string("8093029715505/8589934592")},
    };
    for (const auto& [key, want] : pins)
        if (engine.evaluate(key) != want)
            return {false, "constant mismatch at " + key.to_string()};
    const long ms = elapsed_ms(start);
    if (ms >= 60'000) return {false, "constants correct but took " + std::to_string(ms) + " ms"};
    return {true,
            "five pinned constants reproduced exactly in " + std::to_string(ms) +
                " ms (budget 60 s)"};
}

Verdict criterion_2() {
    CorrelatorEngine engine;
    int checked = 0;
    // Genus-1 tower: <tau_0^n>_1 = (n-1)!/8.
    for (int n = 1; n <= 10; ++n, ++checked) {
        const auto key = CorrelatorKey::make(1, MultiIndex(), std::vector<int>(n, 0));
        if (engine.evaluate(key) != swp::closed_genus1(n))
            return {false, "genus-1 tower fails at n = " + std::to_string(n)};
    }
    // One-point: <tau_{g-1}>_g = ((2g-1)!!)^2 / (8^g g! (2g-1)).
    for (int g = 1; g <= 10; ++g, ++checked) {
        const auto key = CorrelatorKey::make(g, MultiIndex(), {g - 1});
        if (engine.evaluate(key) != swp::closed_one_point(g))
            return {false, "one-point closed form fails at g = " + std::to_string(g)};
    }
    // Two-point closed form on every legal (g, k) with g <= 9.
    for (int g = 1; g <= 9; ++g)
        for (int k = 0; 2 * k <= g - 1; ++k, ++checked) {
            const auto key = CorrelatorKey::make(g, MultiIndex(), {k, g - 1 - k});
            if (engine.evaluate(key) != swp::closed_two_point(g, k))
                return {false, "two-point closed form fails at (g,k) = (" +
                                   std::to_string(g) + "," + std::to_string(k) + ")"};
        }
    return {true, std::to_string(checked) +
                      " closed-form values (n <= 10, g <= 10, g <= 9) equal the recursion"};
}

Verdict criterion_3() {
    const auto start = Clock::now();
    const auto keys = swp::degree_valid_keys(6, 7, 4, 3);
    CorrelatorEngine engine;
    for (const auto& key : keys) engine.evaluate(key);
    for (const auto& key : keys) {
        engine.check(key, Strategy::KmzDvv);
        engine.check(key, Strategy::Thm14);
        engine.check(key, Strategy::Thm15);
    }
    const long ms = elapsed_ms(start);
    if (ms >= 300'000) return {false, "strategies agree but took " + std::to_string(ms) + " ms"};
    return {true, std::to_string(keys.size()) +
                      " degree-valid keys (g <= 6, <= 4 psi, ||b|| <= 3) agree across "
                      "KMZ/DVV, Thm14, Thm15 in " +
                      std::to_string(ms) + " ms (budget 5 min)"};
}

Verdict criterion_4() {
    // Convolution inverse: sum_{L + L' = b} beta_L gamma_{L'} = [b = 0].
    int convolutions = 0;
    for (int w = 0; w <= 12; ++w)
        for (const auto& b : cb::indices_of_weight(w)) {
            Q sum;
            for (const auto& L : b.sub_indices())
                sum += cb::beta_multi(L) * cb::gamma_coefficient(b - L);
            if (sum != (b.is_zero() ? Q(1) : Q(0)))
                return {false, "convolution identity fails at b = " + b.to_string()};
            ++convolutions;
        }
    // alpha on l copies of the weight-1 slot vs the scalar beta route.
    const auto beta = cb::beta_coefficients(10);
    for (int l = 0; l <= 10; ++l) {
        const MultiIndex row(std::vector<std::pair<int, int>>{{1, l}});
        if (cb::alpha_coefficient(row) != swp::factorial(l) * beta[static_cast<size_t>(l)])
            return {false, "alpha((1:l)) != l! beta_l at l = " + std::to_string(l)};
        if (cb::beta_multi(row) != beta[static_cast<size_t>(l)])
            return {false, "beta dual-route mismatch at l = " + std::to_string(l)};
    }
    // The quoted single-entry closed form is off by one double-factorial step:
    // alpha(delta_l) = 1/(2l-1)!!, not 1/(2l+1)!!. Expected finding.
    for (int l = 1; l <= 5; ++l) {
        const auto actual = cb::alpha_coefficient(MultiIndex::delta(l));
        if (actual != Q(1) / cb::double_factorial(2 * l - 1) ||
            actual == Q(1) / cb::double_factorial(2 * l + 1))
            return {false, "alpha(delta_l) deviates from 1/(2l-1)!! at l = " + std::to_string(l)};
    }
    return {true, std::to_string(convolutions) +
                      " convolution rows (||b|| <= 12) invert; alpha/beta routes agree "
                      "(l <= 10); finding: alpha(delta_l) = 1/(2l-1)!!, not 1/(2l+1)!!"};
}

Verdict criterion_5() {
    CorrelatorEngine engine;
    int residuals = 0;
    for (const auto& key : swp::degree_valid_keys(5, 7, 4, 3)) {
        if (key.kappa.is_zero()) {
            if (engine.identity_residual(IdentityKind::Dilaton, key) != Q(0))
                return {false, "dilaton residual nonzero at " + key.to_string()};
            if (engine.identity_residual(IdentityKind::Kdv, key) != Q(0))
                return {false, "KdV residual nonzero at " + key.to_string()};
            residuals += 2;
        }
        if (engine.identity_residual(IdentityKind::DilatonKappa, key) != Q(0))
            return {false, "kappa-dilaton residual nonzero at " + key.to_string()};
        if (engine.identity_residual(IdentityKind::KdvKappa, key) != Q(0))
            return {false, "kappa-KdV residual nonzero at " + key.to_string()};
        residuals += 2;
    }
    return {true, std::to_string(residuals) +
                      " dilaton/KdV residuals (plain and kappa-split) vanish for g <= 5"};
}

Verdict criterion_6() {
    CorrelatorEngine engine;
    const Q half(1, 2);
    int checked = 0;
    // The three renderings of one volume differ monomial-by-monomial by
    // 2^{d0 - d1 - ... - dn} and the global 2^{1-g-n}.
    for (int g = 1; g <= 4; ++g)
        for (int n = (g == 1 ? 1 : 0); n <= 3; ++n) {
            const auto plain = swp::volume_polynomial(engine, g, n);
            const auto normalized = swp::normalized_volume(engine, g, n);
            const auto super = swp::super_volume(engine, g, n);
            for (const auto& [key, coeff] : normalized.terms()) {
                int suffix = 0;
                for (size_t i = 1; i < key.size(); ++i) suffix += key[i];
                const Q expected = coeff * Q(2).pow(key[0]) * half.pow(suffix);
                if (plain.coefficient(key) != expected ||
                    super.coefficient(key) != expected * half.pow(g + n - 1))
                    return {false, "normalization mismatch at (g,n) = (" + std::to_string(g) +
                                       "," + std::to_string(n) + ")"};
                ++checked;
            }
        }
    // Boundary-adding identity.
    for (int g = 1; g <= 5; ++g)
        for (const auto& b : cb::indices_up_to_weight(3))
            for (int n = (g == 1 ? 1 : 0); n <= 3; ++n) {
                if (!swp::thm16_residual(engine, g, n, b).is_zero())
                    return {false, "boundary identity fails at g = " + std::to_string(g) +
                                       ", n = " + std::to_string(n) + ", kappa(" +
                                       b.to_string() + ")"};
                ++checked;
            }
    // Boundary-removing identity: the binomial-corrected variant holds
    // everywhere, the literal transcription does not — exactly one survives.
    bool as_stated_failed = false;
    for (int g = 2; g <= 4; ++g)
        for (const auto& b : cb::indices_up_to_weight(3)) {
            if (b.is_zero()) continue;
            if (!swp::thm17_residual(engine, g, b, swp::Thm17Variant::WithBinomial).is_zero())
                return {false, "binomial-corrected variant fails at g = " + std::to_string(g) +
                                   ", kappa(" + b.to_string() + ")"};
            ++checked;
            if (!swp::thm17_residual(engine, g, b, swp::Thm17Variant::AsStated).is_zero())
                as_stated_failed = true;
        }
    if (!as_stated_failed)
        return {false, "both boundary-removal variants vanish over g <= 4: nothing resolved"};
    return {true, std::to_string(checked) +
                      " volume identities hold (g <= 5); boundary removal resolved to the "
                      "binomial-corrected variant (the literal one fails in range)"};
}

Verdict criterion_7() {
    CorrelatorEngine engine;
    // Annihilation on a universe strictly containing the advertised window
    // (g <= 4, n <= 5, s-weight <= 3).
    const SeriesCutoff cut{4, 7, 6, 3};
    const TruncatedSeries z = swp::exponentiate(swp::build_free_energy(engine, cut));
    for (int k = 0; k <= 3; ++k)
        for (auto form : {swp::VirasoroForm::Hat, swp::VirasoroForm::Direct})
            if (!swp::annihilation_residual(form, k, z).empty())
                return {false, "annihilation residual nonzero at k = " + std::to_string(k)};

    // Brackets, checked on a probe basis with finite support.
    const int s_weight = 3;
    const swp::OperatorBounds bounds{7, s_weight};
    const SeriesCutoff big{5, 4, 8, 2 * s_weight};
    TruncatedSeries probe(big);
    probe.add_term(Monomial{}, Q(1));
    probe.add_term(mono(0, {{0, 1}}), Q(1, 3));
    probe.add_term(mono(0, {{1, 1}}), Q(-2, 5));
    probe.add_term(mono(0, {{0, 2}}), Q(7, 11));
    probe.add_term(mono(0, {{2, 1}, {3, 1}}), Q(1, 2));
    probe.add_term(mono(0, {{0, 1}, {4, 1}}), Q(2, 9));
    probe.add_term(mono(0, {{5, 1}}), Q(-1, 6));
    probe.add_term(mono(1, {{1, 1}, {3, 1}}), Q(-3, 7));
    probe.add_term(mono(1, {{4, 1}}), Q(4, 5));
    probe.add_term(mono(2, {{2, 1}}), Q(5, 13));
    auto bracket = [&](const swp::DifferentialOperator& a, const swp::DifferentialOperator& b) {
        TruncatedSeries out = a.apply(b.apply(probe, big), big);
        out -= b.apply(a.apply(probe, big), big);
        return out;
    };
    auto low_s = [&](const Monomial& m) { return m.s.weight() <= s_weight; };
    for (int n = 1; n <= 3; ++n)
        for (int m = 0; m < n; ++m) {
            TruncatedSeries hat_diff = bracket(swp::virasoro_hat(n, bounds),
                                               swp::virasoro_hat(m, bounds));
            hat_diff -= swp::commutator_rhs_hat(n, m, bounds).apply(probe, big);
            if (!hat_diff.filtered(low_s).empty())
                return {false, "hat-family bracket fails at (n,m) = (" + std::to_string(n) +
                                   "," + std::to_string(m) + ")"};
            TruncatedSeries direct_diff = bracket(swp::virasoro_direct(n, bounds),
                                                  swp::virasoro_direct(m, bounds));
            direct_diff -= swp::commutator_rhs_direct(n, m, bounds).apply(probe, big);
            if (!direct_diff.filtered(low_s).empty())
                return {false, "direct-family bracket fails at (n,m) = (" + std::to_string(n) +
                                   "," + std::to_string(m) + ")"};
        }

    // KdV flow on the free energy through genus 4.
    const SeriesCutoff kcut{4, 9, 3, 0};
    const auto f = swp::build_free_energy(engine, kcut, /*with_kappa=*/false);
    const auto kdv = swp::kdv_pde_residual(f).filtered(
        [&](const Monomial& m) { return swp::kdv_window(kcut, m); });
    if (!kdv.empty()) return {false, "KdV flow residual nonzero through genus 4"};

    return {true,
            "constraints 0..3 annihilate Z (both forms, window g <= 4, n <= 5, s <= 3); "
            "brackets close for 0 <= m < n <= 3; KdV flow holds through genus 4"};
}

Verdict criterion_8() {
    CorrelatorEngine engine;
    // One window at the advertised bounds, one enlarged by a unit in every
    // cutoff; the resolved mode must be the same in both.
    const std::vector<std::pair<SeriesCutoff, SeriesCutoff>> windows = {
        {{3, 5, 4, 3}, {3, 8, 4, 0}},
        {{4, 6, 5, 4}, {4, 10, 5, 0}},
    };
    for (const auto& [gcut, zcut] : windows) {
        const auto fg = swp::build_free_energy(engine, gcut);
        const auto fz = swp::build_free_energy(engine, zcut, /*with_kappa=*/false);
        auto residual_for = [&](cb::PMode mode) {
            TruncatedSeries r = swp::substitute_shift(fz, mode, gcut);
            r -= fg;
            return r.filtered([&](const Monomial& m) {
                return !m.s.is_zero() && swp::shift_window(zcut, m);
            });
        };
        if (!residual_for(cb::PMode::weighted).empty())
            return {false, "weighted shift residual nonzero at genus cap " +
                               std::to_string(gcut.max_genus)};
        if (residual_for(cb::PMode::counted).empty())
            return {false, "counted shift also vanishes at genus cap " +
                               std::to_string(gcut.max_genus) + ": nothing resolved"};
    }
    return {true,
            "weighted mode gives an all-zero shift residual (s <= 3, g <= 3), counted mode "
            "is ruled out, and the resolution is stable under enlarging every cutoff by one"};
}

Verdict criterion_9() {
    CorrelatorEngine engine;
    // One calibrated constant fits every case that constrains it.
    std::vector<Q> constants;
    for (const auto& [g, n] : {std::pair{1, 2}, {2, 1}, {2, 2}, {3, 1}}) {
        const auto c = swp::calibrate_cd(engine, g, n);
        if (c.has_value()) constants.push_back(*c);
    }
    if (constants.empty()) return {false, "no case constrains the pair-kernel constant"};
    for (const auto& c : constants)
        if (c != constants.front()) return {false, "calibrated constants differ across cases"};
    const Q c_star = constants.front();
    for (const auto& [g, n] : {std::pair{1, 2}, {2, 1}, {2, 2}, {3, 1}})
        if (!swp::sw_verify(engine, g, n, c_star))
            return {false, "length identity fails at (g,n) = (" + std::to_string(g) + "," +
                               std::to_string(n) + ")"};

    // Numeric oracles. h-polynomials against direct kernel moments, 1e-9.
    for (int k = 0; k <= 5; ++k) {
        const auto m = swp::m_polynomial(k);
        for (const double t : {0.5, 1.0, 2.0}) {
            double want = 0.0, power = t;
            for (const Q& c : m) {
                want += c.to_double() * power;
                power *= t * t;
            }
            const double quad = simpson(
                [k, t](double x) { return std::pow(x, 2 * k + 1) * kernel_h(x, t); }, 0.0,
                80.0, 80000);
            if (!rel_close(quad, want, 1e-9))
                return {false, "kernel moment mismatch at k = " + std::to_string(k)};
        }
    }
    // Beta constants against the collapsed one-dimensional integral, 1e-8.
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) {
            const double quad = simpson(
                [a, b](double u) {
                    return std::pow(u, 2 * a + 1) * std::pow(1.0 - u, 2 * b + 1);
                },
                0.0, 1.0, 20000);
            const auto [c, order] = swp::beta_moment_constant(a, b);
            if (order != a + b + 1 || !rel_close(quad, c.to_double(), 1e-8))
                return {false, "pair-moment constant mismatch at (a,b) = (" +
                                   std::to_string(a) + "," + std::to_string(b) + ")"};
        }
    // Sech moments reproduce the secant numbers 1, 1, 5, 61 within 1e-9.
    const auto secant = cb::secant_numbers(3);
    for (int n = 0; n <= 3; ++n) {
        const double quad = simpson(
            [n](double x) { return std::pow(x, 2 * n) * sech(x); }, 0.0, 60.0, 60000);
        const double want =
            secant[static_cast<size_t>(n)].to_double() * std::pow(kPi / 2.0, 2 * n + 1);
        if (!rel_close(quad, want, 1e-9))
            return {false, "sech moment mismatch at n = " + std::to_string(n)};
    }
    return {true, "length identity holds on all 4 cases with the single constant c_D* = " +
                      c_star.to_string() +
                      "; kernel moments, pair constants, and sech moments match quadrature"};
}

Verdict criterion_10() {
    // Byte-exact module examples.
    const std::vector<std::pair<std::string, std::string>> goldens = {
        {"corr -g 3 --psi 1,1", "63/512\n"},
        {"corr -g 2 --kappa 1:1", "3/128\n"},
        {"corr -g 1 --psi 1", "0\n"},
        {"volume -g 1 -n 1 --variant normalized", "1/8\n"},
        {"volume -g 2 -n 1 --variant normalized", "9/128 + 3/128*L1^2\n"},
        {"volume -g 2 -n 1 --variant plain", "9/64*pi^2 + 3/256*L1^2\n"},
    };
    for (const auto& [args, want] : goldens) {
        const auto r = run_cli(args);
        if (r.status != 0 || r.out != want)
            return {false, "golden mismatch for `" + args + "`"};
    }
    // Table rows: presence and canonical uniqueness.
    const auto t1 = run_cli("table --g-max 1 --weight-max 1");
    if (t1.status != 0 || t1.out.find("1,\"\",\"0\",1/8\n") == std::string::npos)
        return {false, "g_max=1 table misses the genus-1 seed row"};
    const auto t2 = run_cli("table --g-max 2 --weight-max 1");
    if (t2.status != 0 || t2.out.find("2,\"1:1\",\"\",3/128\n") == std::string::npos)
        return {false, "g_max=2 table misses the kappa_1 row"};
    {
        std::istringstream lines(t2.out);
        std::string line;
        std::set<std::string> seen;
        int rows = 0;
        std::getline(lines, line);  // header
        while (std::getline(lines, line)) {
            ++rows;
            seen.insert(line.substr(0, line.rfind(',')));  // key part only
        }
        if (static_cast<int>(seen.size()) != rows)
            return {false, "duplicate canonical keys in the table"};
    }
    // Verify suites named in the module examples.
    if (run_cli("verify --suite closed --g-max 9 --quiet").status != 0)
        return {false, "closed suite fails at g <= 9"};
    if (run_cli("verify --suite cross --g-max 5 --quiet").status != 0)
        return {false, "cross suite fails at g <= 5"};
    const auto appendix = run_cli("verify --suite appendix");
    if (appendix.status != 0 ||
        nlohmann::json::parse(appendix.out)["findings"]["c_d_star"] != "1")
        return {false, "appendix suite fails or does not report c_D*"};
    // The whole battery at default bounds, within its budget.
    const auto start = Clock::now();
    if (run_cli("verify --quiet").status != 0)
        return {false, "`verify --quiet` at default bounds exits nonzero"};
    const long ms = elapsed_ms(start);
    if (ms >= 900'000) return {false, "full battery took " + std::to_string(ms) + " ms"};
    return {true, "module examples byte-exact; full verify battery passes in " +
                      std::to_string(ms) + " ms (budget 15 min)"};
}

}  // namespace

int main() {
    const std::vector<std::function<Verdict()>> criteria = {
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
    };
    int passed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Verdict v{false, "unknown"};
        try {
            v = criteria[i]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("CRITERION %2zu: %s — %s\n", i + 1, v.pass ? "PASS" : "FAIL",
                    v.detail.c_str());
        std::fflush(stdout);
        if (v.pass) ++passed;
    }
    std::printf("ACCEPTANCE: %d/10 criteria passed\n", passed);
    return passed == 10 ? 0 : 1;
}
