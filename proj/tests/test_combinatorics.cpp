#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "swp/combinatorics.hpp"
#include "swp/multi_index.hpp"
#include "swp/rational.hpp"

using swp::ExactRational;
using swp::MultiIndex;
namespace cb = swp::combinatorics;

TEST_CASE("double factorial conventions") {
    CHECK(cb::double_factorial(-1) == ExactRational(1));
    CHECK(cb::double_factorial(0) == ExactRational(1));
    CHECK(cb::double_factorial(1) == ExactRational(1));
    CHECK(cb::double_factorial(5) == ExactRational(15));
    CHECK(cb::double_factorial(6) == ExactRational(48));
    CHECK(cb::double_factorial(7) == ExactRational(105));
    CHECK_THROWS_AS(cb::double_factorial(-3), std::domain_error);
    // (2k)!! (2k-1)!! = (2k)!
    for (int k = 0; k <= 8; ++k)
        CHECK(cb::double_factorial(2 * k) * cb::double_factorial(2 * k - 1) ==
              swp::factorial(2 * k));
}

TEST_CASE("secant numbers match the zigzag triangle") {
    const auto a = cb::secant_numbers(6);
    REQUIRE(a.size() == 7);
    CHECK(a[0] == ExactRational(1));
    CHECK(a[1] == ExactRational(1));
    CHECK(a[2] == ExactRational(5));
    CHECK(a[3] == ExactRational(61));
    CHECK(a[4] == ExactRational(1385));
    CHECK(a[5] == ExactRational(50521));

    // Independent oracle: the boustrophedon (zigzag) triangle computes the
    // Euler zigzag numbers Z_m; the secant numbers are the even-indexed ones.
    std::vector<ExactRational> prev = {ExactRational(1)};
    std::vector<ExactRational> zigzag = {ExactRational(1)};  // Z_0
    for (int m = 1; m <= 12; ++m) {
        std::vector<ExactRational> row(static_cast<size_t>(m) + 1);
        row[0] = ExactRational(0);
        for (int i = 1; i <= m; ++i)
            row[static_cast<size_t>(i)] =
                row[static_cast<size_t>(i) - 1] + prev[static_cast<size_t>(m - i)];
        zigzag.push_back(row.back());
        prev = row;
    }
    for (int n = 0; n <= 6; ++n) CHECK(a[static_cast<size_t>(n)] == zigzag[static_cast<size_t>(2 * n)]);
}

TEST_CASE("beta coefficients") {
    const auto beta = cb::beta_coefficients(4);
    REQUIRE(beta.size() == 5);
    CHECK(beta[0] == ExactRational(1));
    CHECK(beta[1] == ExactRational(1));
    CHECK(beta[2] == ExactRational(5, 6));
    CHECK(beta[3] == ExactRational(61, 90));
    CHECK(beta[4] == ExactRational(277, 504));
    // beta_l = 2^l a_l / (2l)! against separately computed secants.
    const auto a = cb::secant_numbers(4);
    for (int l = 0; l <= 4; ++l)
        CHECK(beta[static_cast<size_t>(l)] ==
              ExactRational(2).pow(static_cast<unsigned>(l)) * a[static_cast<size_t>(l)] /
                  swp::factorial(2 * l));
}

TEST_CASE("alpha coefficients: pinned values and the one-row identity") {
    CHECK(cb::alpha_coefficient(MultiIndex()) == ExactRational(1));
    CHECK(cb::alpha_coefficient(MultiIndex::delta(1)) == ExactRational(1));
    CHECK(cb::alpha_coefficient(MultiIndex({{1, 2}})) == ExactRational(5, 3));
    CHECK(cb::alpha_coefficient(MultiIndex::delta(2)) == ExactRational(1, 3));

    // alpha on l copies of the weight-1 slot equals l! beta_l.
    const auto beta = cb::beta_coefficients(10);
    for (int l = 0; l <= 10; ++l)
        CHECK(cb::alpha_coefficient(MultiIndex(std::vector<std::pair<int, int>>{{1, l}})) ==
              swp::factorial(l) * beta[static_cast<size_t>(l)]);

    // The simple closed-form guess alpha_{delta_l} = 1/(2l+1)!! is wrong: the
    // actual single-entry values follow 1/(2l-1)!! instead, already at l = 1.
    for (int l = 1; l <= 5; ++l) {
        const auto actual = cb::alpha_coefficient(MultiIndex::delta(l));
        CHECK(actual != ExactRational(1) / cb::double_factorial(2 * l + 1));
        CHECK(actual == ExactRational(1) / cb::double_factorial(2 * l - 1));
    }
}

TEST_CASE("gamma coefficients and the convolution inverse") {
    CHECK(cb::gamma_coefficient(MultiIndex()) == ExactRational(1));
    CHECK(cb::gamma_coefficient(MultiIndex::delta(1)) == ExactRational(-1));
    CHECK(cb::gamma_coefficient(MultiIndex::delta(2)) == ExactRational(-1, 3));
    CHECK(cb::gamma_coefficient(MultiIndex({{1, 2}})) == ExactRational(1, 6));

    // sum_{L + L' = b} beta_L gamma_{L'} = [b = 0], the inversion that converts
    // between the two operator normalizations.
    for (int w = 0; w <= 6; ++w) {
        for (const auto& b : cb::indices_of_weight(w)) {
            ExactRational sum;
            for (const auto& L : b.sub_indices())
                sum += cb::beta_multi(L) * cb::gamma_coefficient(b - L);
            CHECK(sum == (b.is_zero() ? ExactRational(1) : ExactRational(0)));
        }
    }
}

TEST_CASE("beta_multi agrees with the scalar route on one-row indices") {
    const auto beta = cb::beta_coefficients(6);
    for (int l = 0; l <= 6; ++l)
        CHECK(cb::beta_multi(MultiIndex(std::vector<std::pair<int, int>>{{1, l}})) ==
              beta[static_cast<size_t>(l)]);
    CHECK(cb::beta_multi(MultiIndex::delta(2)) == ExactRational(1, 3));
}

TEST_CASE("multi-index binomials and multinomials") {
    const MultiIndex b({{1, 2}, {3, 1}});
    CHECK(cb::mi_binomial(b, MultiIndex::delta(1)) == ExactRational(2));
    CHECK(cb::mi_binomial(b, MultiIndex({{1, 2}})) == ExactRational(1));
    CHECK(cb::mi_binomial(b, b) == ExactRational(1));
    CHECK(cb::mi_binomial(b, MultiIndex()) == ExactRational(1));
    CHECK(cb::mi_binomial(b, MultiIndex::delta(2)) == ExactRational(0));  // not a sub-index
    // binom(b, L) = binom(b, b - L)
    for (const auto& L : b.sub_indices()) CHECK(cb::mi_binomial(b, L) == cb::mi_binomial(b, b - L));

    CHECK(cb::mi_multinomial(MultiIndex({{1, 2}}),
                             {MultiIndex::delta(1), MultiIndex::delta(1)}) == ExactRational(2));
    CHECK(cb::mi_multinomial(b, {MultiIndex({{1, 2}}), MultiIndex::delta(3)}) ==
          ExactRational(1));
    CHECK(cb::mi_multinomial(b, {b, MultiIndex::delta(1)}) == ExactRational(0));  // wrong sum
}

TEST_CASE("splits enumerate ordered decompositions") {
    const MultiIndex b({{1, 2}});
    CHECK(cb::splits(b, 2).size() == 3);                 // (0,b), (d1,d1), (b,0)
    CHECK(cb::splits(b, 2, /*nonzero_parts=*/true).size() == 1);
    CHECK(cb::splits(b, 3).size() == 6);                 // C(2+2, 2)
    const MultiIndex c({{1, 1}, {2, 1}});
    CHECK(cb::splits(c, 2).size() == 4);                 // product of (count+1)
    // Every split sums back to the original and multinomial weights are
    // positive exactly on true decompositions.
    for (const auto& parts : cb::splits(c, 3)) {
        MultiIndex sum;
        for (const auto& p : parts) sum += p;
        CHECK(sum == c);
        CHECK(cb::mi_multinomial(c, parts) > ExactRational(0));
    }
}

TEST_CASE("shift polynomials in both modes") {
    using cb::PMode;
    const auto p1w = cb::p_polynomial(1, PMode::weighted, /*max_weight=*/5);
    REQUIRE(p1w.size() == 1);
    CHECK(p1w.at(MultiIndex::delta(1)) == ExactRational(1));

    const auto p2w = cb::p_polynomial(2, PMode::weighted, 5);
    REQUIRE(p2w.size() == 2);
    CHECK(p2w.at(MultiIndex::delta(2)) == ExactRational(1));
    CHECK(p2w.at(MultiIndex({{1, 2}})) == ExactRational(-1, 2));

    // Counted mode keys on ||L|| = k, an infinite family truncated by weight:
    // p_1 picks up every single kappa slot.
    const auto p1c = cb::p_polynomial(1, PMode::counted, 3);
    REQUIRE(p1c.size() == 3);
    for (int j = 1; j <= 3; ++j) CHECK(p1c.at(MultiIndex::delta(j)) == ExactRational(1));
    CHECK(p2w.count(MultiIndex::delta(2)) == 1);
    CHECK(p1w.count(MultiIndex::delta(2)) == 0);  // the discriminating slot
}

TEST_CASE("weight enumerations") {
    CHECK(cb::indices_of_weight(0).size() == 1);
    CHECK(cb::indices_of_weight(4).size() == 5);   // partitions of 4
    CHECK(cb::indices_of_weight(6).size() == 11);  // partitions of 6
    CHECK(cb::indices_up_to_weight(4).size() == 12);
    for (const auto& b : cb::indices_of_weight(5)) CHECK(b.weight() == 5);
    for (const auto& b : cb::indices_up_to_weight(5)) CHECK(b.weight() <= 5);
}
