#include "doctest.h"

#include <numeric>

#include "oracle.hpp"
#include "trinom/density.hpp"

using namespace trinom;

TEST_CASE("irreducible_count") {
    CHECK(irreducible_count(1) == 1);  // x is excluded
    CHECK(irreducible_count(4) == 3);
    CHECK(irreducible_count(2) == 1);
    // cross-check against the enumerated lists
    const auto& irr = oracle::irreducibles(12);
    for (int d = 2; d <= 12; ++d) {
        std::int64_t cnt = 0;
        for (auto q : irr)
            if (oracle::deg(q) == d) ++cnt;
        CHECK(irreducible_count(d) == cnt);
    }
    // sum_{d|n} d I_d = 2^n - 1
    for (int n = 1; n <= 64; ++n) {
        mpz_class sum = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) sum += d * irreducible_count(d);
        CHECK(sum == (mpz_class(1) << n) - 1);
    }
}

TEST_CASE("primitive_count") {
    FactorTable t = FactorTable::builtin();
    CHECK(primitive_count(3, t) == 2);
    CHECK(primitive_count(4, t) == 2);
    for (int n = 2; n <= 32; ++n)
        CHECK(primitive_count(n, t) <= irreducible_count(n));
}

TEST_CASE("almost_irreducible_poly_count") {
    CHECK(almost_irreducible_poly_count(5, 3) == 24);
    for (int r = 2; r <= 10; ++r) {
        CHECK(almost_irreducible_poly_count(r, 0) == irreducible_count(r));
        if (r >= 2)
            CHECK(almost_irreducible_poly_count(r, 1) == irreducible_count(r));
    }
    CHECK_THROWS(almost_irreducible_poly_count(5, 5));
}

TEST_CASE("largest_factor_profile") {
    DensePoly S;
    auto r = largest_factor_profile(16, 3, &S);
    CHECK(r == 13);
    CHECK(S == parse_poly("x^3+x^2+1"));
    CHECK(!largest_factor_profile(12, 1));
    CHECK(!largest_factor_profile(12, 6));  // square
    CHECK(largest_factor_profile(2, 1) == 2);

    // oracle agreement and reciprocal symmetry for all n <= 30
    for (int n = 2; n <= 30; ++n)
        for (int s = 1; s < n; ++s) {
            std::optional<std::int64_t> want;
            for (auto q : oracle::factor(oracle::trinomial(n, s)))
                if (2 * oracle::deg(q) > n) want = oracle::deg(q);
            CAPTURE(n);
            CAPTURE(s);
            CHECK(largest_factor_profile(n, s) == want);
            CHECK(largest_factor_profile(n, s) ==
                  largest_factor_profile(n, n - s));
        }
}

TEST_CASE("census") {
    FactorTable t = FactorTable::builtin();
    auto rows = census(2, CensusMode::Ait, t);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].count_ait == 1);  // x^2+x+1

    auto rows30 = census(30, CensusMode::Apt, t, 2);
    for (const auto& row : rows30) {
        CHECK(row.apt_known);
        CHECK(row.count_apt <= row.count_ait);
        CHECK(row.count_ait <= row.n - 1);
        // count_ait agrees with the factorization oracle
        std::int64_t want = 0;
        for (int s = 1; s < row.n; ++s)
            for (auto q : oracle::factor(
                     oracle::trinomial(static_cast<int>(row.n), s)))
                if (2 * oracle::deg(q) > row.n) ++want;
        CHECK(row.count_ait == want);
    }
    // deterministic across thread counts
    auto rows30b = census(30, CensusMode::Apt, t, 1);
    for (std::size_t i = 0; i < rows30.size(); ++i) {
        CHECK(rows30[i].count_ait == rows30b[i].count_ait);
        CHECK(rows30[i].count_apt == rows30b[i].count_apt);
        CHECK(rows30[i].running_e_ait == rows30b[i].running_e_ait);
    }
}

TEST_CASE("min_increment") {
    FactorTable t = FactorTable::builtin();
    auto ait13 = min_increment(13, CensusMode::Apt, t);
    REQUIRE(ait13.has_value());
    CHECK(ait13->first == 3);
    CHECK(ait13->second == 3);

    auto apt107 = min_increment(107, CensusMode::Apt, t, 64, 4);
    REQUIRE(apt107.has_value());
    CHECK(apt107->first == 2);
    CHECK(apt107->second == 8);

    // never violates the gcd theorems
    for (int r : {5, 6, 7, 9}) {
        auto m = min_increment(r, CensusMode::Ait, t, 16);
        if (m) CHECK(std::gcd(r + m->first, m->second) % 2 == 1);
    }
    CHECK(!min_increment(13, CensusMode::Apt, t, 2));  // minimal delta is 3
}
