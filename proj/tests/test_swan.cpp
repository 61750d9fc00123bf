#include "doctest.h"

#include "oracle.hpp"
#include "trinom/swan.hpp"

using namespace trinom;

TEST_CASE("nu_parity worked cases") {
    NuParity p = nu_parity(16, 3);
    CHECK(p.parity == Parity::Even);  // case a: ns/2 = 24 = 0 mod 4
    CHECK(p.rule_applied == SwanRule::CaseA);
    CHECK(nu_parity(13, 4).parity == Parity::Even);  // reducible per Cor. 1
    CHECK(nu_parity(6, 2).rule_applied == SwanRule::SquareCase);
    CHECK(nu_parity(13, 3).rule_applied == SwanRule::SwapCase);
    CHECK_THROWS(nu_parity(5, 5));
    CHECK_THROWS(nu_parity(5, 0));
}

TEST_CASE("nu_parity reciprocal invariance") {
    for (int n = 2; n <= 40; ++n)
        for (int s = 1; s < n; ++s)
            CHECK(nu_parity(n, s).parity == nu_parity(n, n - s).parity);
}

TEST_CASE("nu_parity equals brute-force factor-count parity, n <= 30") {
    for (int n = 2; n <= 30; ++n)
        for (int s = 1; s < n; ++s) {
            auto fs = oracle::factor(oracle::trinomial(n, s));
            Parity want = fs.size() % 2 == 0 ? Parity::Even : Parity::Odd;
            CAPTURE(n);
            CAPTURE(s);
            CHECK(nu_parity(n, s).parity == want);
            if (nu_parity(n, s).parity == Parity::Odd) {
                // odd parity excludes a perfect square
                bool square = true;
                for (std::size_t i = 0; i + 1 < fs.size() && square; i += 2)
                    square = fs[i] == fs[i + 1];
                square = square && fs.size() % 2 == 0;
                CHECK(!square);
            }
        }
}

TEST_CASE("corollary_filter") {
    CHECK(corollary_filter(13, 4));
    CHECK(!corollary_filter(13, 2));
    CHECK(!corollary_filter(13, 11));
    CHECK(!corollary_filter(17, 3));  // 17 = 1 mod 8
    CHECK(!corollary_filter(15, 4));  // composite n
    // filtered pairs really are reducible
    for (int n = 2; n <= 30; ++n)
        for (int s = 1; s < n; ++s)
            if (corollary_filter(n, s))
                CHECK(oracle::factor(oracle::trinomial(n, s)).size() > 1);
}
