#include "trinom/swan.hpp"

#include <gmpxx.h>

#include <stdexcept>

namespace trinom {

namespace {

// Theorem cases for n - s odd. Exactly one of even-parity cases (a)-(c)
// can hold; if none does, nu(T) is odd.
NuParity swan_theorem(std::int64_t n, std::int64_t s) {
    std::int64_t n8 = n % 8;
    if (n % 2 == 0) {
        // ns/2 mod 4 on arbitrary-precision integers: Table-1 exponents
        // overflow 32-bit products.
        mpz_class half = mpz_class(n) * mpz_class(s) / 2;
        long m4 = mpz_class(half % 4).get_si();
        if (n != 2 * s && (m4 == 0 || m4 == 1))
            return {Parity::Even, SwanRule::CaseA};
        return {Parity::Odd, SwanRule::NoCaseHolds};
    }
    if ((2 * n) % s != 0) {
        if (n8 == 3 || n8 == 5) return {Parity::Even, SwanRule::CaseB};
    } else {
        if (n8 == 1 || n8 == 7) return {Parity::Even, SwanRule::CaseC};
    }
    return {Parity::Odd, SwanRule::NoCaseHolds};
}

}  // namespace

NuParity nu_parity(std::int64_t n, std::int64_t s) {
    if (!(n > s && s > 0))
        throw std::invalid_argument("nu_parity: need n > s > 0");
    if (n % 2 == 0 && s % 2 == 0) return {Parity::Even, SwanRule::SquareCase};
    if (n % 2 == 1 && s % 2 == 1) {
        NuParity inner = swan_theorem(n, n - s);
        return {inner.parity, SwanRule::SwapCase};
    }
    return swan_theorem(n, s);
}

bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

bool corollary_filter(std::int64_t n, std::int64_t s) {
    std::int64_t n8 = n % 8;
    if (n8 != 3 && n8 != 5) return false;
    if (s == 2 || s == n - 2) return false;
    return is_prime_i64(n);
}

}  // namespace trinom
