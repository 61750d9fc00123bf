#ifndef TRINOM_SWAN_HPP
#define TRINOM_SWAN_HPP

#include <cstdint>

namespace trinom {

enum class Parity { Even, Odd };

enum class SwanRule {
    SquareCase,  // n, s both even: T is a square
    SwapCase,    // n, s both odd: reduced via s -> n - s
    CaseA,
    CaseB,
    CaseC,
    NoCaseHolds,  // parity odd
};

/// Parity of nu(T), the number of irreducible factors of x^n + x^s + 1
/// counted with multiplicity, together with the rule that decided it.
struct NuParity {
    Parity parity;
    SwanRule rule_applied;
};

NuParity nu_parity(std::int64_t n, std::int64_t s);

/// True iff the trinomial is certainly reducible: n prime, n = +-3 mod 8,
/// s not in {2, n-2}.
bool corollary_filter(std::int64_t n, std::int64_t s);

/// Deterministic trial-division primality test (64-bit range).
bool is_prime_i64(std::int64_t n);

}  // namespace trinom

#endif
