#ifndef TRINOM_AIT_HPP
#define TRINOM_AIT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "trinom/gf2poly.hpp"
#include "trinom/records.hpp"
#include "trinom/swan.hpp"

namespace trinom {

/// Result of the sieving pass: S, d, k and the per-iteration factor degrees.
struct SieveOutcome {
    DensePoly small_product = DensePoly::one();    // S
    std::int64_t degree_sum = 0;                   // d
    std::int64_t factor_count = 0;                 // k
    std::map<std::int64_t, std::int64_t> per_degree;  // i -> g_i
    bool curtailed = false;
};

struct AitConfig {
    std::optional<std::int64_t> sieve_bound;  // B; formula default when unset
    bool use_mersenne_variant = false;
    bool use_curtailment = true;
};

enum class RejectStage {
    None,
    DeltaOne,
    GcdEven,
    Sieve,
    Curtail,
    ParityOrDegree,
    SmallFactorBound,
    FullTest,
    SubfieldTest,
    Primitivity,  // APT order check (never set by ait itself)
};

const char* to_string(RejectStage st);

struct AitVerdict {
    bool accepted = false;
    RejectStage reject_stage = RejectStage::None;
    std::optional<SieveOutcome> outcome;  // present when sieving ran
};

/// B = min(r-1, max(delta, 4 + floor(log2 r))).
std::int64_t default_sieve_bound(std::int64_t r, std::int64_t delta);

/// Decides whether x^(r+delta) + x^s + 1 has an irreducible factor of
/// degree exactly r.
AitVerdict ait(std::int64_t r, std::int64_t s, std::int64_t delta,
               const AitConfig& cfg = {});

/// Variant for Mersenne-exponent r: accumulates the period multiple
/// F = lcm(2^d_j - 1) instead of the polynomial S. Requires r prime.
AitVerdict ait_mersenne(std::int64_t r, std::int64_t s, std::int64_t delta,
                        const AitConfig& cfg = {});

/// F = lcm(2^i - 1) over the sieved factor degrees.
mpz_class sieve_period_multiple(const SieveOutcome& outcome);

/// True (= can stop sieving early, verdict false) given the partial sieve
/// state d_hat, k_hat after degree dhat_bound.
bool curtail_check(std::int64_t dhat, std::int64_t khat,
                   std::int64_t dhat_bound, std::int64_t delta,
                   Parity nu_parity);

/// gcd(n,s) odd always required; gcd(n,s) = 1 when targeting primitivity.
bool gcd_filters(std::int64_t n, std::int64_t s, bool primitive_target);

/// Nontrivial gcd of x^n + x^s + 1 with x^m + 1, computed without
/// materializing the degree-n trinomial. Returns the forced factor, or
/// nullopt as the certificate that T shares no factor with x^m + 1.
std::optional<DensePoly> cyclotomic_filter(std::int64_t n, std::int64_t s,
                                           std::int64_t m);

/// Moduli 2^d - 1 for d <= 8: detect any forced factor of degree <= 8.
extern const std::vector<std::int64_t> kCyclotomicModuli;

/// All accepted s with 2s <= r + delta, ascending. Records carry the
/// factored S; f and rho are filled only at the APT level.
std::vector<SearchRecord> search_ait(std::int64_t r, std::int64_t delta,
                                     const AitConfig& cfg = {},
                                     int threads = 1);

}  // namespace trinom

#endif
