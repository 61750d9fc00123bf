#ifndef TRINOM_DENSITY_HPP
#define TRINOM_DENSITY_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "trinom/apt.hpp"

namespace trinom {

/// Number of irreducible polynomials of degree n over GF(2), excluding x:
/// I_n = (1/n) sum_{d|n} mu(d) (2^(n/d) - 1).
mpz_class irreducible_count(std::int64_t n);

/// Number of primitive polynomials of degree n: P_n = phi(2^n - 1)/n.
mpz_class primitive_count(std::int64_t n, const FactorTable& table);

/// Number of polynomials of degree r + delta with P(0) != 0 having an
/// irreducible factor of degree exactly r: 2^max(0, delta-1) * I_r.
/// Requires 0 <= delta < r.
mpz_class almost_irreducible_poly_count(std::int64_t r, std::int64_t delta);

/// The exponent r > n/2 such that x^n + x^s + 1 has an irreducible factor
/// of degree r (unique when it exists), or nullopt. `small_out`, when
/// non-null, receives the cofactor of that factor.
std::optional<std::int64_t> largest_factor_profile(std::int64_t n,
                                                   std::int64_t s,
                                                   DensePoly* small_out = nullptr);

enum class CensusMode { Ait, Apt };

struct CensusRow {
    std::int64_t n = 0;
    std::int64_t count_ait = 0;
    std::int64_t count_apt = 0;
    mpq_class running_e_ait;
    mpq_class running_e_apt;
    bool apt_known = true;  // false when 2^r-1 factorizations were missing
};

/// Rows for n = 2..n_max. count_ait(n) counts s in (0, n) whose trinomial
/// is almost irreducible; in Apt mode count_apt additionally requires the
/// degree-r factor to be primitive. Rows needing a missing factorization
/// are marked apt_known = false instead of aborting.
std::vector<CensusRow> census(std::int64_t n_max, CensusMode mode,
                              const FactorTable& table, int threads = 1);

/// Smallest delta (0 or >= 2, up to delta_cap) admitting an accepted s for
/// exponent r, with the smallest such s.
std::optional<std::pair<std::int64_t, std::int64_t>> min_increment(
    std::int64_t r, CensusMode mode, const FactorTable& table,
    std::int64_t delta_cap = 64, int threads = 1);

}  // namespace trinom

#endif
