#ifndef TRINOM_RECORDS_HPP
#define TRINOM_RECORDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace trinom {

/// One row of a search result, mirroring the published tables: the
/// trinomial x^(r+delta) + x^s + 1 with its small-factor decomposition
/// and period bookkeeping.
struct SearchRecord {
    std::int64_t r = 0;
    std::int64_t delta = 0;
    std::int64_t s = 0;
    bool accepted = false;
    std::vector<std::string> small_factors;  // factored S, human form, sorted
    std::optional<mpz_class> f;              // rho = (2^r - 1) * f, when known
    std::int64_t rho_bits = 0;               // bit length of rho; 0 = unknown

    bool operator==(const SearchRecord& o) const {
        return r == o.r && delta == o.delta && s == o.s &&
               accepted == o.accepted && small_factors == o.small_factors &&
               f == o.f && rho_bits == o.rho_bits;
    }
};

/// One JSON object per record ("f" as decimal string or null).
std::string record_to_json(const SearchRecord& rec);
SearchRecord record_from_json(const std::string& line);

}  // namespace trinom

#endif
