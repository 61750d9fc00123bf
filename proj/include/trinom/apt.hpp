#ifndef TRINOM_APT_HPP
#define TRINOM_APT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "trinom/ait.hpp"
#include "trinom/gf2poly.hpp"
#include "trinom/records.hpp"

namespace trinom {

struct MissingFactorization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FactorTableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complete prime factorizations of 2^r - 1, validated on insertion.
class FactorTable {
public:
    using Entry = std::vector<std::pair<mpz_class, int>>;  // (prime, mult)

    /// Validates product == 2^r - 1; primes need not be pre-sorted.
    void add(std::int64_t r, std::vector<mpz_class> primes_with_repetition);
    void add_mersenne_prime(std::int64_t r);  // singleton 2^r - 1
    /// Entry for r = 2^k from the published Fermat-number factorizations,
    /// 3 <= k <= 12.
    void add_fermat_power(int k);

    bool has(std::int64_t r) const { return entries_.count(r) != 0; }
    const Entry& at(std::int64_t r) const;
    const std::map<std::int64_t, Entry>& entries() const { return entries_; }
    /// True when the entry is the single prime 2^r - 1.
    bool is_mersenne_prime(std::int64_t r) const;

    /// "r: p1 p2 p3 ..." lines, '#' comments.
    static FactorTable load(std::istream& in);
    void save(std::ostream& out) const;
    void merge(const FactorTable& other);

    /// Known Mersenne exponents (2^r - 1 prime), ascending.
    static const std::vector<std::int64_t>& known_mersenne_exponents();

    /// Mersenne-prime singletons, all r <= 128 via the built-in
    /// factorizer, and the Fermat powers r = 2^k, k <= 12.
    static FactorTable builtin();

private:
    std::map<std::int64_t, Entry> entries_;
};

/// Complete factorization of 2^r - 1 (primes with repetition, ascending)
/// by trial division and Pollard rho; r <= 128.
std::vector<mpz_class> factor_small_mersenne(std::int64_t r);

bool is_probable_prime(const mpz_class& n);
std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n);

/// Irreducible factors of a square-free polynomial with p(0) != 0, by
/// distinct-degree splitting; sorted. Degree <= 64.
std::vector<DensePoly> factor_squarefree_small(const DensePoly& p);

/// Exact multiplicative order of x mod S (S square-free, S(0) != 0,
/// deg S <= 64).
mpz_class period_of_small(const DensePoly& S);

/// f = small_period / gcd(small_period, 2^r - 1), so that
/// rho = (2^r - 1) f = lcm(2^r - 1, small_period).
mpz_class f_factor(std::int64_t r, const mpz_class& small_period);

/// Period bookkeeping for an accepted trinomial.
struct PeriodInfo {
    mpz_class rho;
    mpz_class f;
    mpz_class small_period;
    std::vector<std::pair<DensePoly, mpz_class>> small_factors;
};

struct AptResult {
    AitVerdict verdict;
    std::optional<PeriodInfo> period;  // present iff accepted
};

/// Algorithm APT: AIT acceptance plus primitivity of the degree-r factor.
AptResult apt(std::int64_t r, std::int64_t s, std::int64_t delta,
              const FactorTable& table, const AitConfig& cfg = {});

/// Record with factored S, f and rho_bits filled from the APT run.
SearchRecord make_apt_record(std::int64_t r, std::int64_t delta,
                             std::int64_t s, const AptResult& res);

/// Re-runs apt for the row and checks verdict, S factorization and f.
bool verify_table_row(const SearchRecord& record, const FactorTable& table);

/// Accepted s with 2s <= r + delta at the APT level, ascending.
std::vector<SearchRecord> search_apt(std::int64_t r, std::int64_t delta,
                                     const FactorTable& table,
                                     const AitConfig& cfg = {},
                                     int threads = 1);

}  // namespace trinom

#endif
