#include "trinom/density.hpp"

#include <numeric>
#include <thread>

namespace trinom {

namespace {

int mobius(std::int64_t n) {
    int k = 0;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++k;
        }
    if (n > 1) ++k;
    return k % 2 == 0 ? 1 : -1;
}

}  // namespace

mpz_class irreducible_count(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("irreducible_count: n >= 1");
    mpz_class sum = 0;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) {
            mpz_class term = (mpz_class(1) << static_cast<unsigned>(n / d)) - 1;
            sum += mobius(d) * term;
        }
    return sum / n;
}

mpz_class primitive_count(std::int64_t n, const FactorTable& table) {
    mpz_class phi = 1;
    for (const auto& [p, e] : table.at(n)) {
        phi *= p - 1;
        for (int i = 1; i < e; ++i) phi *= p;
    }
    return phi / n;
}

mpz_class almost_irreducible_poly_count(std::int64_t r, std::int64_t delta) {
    if (delta < 0 || delta >= r)
        throw std::invalid_argument(
            "almost_irreducible_poly_count: need 0 <= delta < r");
    return irreducible_count(r) << static_cast<unsigned>(std::max<std::int64_t>(0, delta - 1));
}

std::optional<std::int64_t> largest_factor_profile(std::int64_t n,
                                                   std::int64_t s,
                                                   DensePoly* small_out) {
    if (s <= 0 || s >= n)
        throw std::invalid_argument("largest_factor_profile: need 0 < s < n");
    if (std::gcd(n, s) % 2 == 0) return std::nullopt;  // T is a square
    DensePoly f = Trinomial(n, s).dense();
    DensePoly removed = DensePoly::one();
    DensePoly w = DensePoly::x();
    std::int64_t R = n;
    for (std::int64_t i = 1; 2 * i <= R; ++i) {
        w = rem(square(w), f);
        DensePoly g = gcd(f, add(w, DensePoly::x()));
        if (g.degree() > 0) {
            f = exact_div(f, g);
            w = rem(w, f);
            removed = mul(removed, g);
            R = f.degree();
            if (2 * R <= n) return std::nullopt;
        }
    }
    // every factor of f has degree > R/2, so f is irreducible
    if (small_out) *small_out = removed;
    return R;
}

namespace {

// -1 unknown (missing factorization), 0 not primitive, 1 primitive
int cofactor_primitive(std::int64_t n, std::int64_t s, std::int64_t r,
                       const DensePoly& S, const FactorTable& table) {
    if (!table.has(r)) return -1;
    if (table.is_mersenne_prime(r)) return 1;
    Trinomial t(n, s);
    mpz_class m = (mpz_class(1) << static_cast<unsigned>(r)) - 1;
    for (const auto& [p, e] : table.at(r)) {
        (void)e;
        DensePoly g = powmod_big(DensePoly::x(), m / p, t);
        g.flip_coeff(0);
        if (rem_trinomial(mul(g, S), t).is_zero()) return 0;
    }
    return 1;
}

CensusRow census_row(std::int64_t n, CensusMode mode,
                     const FactorTable& table) {
    CensusRow row;
    row.n = n;
    for (std::int64_t s = 1; 2 * s <= n; ++s) {
        std::int64_t weight = (2 * s == n) ? 1 : 2;
        DensePoly S;
        auto r = largest_factor_profile(n, s, &S);
        if (!r) continue;
        row.count_ait += weight;
        if (mode == CensusMode::Apt) {
            int prim = cofactor_primitive(n, s, *r, S, table);
            if (prim < 0)
                row.apt_known = false;
            else if (prim > 0)
                row.count_apt += weight;
        }
    }
    return row;
}

}  // namespace

std::vector<CensusRow> census(std::int64_t n_max, CensusMode mode,
                              const FactorTable& table, int threads) {
    if (n_max < 2) throw std::invalid_argument("census: n_max >= 2");
    std::vector<CensusRow> rows(static_cast<std::size_t>(n_max - 1));
    auto work = [&](std::int64_t first, std::int64_t stride) {
        for (std::int64_t n = first; n <= n_max; n += stride)
            rows[static_cast<std::size_t>(n - 2)] = census_row(n, mode, table);
    };
    if (threads <= 1) {
        work(2, 1);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back(work, 2 + w, threads);
        for (auto& th : pool) th.join();
    }
    mpz_class sum_ait = 0, sum_apt = 0;
    for (auto& row : rows) {
        sum_ait += row.count_ait;
        sum_apt += row.count_apt;
        mpz_class denom = mpz_class(row.n) * (row.n - 1);
        row.running_e_ait = mpq_class(2 * sum_ait, denom);
        row.running_e_ait.canonicalize();
        row.running_e_apt = mpq_class(2 * sum_apt, denom);
        row.running_e_apt.canonicalize();
    }
    return rows;
}

std::optional<std::pair<std::int64_t, std::int64_t>> min_increment(
    std::int64_t r, CensusMode mode, const FactorTable& table,
    std::int64_t delta_cap, int threads) {
    auto accepted = [&](std::int64_t s, std::int64_t delta) {
        if (!gcd_filters(r + delta, s, mode == CensusMode::Apt)) return false;
        if (mode == CensusMode::Ait) return ait(r, s, delta).accepted;
        return apt(r, s, delta, table).verdict.accepted;
    };
    for (std::int64_t delta = 0; delta <= delta_cap; ++delta) {
        if (delta == 1) continue;  // a degree-1 factor would need even weight
        std::int64_t s_max = (r + delta) / 2;
        if (threads <= 1) {
            for (std::int64_t s = 1; s <= s_max; ++s)
                if (accepted(s, delta)) return std::make_pair(delta, s);
        } else {
            std::vector<char> hits(static_cast<std::size_t>(s_max) + 1, 0);
            std::vector<std::thread> pool;
            for (int w = 0; w < threads; ++w)
                pool.emplace_back([&, w] {
                    for (std::int64_t s = 1 + w; s <= s_max; s += threads)
                        hits[static_cast<std::size_t>(s)] = accepted(s, delta);
                });
            for (auto& th : pool) th.join();
            for (std::int64_t s = 1; s <= s_max; ++s)
                if (hits[static_cast<std::size_t>(s)])
                    return std::make_pair(delta, s);
        }
    }
    return std::nullopt;
}

}  // namespace trinom
