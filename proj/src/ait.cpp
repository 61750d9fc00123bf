#include "trinom/ait.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "trinom/apt.hpp"

namespace trinom {

namespace {

std::vector<std::int64_t> distinct_prime_factors(std::int64_t n) {
    std::vector<std::int64_t> ps;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

AitVerdict rejected(RejectStage st) { return {false, st, std::nullopt}; }
AitVerdict rejected(RejectStage st, SieveOutcome out) {
    return {false, st, std::move(out)};
}

AitVerdict ait_impl(std::int64_t r, std::int64_t s, std::int64_t delta,
                    const AitConfig& cfg, bool mersenne) {
    if (r < 1 || delta < 0 || delta >= r)
        throw std::invalid_argument("ait: need 0 <= delta < r");
    std::int64_t n = r + delta;
    if (s <= 0 || s >= n)
        throw std::invalid_argument("ait: need 0 < s < r + delta");
    if (mersenne && !is_prime_i64(r))
        throw std::invalid_argument("ait_mersenne: r must be prime");
    if (delta == 1) return rejected(RejectStage::DeltaOne);
    if (std::gcd(n, s) % 2 == 0) return rejected(RejectStage::GcdEven);

    Parity nu = nu_parity(n, s).parity;
    int nu2 = nu == Parity::Odd ? 1 : 0;
    std::int64_t bound = cfg.sieve_bound ? *cfg.sieve_bound
                                         : default_sieve_bound(r, delta);
    if (bound < delta || bound >= r)
        throw std::invalid_argument("ait: sieve bound outside [delta, r)");

    Trinomial t(n, s);
    DensePoly big = t.dense();
    const DensePoly x = DensePoly::x();

    SieveOutcome out;
    Pow2Chain chain(t);

    // Checkpoints x^(2^(r/p)) for the subfield tests; some lie inside the
    // sieve range, so capture them as the chain passes.
    std::vector<std::int64_t> subs;
    for (std::int64_t p : distinct_prime_factors(r))
        if (p != r) subs.push_back(r / p);
    std::sort(subs.begin(), subs.end());
    std::vector<DensePoly> sub_res(subs.size());
    auto note_sub = [&](std::int64_t i, const DensePoly& v) {
        for (std::size_t j = 0; j < subs.size(); ++j)
            if (subs[j] == i) sub_res[j] = v;
    };

    auto prior_degrees = [&](std::int64_t i, std::int64_t upto) {
        std::int64_t sum = 0;
        for (const auto& [j, gj] : out.per_degree)
            if (j <= upto && i % j == 0) sum += gj;
        return sum;
    };

    // Step 2: sieve out all irreducible factors of degree <= delta.
    for (std::int64_t i = 2; i <= delta; ++i) {
        const DensePoly& v = chain.advance_to(i);
        note_sub(i, v);
        DensePoly g = gcd(big, add(v, x));
        std::int64_t gi;
        if (mersenne) {
            gi = g.degree() - prior_degrees(i, i - 1);
        } else {
            DensePoly fresh = exact_div(g, gcd(g, out.small_product));
            gi = fresh.degree();
            if (gi > 0) out.small_product = mul(fresh, out.small_product);
        }
        if (gi > 0) {
            out.per_degree[i] = gi;
            out.degree_sum += gi;
            out.factor_count += gi / i;
        }
        if (out.degree_sum > delta)
            return rejected(RejectStage::Sieve, std::move(out));
        if (cfg.use_curtailment && i < delta &&
            curtail_check(out.degree_sum, out.factor_count, i, delta, nu)) {
            out.curtailed = true;
            return rejected(RejectStage::Curtail, std::move(out));
        }
    }

    // Step 3: d and k must be compatible with a degree-r factor.
    if (out.degree_sum != delta || out.factor_count % 2 == nu2)
        return rejected(RejectStage::ParityOrDegree, std::move(out));

    // Step 4: any factor found past delta makes T/S reducible.
    for (std::int64_t i = delta + 1; i <= bound; ++i) {
        const DensePoly& v = chain.advance_to(i);
        note_sub(i, v);
        DensePoly g = gcd(big, add(v, x));
        if (mersenne) {
            if (g.degree() > prior_degrees(i, delta))
                return rejected(RejectStage::SmallFactorBound, std::move(out));
        } else {
            if (!g.is_one() && !rem(out.small_product, g).is_zero())
                return rejected(RejectStage::SmallFactorBound, std::move(out));
        }
    }

    if (mersenne) {
        // Step 5, Mersenne form: (x^F)^(2^r) = x^F mod T.
        mpz_class f_mult = sieve_period_multiple(out);
        DensePoly y0 = powmod_big(x, f_mult, t);
        DensePoly y = y0;
        for (std::int64_t j = 0; j < r; ++j) y = rem_trinomial(square(y), t);
        if (y != y0) return rejected(RejectStage::FullTest, std::move(out));
        // Step 6 is trivial: r is prime.
        return {true, RejectStage::None, std::move(out)};
    }

    // Pick up the checkpoints past the sieve range on the way to r.
    for (std::size_t j = 0; j < subs.size(); ++j)
        if (subs[j] > bound) sub_res[j] = chain.advance_to(subs[j]);
    const DensePoly& u = chain.advance_to(r);

    // Step 5: full test of the cofactor, performed mod T.
    if (!rem_trinomial(mul(add(u, x), out.small_product), t).is_zero())
        return rejected(RejectStage::FullTest, std::move(out));

    // Step 6: the degree-r factor must not live in a proper subfield.
    for (std::size_t j = 0; j < subs.size(); ++j) {
        DensePoly w = rem_trinomial(mul(add(sub_res[j], x), out.small_product), t);
        DensePoly g = w.is_zero() ? big : gcd(w, big);
        if (g != out.small_product)
            return rejected(RejectStage::SubfieldTest, std::move(out));
    }

    return {true, RejectStage::None, std::move(out)};
}

}  // namespace

const char* to_string(RejectStage st) {
    switch (st) {
        case RejectStage::None: return "None";
        case RejectStage::DeltaOne: return "DeltaOne";
        case RejectStage::GcdEven: return "GcdEven";
        case RejectStage::Sieve: return "Sieve";
        case RejectStage::Curtail: return "Curtail";
        case RejectStage::ParityOrDegree: return "ParityOrDegree";
        case RejectStage::SmallFactorBound: return "SmallFactorBound";
        case RejectStage::FullTest: return "FullTest";
        case RejectStage::SubfieldTest: return "SubfieldTest";
        case RejectStage::Primitivity: return "Primitivity";
    }
    return "?";
}

std::int64_t default_sieve_bound(std::int64_t r, std::int64_t delta) {
    if (r < 2 || delta < 0 || delta >= r)
        throw std::invalid_argument("default_sieve_bound: need 0 <= delta < r");
    std::int64_t log2r = 63 - std::countl_zero(static_cast<std::uint64_t>(r));
    return std::min(r - 1, std::max(delta, 4 + log2r));
}

AitVerdict ait(std::int64_t r, std::int64_t s, std::int64_t delta,
               const AitConfig& cfg) {
    return ait_impl(r, s, delta, cfg, false);
}

AitVerdict ait_mersenne(std::int64_t r, std::int64_t s, std::int64_t delta,
                        const AitConfig& cfg) {
    return ait_impl(r, s, delta, cfg, true);
}

mpz_class sieve_period_multiple(const SieveOutcome& outcome) {
    mpz_class f = 1;
    for (const auto& [i, gi] : outcome.per_degree) {
        if (gi <= 0) continue;
        mpz_class m = (mpz_class(1) << static_cast<unsigned>(i)) - 1;
        mpz_lcm(f.get_mpz_t(), f.get_mpz_t(), m.get_mpz_t());
    }
    return f;
}

bool curtail_check(std::int64_t dhat, std::int64_t khat,
                   std::int64_t dhat_bound, std::int64_t delta,
                   Parity nu_parity) {
    if (dhat < delta && delta < dhat + dhat_bound + 1) return true;
    int nu2 = nu_parity == Parity::Odd ? 1 : 0;
    if (khat % 2 != nu2 && dhat < delta && delta < dhat + 2 * (dhat_bound + 1))
        return true;
    return false;
}

bool gcd_filters(std::int64_t n, std::int64_t s, bool primitive_target) {
    std::int64_t g = std::gcd(n, s);
    if (g % 2 == 0) return false;
    if (primitive_target && g != 1) return false;
    return true;
}

const std::vector<std::int64_t> kCyclotomicModuli = {3, 7, 15, 31, 63, 127, 255};

std::optional<DensePoly> cyclotomic_filter(std::int64_t n, std::int64_t s,
                                           std::int64_t m) {
    if (m < 1 || m > (1 << 20))
        throw std::invalid_argument("cyclotomic_filter: bad modulus");
    DensePoly tm = trinomial_mod_cyclic(n, s, m);
    DensePoly cyc = DensePoly::from_exponents({m, 0});
    DensePoly g = tm.is_zero() ? cyc : gcd(tm, cyc);
    if (g.is_one()) return std::nullopt;
    return g;
}

std::vector<SearchRecord> search_ait(std::int64_t r, std::int64_t delta,
                                     const AitConfig& cfg, int threads) {
    if (delta < 0) throw std::invalid_argument("search_ait: delta >= 0");
    std::int64_t n = r + delta;
    std::int64_t s_max = n / 2;  // canonical half: 2s <= r + delta

    auto evaluate = [&](std::int64_t s) {
        return cfg.use_mersenne_variant ? ait_mersenne(r, s, delta, cfg)
                                        : ait(r, s, delta, cfg);
    };

    std::vector<char> accepted(static_cast<std::size_t>(s_max) + 1, 0);
    if (threads <= 1) {
        for (std::int64_t s = 1; s <= s_max; ++s)
            accepted[static_cast<std::size_t>(s)] = evaluate(s).accepted;
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                for (std::int64_t s = 1 + w; s <= s_max; s += threads)
                    accepted[static_cast<std::size_t>(s)] = evaluate(s).accepted;
            });
        for (auto& th : pool) th.join();
    }

    std::vector<SearchRecord> records;
    for (std::int64_t s = 1; s <= s_max; ++s) {
        if (!accepted[static_cast<std::size_t>(s)]) continue;
        // Re-run the plain variant so the record carries S even when the
        // search itself used the Mersenne variant.
        AitVerdict v = ait(r, s, delta, cfg);
        SearchRecord rec;
        rec.r = r;
        rec.delta = delta;
        rec.s = s;
        rec.accepted = true;
        for (const DensePoly& p :
             factor_squarefree_small(v.outcome->small_product))
            rec.small_factors.push_back(to_string(p));
        std::sort(rec.small_factors.begin(), rec.small_factors.end());
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace trinom
