#include "trinom/apt.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace trinom {

// ---------------------------------------------------------------------
// Integer factorization (trial division + Pollard-Brent rho)

bool is_probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // Miller-Rabin with the first twelve prime bases is deterministic
        // well past 2^64.
        mpz_class d = n - 1;
        unsigned long rtz = mpz_scan1(d.get_mpz_t(), 0);
        d >>= rtz;
        for (int a : small) {
            mpz_class x;
            mpz_class base = a;
            mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(),
                     n.get_mpz_t());
            if (x == 1 || x == n - 1) continue;
            bool witness = true;
            for (unsigned long i = 1; i < rtz; ++i) {
                x = x * x % n;
                if (x == n - 1) {
                    witness = false;
                    break;
                }
            }
            if (witness) return false;
        }
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

namespace {

mpz_class pollard_brent(const mpz_class& n, std::mt19937_64& rng) {
    if (n % 2 == 0) return 2;
    while (true) {
        mpz_class y = mpz_class(rng() % 1000000007) % n;
        mpz_class c = mpz_class(rng() % 1000000007) % n + 1;
        mpz_class m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (mpz_class i = 0; i < r; ++i) y = (y * y + c) % n;
            mpz_class k = 0;
            while (k < r && g == 1) {
                ys = y;
                mpz_class lim = std::min(m, mpz_class(r - k));
                for (mpz_class i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * (x > y ? x - y : y - x) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                mpz_class diff = x > ys ? x - ys : ys - x;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n) return g;
    }
}

}  // namespace

std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n) {
    if (n < 1) throw std::invalid_argument("factor_integer: n >= 1");
    std::map<mpz_class, int> found;
    std::vector<mpz_class> stack;
    mpz_class m = n;
    for (std::int64_t p = 2; p < 100000; p += (p == 2 ? 1 : 2))
        while (m % p == 0) {
            ++found[p];
            m /= p;
        }
    if (m > 1) stack.push_back(m);
    std::mt19937_64 rng(0x5eed);
    while (!stack.empty()) {
        mpz_class v = stack.back();
        stack.pop_back();
        if (v == 1) continue;
        if (is_probable_prime(v)) {
            ++found[v];
            continue;
        }
        if (mpz_perfect_power_p(v.get_mpz_t())) {
            for (unsigned long k = 2;; ++k) {
                mpz_class root;
                if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), k)) {
                    for (unsigned long i = 0; i < k; ++i) stack.push_back(root);
                    break;
                }
            }
            continue;
        }
        mpz_class d = pollard_brent(v, rng);
        stack.push_back(d);
        stack.push_back(v / d);
    }
    return {found.begin(), found.end()};
}

std::vector<mpz_class> factor_small_mersenne(std::int64_t r) {
    if (r < 1 || r > 128)
        throw std::invalid_argument(
            "factor_small_mersenne: r beyond the built-in cutoff (128); "
            "supply a factor table");
    // Split 2^r-1 into cyclotomic parts Phi_d(2), d | r, first: that
    // separates large prime factors that Pollard rho would have to find
    // the hard way (e.g. the two 61-bit primes inside 2^122-1).
    auto moebius = [](std::int64_t m) {
        int mu = 1;
        for (std::int64_t p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) return 0;
                mu = -mu;
            }
        if (m > 1) mu = -mu;
        return mu;
    };
    std::vector<mpz_class> out;
    for (std::int64_t d = 2; d <= r; ++d) {
        if (r % d) continue;
        mpz_class num = 1, den = 1;
        for (std::int64_t e = 1; e <= d; ++e) {
            if (d % e) continue;
            mpz_class part = (mpz_class(1) << static_cast<unsigned>(e)) - 1;
            int mu = moebius(d / e);
            if (mu == 1)
                num *= part;
            else if (mu == -1)
                den *= part;
        }
        for (const auto& [p, e] : factor_integer(num / den))
            for (int i = 0; i < e; ++i) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------
// FactorTable

void FactorTable::add(std::int64_t r, std::vector<mpz_class> primes) {
    if (r < 1) throw FactorTableError("factor table: exponent must be >= 1");
    mpz_class target = (mpz_class(1) << static_cast<unsigned>(r)) - 1;
    mpz_class prod = 1;
    for (const auto& p : primes) prod *= p;
    if (prod != target) {
        std::ostringstream os;
        os << "factor table: product mismatch for r = " << r;
        throw FactorTableError(os.str());
    }
    std::sort(primes.begin(), primes.end());
    Entry e;
    for (const auto& p : primes) {
        if (!e.empty() && e.back().first == p)
            ++e.back().second;
        else
            e.emplace_back(p, 1);
    }
    entries_[r] = std::move(e);
}

void FactorTable::add_mersenne_prime(std::int64_t r) {
    const auto& known = known_mersenne_exponents();
    if (!std::binary_search(known.begin(), known.end(), r))
        throw FactorTableError("not a known Mersenne exponent");
    mpz_class m = (mpz_class(1) << static_cast<unsigned>(r)) - 1;
    entries_[r] = {{m, 1}};
}

const FactorTable::Entry& FactorTable::at(std::int64_t r) const {
    auto it = entries_.find(r);
    if (it == entries_.end()) {
        std::ostringstream os;
        os << "no factorization of 2^" << r << "-1 available";
        throw MissingFactorization(os.str());
    }
    return it->second;
}

bool FactorTable::is_mersenne_prime(std::int64_t r) const {
    const Entry& e = at(r);
    if (e.size() != 1 || e[0].second != 1) return false;
    return e[0].first == (mpz_class(1) << static_cast<unsigned>(r)) - 1;
}

FactorTable FactorTable::load(std::istream& in) {
    FactorTable t;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head.size() < 2 || head.back() != ':')
            throw FactorTableError("factor table parse error at line " +
                                   std::to_string(lineno));
        std::int64_t r;
        try {
            r = std::stoll(head.substr(0, head.size() - 1));
        } catch (const std::logic_error&) {
            throw FactorTableError("factor table parse error at line " +
                                   std::to_string(lineno));
        }
        std::vector<mpz_class> ps;
        std::string tok;
        while (ls >> tok) {
            mpz_class p;
            if (mpz_set_str(p.get_mpz_t(), tok.c_str(), 10) != 0)
                throw FactorTableError("bad prime at line " +
                                       std::to_string(lineno));
            ps.push_back(p);
        }
        t.add(r, std::move(ps));
    }
    return t;
}

void FactorTable::save(std::ostream& out) const {
    for (const auto& [r, e] : entries_) {
        out << r << ":";
        for (const auto& [p, mult] : e)
            for (int i = 0; i < mult; ++i) out << " " << p;
        out << "\n";
    }
}

void FactorTable::merge(const FactorTable& other) {
    for (const auto& [r, e] : other.entries_) entries_[r] = e;
}

const std::vector<std::int64_t>& FactorTable::known_mersenne_exponents() {
    static const std::vector<std::int64_t> exps = {
        2,     3,     5,     7,      13,     17,     19,     31,
        61,    89,    107,   127,    521,    607,    1279,   2203,
        2281,  3217,  4253,  4423,   9689,   9941,   11213,  19937,
        21701, 23209, 44497, 86243,  110503, 132049, 216091, 756839,
        859433, 1257787, 1398269, 2976221, 3021377, 6972593, 13466917};
    return exps;
}

namespace {

// Published prime factors of the Fermat numbers F_j = 2^(2^j) + 1.
// Complete for j <= 8; for j = 9..11 the final prime is recovered as the
// cofactor of the known factors and certified probabilistically.
const std::vector<std::vector<const char*>>& fermat_factors() {
    static const std::vector<std::vector<const char*>> f = {
        {"3"},
        {"5"},
        {"17"},
        {"257"},
        {"65537"},
        {"641", "6700417"},
        {"274177", "67280421310721"},
        {"59649589127497217", "5704689200685129054721"},
        {"1238926361552897",
         "93461639715357977769163558199606896584051237541638188580280321"},
        {"2424833", "7455602825647884208337395736200454918783366342657"},
        {"45592577", "6487031809",
         "4659775785220018543264560743076778192897"},
        {"319489", "974849", "167988556341760475137",
         "3560841906445833920513"},
    };
    return f;
}

std::vector<mpz_class> fermat_prime_list(int j) {
    mpz_class fj = (mpz_class(1) << (1u << j)) + 1;
    std::vector<mpz_class> ps;
    mpz_class rest = fj;
    for (const char* s : fermat_factors().at(static_cast<std::size_t>(j))) {
        mpz_class p(s);
        if (rest % p != 0)
            throw FactorTableError("Fermat factor data inconsistent at F_" +
                                   std::to_string(j));
        ps.push_back(p);
        rest /= p;
    }
    if (rest != 1) {
        if (!is_probable_prime(rest))
            throw FactorTableError("F_" + std::to_string(j) +
                                   " cofactor is not prime");
        ps.push_back(rest);
    }
    return ps;
}

}  // namespace

void FactorTable::add_fermat_power(int k) {
    if (k < 1 || k > 12)
        throw std::invalid_argument("add_fermat_power: need 1 <= k <= 12");
    // 2^(2^k) - 1 = F_0 F_1 ... F_(k-1)
    std::vector<mpz_class> ps;
    for (int j = 0; j < k; ++j)
        for (const auto& p : fermat_prime_list(j)) ps.push_back(p);
    add(std::int64_t{1} << k, std::move(ps));
}

FactorTable FactorTable::builtin() {
    static const FactorTable cached = [] {
        FactorTable t;
        for (std::int64_t r = 2; r <= 128; ++r) t.add(r, factor_small_mersenne(r));
        for (std::int64_t r : known_mersenne_exponents())
            t.add_mersenne_prime(r);
        for (int k = 3; k <= 12; ++k) t.add_fermat_power(k);
        return t;
    }();
    return cached;
}

// ---------------------------------------------------------------------
// Small-polynomial factorization and periods

namespace {

std::vector<DensePoly> split_equal_degree(const DensePoly& g, std::int64_t d,
                                          std::mt19937_64& rng) {
    if (g.degree() == d) return {g};
    // char-2 equal-degree splitting via the trace map
    while (true) {
        DensePoly a;
        for (std::int64_t i = 0; i < g.degree(); ++i)
            if (rng() & 1) a.flip_coeff(i);
        if (a.is_zero()) continue;
        DensePoly tr = a, cur = a;
        for (std::int64_t j = 1; j < d; ++j) {
            cur = rem(square(cur), g);
            tr.xor_with(cur);
        }
        if (tr.is_zero()) continue;
        DensePoly h = gcd(tr, g);
        if (h.degree() <= 0 || h.degree() >= g.degree()) continue;
        auto left = split_equal_degree(h, d, rng);
        auto right = split_equal_degree(exact_div(g, h), d, rng);
        left.insert(left.end(), right.begin(), right.end());
        return left;
    }
}

}  // namespace

std::vector<DensePoly> factor_squarefree_small(const DensePoly& p) {
    if (p.is_zero() || !p.coeff(0))
        throw std::domain_error("factor_squarefree_small: need p(0) != 0");
    if (p.degree() > 64)
        throw std::domain_error("factor_squarefree_small: degree beyond 64");
    std::vector<DensePoly> out;
    DensePoly f = p;
    std::mt19937_64 rng(0x70111);
    DensePoly w = DensePoly::x();
    for (std::int64_t d = 1; 2 * d <= f.degree(); ++d) {
        w = rem(square(w), f);
        DensePoly g = gcd(f, add(w, DensePoly::x()));
        if (g.degree() > 0) {
            for (auto& q : split_equal_degree(g, d, rng)) out.push_back(q);
            f = exact_div(f, g);
            w = rem(w, f);
        }
    }
    if (f.degree() > 0) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

mpz_class order_of_x_mod_irreducible(const DensePoly& p) {
    std::int64_t d = p.degree();
    mpz_class m = (mpz_class(1) << static_cast<unsigned>(d)) - 1;
    mpz_class ord = m;
    for (const auto& [q, e] : factor_integer(m)) {
        for (int i = 0; i < e; ++i) {
            if (ord % q != 0) break;
            mpz_class cand = ord / q;
            if (powmod(DensePoly::x(), cand, p) == DensePoly::one())
                ord = cand;
            else
                break;
        }
    }
    return ord;
}

}  // namespace

mpz_class period_of_small(const DensePoly& S) {
    if (S.is_zero() || !S.coeff(0))
        throw std::domain_error("period_of_small: S divisible by x");
    if (S.degree() > 64)
        throw std::domain_error("period_of_small: degree beyond small regime");
    if (S.is_one()) return 1;
    DensePoly d = derivative(S);
    if (d.is_zero() || !gcd(S, d).is_one())
        throw std::domain_error("period_of_small: S not square-free");
    mpz_class lc = 1;
    for (const DensePoly& p : factor_squarefree_small(S)) {
        mpz_class o = order_of_x_mod_irreducible(p);
        mpz_lcm(lc.get_mpz_t(), lc.get_mpz_t(), o.get_mpz_t());
    }
    return lc;
}

mpz_class f_factor(std::int64_t r, const mpz_class& small_period) {
    mpz_class m = (mpz_class(1) << static_cast<unsigned>(r)) - 1;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), small_period.get_mpz_t(), m.get_mpz_t());
    return small_period / g;
}

// ---------------------------------------------------------------------
// Algorithm APT

AptResult apt(std::int64_t r, std::int64_t s, std::int64_t delta,
              const FactorTable& table, const AitConfig& cfg) {
    AitVerdict verdict = ait(r, s, delta, cfg);
    if (!verdict.accepted) return {std::move(verdict), std::nullopt};

    const FactorTable::Entry& entry = table.at(r);
    mpz_class m = (mpz_class(1) << static_cast<unsigned>(r)) - 1;
    Trinomial t(r + delta, s);
    const DensePoly& S = verdict.outcome->small_product;

    // When 2^r - 1 is prime the degree-r irreducible factor is
    // necessarily primitive; otherwise verify the order of x mod D.
    if (!table.is_mersenne_prime(r)) {
        for (const auto& [p, mult] : entry) {
            (void)mult;
            DensePoly g = powmod_big(DensePoly::x(), m / p, t);
            if (rem_trinomial(mul(add(g, DensePoly::one()), S), t).is_zero()) {
                verdict.accepted = false;
                verdict.reject_stage = RejectStage::Primitivity;
                return {std::move(verdict), std::nullopt};
            }
        }
    }

    PeriodInfo info;
    info.small_period = 1;
    for (const DensePoly& p : factor_squarefree_small(S)) {
        mpz_class o = order_of_x_mod_irreducible(p);
        mpz_lcm(info.small_period.get_mpz_t(), info.small_period.get_mpz_t(),
                o.get_mpz_t());
        info.small_factors.emplace_back(p, o);
    }
    info.f = f_factor(r, info.small_period);
    info.rho = m * info.f;
    return {std::move(verdict), std::move(info)};
}

SearchRecord make_apt_record(std::int64_t r, std::int64_t delta,
                             std::int64_t s, const AptResult& res) {
    SearchRecord rec;
    rec.r = r;
    rec.delta = delta;
    rec.s = s;
    rec.accepted = res.verdict.accepted;
    if (res.period) {
        for (const auto& [p, o] : res.period->small_factors)
            rec.small_factors.push_back(to_string(p));
        rec.f = res.period->f;
        rec.rho_bits = static_cast<std::int64_t>(
            mpz_sizeinbase(res.period->rho.get_mpz_t(), 2));
    }
    return rec;
}

bool verify_table_row(const SearchRecord& record, const FactorTable& table) {
    AptResult res;
    try {
        res = apt(record.r, record.s, record.delta, table);
    } catch (const std::invalid_argument&) {
        return false;
    }
    if (res.verdict.accepted != record.accepted) return false;
    if (!record.accepted) return true;
    SearchRecord fresh = make_apt_record(record.r, record.delta, record.s, res);
    // Canonicalize the stored factor strings before comparing.
    std::vector<std::string> want;
    for (const auto& fs : record.small_factors) {
        try {
            want.push_back(to_string(parse_poly(fs)));
        } catch (const PolyParseError&) {
            return false;
        }
    }
    std::sort(want.begin(), want.end());
    std::vector<std::string> got = fresh.small_factors;
    std::sort(got.begin(), got.end());
    if (want != got) return false;
    if (record.f && *record.f != *fresh.f) return false;
    if (record.rho_bits > 0 && record.rho_bits != fresh.rho_bits) return false;
    return true;
}

std::vector<SearchRecord> search_apt(std::int64_t r, std::int64_t delta,
                                     const FactorTable& table,
                                     const AitConfig& cfg, int threads) {
    table.at(r);  // fail early when the factorization is missing
    std::int64_t n = r + delta;
    std::int64_t s_max = n / 2;
    std::vector<char> accepted(static_cast<std::size_t>(s_max) + 1, 0);
    auto evaluate = [&](std::int64_t s) {
        if (!gcd_filters(n, s, true)) return false;
        return apt(r, s, delta, table, cfg).verdict.accepted;
    };
    if (threads <= 1) {
        for (std::int64_t s = 1; s <= s_max; ++s)
            accepted[static_cast<std::size_t>(s)] = evaluate(s);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                for (std::int64_t s = 1 + w; s <= s_max; s += threads)
                    accepted[static_cast<std::size_t>(s)] = evaluate(s);
            });
        for (auto& th : pool) th.join();
    }
    std::vector<SearchRecord> records;
    for (std::int64_t s = 1; s <= s_max; ++s)
        if (accepted[static_cast<std::size_t>(s)])
            records.push_back(
                make_apt_record(r, delta, s, apt(r, s, delta, table, cfg)));
    return records;
}

}  // namespace trinom
