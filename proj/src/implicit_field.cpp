#include "trinom/implicit_field.hpp"

#include <sstream>

namespace trinom {

std::shared_ptr<const RingContext> RingContext::create(std::int64_t r,
                                                       std::int64_t s,
                                                       std::int64_t delta) {
    AitVerdict v = ait(r, s, delta);
    if (!v.accepted) {
        std::ostringstream os;
        os << "x^" << (r + delta) << "+x^" << s << "+1 has no irreducible "
           << "factor of degree " << r << " (rejected at "
           << to_string(v.reject_stage) << ")";
        throw CertificationError(os.str());
    }
    return std::shared_ptr<const RingContext>(new RingContext(
        Trinomial(r + delta, s), v.outcome->small_product, r));
}

RingElement RingContext::element(DensePoly value) const {
    return RingElement(shared_from_this(), std::move(value));
}

RingElement RingContext::zero() const { return element(DensePoly::zero()); }
RingElement RingContext::one() const { return element(DensePoly::one()); }
RingElement RingContext::x() const { return element(DensePoly::x()); }

RingElement::RingElement(RingContextPtr ctx, DensePoly value)
    : ctx_(std::move(ctx)), value_(std::move(value)) {
    if (value_.degree() >= ctx_->degree())
        value_ = rem_trinomial(value_, ctx_->trinomial());
}

namespace {

void require_same(const RingElement& a, const RingElement& b) {
    if (!a.context()->same_as(*b.context()))
        throw ContextMismatch("ring elements belong to different contexts");
}

}  // namespace

RingElement canonicalize(const RingElement& a) {
    const RingContext& c = *a.context();
    DensePoly as = rem_trinomial(mul(a.value(), c.small()), c.trinomial());
    return a.context()->element(exact_div(as, c.small()));
}

RingElement ring_add(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    return a.context()->element(add(a.value(), b.value()));
}

RingElement ring_mul(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    return a.context()->element(
        rem_trinomial(mul(a.value(), b.value()), a.context()->trinomial()));
}

RingElement ring_pow(const RingElement& a, const mpz_class& e) {
    if (e == 0) return a.context()->one();
    RingElement acc = a;
    mp_bitcnt_t top = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (mp_bitcnt_t i = top - 1; i-- > 0;) {
        acc = ring_mul(acc, acc);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = ring_mul(acc, a);
    }
    return acc;
}

bool field_equal(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    // (a - b) S == 0 mod T  <=>  D | a - b
    const RingContext& c = *a.context();
    DensePoly diff = add(a.value(), b.value());
    return rem_trinomial(mul(diff, c.small()), c.trinomial()).is_zero();
}

mpz_class ring_order_of_x(const RingContext& ctx, const FactorTable& table) {
    std::int64_t r = ctx.exponent();
    const Trinomial& t = ctx.trinomial();
    const DensePoly& S = ctx.small();
    // x^e == 1 mod D  <=>  (x^e + 1) S == 0 mod T
    auto is_one_mod_d = [&](const mpz_class& e) {
        DensePoly g = powmod_big(DensePoly::x(), e, t);
        g.flip_coeff(0);
        return rem_trinomial(mul(g, S), t).is_zero();
    };
    mpz_class ord = (mpz_class(1) << static_cast<unsigned>(r)) - 1;
    for (const auto& [q, e] : table.at(r)) {
        for (int i = 0; i < e; ++i) {
            if (ord % q != 0) break;
            mpz_class cand = ord / q;
            if (is_one_mod_d(cand))
                ord = cand;
            else
                break;
        }
    }
    mpz_class sp = S.is_one() ? mpz_class(1) : period_of_small(S);
    mpz_class rho;
    mpz_lcm(rho.get_mpz_t(), ord.get_mpz_t(), sp.get_mpz_t());
    return rho;
}

std::vector<bool> lfsr_stream(const RingContext& ctx,
                              const std::vector<bool>& seed,
                              std::int64_t count) {
    std::int64_t n = ctx.degree(), s = ctx.trinomial().s;
    if (static_cast<std::int64_t>(seed.size()) != n)
        throw std::invalid_argument("lfsr_stream: seed length must be n");
    bool any = false;
    for (bool b : seed) any = any || b;
    if (!any) throw std::invalid_argument("lfsr_stream: zero seed");
    std::vector<bool> u(seed);
    u.reserve(seed.size() + static_cast<std::size_t>(count));
    std::vector<bool> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = n; k < n + count; ++k) {
        bool bit = u[static_cast<std::size_t>(k - s)] ^
                   u[static_cast<std::size_t>(k - n)];
        u.push_back(bit);
        out.push_back(bit);
    }
    return out;
}

std::vector<bool> project_seed(const RingContext& ctx,
                               const std::vector<bool>& seed) {
    std::int64_t n = ctx.degree(), s = ctx.trinomial().s;
    std::int64_t d = ctx.small().degree();
    if (static_cast<std::int64_t>(seed.size()) != n)
        throw std::invalid_argument("project_seed: seed length must be n");
    // run the recurrence delta steps past the seed, then convolve with the
    // reversed small factor
    std::vector<bool> u(seed);
    for (std::int64_t k = n; k < n + d; ++k)
        u.push_back(u[static_cast<std::size_t>(k - s)] ^
                    u[static_cast<std::size_t>(k - n)]);
    std::vector<bool> v(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        bool bit = false;
        for (std::int64_t j = 0; j <= d; ++j)
            if (ctx.small().coeff(d - j))
                bit = bit ^ u[static_cast<std::size_t>(k + j)];
        v[static_cast<std::size_t>(k)] = bit;
    }
    return v;
}

}  // namespace trinom
