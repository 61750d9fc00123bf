#ifndef TRINOM_IMPLICIT_FIELD_HPP
#define TRINOM_IMPLICIT_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "trinom/apt.hpp"
#include "trinom/gf2poly.hpp"

namespace trinom {

struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContextMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class RingElement;

/// Redundant representation of GF(2^r) as Z2[x]/T(x) with T = S*D,
/// deg S = delta and D irreducible of degree r. D itself is never
/// computed; all field-level operations go through S.
class RingContext : public std::enable_shared_from_this<RingContext> {
public:
    /// Certifies that x^(r+delta) + x^s + 1 has an irreducible factor of
    /// degree exactly r and recovers S from the sieve.
    static std::shared_ptr<const RingContext> create(std::int64_t r,
                                                     std::int64_t s,
                                                     std::int64_t delta);

    const Trinomial& trinomial() const { return trinomial_; }
    const DensePoly& small() const { return small_; }
    std::int64_t exponent() const { return exponent_; }
    std::int64_t degree() const { return trinomial_.n; }
    std::int64_t delta() const { return trinomial_.n - exponent_; }

    RingElement element(DensePoly value) const;
    RingElement zero() const;
    RingElement one() const;
    RingElement x() const;

    bool same_as(const RingContext& o) const {
        return trinomial_.n == o.trinomial_.n && trinomial_.s == o.trinomial_.s &&
               exponent_ == o.exponent_;
    }

private:
    RingContext(Trinomial t, DensePoly s, std::int64_t r)
        : trinomial_(t), small_(std::move(s)), exponent_(r) {}

    Trinomial trinomial_;
    DensePoly small_;
    std::int64_t exponent_;
};

using RingContextPtr = std::shared_ptr<const RingContext>;

/// Residue mod T; not kept canonical. The element A represents
/// A mod D in the field, recovered by canonicalize.
class RingElement {
public:
    RingElement(RingContextPtr ctx, DensePoly value);

    const DensePoly& value() const { return value_; }
    const RingContextPtr& context() const { return ctx_; }

    bool operator==(const RingElement& o) const {
        return ctx_->same_as(*o.ctx_) && value_ == o.value_;
    }

private:
    RingContextPtr ctx_;
    DensePoly value_;
};

/// A_c = (A*S mod T)/S: the unique representative of A mod D with
/// degree < r. O(delta * r) word work; the division is always exact.
RingElement canonicalize(const RingElement& a);

RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_mul(const RingElement& a, const RingElement& b);
RingElement ring_pow(const RingElement& a, const mpz_class& e);

/// canonicalize(a) == canonicalize(b), i.e. equality in GF(2^r).
bool field_equal(const RingElement& a, const RingElement& b);

/// Exact period rho of T: lcm of the order of x mod D (found by descent
/// from 2^r - 1, testing exponents through S without touching D) and the
/// period of S.
mpz_class ring_order_of_x(const RingContext& ctx, const FactorTable& table);

/// u_k = u_(k-s) XOR u_(k-n); emits u_n, u_(n+1), ... Seed is
/// (u_0, ..., u_(n-1)) and must not be identically zero.
std::vector<bool> lfsr_stream(const RingContext& ctx,
                              const std::vector<bool>& seed,
                              std::int64_t count);

/// Applies S~(E) (the reciprocal of S in the shift operator E) to the
/// seed, annihilating the short-period component so the surviving
/// sequence has period dividing ord(x mod D). May return the zero seed
/// when the input lies entirely in the annihilated component.
std::vector<bool> project_seed(const RingContext& ctx,
                               const std::vector<bool>& seed);

}  // namespace trinom

#endif
