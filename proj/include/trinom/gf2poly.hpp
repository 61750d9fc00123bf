#ifndef TRINOM_GF2POLY_HPP
#define TRINOM_GF2POLY_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace trinom {

#ifdef TRINOM_WORD32
using Word = std::uint32_t;
#else
using Word = std::uint64_t;
#endif
inline constexpr int kWordBits = static_cast<int>(8 * sizeof(Word));

/// Degree of the zero polynomial. Named sentinel, never used as an index.
inline constexpr std::int64_t kZeroPolyDegree = -1;

struct ExactDivisionError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PolyParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bit-packed polynomial over GF(2): bit i of the flattened word array is
/// the coefficient of x^i. All bits above degree() are zero.
class DensePoly {
public:
    DensePoly() = default;

    static DensePoly zero() { return DensePoly{}; }
    static DensePoly one() { return monomial(0); }
    static DensePoly x() { return monomial(1); }
    static DensePoly monomial(std::int64_t e);
    /// Sum of x^e over the given exponents (repeats cancel).
    static DensePoly from_exponents(std::initializer_list<std::int64_t> es);
    static DensePoly from_exponents(const std::vector<std::int64_t>& es);

    bool is_zero() const { return deg_ == kZeroPolyDegree; }
    bool is_one() const { return deg_ == 0; }
    std::int64_t degree() const { return deg_; }

    bool coeff(std::int64_t i) const;
    void flip_coeff(std::int64_t i);

    const std::vector<Word>& words() const { return w_; }

    void xor_with(const DensePoly& other);
    /// this ^= other * x^shift
    void xor_shifted(const DensePoly& other, std::int64_t shift);
    /// Drop all coefficients at exponents >= n.
    void truncate(std::int64_t n);
    /// Polynomial formed by the coefficients at exponents >= from,
    /// shifted down: result bit i = this bit (from + i).
    DensePoly shifted_down(std::int64_t from) const;

    bool operator==(const DensePoly& o) const {
        return deg_ == o.deg_ && w_ == o.w_;
    }
    bool operator!=(const DensePoly& o) const { return !(*this == o); }

    /// Deterministic total order (by degree, then words); for sorting only.
    bool operator<(const DensePoly& o) const;

private:
    std::vector<Word> w_;
    std::int64_t deg_ = kZeroPolyDegree;

    void recompute_degree();
    void ensure_words(std::size_t n) {
        if (w_.size() < n) w_.resize(n, 0);
    }
    friend DensePoly add(const DensePoly&, const DensePoly&);
    friend DensePoly mul(const DensePoly&, const DensePoly&);
    friend DensePoly square(const DensePoly&);
};

/// x^n + x^s + 1 with 0 < s < n.
struct Trinomial {
    std::int64_t n;
    std::int64_t s;

    Trinomial(std::int64_t n_, std::int64_t s_) : n(n_), s(s_) {
        if (!(0 < s && s < n))
            throw std::invalid_argument("Trinomial: need 0 < s < n");
    }
    DensePoly dense() const { return DensePoly::from_exponents({n, s, 0}); }
    bool operator==(const Trinomial& o) const { return n == o.n && s == o.s; }
};

DensePoly add(const DensePoly& a, const DensePoly& b);
DensePoly mul(const DensePoly& a, const DensePoly& b);
DensePoly square(const DensePoly& a);
DensePoly rem(const DensePoly& a, const DensePoly& m);
DensePoly rem_trinomial(const DensePoly& a, const Trinomial& t);
DensePoly gcd(const DensePoly& a, const DensePoly& b);
DensePoly exact_div(const DensePoly& a, const DensePoly& b);
DensePoly derivative(const DensePoly& a);

/// Resumable chain of x^(2^i) mod T. Holds private mutable state; use from
/// one thread at a time.
class Pow2Chain {
public:
    explicit Pow2Chain(const Trinomial& t);
    std::int64_t index() const { return i_; }
    const DensePoly& current() const { return cur_; }
    const DensePoly& advance();  // to index i+1
    const DensePoly& advance_to(std::int64_t i);

private:
    Trinomial t_;
    DensePoly cur_;
    std::int64_t i_ = 0;
};

/// Visit x^(2^i) mod T for i = 1..i_max.
void pow2_chain(const Trinomial& t, std::int64_t i_max,
                const std::function<void(std::int64_t, const DensePoly&)>& visitor);

/// base^e mod (x^n + x^s + 1), left-to-right square and multiply.
DensePoly powmod_big(const DensePoly& base, const mpz_class& e, const Trinomial& t);

/// base^e mod m for a general modulus.
DensePoly powmod(const DensePoly& base, const mpz_class& e, const DensePoly& m);

/// x^n + x^s + 1 reduced in Z2[x]/(x^m + 1); coinciding exponents cancel.
DensePoly trinomial_mod_cyclic(std::int64_t n, std::int64_t s, std::int64_t m);

/// Hex form, lowest coefficient = least significant bit of the last digit.
std::string to_hex(const DensePoly& a);
/// Human form "x^16+x^3+1".
std::string to_string(const DensePoly& a);
/// Accepts both forms; hex must carry an "0x" prefix.
DensePoly parse_poly(const std::string& text);

}  // namespace trinom

#endif
