#include "trinom/gf2poly.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <sstream>

namespace trinom {

namespace {

constexpr std::size_t words_for(std::int64_t deg) {
    return deg < 0 ? 0 : static_cast<std::size_t>(deg / kWordBits) + 1;
}

// Degrees at or above this use Karatsuba in mul().
constexpr std::int64_t kKaratsubaDegree = 1 << 14;
constexpr std::size_t kKaratsubaWords = words_for(kKaratsubaDegree);

// Carry-less schoolbook multiply with a 4-bit comb; out must hold
// na + nb + 1 words and is xor-accumulated into.
void mul_comb(const Word* a, std::size_t na, const Word* b, std::size_t nb,
              Word* out) {
    // tb[u] = u(x) * b, one guard word for the << 3 overflow
    std::vector<Word> tb(16 * (nb + 1), 0);
    for (int u = 1; u < 16; ++u) {
        Word* row = &tb[static_cast<std::size_t>(u) * (nb + 1)];
        int low = u & (-u);
        const Word* prev = &tb[static_cast<std::size_t>(u ^ low) * (nb + 1)];
        int sh = std::countr_zero(static_cast<unsigned>(low));
        for (std::size_t j = 0; j <= nb; ++j) row[j] = prev[j];
        if (sh == 0) {
            for (std::size_t j = 0; j < nb; ++j) row[j] ^= b[j];
        } else {
            for (std::size_t j = 0; j < nb; ++j) {
                row[j] ^= b[j] << sh;
                row[j + 1] ^= b[j] >> (kWordBits - sh);
            }
        }
    }
    for (std::size_t i = 0; i < na; ++i) {
        Word w = a[i];
        if (w == 0) continue;
        for (int k = 0; 4 * k < kWordBits; ++k) {
            int u = static_cast<int>((w >> (4 * k)) & 0xF);
            if (u == 0) continue;
            const Word* row = &tb[static_cast<std::size_t>(u) * (nb + 1)];
            int sh = 4 * k;
            if (sh == 0) {
                for (std::size_t j = 0; j <= nb; ++j) out[i + j] ^= row[j];
            } else {
                for (std::size_t j = 0; j <= nb; ++j) {
                    out[i + j] ^= row[j] << sh;
                    out[i + j + 1] ^= row[j] >> (kWordBits - sh);
                }
            }
        }
    }
}

void mul_karatsuba(const Word* a, std::size_t na, const Word* b, std::size_t nb,
                   Word* out);

void mul_dispatch(const Word* a, std::size_t na, const Word* b, std::size_t nb,
                  Word* out) {
    if (std::min(na, nb) >= kKaratsubaWords)
        mul_karatsuba(a, na, b, nb, out);
    else
        mul_comb(a, na, b, nb, out);
}

// out (na + nb + 1 words) is xor-accumulated into.
void mul_karatsuba(const Word* a, std::size_t na, const Word* b, std::size_t nb,
                   Word* out) {
    std::size_t h = std::min(na, nb) / 2;
    const Word *a0 = a, *a1 = a + h;
    const Word *b0 = b, *b1 = b + h;
    std::size_t na1 = na - h, nb1 = nb - h;

    std::vector<Word> z0(2 * h + 1, 0), z2(na1 + nb1 + 1, 0);
    mul_dispatch(a0, h, b0, h, z0.data());
    mul_dispatch(a1, na1, b1, nb1, z2.data());

    std::vector<Word> sa(na1, 0), sb(nb1, 0);
    for (std::size_t j = 0; j < na1; ++j) sa[j] = a1[j] ^ (j < h ? a0[j] : 0);
    for (std::size_t j = 0; j < nb1; ++j) sb[j] = b1[j] ^ (j < h ? b0[j] : 0);
    std::vector<Word> z1(na1 + nb1 + 1, 0);
    mul_dispatch(sa.data(), na1, sb.data(), nb1, z1.data());
    for (std::size_t j = 0; j < z1.size(); ++j)
        z1[j] ^= (j < z0.size() ? z0[j] : 0) ^ z2[j];

    for (std::size_t j = 0; j < z0.size(); ++j) out[j] ^= z0[j];
    for (std::size_t j = 0; j < z1.size(); ++j) out[h + j] ^= z1[j];
    for (std::size_t j = 0; j < z2.size(); ++j) out[2 * h + j] ^= z2[j];
}

// Bit-interleaving table: squares a byte polynomial.
const std::array<std::uint16_t, 256>& square_table() {
    static const std::array<std::uint16_t, 256> tab = [] {
        std::array<std::uint16_t, 256> t{};
        for (int v = 0; v < 256; ++v) {
            std::uint16_t r = 0;
            for (int i = 0; i < 8; ++i)
                if (v & (1 << i)) r |= static_cast<std::uint16_t>(1) << (2 * i);
            t[static_cast<std::size_t>(v)] = r;
        }
        return t;
    }();
    return tab;
}

}  // namespace

DensePoly DensePoly::monomial(std::int64_t e) {
    if (e < 0) throw std::invalid_argument("monomial: negative exponent");
    DensePoly p;
    p.w_.assign(words_for(e), 0);
    p.w_[static_cast<std::size_t>(e / kWordBits)] = Word{1} << (e % kWordBits);
    p.deg_ = e;
    return p;
}

DensePoly DensePoly::from_exponents(std::initializer_list<std::int64_t> es) {
    return from_exponents(std::vector<std::int64_t>(es));
}

DensePoly DensePoly::from_exponents(const std::vector<std::int64_t>& es) {
    DensePoly p;
    for (std::int64_t e : es) p.flip_coeff(e);
    return p;
}

bool DensePoly::coeff(std::int64_t i) const {
    if (i < 0 || i > deg_) return false;
    return (w_[static_cast<std::size_t>(i / kWordBits)] >> (i % kWordBits)) & 1;
}

void DensePoly::flip_coeff(std::int64_t i) {
    if (i < 0) throw std::invalid_argument("flip_coeff: negative exponent");
    ensure_words(words_for(i));
    w_[static_cast<std::size_t>(i / kWordBits)] ^= Word{1} << (i % kWordBits);
    if (i > deg_)
        deg_ = i;
    else
        recompute_degree();
}

void DensePoly::recompute_degree() {
    while (!w_.empty() && w_.back() == 0) w_.pop_back();
    if (w_.empty()) {
        deg_ = kZeroPolyDegree;
        return;
    }
    deg_ = static_cast<std::int64_t>(w_.size() - 1) * kWordBits +
           (kWordBits - 1 - std::countl_zero(w_.back()));
}

void DensePoly::xor_with(const DensePoly& other) {
    ensure_words(other.w_.size());
    for (std::size_t j = 0; j < other.w_.size(); ++j) w_[j] ^= other.w_[j];
    recompute_degree();
}

void DensePoly::xor_shifted(const DensePoly& other, std::int64_t shift) {
    if (other.is_zero()) return;
    if (shift < 0) throw std::invalid_argument("xor_shifted: negative shift");
    ensure_words(words_for(other.deg_ + shift));
    std::size_t wsh = static_cast<std::size_t>(shift / kWordBits);
    int bsh = static_cast<int>(shift % kWordBits);
    if (bsh == 0) {
        for (std::size_t j = 0; j < other.w_.size(); ++j)
            w_[j + wsh] ^= other.w_[j];
    } else {
        for (std::size_t j = 0; j < other.w_.size(); ++j) {
            w_[j + wsh] ^= other.w_[j] << bsh;
            if (j + wsh + 1 < w_.size())
                w_[j + wsh + 1] ^= other.w_[j] >> (kWordBits - bsh);
        }
    }
    recompute_degree();
}

void DensePoly::truncate(std::int64_t n) {
    if (n <= 0) {
        w_.clear();
        deg_ = kZeroPolyDegree;
        return;
    }
    if (deg_ < n) return;
    std::size_t keep = words_for(n - 1);
    w_.resize(keep);
    int bits = static_cast<int>(n % kWordBits);
    if (bits != 0) w_.back() &= (Word{1} << bits) - 1;
    recompute_degree();
}

DensePoly DensePoly::shifted_down(std::int64_t from) const {
    DensePoly out;
    if (deg_ < from) return out;
    std::size_t wsh = static_cast<std::size_t>(from / kWordBits);
    int bsh = static_cast<int>(from % kWordBits);
    std::size_t nw = w_.size() - wsh;
    out.w_.assign(nw, 0);
    if (bsh == 0) {
        for (std::size_t j = 0; j < nw; ++j) out.w_[j] = w_[j + wsh];
    } else {
        for (std::size_t j = 0; j < nw; ++j) {
            out.w_[j] = w_[j + wsh] >> bsh;
            if (j + wsh + 1 < w_.size())
                out.w_[j] |= w_[j + wsh + 1] << (kWordBits - bsh);
        }
    }
    out.recompute_degree();
    return out;
}

bool DensePoly::operator<(const DensePoly& o) const {
    if (deg_ != o.deg_) return deg_ < o.deg_;
    for (std::size_t j = w_.size(); j-- > 0;)
        if (w_[j] != o.w_[j]) return w_[j] < o.w_[j];
    return false;
}

DensePoly add(const DensePoly& a, const DensePoly& b) {
    DensePoly r = a;
    r.xor_with(b);
    return r;
}

DensePoly mul(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() || b.is_zero()) return DensePoly::zero();
    DensePoly r;
    std::size_t na = a.w_.size(), nb = b.w_.size();
    r.w_.assign(na + nb + 1, 0);
    if (na >= nb)
        mul_dispatch(a.w_.data(), na, b.w_.data(), nb, r.w_.data());
    else
        mul_dispatch(b.w_.data(), nb, a.w_.data(), na, r.w_.data());
    r.recompute_degree();
    return r;
}

DensePoly square(const DensePoly& a) {
    if (a.is_zero()) return DensePoly::zero();
    const auto& tab = square_table();
    DensePoly r;
    r.w_.assign(2 * a.w_.size(), 0);
    for (std::size_t j = 0; j < a.w_.size(); ++j) {
        Word w = a.w_[j];
        Word lo = 0, hi = 0;
        for (int byt = 0; 8 * byt < kWordBits; ++byt) {
            Word sq = tab[(w >> (8 * byt)) & 0xFF];
            if (16 * byt < kWordBits)
                lo |= sq << (16 * byt);
            else
                hi |= sq << (16 * byt - kWordBits);
        }
        r.w_[2 * j] = lo;
        r.w_[2 * j + 1] = hi;
    }
    r.recompute_degree();
    return r;
}

DensePoly rem(const DensePoly& a, const DensePoly& m) {
    if (m.is_zero()) throw std::domain_error("rem: zero modulus");
    DensePoly ra = a;
    while (ra.degree() >= m.degree())
        ra.xor_shifted(m, ra.degree() - m.degree());
    return ra;
}

DensePoly rem_trinomial(const DensePoly& a, const Trinomial& t) {
    DensePoly r = a;
    while (r.degree() >= t.n) {
        DensePoly high = r.shifted_down(t.n);
        r.truncate(t.n);
        r.xor_with(high);
        r.xor_shifted(high, t.s);
    }
    return r;
}

DensePoly gcd(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() && b.is_zero())
        throw std::domain_error("gcd: both inputs zero");
    DensePoly u = a, v = b;
    while (!v.is_zero()) {
        DensePoly r = rem(u, v);
        u = std::move(v);
        v = std::move(r);
    }
    return u;
}

DensePoly exact_div(const DensePoly& a, const DensePoly& b) {
    if (b.is_zero()) throw std::domain_error("exact_div: zero divisor");
    DensePoly q, ra = a;
    while (ra.degree() >= b.degree()) {
        std::int64_t k = ra.degree() - b.degree();
        q.flip_coeff(k);
        ra.xor_shifted(b, k);
    }
    if (!ra.is_zero())
        throw ExactDivisionError("exact_div: nonzero remainder");
    return q;
}

DensePoly derivative(const DensePoly& a) {
    // coefficient i of a' is a_{i+1} for even i: keep odd bits, shift down.
    DensePoly r = a.shifted_down(1);
    DensePoly out;
    for (std::int64_t i = 0; i <= r.degree(); i += 2)
        if (r.coeff(i)) out.flip_coeff(i);
    return out;
}

Pow2Chain::Pow2Chain(const Trinomial& t) : t_(t), cur_(DensePoly::x()) {
    cur_ = rem_trinomial(cur_, t_);  // identity for n >= 2
}

const DensePoly& Pow2Chain::advance() {
    cur_ = rem_trinomial(square(cur_), t_);
    ++i_;
    return cur_;
}

const DensePoly& Pow2Chain::advance_to(std::int64_t i) {
    if (i < i_) throw std::invalid_argument("Pow2Chain: cannot rewind");
    while (i_ < i) advance();
    return cur_;
}

void pow2_chain(const Trinomial& t, std::int64_t i_max,
                const std::function<void(std::int64_t, const DensePoly&)>& visitor) {
    Pow2Chain c(t);
    for (std::int64_t i = 1; i <= i_max; ++i) visitor(i, c.advance());
}

namespace {

template <typename Reduce>
DensePoly powmod_impl(const DensePoly& base, const mpz_class& e, Reduce reduce) {
    if (e < 0) throw std::invalid_argument("powmod: negative exponent");
    DensePoly b = reduce(base);
    DensePoly r = reduce(DensePoly::one());
    std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (std::size_t i = nbits; i-- > 0;) {
        r = reduce(square(r));
        if (mpz_tstbit(e.get_mpz_t(), i)) r = reduce(mul(r, b));
    }
    return r;
}

}  // namespace

DensePoly powmod_big(const DensePoly& base, const mpz_class& e, const Trinomial& t) {
    return powmod_impl(base, e,
                       [&](const DensePoly& p) { return rem_trinomial(p, t); });
}

DensePoly powmod(const DensePoly& base, const mpz_class& e, const DensePoly& m) {
    if (m.is_zero()) throw std::domain_error("powmod: zero modulus");
    return powmod_impl(base, e, [&](const DensePoly& p) { return rem(p, m); });
}

DensePoly trinomial_mod_cyclic(std::int64_t n, std::int64_t s, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("trinomial_mod_cyclic: m >= 1");
    return DensePoly::from_exponents({n % m, s % m, 0});
}

std::string to_hex(const DensePoly& a) {
    if (a.is_zero()) return "0x0";
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (std::int64_t i = (a.degree() / 4) * 4; i >= 0; i -= 4) {
        int v = (a.coeff(i) ? 1 : 0) | (a.coeff(i + 1) ? 2 : 0) |
                (a.coeff(i + 2) ? 4 : 0) | (a.coeff(i + 3) ? 8 : 0);
        out.push_back(digits[v]);
    }
    return "0x" + out;
}

std::string to_string(const DensePoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (std::int64_t i = a.degree(); i >= 0; --i) {
        if (!a.coeff(i)) continue;
        if (!out.empty()) out += "+";
        if (i == 0)
            out += "1";
        else if (i == 1)
            out += "x";
        else
            out += "x^" + std::to_string(i);
    }
    return out;
}

DensePoly parse_poly(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw PolyParseError("empty polynomial");
    if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) {
        DensePoly p;
        std::int64_t bit = 0;
        for (std::size_t j = t.size(); j-- > 2;) {
            char c = static_cast<char>(std::tolower(t[j]));
            int v;
            if (c >= '0' && c <= '9')
                v = c - '0';
            else if (c >= 'a' && c <= 'f')
                v = 10 + (c - 'a');
            else
                throw PolyParseError("bad hex digit in polynomial");
            for (int b = 0; b < 4; ++b)
                if (v & (1 << b)) p.flip_coeff(bit + b);
            bit += 4;
        }
        return p;
    }
    if (t == "0") return DensePoly::zero();
    DensePoly p;
    std::size_t pos = 0;
    while (pos < t.size()) {
        std::size_t next = t.find('+', pos);
        std::string term = t.substr(pos, next == std::string::npos
                                             ? std::string::npos
                                             : next - pos);
        std::int64_t e;
        if (term == "1")
            e = 0;
        else if (term == "x")
            e = 1;
        else if (term.rfind("x^", 0) == 0) {
            try {
                std::size_t used = 0;
                e = std::stoll(term.substr(2), &used);
                if (used != term.size() - 2 || e < 0)
                    throw PolyParseError("bad exponent: " + term);
            } catch (const std::logic_error&) {
                throw PolyParseError("bad exponent: " + term);
            }
        } else {
            throw PolyParseError("bad term: " + term);
        }
        p.flip_coeff(e);
        pos = next == std::string::npos ? t.size() : next + 1;
    }
    return p;
}

}  // namespace trinom
