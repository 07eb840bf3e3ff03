#pragma once

// Exact arithmetic in F_q and its small extensions F_{q^k}, q = p^e odd.
//
// Elements are handled as ids in [0, Q).  The id's base-p digits are the
// coordinates of the element over F_p with respect to the power basis of a
// deterministic modulus (the lexicographically least monic irreducible
// polynomial of the required degree).  Enumerating ids in increasing order
// enumerates the field in lexicographic coordinate order.
//
// Every field carries scan tables (multiplicative-generator powers in packed
// digit form plus a quadratic-character table) sized by the enumeration
// ceiling; they back the exhaustive point-counting loops.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

namespace prym {

inline constexpr std::int64_t kDefaultCeiling = 4826809;  // 13^6
inline constexpr std::int64_t kSmallTableLimit = 256;     // full add/mul tables below this size

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) {
        if (b != 0 && r > (std::int64_t(1) << 62) / (b < 0 ? -b : b))
            throw std::overflow_error("ipow overflow");
        r *= b;
    }
    return r;
}

// floor(sqrt(n)) by Newton iteration, exact.
inline std::int64_t isqrt64(std::int64_t n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    if (n < 2) return n;
    std::int64_t x = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (x > 0 && x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

struct PrimePower {
    std::int64_t p = 0;
    int e = 0;
    std::int64_t q = 0;

    static PrimePower make(std::int64_t p, int e) {
        if (!is_prime(p)) throw std::invalid_argument("p is not prime");
        if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
        if (e < 1) throw std::invalid_argument("exponent must be positive");
        return PrimePower{p, e, ipow(p, e)};
    }

    // Factor q as p^e; rejects even q and non prime powers.
    static std::optional<PrimePower> parse(std::int64_t q) {
        if (q < 3 || q % 2 == 0) return std::nullopt;
        std::int64_t p = 0;
        for (std::int64_t d = 3; d * d <= q; d += 2)
            if (q % d == 0) { p = d; break; }
        if (p == 0) p = q;
        int e = 0;
        std::int64_t r = q;
        while (r % p == 0) { r /= p; ++e; }
        if (r != 1) return std::nullopt;
        return PrimePower{p, e, q};
    }
};

namespace detail {

// Digits of id in base p, ascending powers.
inline void id_to_digits(std::uint32_t id, std::int64_t p, int d, std::int32_t* out) {
    for (int i = 0; i < d; ++i) {
        out[i] = static_cast<std::int32_t>(id % p);
        id = static_cast<std::uint32_t>(id / p);
    }
}

inline std::uint32_t digits_to_id(const std::int32_t* dig, std::int64_t p, int d) {
    std::uint32_t id = 0;
    for (int i = d - 1; i >= 0; --i) id = static_cast<std::uint32_t>(id * p + dig[i]);
    return id;
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_{p^(e*k)} together with the distinguished subfield F_{p^e}.
class Field {
public:
    Field(const PrimePower& base, int k, std::int64_t ceiling = kDefaultCeiling)
        : p_(base.p), e_(base.e), k_(k), d_(base.e * k), q_(base.q) {
        if (k < 1) throw std::invalid_argument("extension degree must be positive");
        if (d_ > 16) throw std::invalid_argument("total degree over F_p too large");
        Q_ = 1;
        for (int i = 0; i < d_; ++i) {
            if (Q_ > ceiling / p_) throw std::invalid_argument("field cardinality exceeds the enumeration ceiling");
            Q_ *= p_;
        }
        if (Q_ > ceiling) throw std::invalid_argument("field cardinality exceeds the enumeration ceiling");
        powp_.resize(d_ + 1);
        powp_[0] = 1;
        for (int i = 1; i <= d_; ++i) powp_[i] = powp_[i - 1] * p_;
        find_modulus();
        for (int v = 0; v < 256; ++v) mod256_[v] = static_cast<std::uint8_t>(v % p_);
        find_generator();
        build_scan_tables();
        if (Q_ <= kSmallTableLimit) build_small_tables();
        build_embedding();
    }

    std::int64_t p() const { return p_; }
    int e() const { return e_; }
    int k() const { return k_; }
    int degree() const { return d_; }       // degree over F_p
    std::int64_t q() const { return q_; }   // cardinality of the designated base field
    std::int64_t size() const { return Q_; }
    PrimePower base() const { return PrimePower{p_, e_, q_}; }

    // Monic modulus over F_p, ascending coefficients, length degree()+1.
    const std::vector<std::int32_t>& modulus() const { return modulus_; }
    std::uint32_t generator() const { return generator_; }

    // ---- id arithmetic (valid for any Q) ----

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (Q_ <= kSmallTableLimit) return small_add_[a * Q_ + b];
        std::int32_t da[16], db[16];
        detail::id_to_digits(a, p_, d_, da);
        detail::id_to_digits(b, p_, d_, db);
        for (int i = 0; i < d_; ++i) da[i] = (da[i] + db[i]) % static_cast<std::int32_t>(p_);
        return detail::digits_to_id(da, p_, d_);
    }

    std::uint32_t neg(std::uint32_t a) const {
        std::int32_t da[16];
        detail::id_to_digits(a, p_, d_, da);
        for (int i = 0; i < d_; ++i) da[i] = da[i] ? static_cast<std::int32_t>(p_) - da[i] : 0;
        return detail::digits_to_id(da, p_, d_);
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (Q_ <= kSmallTableLimit) return small_mul_[a * Q_ + b];
        return mul_generic(a, b);
    }

    std::uint32_t pow(std::uint32_t a, std::int64_t n) const {
        if (a == 0) return n == 0 ? 1u : 0u;
        n %= (Q_ - 1);
        if (n < 0) n += Q_ - 1;
        std::uint32_t r = 1, base = a;
        while (n) {
            if (n & 1) r = mul(r, base);
            base = mul(base, base);
            n >>= 1;
        }
        return r;
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return pow(a, Q_ - 2);
    }

    // Quadratic character from the scan table.
    int chi(std::uint32_t a) const { return chi_[a]; }

    // The definitional route a^((Q-1)/2), kept for cross-checking.
    int chi_by_pow(std::uint32_t a) const {
        if (a == 0) return 0;
        return pow(a, (Q_ - 1) / 2) == 1 ? 1 : -1;
    }

    // Distinguished embedding F_{p^e} -> this field (table of size q).
    std::uint32_t embed_base(std::uint32_t a) const {
        if (a >= embed_.size()) throw std::out_of_range("embed argument outside base field");
        return embed_[a];
    }

    // ---- exhaustive scans ----

    struct CharSums {
        std::int64_t s1 = 0;   // sum over all x of chi(f1(x))
        std::int64_t s2 = 0;   // sum over all x of chi(f2(x))
        std::int64_t s12 = 0;  // sum over all x of chi(f1(x)) chi(f2(x))
    };

    // Character sums over the whole field for one or two polynomials given by
    // coefficient ids at this level (ascending, no trailing zeros required).
    CharSums char_sums(const std::vector<std::uint32_t>& f1, const std::vector<std::uint32_t>* f2 = nullptr) const {
        if (d_ <= 8) return scan<std::uint64_t>(f1, f2);
        return scan<unsigned __int128>(f1, f2);
    }

    std::uint32_t eval(const std::vector<std::uint32_t>& f, std::uint32_t x) const {
        std::uint32_t r = 0;
        for (std::size_t i = f.size(); i-- > 0;) r = add(mul(r, x), f[i]);
        return r;
    }

private:
    std::int64_t p_;
    int e_, k_, d_;
    std::int64_t q_, Q_;
    std::vector<std::int64_t> powp_;
    std::vector<std::int32_t> modulus_;
    std::uint32_t generator_ = 0;
    std::array<std::uint8_t, 256> mod256_{};

    std::vector<std::uint64_t> exp64_;             // packed digit bytes of g^i, d <= 8
    std::vector<unsigned __int128> exp128_;        // same for d <= 16
    std::vector<std::uint32_t> logt_;              // id -> discrete log (log of 0 unused)
    std::vector<std::int8_t> chi_;

    std::vector<std::uint8_t> small_add_, small_mul_;
    std::vector<std::uint32_t> embed_;

    // Schoolbook multiply of digit vectors followed by reduction mod modulus.
    std::uint32_t mul_generic(std::uint32_t a, std::uint32_t b) const {
        std::int32_t da[16], db[16];
        std::int64_t prod[31] = {0};
        detail::id_to_digits(a, p_, d_, da);
        detail::id_to_digits(b, p_, d_, db);
        for (int i = 0; i < d_; ++i) {
            if (!da[i]) continue;
            for (int j = 0; j < d_; ++j) prod[i + j] += static_cast<std::int64_t>(da[i]) * db[j];
        }
        for (int i = 2 * d_ - 2; i >= d_; --i) {
            std::int64_t c = prod[i] % p_;
            if (c == 0) continue;
            for (int t = 0; t < d_; ++t) prod[i - d_ + t] -= c * modulus_[t];
        }
        std::int32_t out[16];
        for (int i = 0; i < d_; ++i) {
            std::int64_t v = prod[i] % p_;
            if (v < 0) v += p_;
            out[i] = static_cast<std::int32_t>(v);
        }
        return detail::digits_to_id(out, p_, d_);
    }

    // Lexicographically least monic irreducible polynomial of degree d over F_p,
    // coefficients compared as the tuple (c_0, c_1, ..., c_{d-1}).
    void find_modulus() {
        modulus_.assign(d_ + 1, 0);
        modulus_[d_] = 1;
        if (d_ == 1) return;  // x itself; elements are plain residues
        std::vector<std::int32_t> c(d_, 0);
        for (;;) {
            // next candidate in lex order on (c_0, ..., c_{d-1})
            int i = d_ - 1;
            while (i >= 0 && c[i] == p_ - 1) c[i--] = 0;
            if (i < 0) throw std::logic_error("no irreducible polynomial found");
            ++c[i];
            for (int t = 0; t < d_; ++t) modulus_[t] = c[t];
            if (is_irreducible(modulus_)) return;
        }
    }

    // Irreducibility over F_p: x^(p^d) == x mod f and gcd(x^(p^(d/r)) - x, f) = 1
    // for every prime r dividing d.
    bool is_irreducible(const std::vector<std::int32_t>& f) const {
        const int d = d_;
        auto xq = frobenius_powers(f, d);
        if (!is_x(xq)) return false;
        for (int r = 2; r <= d; ++r) {
            if (d % r != 0 || !is_prime(r)) continue;
            auto xe = frobenius_powers(f, d / r);
            if (xe.size() < 2) xe.resize(2, 0);
            xe[1] = (xe[1] - 1 + p_) % p_;
            while (!xe.empty() && xe.back() == 0) xe.pop_back();
            if (poly_gcd_deg(xe, f) != 0) return false;
        }
        return true;
    }

    // x^(p^n) mod f as a digit polynomial.
    std::vector<std::int64_t> frobenius_powers(const std::vector<std::int32_t>& f, int n) const {
        std::vector<std::int64_t> r = {0, 1};
        for (int step = 0; step < n; ++step) {
            std::int64_t pw = p_;
            std::vector<std::int64_t> acc = {1};
            std::vector<std::int64_t> base = r;
            while (pw) {
                if (pw & 1) acc = polymulmod(acc, base, f);
                base = polymulmod(base, base, f);
                pw >>= 1;
            }
            r = acc;
        }
        return r;
    }

    bool is_x(const std::vector<std::int64_t>& g) const {
        if (g.size() != 2) return false;
        return g[0] == 0 && g[1] == 1;
    }

    std::vector<std::int64_t> polymulmod(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                         const std::vector<std::int32_t>& f) const {
        std::vector<std::int64_t> prod(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        }
        const int d = static_cast<int>(f.size()) - 1;
        for (int i = static_cast<int>(prod.size()) - 1; i >= d; --i) {
            std::int64_t c = prod[i] % p_;
            if (!c) continue;
            for (int t = 0; t <= d; ++t) {
                prod[i - d + t] = (prod[i - d + t] - c * f[t]) % p_;
                if (prod[i - d + t] < 0) prod[i - d + t] += p_;
            }
        }
        prod.resize(d);
        while (!prod.empty() && prod.back() == 0) prod.pop_back();
        return prod;
    }

    int poly_gcd_deg(std::vector<std::int64_t> a, const std::vector<std::int32_t>& fb) const {
        std::vector<std::int64_t> b(fb.begin(), fb.end());
        while (!b.empty()) {
            // a mod b
            while (a.size() >= b.size() && !a.empty()) {
                std::int64_t lead = a.back() % p_;
                if (lead == 0) { a.pop_back(); continue; }
                std::int64_t binv = 1, x = b.back() % p_, n = p_ - 2;
                while (n) { if (n & 1) binv = binv * x % p_; x = x * x % p_; n >>= 1; }
                std::int64_t c = lead * binv % p_;
                std::size_t off = a.size() - b.size();
                for (std::size_t t = 0; t < b.size(); ++t) {
                    a[off + t] = (a[off + t] - c * b[t]) % p_;
                    if (a[off + t] < 0) a[off + t] += p_;
                }
                while (!a.empty() && a.back() == 0) a.pop_back();
            }
            std::swap(a, b);
        }
        return a.empty() ? -1 : static_cast<int>(a.size()) - 1;
    }

    void find_generator() {
        std::vector<std::int64_t> prime_factors;
        std::int64_t n = Q_ - 1;
        for (std::int64_t f = 2; f * f <= n; ++f) {
            if (n % f == 0) {
                prime_factors.push_back(f);
                while (n % f == 0) n /= f;
            }
        }
        if (n > 1) prime_factors.push_back(n);
        for (std::uint32_t cand = 2;; ++cand) {
            if (cand >= Q_) throw std::logic_error("no multiplicative generator found");
            bool ok = true;
            for (std::int64_t r : prime_factors)
                if (pow_generic(cand, (Q_ - 1) / r) == 1) { ok = false; break; }
            if (ok) { generator_ = cand; return; }
        }
    }

    std::uint32_t pow_generic(std::uint32_t a, std::int64_t n) const {
        std::uint32_t r = 1, base = a;
        while (n) {
            if (n & 1) r = mul_generic(r, base);
            base = mul_generic(base, base);
            n >>= 1;
        }
        return r;
    }

    template <class Word>
    Word pack_digits(std::uint32_t id) const {
        std::int32_t dg[16];
        detail::id_to_digits(id, p_, d_, dg);
        Word w = 0;
        for (int i = d_ - 1; i >= 0; --i) w = (w << 8) | static_cast<unsigned>(dg[i]);
        return w;
    }

    template <class Word>
    std::uint32_t unpack_to_id(Word w) const {
        std::uint32_t id = 0;
        for (int i = d_ - 1; i >= 0; --i) {
            unsigned byte = static_cast<unsigned>((w >> (8 * i)) & 0xFF);
            id = static_cast<std::uint32_t>(id * p_ + mod256_[byte]);
        }
        return id;
    }

    void build_scan_tables() {
        logt_.assign(static_cast<std::size_t>(Q_), 0);
        chi_.assign(static_cast<std::size_t>(Q_), 0);
        const std::int64_t n = Q_ - 1;
        if (d_ <= 8) exp64_.resize(static_cast<std::size_t>(n));
        else exp128_.resize(static_cast<std::size_t>(n));
        std::uint32_t cur = 1;
        for (std::int64_t i = 0; i < n; ++i) {
            if (d_ <= 8) exp64_[static_cast<std::size_t>(i)] = pack_digits<std::uint64_t>(cur);
            else exp128_[static_cast<std::size_t>(i)] = pack_digits<unsigned __int128>(cur);
            logt_[cur] = static_cast<std::uint32_t>(i);
            chi_[cur] = (i % 2 == 0) ? 1 : -1;
            cur = mul_generic(cur, generator_);
        }
        if (cur != 1) throw std::logic_error("generator order mismatch");
    }

    void build_small_tables() {
        small_add_.resize(static_cast<std::size_t>(Q_ * Q_));
        small_mul_.resize(static_cast<std::size_t>(Q_ * Q_));
        for (std::int64_t a = 0; a < Q_; ++a) {
            for (std::int64_t b = 0; b < Q_; ++b) {
                std::int32_t da[16], db[16];
                detail::id_to_digits(static_cast<std::uint32_t>(a), p_, d_, da);
                detail::id_to_digits(static_cast<std::uint32_t>(b), p_, d_, db);
                std::int32_t s[16];
                for (int i = 0; i < d_; ++i) s[i] = (da[i] + db[i]) % static_cast<std::int32_t>(p_);
                small_add_[a * Q_ + b] = static_cast<std::uint8_t>(detail::digits_to_id(s, p_, d_));
                small_mul_[a * Q_ + b] =
                    static_cast<std::uint8_t>(mul_generic(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)));
            }
        }
    }

    void build_embedding() {
        embed_.resize(static_cast<std::size_t>(q_));
        if (k_ == 1) {
            for (std::int64_t a = 0; a < q_; ++a) embed_[static_cast<std::size_t>(a)] = static_cast<std::uint32_t>(a);
            return;
        }
        if (e_ == 1) {
            // prime subfield: constants have ids 0..p-1 already
            for (std::int64_t a = 0; a < q_; ++a) embed_[static_cast<std::size_t>(a)] = static_cast<std::uint32_t>(a);
            return;
        }
        // Root of the base-field modulus inside this field.  The subfield
        // F_q is {0} plus the order-(q-1) subgroup, so candidates are the
        // powers of g^((Q-1)/(q-1)).
        Field base_field(PrimePower{p_, e_, q_}, 1, q_);
        const auto& bm = base_field.modulus();
        std::vector<std::uint32_t> bm_here(bm.size());
        for (std::size_t i = 0; i < bm.size(); ++i) bm_here[i] = static_cast<std::uint32_t>(bm[i]);
        std::uint32_t eta = pow(generator_, (Q_ - 1) / (q_ - 1));
        std::uint32_t root = 0;
        bool found = false;
        std::uint32_t cand = 1;
        for (std::int64_t j = 0; j < q_ - 1; ++j) {
            if (eval(bm_here, cand) == 0 && (!found || cand < root)) {
                root = cand;
                found = true;
            }
            cand = mul(cand, eta);
        }
        if (!found) throw std::logic_error("base modulus has no root in the extension");
        for (std::int64_t a = 0; a < q_; ++a) {
            std::int32_t dg[16];
            detail::id_to_digits(static_cast<std::uint32_t>(a), p_, e_, dg);
            std::uint32_t acc = 0;
            for (int i = e_ - 1; i >= 0; --i) acc = add(mul(acc, root), static_cast<std::uint32_t>(dg[i]));
            embed_[static_cast<std::size_t>(a)] = acc;
        }
    }

    template <class Word>
    CharSums scan(const std::vector<std::uint32_t>& f1, const std::vector<std::uint32_t>* f2) const {
        const Word* expt;
        if constexpr (std::is_same_v<Word, std::uint64_t>) expt = exp64_.data();
        else expt = exp128_.data();
        const std::int64_t n = Q_ - 1;

        struct Term { std::int64_t cur; std::int64_t step; };
        auto setup = [&](const std::vector<std::uint32_t>& f, std::vector<Term>& terms, Word& c0) {
            c0 = 0;
            for (std::size_t j = 0; j < f.size(); ++j) {
                if (f[j] == 0) continue;
                if (j == 0) { c0 = pack_digits<Word>(f[0]); continue; }
                terms.push_back(Term{static_cast<std::int64_t>(logt_[f[j]]),
                                     static_cast<std::int64_t>(j) % (Q_ - 1)});
            }
        };
        std::vector<Term> t1, t2;
        Word c1 = 0, c2 = 0;
        setup(f1, t1, c1);
        if (f2) setup(*f2, t2, c2);

        CharSums out;
        // x = 0
        int chi10 = chi_[f1.empty() ? 0 : f1[0]];
        int chi20 = f2 ? chi_[f2->empty() ? 0 : (*f2)[0]] : 0;
        out.s1 += chi10;
        if (f2) { out.s2 += chi20; out.s12 += chi10 * chi20; }

        for (std::int64_t i = 0; i < n; ++i) {
            Word acc = c1;
            for (auto& t : t1) {
                acc += expt[t.cur];
                t.cur += t.step;
                if (t.cur >= n) t.cur -= n;
            }
            int x1 = chi_[unpack_to_id<Word>(acc)];
            out.s1 += x1;
            if (f2) {
                Word acc2 = c2;
                for (auto& t : t2) {
                    acc2 += expt[t.cur];
                    t.cur += t.step;
                    if (t.cur >= n) t.cur -= n;
                }
                int x2 = chi_[unpack_to_id<Word>(acc2)];
                out.s2 += x2;
                out.s12 += x1 * x2;
            }
        }
        return out;
    }
};

// Value handle used by the non-hot-path API and tests.
struct FieldElement {
    const Field* field = nullptr;
    std::uint32_t id = 0;

    friend FieldElement operator+(FieldElement a, FieldElement b) { return {a.field, a.field->add(a.id, b.id)}; }
    friend FieldElement operator-(FieldElement a, FieldElement b) { return {a.field, a.field->sub(a.id, b.id)}; }
    friend FieldElement operator*(FieldElement a, FieldElement b) { return {a.field, a.field->mul(a.id, b.id)}; }
    friend FieldElement operator/(FieldElement a, FieldElement b) { return {a.field, a.field->mul(a.id, a.field->inv(b.id))}; }
    friend bool operator==(FieldElement a, FieldElement b) { return a.field == b.field && a.id == b.id; }
};

inline int quadratic_character(const FieldElement& a) { return a.field->chi(a.id); }

// Shared field registry.  make_field(p, e, k) is the module entry point.
inline FieldPtr make_field(std::int64_t p, int e, int k, std::int64_t ceiling = kDefaultCeiling) {
    static std::mutex mu;
    static std::map<std::tuple<std::int64_t, int, int>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, e, k);
    auto it = cache.find(key);
    if (it != cache.end()) {
        if (it->second->size() > ceiling) throw std::invalid_argument("field cardinality exceeds the enumeration ceiling");
        return it->second;
    }
    auto f = std::make_shared<const Field>(PrimePower::make(p, e), k, ceiling);
    cache.emplace(key, f);
    return f;
}

inline std::vector<FieldElement> enumerate_elements(const Field& f) {
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(f.size()));
    for (std::int64_t i = 0; i < f.size(); ++i) out.push_back({&f, static_cast<std::uint32_t>(i)});
    return out;
}

}  // namespace prym
