#include "recip/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace recip {

namespace {

constexpr uint64_t kOrderGuard = uint64_t(1) << 21;

// dense F_p[x] helpers on digit vectors, used only during table construction
using Vec = std::vector<uint32_t>;

Vec trim(Vec v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

Vec mulmod(const Vec& a, const Vec& b, const Vec& mod, uint64_t p) {
    size_t n = mod.size() - 1;
    std::vector<uint64_t> acc(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += uint64_t(a[i]) * b[j] % p;
    // reduce by the monic modulus from the top
    for (size_t i = acc.size(); i-- > n;) {
        uint64_t c = acc[i] % p;
        if (c == 0) continue;
        for (size_t j = 0; j < n; ++j) {
            uint64_t sub = c * (mod[j] % p) % p;
            acc[i - n + j] = (acc[i - n + j] + p * p - sub) % p;
        }
        acc[i] = 0;
    }
    Vec out(n, 0);
    for (size_t i = 0; i < n && i < acc.size(); ++i) out[i] = uint32_t(acc[i] % p);
    return out;
}

Vec powmod(Vec a, uint64_t e, const Vec& mod, uint64_t p) {
    Vec r(mod.size() - 1, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, mod, p);
        a = mulmod(a, a, mod, p);
        e >>= 1;
    }
    return r;
}

// plain polynomial division in F_p[x]; returns remainder
Vec rem_poly(Vec a, const Vec& b, uint64_t p) {
    a = trim(std::move(a));
    Vec bb = trim(b);
    if (bb.empty()) throw std::invalid_argument("division by zero polynomial");
    uint64_t lc = bb.back();
    // lc inverse mod p
    uint64_t inv = 1, base = lc % p, e = p - 2;
    while (e) { if (e & 1) inv = inv * base % p; base = base * base % p; e >>= 1; }
    while (a.size() >= bb.size()) {
        uint64_t c = uint64_t(a.back()) * inv % p;
        size_t off = a.size() - bb.size();
        for (size_t i = 0; i < bb.size(); ++i)
            a[off + i] = uint32_t((a[off + i] + p * p - c * bb[i] % p) % p);
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

bool irreducible(const Vec& f, uint64_t p) {
    size_t n = f.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;
    // trial division by every monic polynomial of degree 1..n/2
    for (size_t d = 1; 2 * d <= n; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t v = 0; v < count; ++v) {
            Vec g(d + 1, 0);
            uint64_t t = v;
            for (size_t i = 0; i < d; ++i) { g[i] = uint32_t(t % p); t /= p; }
            g[d] = 1;
            if (trim(rem_poly(f, g, p)).empty()) return false;
        }
    }
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t v) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    if (v > 1) out.push_back(v);
    return out;
}

} // namespace

bool is_prime_u64(uint64_t v) {
    if (v < 2) return false;
    for (uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

uint64_t isqrt_u64(uint64_t v) {
    uint64_t r = uint64_t(std::sqrt(double(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

void prime_power_decompose(uint64_t v, uint64_t& p, uint32_t& n) {
    if (v < 2) throw std::invalid_argument("not a prime power: " + std::to_string(v));
    for (uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) {
            p = d;
            n = 0;
            while (v > 1) {
                if (v % d != 0) throw std::invalid_argument("not a prime power");
                v /= d;
                ++n;
            }
            return;
        }
    p = v;
    n = 1;
}

Field::Field(uint64_t p, uint32_t n) : p_(p), n_(n) { build(nullptr); }

Field::Field(uint64_t p, uint32_t n, const std::vector<uint32_t>& modulus_low_coeffs)
    : p_(p), n_(n) {
    build(&modulus_low_coeffs);
}

void Field::build(const std::vector<uint32_t>* forced_modulus) {
    if (!is_prime_u64(p_)) throw std::invalid_argument("p must be prime, got " + std::to_string(p_));
    if (n_ < 1) throw std::invalid_argument("extension degree must be >= 1");
    q_ = 1;
    for (uint32_t i = 0; i < n_; ++i) {
        q_ *= p_;
        if (q_ > kOrderGuard) throw std::invalid_argument("field order exceeds enumeration guard 2^21");
    }
    mult_order_ = q_ - 1;

    if (forced_modulus) {
        if (forced_modulus->size() != n_)
            throw std::invalid_argument("modulus override must supply n low coefficients");
        Vec f(*forced_modulus);
        for (auto& c : f) c %= uint32_t(p_);
        f.push_back(1);
        if (!irreducible(f, p_)) throw std::invalid_argument("modulus override is reducible");
        modulus_ = f;
    } else {
        for (uint64_t v = 0;; ++v) {
            Vec f(n_ + 1, 0);
            uint64_t t = v;
            for (uint32_t i = 0; i < n_; ++i) { f[i] = uint32_t(t % p_); t /= p_; }
            if (t) throw std::logic_error("no irreducible modulus found");
            f[n_] = 1;
            if (irreducible(f, p_)) { modulus_ = f; break; }
        }
    }

    // primitive element: first full-order element in digit enumeration order
    auto factors = prime_factors(mult_order_);
    Vec gen;
    for (uint64_t v = 1; v < q_; ++v) {
        Vec cand(n_, 0);
        uint64_t t = v;
        for (uint32_t i = 0; i < n_; ++i) { cand[i] = uint32_t(t % p_); t /= p_; }
        bool full = mult_order_ == 1;
        if (!full) {
            full = true;
            for (uint64_t r : factors) {
                Vec pw = powmod(cand, mult_order_ / r, modulus_, p_);
                if (trim(pw).size() == 1 && pw[0] == 1) { full = false; break; }
            }
        }
        if (full) { gen = cand; break; }
    }

    exp_.assign(mult_order_, 0);
    logt_.assign(q_, 0);
    Vec cur(n_, 0);
    cur[0] = 1;
    for (uint64_t k = 0; k < mult_order_; ++k) {
        uint32_t packed = 0;
        for (uint32_t i = n_; i-- > 0;) packed = uint32_t(packed * p_ + cur[i]);
        exp_[k] = packed;
        logt_[packed] = uint32_t(k);
        cur = mulmod(cur, gen, modulus_, p_);
    }

    zech_.assign(mult_order_, kZechZero);
    for (uint64_t k = 0; k < mult_order_; ++k) {
        uint32_t packed = exp_[k];
        // add 1 to the constant digit
        uint32_t c0 = packed % uint32_t(p_);
        uint32_t plus = packed - c0 + (c0 + 1) % uint32_t(p_);
        if (plus != 0) zech_[k] = logt_[plus];
    }
}

uint32_t Field::pack_of(FieldElem a) const { return a.code == 0 ? 0 : exp_[a.code - 1]; }

FieldElem Field::xi_pow(int64_t k) const {
    int64_t L = int64_t(mult_order_);
    int64_t r = ((k % L) + L) % L;
    return {uint32_t(1 + r)};
}

FieldElem Field::from_int(int64_t c) const {
    int64_t r = ((c % int64_t(p_)) + int64_t(p_)) % int64_t(p_);
    if (r == 0) return zero();
    return {1 + logt_[uint32_t(r)]};
}

FieldElem Field::from_coeffs(const std::vector<uint32_t>& digits) const {
    if (digits.size() > n_) throw std::invalid_argument("coefficient vector longer than degree");
    uint32_t packed = 0;
    for (size_t i = digits.size(); i-- > 0;) {
        if (digits[i] >= p_) throw std::invalid_argument("coefficient out of range");
        packed = uint32_t(packed * p_ + digits[i]);
    }
    if (packed == 0) return zero();
    return {1 + logt_[packed]};
}

std::vector<uint32_t> Field::coeffs(FieldElem a) const {
    std::vector<uint32_t> out(n_, 0);
    uint32_t packed = pack_of(a);
    for (uint32_t i = 0; i < n_; ++i) { out[i] = packed % uint32_t(p_); packed /= uint32_t(p_); }
    return out;
}

uint64_t Field::log(FieldElem a) const {
    if (a.code == 0) throw std::domain_error("log of zero");
    return a.code - 1;
}

FieldElem Field::element_at(uint64_t idx) const {
    if (idx >= q_) throw std::out_of_range("element index");
    return {uint32_t(idx)};
}

std::vector<FieldElem> Field::elements() const {
    std::vector<FieldElem> out(q_);
    for (uint64_t i = 0; i < q_; ++i) out[i] = {uint32_t(i)};
    return out;
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
    if (a.code == 0) return b;
    if (b.code == 0) return a;
    uint64_t i = a.code - 1, j = b.code - 1;
    if (i > j) std::swap(i, j);
    uint32_t z = zech_[j - i];
    if (z == kZechZero) return zero();
    return {uint32_t(1 + (i + z) % mult_order_)};
}

FieldElem Field::neg(FieldElem a) const {
    if (a.code == 0) return a;
    if (p_ == 2) return a;
    return {uint32_t(1 + (a.code - 1 + mult_order_ / 2) % mult_order_)};
}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
    if (a.code == 0 || b.code == 0) return zero();
    return {uint32_t(1 + (uint64_t(a.code - 1) + (b.code - 1)) % mult_order_)};
}

FieldElem Field::inv(FieldElem a) const {
    if (a.code == 0) throw std::domain_error("inverse of zero");
    return {uint32_t(1 + (mult_order_ - (a.code - 1)) % mult_order_)};
}

FieldElem Field::pow(FieldElem a, int64_t e) const {
    if (a.code == 0) {
        if (e > 0) return zero();
        if (e == 0) return one();
        throw std::domain_error("negative power of zero");
    }
    int64_t L = int64_t(mult_order_);
    int64_t k = int64_t(a.code - 1) % L;
    __int128 prod = (__int128)k * (e % L);
    int64_t r = int64_t(((prod % L) + L) % L);
    return {uint32_t(1 + r)};
}

uint64_t Field::element_order(FieldElem a) const {
    if (a.code == 0) throw std::domain_error("order of zero");
    return mult_order_ / std::gcd(mult_order_, uint64_t(a.code - 1));
}

bool Field::is_nth_power(FieldElem c, uint64_t nn) const {
    if (c.code == 0) throw std::domain_error("is_nth_power: zero must be handled by the caller");
    if (nn == 0) return c.code == 1;
    uint64_t g = std::gcd(nn, mult_order_);
    return (c.code - 1) % g == 0;
}

bool Field::in_prime_subfield(FieldElem a) const {
    auto v = coeffs(a);
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] != 0) return false;
    return true;
}

std::string Field::to_string(FieldElem a) const {
    if (a.code == 0) return "0";
    if (in_prime_subfield(a)) return std::to_string(coeffs(a)[0]);
    uint64_t k = a.code - 1;
    return k == 1 ? "xi" : "xi^" + std::to_string(k);
}

Tower::Tower(uint64_t p, uint32_t n) : base_(p, n), ext_(p, 2 * n) {
    // embedding: send the residue class of x in F_q to the first root of the
    // base modulus found in F_{q^2} (enumeration order), then extend linearly
    const auto& mod = base_.modulus();
    FieldElem root{};
    bool found = false;
    for (uint64_t i = 0; i < ext_.order() && !found; ++i) {
        FieldElem cand = ext_.element_at(i);
        FieldElem acc = ext_.zero();
        for (size_t j = mod.size(); j-- > 0;)
            acc = ext_.add(ext_.mul(acc, cand), ext_.from_int(int64_t(mod[j])));
        if (ext_.is_zero(acc)) { root = cand; found = true; }
    }
    if (!found) throw std::logic_error("base modulus has no root in the extension");

    embed_.assign(base_.order(), ext_.zero());
    for (uint64_t i = 0; i < base_.order(); ++i) {
        FieldElem a = base_.element_at(i);
        auto digits = base_.coeffs(a);
        FieldElem acc = ext_.zero();
        for (size_t j = digits.size(); j-- > 0;)
            acc = ext_.add(ext_.mul(acc, root), ext_.from_int(int64_t(digits[j])));
        embed_[i] = acc;
    }
}

FieldElem Tower::embed(FieldElem a) const { return embed_[a.code]; }

FieldElem Tower::to_base(FieldElem a) const {
    for (uint64_t i = 0; i < base_.order(); ++i)
        if (embed_[i] == a) return base_.element_at(i);
    throw std::domain_error("element is not in the embedded subfield");
}

bool Tower::in_base(FieldElem a) const { return frobenius(a) == a; }

FieldElem Tower::frobenius(FieldElem a) const { return ext_.pow(a, int64_t(q())); }

std::vector<FieldElem> Tower::norm_one_set() const {
    std::vector<FieldElem> out;
    uint64_t step = q() - 1; // (q^2-1)/(q+1)
    for (uint64_t k = 0; k < q() + 1; ++k) out.push_back(ext_.xi_pow(int64_t(k * step)));
    return out;
}

} // namespace recip
