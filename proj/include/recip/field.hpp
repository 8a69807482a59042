#ifndef RECIP_FIELD_HPP
#define RECIP_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace recip {

/// Element of a finite field, addressed by discrete log.
/// code == 0 is the zero element, code == 1 + k is xi^k.
struct FieldElem {
    uint32_t code = 0;
    friend bool operator==(FieldElem a, FieldElem b) { return a.code == b.code; }
    friend bool operator!=(FieldElem a, FieldElem b) { return a.code != b.code; }
    friend bool operator<(FieldElem a, FieldElem b) { return a.code < b.code; }
};

/// F_{p^n} with full exp/log/Zech tables. Immutable after construction;
/// all operations are const and safe to call concurrently.
///
/// Conventions (printed in every report header so results can be re-based):
///  - modulus: the monic irreducible of degree n over F_p whose coefficient
///    vector (c_0,...,c_{n-1}), read as the base-p integer sum c_i p^i, is
///    smallest; can be overridden to match an external table.
///  - xi: the first element with full multiplicative order in the
///    deterministic enumeration 1, 2, ..., t, t+1, ... (base-p digit order).
class Field {
  public:
    Field(uint64_t p, uint32_t n);
    Field(uint64_t p, uint32_t n, const std::vector<uint32_t>& modulus_low_coeffs);

    uint64_t p() const { return p_; }
    uint32_t degree() const { return n_; }
    uint64_t order() const { return q_; }
    /// modulus coefficients c_0..c_n (monic, c_n = 1)
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    FieldElem zero() const { return {0}; }
    FieldElem one() const { return {1}; }
    FieldElem xi() const { return q_ > 2 ? FieldElem{2} : one(); }
    FieldElem xi_pow(int64_t k) const;
    FieldElem from_int(int64_t c) const;
    FieldElem from_coeffs(const std::vector<uint32_t>& digits) const;
    std::vector<uint32_t> coeffs(FieldElem a) const;

    bool is_zero(FieldElem a) const { return a.code == 0; }
    uint64_t log(FieldElem a) const; // a != 0
    /// enumeration index 0..order-1: 0, xi^0, xi^1, ...
    FieldElem element_at(uint64_t idx) const;
    /// all elements in enumeration order
    std::vector<FieldElem> elements() const;

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem inv(FieldElem a) const;
    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
    FieldElem pow(FieldElem a, int64_t e) const;

    uint64_t element_order(FieldElem a) const;

    /// true iff y^nn = c has a solution; c must be nonzero. When true the
    /// number of solutions is gcd(nn, order-1). O(1) via the log table.
    bool is_nth_power(FieldElem c, uint64_t nn) const;

    /// in the prime subfield: returns the digit; otherwise no single int rep
    bool in_prime_subfield(FieldElem a) const;
    std::string to_string(FieldElem a) const;

  private:
    uint64_t p_;
    uint32_t n_;
    uint64_t q_;               // p^n
    uint64_t mult_order_;      // q - 1
    std::vector<uint32_t> modulus_;   // c_0..c_n, monic
    std::vector<uint32_t> exp_;       // packed rep of xi^k, k in [0, q-1)
    std::vector<uint32_t> logt_;      // packed rep -> log, logt_[packed(0)] unused
    std::vector<uint32_t> zech_;      // log(1 + xi^k), kZechZero if zero
    static constexpr uint32_t kZechZero = UINT32_MAX;

    void build(const std::vector<uint32_t>* forced_modulus);
    uint32_t pack_of(FieldElem a) const;
};

/// F_p in F_q in F_{q^2} with a ring embedding of F_q into F_{q^2}.
class Tower {
  public:
    Tower(uint64_t p, uint32_t n);

    const Field& base() const { return base_; }
    const Field& ext() const { return ext_; }
    uint64_t q() const { return base_.order(); }
    uint64_t q2() const { return ext_.order(); }

    FieldElem embed(FieldElem a) const;
    /// partial inverse of embed; throws if a is not in the embedded subfield
    FieldElem to_base(FieldElem a) const;
    bool in_base(FieldElem a) const;
    /// x -> x^q on F_{q^2}; fixes exactly the embedded F_q
    FieldElem frobenius(FieldElem a) const;
    /// the norm-one set mu_{q+1} = { a : a^{q+1} = 1 }
    std::vector<FieldElem> norm_one_set() const;

  private:
    Field base_;
    Field ext_;
    std::vector<FieldElem> embed_; // by base enumeration index
};

uint64_t isqrt_u64(uint64_t v);
bool is_prime_u64(uint64_t v);
/// factor v = p^n with p prime; throws if v is not a prime power
void prime_power_decompose(uint64_t v, uint64_t& p, uint32_t& n);

} // namespace recip

#endif
