#ifndef RECIP_POLY_HPP
#define RECIP_POLY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recip/field.hpp"

namespace recip {

/// Dense univariate polynomial over a Field. Coefficients ascending,
/// highest index nonzero; the zero polynomial has an empty vector.
class Poly {
  public:
    Poly() : f_(nullptr) {}
    explicit Poly(const Field& f) : f_(&f) {}
    Poly(const Field& f, std::vector<FieldElem> coeffs);

    static Poly zero(const Field& f) { return Poly(f); }
    static Poly constant(const Field& f, FieldElem c);
    static Poly one(const Field& f) { return constant(f, f.one()); }
    static Poly x(const Field& f);
    static Poly x_pow(const Field& f, uint64_t e);
    /// coefficients given as integers in the prime subfield
    static Poly from_ints(const Field& f, const std::vector<int64_t>& coeffs);

    const Field& field() const { return *f_; }
    int degree() const { return int(c_.size()) - 1; } // -1 for the zero poly
    bool is_zero() const { return c_.empty(); }
    FieldElem coeff(size_t i) const { return i < c_.size() ? c_[i] : FieldElem{0}; }
    FieldElem lc() const;
    const std::vector<FieldElem>& coeffs() const { return c_; }

    FieldElem eval(FieldElem a) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(FieldElem c) const;
    Poly monic() const;
    Poly pow(uint64_t e) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    /// deterministic order: degree, then coefficient codes from the top
    static bool less(const Poly& a, const Poly& b);

    std::string to_string(const std::string& var = "x") const;

  private:
    const Field* f_;
    std::vector<FieldElem> c_;
    void trim();
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly gcd_poly(const Poly& a, const Poly& b); // monic
Poly derivative(const Poly& a);
/// x^d f(1/x): the coefficient sequence reversed; f must be nonzero
Poly reciprocal(const Poly& f);
bool is_separable(const Poly& f); // deg f >= 1
/// a^e mod m
Poly poly_powmod(const Poly& a, uint64_t e, const Poly& m);
/// remainder and quotient of synthetic division by (x - alpha)
std::pair<Poly, FieldElem> deflate(const Poly& f, FieldElem alpha);

/// number of distinct roots of f in the given subset
int64_t count_roots(const Poly& f, const std::vector<FieldElem>& subset);
int64_t count_roots_in_field(const Poly& f); // over the coefficient field
/// polynomial with base-field coefficients re-interpreted over tower.ext()
Poly embed_poly(const Tower& tw, const Poly& f_base);

/// parses the CLI grammar: terms joined by +/-, each a product of an optional
/// coefficient (integer, xi, xi^k) and an optional power of x. xi_multiplier
/// rewrites every xi^k as xi^{u k}, which re-bases the text onto another
/// primitive-element convention.
Poly parse_poly(const Field& f, const std::string& text, int64_t xi_multiplier = 1);

/// Rational function, stored reduced with monic denominator.
struct RationalFn {
    Poly num, den;
};
RationalFn make_rational(Poly num, Poly den);
RationalFn embed_rational(const Tower& tw, const RationalFn& h);

/// A point of P^1: either an element of the field or the point at infinity.
struct ProjPoint {
    bool infinite = false;
    FieldElem x{};
    static ProjPoint at(FieldElem a) { return {false, a}; }
    static ProjPoint infinity() { return {true, {}}; }
};

/// h(x) = (x-a)^k g(x) with g(a) = unit != 0; at infinity k is
/// deg den - deg num and unit the ratio of leading coefficients.
struct BranchData {
    ProjPoint point;
    int64_t k = 0;
    FieldElem unit{};
};
BranchData branch_decompose(const RationalFn& h, ProjPoint at);

/// full factorization into monic irreducibles over the coefficient field,
/// denominator factors with negative multiplicity; constants give an empty
/// profile. Trial division; intended for the small fields used here.
std::vector<std::pair<Poly, int>> factor(const Poly& f);
std::vector<std::pair<Poly, int>> squarefree_multiplicity_profile(const RationalFn& h);

/// char-p squarefree decomposition: pairwise-coprime monic squarefree parts
/// with their multiplicities, product reconstructing f up to the leading
/// coefficient
std::vector<std::pair<Poly, int>> squarefree_parts(const Poly& f);

} // namespace recip

#endif
