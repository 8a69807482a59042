#include "recip/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace recip {

void Poly::trim() {
    while (!c_.empty() && c_.back().code == 0) c_.pop_back();
}

Poly::Poly(const Field& f, std::vector<FieldElem> coeffs) : f_(&f), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Field& f, FieldElem c) {
    Poly out(f);
    if (c.code != 0) out.c_ = {c};
    return out;
}

Poly Poly::x(const Field& f) { return x_pow(f, 1); }

Poly Poly::x_pow(const Field& f, uint64_t e) {
    Poly out(f);
    out.c_.assign(e + 1, f.zero());
    out.c_.back() = f.one();
    return out;
}

Poly Poly::from_ints(const Field& f, const std::vector<int64_t>& coeffs) {
    Poly out(f);
    out.c_.reserve(coeffs.size());
    for (int64_t v : coeffs) out.c_.push_back(f.from_int(v));
    out.trim();
    return out;
}

FieldElem Poly::lc() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

FieldElem Poly::eval(FieldElem a) const {
    FieldElem acc = f_ ? f_->zero() : FieldElem{0};
    for (size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, a), c_[i]);
    return acc;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out(*f_);
    out.c_.resize(std::max(c_.size(), o.c_.size()), f_->zero());
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = f_->add(coeff(i), o.coeff(i));
    out.trim();
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out(*f_);
    out.c_.resize(std::max(c_.size(), o.c_.size()), f_->zero());
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = f_->sub(coeff(i), o.coeff(i));
    out.trim();
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    Poly out(*f_);
    if (is_zero() || o.is_zero()) return out;
    out.c_.assign(c_.size() + o.c_.size() - 1, f_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].code == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            out.c_[i + j] = f_->add(out.c_[i + j], f_->mul(c_[i], o.c_[j]));
    }
    out.trim();
    return out;
}

Poly Poly::scaled(FieldElem c) const {
    Poly out(*f_);
    if (c.code == 0) return out;
    out.c_ = c_;
    for (auto& e : out.c_) e = f_->mul(e, c);
    return out;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(f_->inv(lc()));
}

Poly Poly::pow(uint64_t e) const {
    Poly r = Poly::one(*f_);
    Poly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool Poly::less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].code == 0) continue;
        if (!out.empty()) out += "+";
        std::string cs = f_->to_string(c_[i]);
        if (i == 0) {
            out += cs;
        } else {
            if (cs != "1") out += cs + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    const Field& F = a.field();
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly::zero(F), a};
    std::vector<FieldElem> rem(a.coeffs());
    int db = b.degree();
    std::vector<FieldElem> quo(size_t(a.degree() - db + 1), F.zero());
    FieldElem ilc = F.inv(b.lc());
    for (int i = a.degree(); i >= db; --i) {
        FieldElem c = F.mul(rem[size_t(i)], ilc);
        if (c.code != 0) {
            quo[size_t(i - db)] = c;
            for (int j = 0; j <= db; ++j)
                rem[size_t(i - db + j)] = F.sub(rem[size_t(i - db + j)], F.mul(c, b.coeff(size_t(j))));
        }
    }
    return {Poly(F, std::move(quo)), Poly(F, std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd_poly(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
    Poly u = a, v = b;
    while (!v.is_zero()) {
        Poly r = u % v;
        u = v;
        v = r;
    }
    return u.monic();
}

Poly derivative(const Poly& a) {
    const Field& F = a.field();
    if (a.degree() < 1) return Poly::zero(F);
    std::vector<FieldElem> out(size_t(a.degree()), F.zero());
    for (int i = 1; i <= a.degree(); ++i)
        out[i - 1] = F.mul(a.coeff(i), F.from_int(i));
    return Poly(F, std::move(out));
}

Poly reciprocal(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("reciprocal of the zero polynomial");
    std::vector<FieldElem> rev(f.coeffs().rbegin(), f.coeffs().rend());
    return Poly(f.field(), std::move(rev));
}

bool is_separable(const Poly& f) {
    if (f.degree() < 1) throw std::domain_error("separability needs degree >= 1");
    Poly d = derivative(f);
    if (d.is_zero()) return false;
    return gcd_poly(f, d).degree() == 0;
}

Poly poly_powmod(const Poly& a, uint64_t e, const Poly& m) {
    Poly r = Poly::one(a.field()) % m;
    Poly b = a % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

std::pair<Poly, FieldElem> deflate(const Poly& f, FieldElem alpha) {
    const Field& F = f.field();
    if (f.is_zero()) return {f, F.zero()};
    std::vector<FieldElem> q(size_t(std::max(f.degree(), 0)), F.zero());
    FieldElem carry = F.zero();
    for (size_t i = f.coeffs().size(); i-- > 0;) {
        carry = F.add(f.coeff(i), F.mul(carry, alpha));
        if (i > 0) q[i - 1] = carry;
    }
    return {Poly(F, std::move(q)), carry};
}

int64_t count_roots(const Poly& f, const std::vector<FieldElem>& subset) {
    int64_t n = 0;
    for (FieldElem a : subset)
        if (f.eval(a).code == 0) ++n;
    return n;
}

int64_t count_roots_in_field(const Poly& f) {
    const Field& F = f.field();
    int64_t n = 0;
    for (uint64_t i = 0; i < F.order(); ++i)
        if (f.eval(F.element_at(i)).code == 0) ++n;
    return n;
}

Poly embed_poly(const Tower& tw, const Poly& f_base) {
    std::vector<FieldElem> out;
    out.reserve(f_base.coeffs().size());
    for (FieldElem c : f_base.coeffs()) out.push_back(tw.embed(c));
    return Poly(tw.ext(), std::move(out));
}

namespace {

struct Parser {
    const Field& F;
    const std::string& s;
    int64_t xi_mult = 1;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(uint8_t(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    uint64_t integer() {
        skip();
        if (i >= s.size() || !std::isdigit(uint8_t(s[i]))) throw std::invalid_argument("expected integer in polynomial at position " + std::to_string(i));
        uint64_t v = 0;
        while (i < s.size() && std::isdigit(uint8_t(s[i]))) v = v * 10 + uint64_t(s[i++] - '0');
        return v;
    }

    // factor := INT | xi['^'INT] | x['^'INT]
    // stores either a coefficient or an x-power into the running term
    void factor(FieldElem& coef, uint64_t& xpow) {
        skip();
        if (i >= s.size()) throw std::invalid_argument("unexpected end of polynomial");
        if (std::isdigit(uint8_t(s[i]))) {
            uint64_t v = integer();
            FieldElem c = F.from_int(int64_t(v % F.p()));
            if (eat('^')) c = F.pow(c, int64_t(integer()));
            coef = F.mul(coef, c);
            return;
        }
        if (s.compare(i, 2, "xi") == 0) {
            i += 2;
            uint64_t e = 1;
            if (eat('^')) e = integer();
            coef = F.mul(coef, F.xi_pow(int64_t(e) * xi_mult));
            return;
        }
        if (s[i] == 'x') {
            ++i;
            uint64_t e = 1;
            if (eat('^')) e = integer();
            xpow += e;
            return;
        }
        throw std::invalid_argument(std::string("unexpected character '") + s[i] + "' in polynomial");
    }

    Poly run() {
        Poly acc = Poly::zero(F);
        bool neg = eat('-');
        while (true) {
            FieldElem coef = F.one();
            uint64_t xpow = 0;
            factor(coef, xpow);
            while (true) {
                skip();
                if (eat('*')) { factor(coef, xpow); continue; }
                if (i < s.size() && (s[i] == 'x' || std::isdigit(uint8_t(s[i])))) { factor(coef, xpow); continue; }
                break;
            }
            if (neg) coef = F.neg(coef);
            acc = acc + Poly::x_pow(F, xpow).scaled(coef);
            skip();
            if (i >= s.size()) return acc;
            if (eat('+')) neg = false;
            else if (eat('-')) neg = true;
            else throw std::invalid_argument("expected '+' or '-' in polynomial at position " + std::to_string(i));
        }
    }
};

} // namespace

Poly parse_poly(const Field& f, const std::string& text, int64_t xi_multiplier) {
    Parser p{f, text, xi_multiplier};
    p.skip();
    if (p.i >= text.size()) throw std::invalid_argument("empty polynomial");
    Poly out = p.run();
    return out;
}

RationalFn make_rational(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    const Field& F = num.field();
    if (num.is_zero()) return {num, Poly::one(F)};
    Poly g = gcd_poly(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    FieldElem dl = den.lc();
    if (dl != F.one()) {
        den = den.scaled(F.inv(dl));
        num = num.scaled(F.inv(dl));
    }
    return {num, den};
}

RationalFn embed_rational(const Tower& tw, const RationalFn& h) {
    return {embed_poly(tw, h.num), embed_poly(tw, h.den)};
}

BranchData branch_decompose(const RationalFn& h, ProjPoint at) {
    const Field& F = h.num.field();
    BranchData out;
    out.point = at;
    if (at.infinite) {
        out.k = int64_t(h.den.degree()) - int64_t(h.num.degree());
        out.unit = F.div(h.num.lc(), h.den.lc());
        return out;
    }
    FieldElem a = at.x;
    FieldElem nv = h.num.eval(a);
    FieldElem dv = h.den.eval(a);
    if (nv.code == 0 && dv.code == 0)
        throw std::domain_error("numerator and denominator both vanish: input not reduced");
    if (nv.code != 0 && dv.code != 0) {
        out.k = 0;
        out.unit = F.div(nv, dv);
        return out;
    }
    if (nv.code == 0) {
        Poly q = h.num;
        int64_t k = 0;
        FieldElem v;
        do {
            auto [qq, rem] = deflate(q, a);
            (void)rem;
            q = qq;
            ++k;
            v = q.eval(a);
        } while (v.code == 0);
        out.k = k;
        out.unit = F.div(v, dv);
        return out;
    }
    Poly q = h.den;
    int64_t k = 0;
    FieldElem v;
    do {
        auto [qq, rem] = deflate(q, a);
        (void)rem;
        q = qq;
        ++k;
        v = q.eval(a);
    } while (v.code == 0);
    out.k = -k;
    out.unit = F.div(nv, v);
    return out;
}

namespace {

// factors a monic squarefree-or-not polynomial by trial division:
// linear factors by a field scan, then monic candidates of degree 2, 3, ...
void factor_monic_into(Poly f, std::vector<std::pair<Poly, int>>& out) {
    const Field& F = f.field();
    // linear factors
    for (uint64_t i = 0; i < F.order() && f.degree() > 0; ++i) {
        FieldElem a = F.element_at(i);
        if (f.eval(a).code != 0) continue;
        int mult = 0;
        while (f.eval(a).code == 0 && f.degree() > 0) {
            f = deflate(f, a).first;
            ++mult;
        }
        Poly lin = Poly::x(F) - Poly::constant(F, a);
        out.emplace_back(lin, mult);
    }
    for (int d = 2; 2 * d <= f.degree(); ++d) {
        uint64_t count = 1;
        for (int i = 0; i < d; ++i) {
            count *= F.order();
            if (count > (uint64_t(1) << 23))
                throw std::domain_error("factorization: trial-division candidate set too large");
        }
        for (uint64_t v = 0; v < count && 2 * d <= f.degree(); ++v) {
            std::vector<FieldElem> cs(size_t(d) + 1, F.zero());
            uint64_t t = v;
            for (int j = 0; j < d; ++j) {
                cs[size_t(j)] = F.element_at(t % F.order());
                t /= F.order();
            }
            cs[size_t(d)] = F.one();
            Poly cand(F, std::move(cs));
            if (cand.eval(F.zero()).code == 0) continue; // x divides; linears are gone
            int mult = 0;
            while (true) {
                auto [q, r] = divmod(f, cand);
                if (!r.is_zero()) break;
                f = q;
                ++mult;
            }
            if (mult > 0) {
                // candidates of lower degree were exhausted first, so cand is irreducible
                out.emplace_back(cand, mult);
            }
        }
    }
    if (f.degree() > 0) out.emplace_back(f, 1);
}

} // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("factorization of the zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    if (f.degree() == 0) return out;
    factor_monic_into(f.monic(), out);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return Poly::less(a.first, b.first); });
    return out;
}

namespace {

// p-th root of a polynomial in x^p: c x^{jp} -> c^{1/p} x^j
Poly pth_root(const Poly& f) {
    const Field& F = f.field();
    uint64_t p = F.p();
    std::vector<FieldElem> out(size_t(f.degree() / int64_t(p)) + 1, F.zero());
    for (int i = 0; i <= f.degree(); i += int(p))
        out[size_t(i / int(p))] = F.pow(f.coeff(size_t(i)), int64_t(F.order() / p));
    return Poly(F, std::move(out));
}

void squarefree_into(Poly f, int scale, std::vector<std::pair<Poly, int>>& out) {
    const Field& F = f.field();
    f = f.monic();
    if (f.degree() < 1) return;
    Poly d = derivative(f);
    if (d.is_zero()) {
        squarefree_into(pth_root(f), scale * int(F.p()), out);
        return;
    }
    Poly g = gcd_poly(f, d);
    Poly w = divmod(f, g).first;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = gcd_poly(w, g);
        Poly z = divmod(w, y).first;
        if (z.degree() > 0) out.emplace_back(z, i * scale);
        w = y;
        g = divmod(g, y).first;
        ++i;
    }
    if (g.degree() > 0) squarefree_into(pth_root(g), scale * int(F.p()), out);
}

} // namespace

std::vector<std::pair<Poly, int>> squarefree_parts(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree decomposition of the zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    squarefree_into(f, 1, out);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return Poly::less(a.first, b.first); });
    return out;
}

std::vector<std::pair<Poly, int>> squarefree_multiplicity_profile(const RationalFn& h) {
    auto out = factor(h.num);
    for (auto& [fac, mult] : factor(h.den)) out.emplace_back(fac, -mult);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return Poly::less(a.first, b.first); });
    return out;
}

} // namespace recip
