#include "recip/kummer.hpp"

#include <numeric>
#include <stdexcept>
#include <thread>

namespace recip {

namespace {

int64_t gcdl(int64_t a, int64_t b) { return std::gcd(a, b); }

void check_poly_invariants(const Tower& tw, int64_t m, const Poly& f) {
    if (m < 2) throw std::invalid_argument("cover degree m must be >= 2");
    if (m % int64_t(tw.base().p()) == 0)
        throw std::invalid_argument("p divides m: the cover is not tame");
    if (f.degree() < 1) throw std::invalid_argument("f must have degree >= 1");
    if (f.eval(f.field().zero()).code == 0)
        throw std::invalid_argument("f(0) must be nonzero");
}

KummerCurve finish_curve(const Tower& tw, int64_t m, Poly num, Poly den, std::string family,
                         std::optional<ReciprocalParams> rp) {
    KummerCurve c;
    c.tw = &tw;
    c.m = m;
    c.h_base = make_rational(std::move(num), std::move(den));
    c.h_ext = embed_rational(tw, c.h_base);
    c.recip = std::move(rp);
    c.family = std::move(family);
    return c;
}

// N_f over a subset given as field elements of the same field as f
int64_t roots_in_base_nonzero(const Poly& f_base) {
    const Field& F = f_base.field();
    int64_t n = 0;
    for (uint64_t i = 1; i < F.order(); ++i)
        if (f_base.eval(F.element_at(i)).code == 0) ++n;
    return n;
}

int64_t roots_in_ext(const Tower& tw, const Poly& f_base) {
    Poly fe = embed_poly(tw, f_base);
    return count_roots_in_field(fe);
}

bool coprime_to_norm_one(const Tower& tw, const Poly& f_base) {
    // (f, x^{q+1} - 1) = 1  <=>  x^{q+1} mod f != 1 joined with gcd test
    const Field& F = f_base.field();
    Poly xq1 = poly_powmod(Poly::x(F), tw.q() + 1, f_base) - Poly::one(F);
    if (xq1.is_zero()) return f_base.degree() == 0;
    return gcd_poly(f_base, xq1).degree() == 0;
}

struct XdPlusB {
    int64_t d;
    FieldElem b;
};

// recognize f = x^d + b (monic binomial with nonzero constant term)
std::optional<XdPlusB> as_xd_plus_b(const Poly& f) {
    if (f.degree() < 1 || f.lc() != f.field().one()) return std::nullopt;
    if (f.coeff(0).code == 0) return std::nullopt;
    for (int i = 1; i < f.degree(); ++i)
        if (f.coeff(size_t(i)).code != 0) return std::nullopt;
    return XdPlusB{f.degree(), f.coeff(0)};
}

} // namespace

KummerCurve reciprocal_kummer(const Tower& tw, int64_t m, int64_t s, int eps, int lam,
                              const Poly& f_base) {
    if (s < 0) throw std::invalid_argument("s must be nonnegative");
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
    if (lam != 1 && lam != -1) throw std::invalid_argument("lam must be +1 or -1");
    check_poly_invariants(tw, m, f_base);

    const Field& F = tw.base();
    ReciprocalParams rp;
    rp.eps = eps;
    rp.lam = lam;
    rp.s = s;
    rp.f = f_base;
    rp.fstar = reciprocal(f_base);
    rp.d = f_base.degree();
    rp.d1 = gcd_poly(rp.f, rp.fstar).degree();
    rp.separable = is_separable(f_base);
    rp.divides_q_plus_1 = (int64_t(tw.q()) + 1) % m == 0;
    rp.divides_q_minus_1 = (int64_t(tw.q()) - 1) % m == 0;

    Poly num = Poly::one(F), den = Poly::one(F);
    num = num * rp.f;
    if (lam == 1) num = num * rp.fstar;
    else den = den * rp.fstar;
    int64_t e = int64_t(eps) * s;
    if (e >= 0) num = num * Poly::x_pow(F, uint64_t(e));
    else den = den * Poly::x_pow(F, uint64_t(-e));

    std::string family = (eps == -1 && lam == 1)  ? "thm41"
                         : (eps == 1 && lam == -1) ? "thm51"
                                                   : "generic";
    return finish_curve(tw, m, std::move(num), std::move(den), family, std::move(rp));
}

KummerCurve thm42_curve(const Tower& tw, int64_t d, FieldElem b) {
    const Field& F = tw.base();
    Poly f = Poly::x_pow(F, uint64_t(d)) + Poly::constant(F, b);
    KummerCurve c = reciprocal_kummer(tw, int64_t(tw.q()) + 1, d, -1, 1, f);
    c.family = "thm42";
    return c;
}

KummerCurve prop43_curve(const Tower& tw, int64_t d, FieldElem b) {
    const Field& F = tw.base();
    if (tw.q() % 2 == 0) throw std::invalid_argument("the (q+1)/2 cover needs q odd");
    if (b.code == 0 || F.mul(b, b) != F.one())
        throw std::invalid_argument("this family needs b^2 = 1");
    int64_t m = (int64_t(tw.q()) + 1) / 2;
    Poly f = Poly::x_pow(F, uint64_t(2 * d)) + Poly::constant(F, b);
    check_poly_invariants(tw, m, f);
    if (!is_separable(f)) throw std::invalid_argument("x^{2d}+b must be separable (p does not divide 2d)");
    ReciprocalParams rp;
    rp.eps = -1;
    rp.lam = 1;
    rp.s = d;
    rp.f = f;
    rp.fstar = reciprocal(f);
    rp.d = f.degree();
    rp.d1 = gcd_poly(rp.f, rp.fstar).degree();
    rp.separable = true;
    rp.divides_q_plus_1 = (int64_t(tw.q()) + 1) % m == 0;
    rp.divides_q_minus_1 = (int64_t(tw.q()) - 1) % m == 0;
    return finish_curve(tw, m, f, Poly::x_pow(F, uint64_t(d)), "prop43", rp);
}

KummerCurve prop44_curve(const Tower& tw, int64_t d, FieldElem b) {
    const Field& F = tw.base();
    if (b.code == 0 || F.mul(b, b) != F.one())
        throw std::invalid_argument("this family needs b^2 = 1");
    int64_t m = int64_t(tw.q()) + 1;
    Poly f = Poly::x_pow(F, uint64_t(d)) + Poly::constant(F, b);
    check_poly_invariants(tw, m, f);
    if (!is_separable(f)) throw std::invalid_argument("x^d+b must be separable (p does not divide d)");
    ReciprocalParams rp;
    rp.eps = -1;
    rp.lam = 1;
    rp.s = d;
    rp.f = f;
    rp.fstar = reciprocal(f);
    rp.d = f.degree();
    rp.d1 = gcd_poly(rp.f, rp.fstar).degree();
    rp.divides_q_plus_1 = true;
    rp.divides_q_minus_1 = false;
    return finish_curve(tw, m, f * f, Poly::x_pow(F, uint64_t(d)), "prop44", rp);
}

int64_t genus_general(const KummerCurve& c) {
    if (!c.recip) throw std::domain_error("genus_general needs the reciprocal construction parameters");
    const auto& rp = *c.recip;
    if (!rp.separable)
        throw std::domain_error("genus_general: f is not separable; "
                                "use the general ramification engine");
    if (rp.d1 >= rp.d)
        throw std::domain_error("genus_general: d1 = d (f self-reciprocal up to scalar); "
                                "use the general ramification engine");
    int64_t m = c.m, d = rp.d, d1 = rp.d1;
    int64_t corr = gcdl(m, rp.s) + gcdl(m, rp.eps * rp.s + d + d * rp.lam) +
                   d1 * gcdl(m, rp.lam + 1) + d1 * (m - 2);
    if (corr % 2 != 0) throw std::logic_error("genus correction term is odd");
    int64_t g = (m - 1) * d + 1 - corr / 2;
    if (g < 0) throw std::logic_error("negative genus from the closed formula");
    return g;
}

int64_t genus_engine(const KummerCurve& c) {
    auto classes = joint_branch_classes(c.h_base, nullptr);
    return tame_genus(c.m, 1, classes);
}

static bool genus_formula_applies(const KummerCurve& c) {
    return c.recip && c.recip->separable && c.recip->d1 < c.recip->d && c.family != "prop43" &&
           c.family != "prop44";
}

int64_t curve_genus(const KummerCurve& c) {
    return genus_formula_applies(c) ? genus_general(c) : genus_engine(c);
}

int64_t places_above(const KummerCurve& c, ProjPoint at) {
    const Field& E = c.tw->ext();
    BranchData bd = branch_decompose(c.h_ext, at);
    // gcd(m, k) places when the unit is a gcd(m, k)-power, none otherwise;
    // intersecting with q^2-1 keeps the count right for m not dividing q^2-1
    int64_t delta = gcdl(c.m, bd.k);
    int64_t gamma = gcdl(delta, int64_t(E.order()) - 1);
    return E.is_nth_power(bd.unit, uint64_t(delta)) ? gamma : 0;
}

CountReport count_points(const KummerCurve& c, int threads) {
    const Field& E = c.tw->ext();
    uint64_t Q = E.order();
    int64_t q = int64_t(c.tw->q());

    int64_t total = 0;
    if (threads <= 1) {
        for (uint64_t i = 0; i < Q; ++i)
            total += places_above(c, ProjPoint::at(E.element_at(i)));
    } else {
        unsigned nt = unsigned(threads);
        std::vector<int64_t> partial(nt, 0);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                uint64_t lo = Q * t / nt, hi = Q * (t + 1) / nt;
                int64_t acc = 0;
                for (uint64_t i = lo; i < hi; ++i)
                    acc += places_above(c, ProjPoint::at(E.element_at(i)));
                partial[t] = acc;
            });
        for (auto& th : pool) th.join();
        for (int64_t v : partial) total += v;
    }
    total += places_above(c, ProjPoint::infinity());

    CountReport r;
    r.points = total;
    r.method = "place-enumeration";

    auto classes = joint_branch_classes(c.h_base, nullptr);
    if (reducibility_index(c.m, classes) != 1) {
        r.suspect = true;
        r.suspect_reason = "constant-field/irreducibility suspect: h is a proper power";
    }
    try {
        r.genus = genus_formula_applies(c) ? genus_general(c) : tame_genus(c.m, 1, classes);
    } catch (const std::exception&) {
        // a degenerate cover has no genus; the suspect flag already says so
        if (!r.suspect) throw;
        r.genus = 0;
    }
    r.hasse_weil_upper = q * q + 1 + 2 * r.genus * q;
    r.hasse_weil_slack = r.hasse_weil_upper - r.points;
    if (r.points > r.hasse_weil_upper || r.points < q * q + 1 - 2 * r.genus * q) {
        r.suspect = true;
        r.suspect_reason = "constant-field/irreducibility suspect: count violates Hasse-Weil";
    }
    r.maximal = is_maximal(r.points, r.genus, q);
    return r;
}

ClosedCount closed_count_thm42(const Tower& tw, int64_t d, FieldElem b) {
    int64_t q = int64_t(tw.q());
    const Field& F = tw.base();
    if (b.code == 0) throw std::domain_error("Thm 4.2 hypothesis failed: b must be in F_q^*");
    if (F.mul(b, b) == F.one())
        throw std::domain_error("Thm 4.2 hypothesis failed: b^2 must differ from 1");
    if (d < 1 || (q + 1) % d != 0)
        throw std::domain_error("Thm 4.2 hypothesis failed: d must divide q+1");
    ClosedCount out;
    out.genus = d * (q - 1) + 1;
    out.points = d * (q * q - 1) + gcdl(d, 2) * (q + 1) * (q + 1) + 4 * d -
                 d * (q + 1) * (gcdl(q - 1, 2) + 2);
    out.maximal_by_criterion = out.points == q * q + 1 + 2 * out.genus * q;
    return out;
}

ClosedCount closed_count_prop43(const Tower& tw, int64_t d, FieldElem b) {
    int64_t q = int64_t(tw.q());
    const Field& F = tw.base();
    if (q % 2 == 0) throw std::domain_error("Prop 4.3 hypothesis failed: q must be odd");
    if (d < 1 || (q * q - 1) % (4 * d) != 0)
        throw std::domain_error("Prop 4.3 hypothesis failed: 4d must divide q^2-1");
    if (b.code == 0 || F.mul(b, b) != F.one())
        throw std::domain_error("Prop 4.3 hypothesis failed: b^2 must equal 1");
    ClosedCount out;
    out.genus = (d * (q - 1) + 2 - gcdl(2 * d, q + 1)) / 2;
    out.points = ((q + 1) * (q + 1) * gcdl(2 * d, q - 1) + (q * q + 1) * gcdl(2 * d, q + 1) -
                  2 * d * (3 * q + 1)) /
                 2;
    out.maximal_by_criterion = gcdl(2 * d, q + 1) + gcdl(2 * d, q - 1) == 2 * (d + 1);
    return out;
}

ClosedCount closed_count_prop44(const Tower& tw, int64_t d, FieldElem b) {
    int64_t q = int64_t(tw.q());
    const Field& F = tw.base();
    if (q % 2 == 0) throw std::domain_error("Prop 4.4 hypothesis failed: q must be odd");
    if (d < 1 || d % 2 == 0) throw std::domain_error("Prop 4.4 hypothesis failed: d must be odd");
    if (d % int64_t(F.p()) == 0)
        throw std::domain_error("Prop 4.4 hypothesis failed: p must not divide d");
    if (b.code == 0 || F.mul(b, b) != F.one())
        throw std::domain_error("Prop 4.4 hypothesis failed: b^2 must equal 1");
    ClosedCount out;
    out.genus = (d * (q - 1) + 2 - 2 * gcdl(d, q + 1)) / 2;
    out.points = (q * q + 1) * gcdl(d, q + 1) + (q + 1) * (q + 1) * gcdl(d, q - 1) -
                 (3 * q + 1) * gcdl(d, q * q - 1);
    out.maximal_by_criterion = gcdl(d, q + 1) == 1 || gcdl(d, q - 1) == 1;
    return out;
}

ClosedCount closed_count(const KummerCurve& c, ClosedVariant variant) {
    if (!c.recip) throw std::domain_error("closed count needs the x^d+b construction parameters");
    auto xb = as_xd_plus_b(c.recip->f);
    if (!xb) throw std::domain_error("closed count hypothesis failed: f is not of the form x^d+b");
    int64_t q = int64_t(c.tw->q());
    switch (variant) {
        case ClosedVariant::THM42:
            if (c.m != q + 1) throw std::domain_error("Thm 4.2 hypothesis failed: m must be q+1");
            if (c.recip->s != xb->d || c.recip->eps != -1 || c.recip->lam != 1)
                throw std::domain_error("Thm 4.2 hypothesis failed: curve must be f f*/x^d");
            return closed_count_thm42(*c.tw, xb->d, xb->b);
        case ClosedVariant::PROP43: {
            if (c.family != "prop43")
                throw std::domain_error("Prop 4.3 hypothesis failed: curve must be y^{(q+1)/2} = (x^{2d}+b)/x^d");
            if (xb->d % 2 != 0) throw std::domain_error("Prop 4.3 hypothesis failed: even-degree binomial expected");
            return closed_count_prop43(*c.tw, xb->d / 2, xb->b);
        }
        case ClosedVariant::PROP44:
            if (c.m != q + 1) throw std::domain_error("Prop 4.4 hypothesis failed: m must be q+1");
            if (c.family != "prop44" && !(c.recip->s == xb->d && c.recip->eps == -1 && c.recip->lam == 1))
                throw std::domain_error("Prop 4.4 hypothesis failed: curve must be (x^d+b)^2/x^d");
            return closed_count_prop44(*c.tw, xb->d, xb->b);
    }
    throw std::logic_error("unknown closed variant");
}

int64_t lower_bound(const KummerCurve& c) {
    if (!c.recip) throw std::domain_error("lower bound needs the reciprocal construction parameters");
    const auto& rp = *c.recip;
    const Tower& tw = *c.tw;
    int64_t q = int64_t(tw.q());
    if (!rp.separable) throw std::domain_error("lower bound hypothesis failed: f must be separable");
    if (rp.d1 != 0) throw std::domain_error("lower bound hypothesis failed: (f, f*) must be 1");
    if (!coprime_to_norm_one(tw, rp.f))
        throw std::domain_error("lower bound hypothesis failed: (f, x^{q+1}-1) must be 1");
    int64_t nf_ext = roots_in_ext(tw, rp.f);
    if (rp.eps == -1 && rp.lam == 1) {
        if (!rp.divides_q_plus_1)
            throw std::domain_error("lower bound hypothesis failed: m must divide q+1");
        int64_t nf_base_star = roots_in_base_nonzero(rp.f);
        int64_t g1 = gcdl(q + 1, 2 * (rp.d - rp.s));
        return c.m * (g1 + q - 3 - 2 * nf_base_star) + 2 * nf_ext;
    }
    if (rp.eps == 1 && rp.lam == -1) {
        if (!rp.divides_q_minus_1)
            throw std::domain_error("lower bound hypothesis failed: m must divide q-1");
        return 2 * nf_ext + c.m * (q + 1);
    }
    throw std::domain_error("lower bound applies to the (eps,lam) = (-1,1) and (1,-1) families");
}

bool is_maximal(int64_t points, int64_t genus, int64_t q) {
    return points == q * q + 1 + 2 * genus * q;
}

bool is_maximal(const CountReport& r, int64_t q) { return is_maximal(r.points, r.genus, q); }

bool thm42_many_points_holds(int64_t q, int64_t d) {
    // sqrt(2) q (d(q-1)+1) + q^2 + 1 <= closed count, decided exactly:
    // with R = count - q^2 - 1 and G = q(d(q-1)+1), holds iff 2 G^2 <= R^2
    if (d < 1 || (q + 1) % d != 0) return false; // no curve in the family
    int64_t count = d * (q * q - 1) + gcdl(d, 2) * (q + 1) * (q + 1) + 4 * d -
                    d * (q + 1) * (gcdl(q - 1, 2) + 2);
    int64_t R = count - q * q - 1;
    if (R < 0) return false;
    __int128 G = __int128(q) * (d * (q - 1) + 1);
    return 2 * G * G <= __int128(R) * R;
}

} // namespace recip
