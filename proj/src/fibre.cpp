#include "recip/fibre.hpp"

#include <numeric>
#include <stdexcept>
#include <thread>

namespace recip {

namespace {

int64_t gcdl(int64_t a, int64_t b) { return std::gcd(a, b); }
int64_t gcd3(int64_t a, int64_t b, int64_t c) { return std::gcd(std::gcd(a, b), c); }

FibreComponent build_component(const Tower& tw, FibreFamily family, int64_t m, int64_t s,
                               const Poly& f) {
    const Field& F = tw.base();
    if (f.degree() < 1) throw std::invalid_argument("component f must have degree >= 1");
    if (f.eval(F.zero()).code == 0) throw std::invalid_argument("component f(0) must be nonzero");
    if (s < 0) throw std::invalid_argument("component s must be nonnegative");
    FibreComponent c;
    c.m = m;
    c.s = s;
    c.f = f;
    c.fstar = reciprocal(f);
    Poly num = Poly::one(F), den = Poly::one(F);
    if (family == FibreFamily::THM61) {
        num = c.f * c.fstar;
        den = Poly::x_pow(F, uint64_t(s));
    } else {
        num = Poly::x_pow(F, uint64_t(s)) * c.f;
        den = c.fstar;
    }
    c.h_base = make_rational(std::move(num), std::move(den));
    c.h_ext = embed_rational(tw, c.h_base);
    return c;
}

} // namespace

FibreProduct make_fibre_product(const Tower& tw, FibreFamily family, int64_t m1, int64_t s1,
                                const Poly& f1, int64_t m2, int64_t s2, const Poly& f2) {
    if (m1 < 1 || m2 < 1) throw std::invalid_argument("cover degrees must be >= 1");
    if ((m1 * m2) % int64_t(tw.base().p()) == 0)
        throw std::invalid_argument("p divides m1*m2: the covers are not tame");
    FibreProduct fp;
    fp.tw = &tw;
    fp.family = family;
    fp.comp[0] = build_component(tw, family, m1, s1, f1);
    fp.comp[1] = build_component(tw, family, m2, s2, f2);
    fp.kappa = gcd3(m1 * m2, s1 * m2, s2 * m1);

    int64_t q = int64_t(tw.q());
    auto& notes = fp.hypothesis_notes;
    for (int i = 0; i < 2; ++i) {
        const auto& c = fp.comp[i];
        std::string tag = "component " + std::to_string(i + 1);
        if (family == FibreFamily::THM61 && (q + 1) % c.m != 0)
            notes.push_back(tag + ": m does not divide q+1");
        if (family == FibreFamily::THM63 && (q - 1) % c.m != 0)
            notes.push_back(tag + ": m does not divide q-1");
        if (c.s >= c.m) notes.push_back(tag + ": s is not in [0, m)");
        if (!is_separable(c.f)) notes.push_back(tag + ": f is not separable");
        if (gcd_poly(c.f, c.fstar).degree() != 0) notes.push_back(tag + ": (f, f*) != 1");
    }
    Poly p1 = fp.comp[0].f * fp.comp[0].fstar;
    Poly p2 = fp.comp[1].f * fp.comp[1].fstar;
    if (gcd_poly(p1, p2).degree() != 0) notes.push_back("(f1 f1*, f2 f2*) != 1");
    return fp;
}

DegreeCertificate validate_fibre(const FibreProduct& fp) {
    auto classes = joint_branch_classes(fp.comp[0].h_base, &fp.comp[1].h_base);
    return degree_certificate(fp.comp[0].m, fp.comp[1].m, classes);
}

SplitData kappa_at(const FibreProduct& fp, ProjPoint at) {
    const Field& E = fp.tw->ext();
    int64_t m1 = fp.comp[0].m, m2 = fp.comp[1].m;
    BranchData b1 = branch_decompose(fp.comp[0].h_ext, at);
    BranchData b2 = branch_decompose(fp.comp[1].h_ext, at);
    SplitData out;
    out.kappa = gcd3(m1 * m2, b1.k * m2, b2.k * m1);

    int64_t M = std::lcm(m1, m2);
    int64_t Qm1 = int64_t(E.order()) - 1;
    int64_t gM = gcdl(M, Qm1);
    Lattice2 L = solve_congruence_lattice(b1.k % M * (M / m1) % M, b2.k % M * (M / m2) % M, M);
    int64_t l1 = int64_t(E.log(b1.unit));
    int64_t l2 = int64_t(E.log(b2.unit));
    auto basis_ok = [&](int64_t a, int64_t b) {
        // c1^{a M/m1} c2^{b M/m2} must be an M-th power
        __int128 ind = __int128(a) * (M / m1) * l1 + __int128(b) * (M / m2) * l2;
        int64_t r = int64_t(((ind % gM) + gM) % gM);
        return r == 0;
    };
    out.rational = basis_ok(L.a1, L.b1) && basis_ok(L.a2, L.b2);
    return out;
}

int64_t genus_fibre(const FibreProduct& fp, FibreGenusMode mode) {
    int64_t q = int64_t(fp.tw->q());
    int64_t m1 = fp.comp[0].m, m2 = fp.comp[1].m;
    int64_t s1 = fp.comp[0].s, s2 = fp.comp[1].s;
    int64_t d1 = fp.comp[0].f.degree(), d2 = fp.comp[1].f.degree();

    if (mode == FibreGenusMode::GENERAL) {
        auto classes = joint_branch_classes(fp.comp[0].h_base, &fp.comp[1].h_base);
        return tame_genus(m1, m2, classes);
    }

    auto require = [&](bool ok, const std::string& clause) {
        if (!ok) throw std::domain_error("fibre hypothesis failed: " + clause);
    };
    require(is_separable(fp.comp[0].f) && is_separable(fp.comp[1].f), "f_i separable");
    require(gcd_poly(fp.comp[0].f, fp.comp[0].fstar).degree() == 0, "(f1, f1*) = 1");
    require(gcd_poly(fp.comp[1].f, fp.comp[1].fstar).degree() == 0, "(f2, f2*) = 1");
    Poly p1 = fp.comp[0].f * fp.comp[0].fstar;
    Poly p2 = fp.comp[1].f * fp.comp[1].fstar;
    require(gcd_poly(p1, p2).degree() == 0, "(f1 f1*, f2 f2*) = 1");

    if (mode == FibreGenusMode::CLOSED61) {
        require(fp.family == FibreFamily::THM61, "components have the f f*/x^s shape");
        require((q + 1) % m1 == 0 && (q + 1) % m2 == 0, "m_i divides q+1");
        int64_t corr = fp.kappa + gcd3(m1 * m2, m2 * (2 * d1 - s1), m1 * (2 * d2 - s2));
        if (corr % 2 != 0) throw std::logic_error("fibre genus correction term is odd");
        return m1 * m2 * (d1 + d2) - d1 * m2 - d2 * m1 + 1 - corr / 2;
    }
    require(fp.family == FibreFamily::THM63, "components have the x^s f/f* shape");
    require((q - 1) % m1 == 0 && (q - 1) % m2 == 0, "m_i divides q-1");
    return m1 * m2 * (d1 + d2) - d1 * m2 - d2 * m1 + 1 - fp.kappa;
}

CountReport count_points_fibre(const FibreProduct& fp, int threads) {
    DegreeCertificate cert = validate_fibre(fp);
    if (!cert.ok)
        throw std::domain_error("fibre product is degenerate: h1^" + std::to_string(cert.witness_a) +
                                " h2^" + std::to_string(cert.witness_b) + " is a " +
                                std::to_string(cert.witness_n) + "-th power (degree " +
                                std::to_string(cert.degree) + ")");

    const Field& E = fp.tw->ext();
    uint64_t Q = E.order();
    int64_t q = int64_t(fp.tw->q());
    auto weight = [&](ProjPoint at) {
        SplitData sd = kappa_at(fp, at);
        return sd.rational ? sd.kappa : 0;
    };

    int64_t total = 0;
    if (threads <= 1) {
        for (uint64_t i = 0; i < Q; ++i) total += weight(ProjPoint::at(E.element_at(i)));
    } else {
        unsigned nt = unsigned(threads);
        std::vector<int64_t> partial(nt, 0);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                uint64_t lo = Q * t / nt, hi = Q * (t + 1) / nt;
                int64_t acc = 0;
                for (uint64_t i = lo; i < hi; ++i) acc += weight(ProjPoint::at(E.element_at(i)));
                partial[t] = acc;
            });
        for (auto& th : pool) th.join();
        for (int64_t v : partial) total += v;
    }
    total += weight(ProjPoint::infinity());

    CountReport r;
    r.points = total;
    r.method = "place-enumeration";
    r.genus = genus_fibre(fp, FibreGenusMode::GENERAL);
    r.hasse_weil_upper = q * q + 1 + 2 * r.genus * q;
    r.hasse_weil_slack = r.hasse_weil_upper - r.points;
    if (r.points > r.hasse_weil_upper || r.points < q * q + 1 - 2 * r.genus * q) {
        r.suspect = true;
        r.suspect_reason = "constant-field suspect: count violates Hasse-Weil";
    }
    r.maximal = is_maximal(r.points, r.genus, q);
    return r;
}

int64_t lower_bound_fibre(const FibreProduct& fp) {
    const Tower& tw = *fp.tw;
    int64_t q = int64_t(tw.q());
    int64_t m1 = fp.comp[0].m, m2 = fp.comp[1].m;
    auto require = [&](bool ok, const std::string& clause) {
        if (!ok) throw std::domain_error("fibre bound hypothesis failed: " + clause);
    };
    for (int i = 0; i < 2; ++i) {
        const auto& c = fp.comp[i];
        require(is_separable(c.f), "f_i separable");
        require(gcd_poly(c.f, c.fstar).degree() == 0, "(f_i, f_i*) = 1");
        const Field& F = tw.base();
        Poly xq1 = poly_powmod(Poly::x(F), tw.q() + 1, c.f) - Poly::one(F);
        require(!xq1.is_zero() && gcd_poly(c.f, xq1).degree() == 0, "(f_i, x^{q+1}-1) = 1");
    }
    require(gcd_poly(fp.comp[0].f * fp.comp[0].fstar, fp.comp[1].f * fp.comp[1].fstar).degree() == 0,
            "(f1 f1*, f2 f2*) = 1");
    if (fp.family == FibreFamily::THM63) {
        require((q - 1) % m1 == 0 && (q - 1) % m2 == 0, "m_i divides q-1");
        return m1 * m2 * (q + 1);
    }
    require((q + 1) % m1 == 0 && (q + 1) % m2 == 0, "m_i divides q+1");
    Poly p12 = fp.comp[0].f * fp.comp[1].f;
    const Field& F = tw.base();
    int64_t n12 = 0, n1 = 0, n2 = 0;
    for (uint64_t i = 1; i < F.order(); ++i) {
        FieldElem a = F.element_at(i);
        if (p12.eval(a).code == 0) ++n12;
        if (fp.comp[0].f.eval(a).code == 0) ++n1;
        if (fp.comp[1].f.eval(a).code == 0) ++n2;
    }
    int64_t d1 = fp.comp[0].f.degree(), d2 = fp.comp[1].f.degree();
    int64_t s1 = fp.comp[0].s, s2 = fp.comp[1].s;
    int64_t g = gcd3(q + 1, 2 * (d1 - s1), 2 * (d2 - s2));
    return m1 * m2 * (g + q - 3 - 2 * n12) + 2 * m2 * n1 + 2 * m1 * n2;
}

} // namespace recip
