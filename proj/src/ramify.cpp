#include "recip/ramify.hpp"

#include <numeric>
#include <stdexcept>

namespace recip {

namespace {

int64_t gcd3(int64_t a, int64_t b, int64_t c) { return std::gcd(std::gcd(a, b), c); }

// extended gcd: g = ax + by, g >= 0
int64_t ext_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    int64_t x1, y1;
    int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

int64_t mod_pos(int64_t a, int64_t n) { return ((a % n) + n) % n; }

} // namespace

std::vector<BranchClass> joint_branch_classes(const RationalFn& h1, const RationalFn* h2) {
    // squarefree parts carry (poly, vanishing order); refining the two lists
    // against each other by gcd splits them into packets with well-defined
    // joint orders (k1, k2) without any irreducible factorization
    struct Part {
        Poly poly;
        int64_t k1, k2;
    };
    auto parts_of = [](const RationalFn& h, bool second) {
        std::vector<Part> out;
        for (const Poly* side : {&h.num, &h.den}) {
            int sign = side == &h.num ? 1 : -1;
            if (side->degree() < 1) continue;
            for (auto& [sq, mult] : squarefree_parts(*side)) {
                Part p{sq, 0, 0};
                (second ? p.k2 : p.k1) = sign * mult;
                out.push_back(std::move(p));
            }
        }
        return out;
    };
    std::vector<Part> a = parts_of(h1, false);
    std::vector<Part> refined;
    if (h2) {
        for (Part& b : parts_of(*h2, true)) {
            for (Part& x : a) {
                if (x.poly.degree() < 1 || b.poly.degree() < 1) continue;
                Poly g = gcd_poly(x.poly, b.poly);
                if (g.degree() > 0) {
                    refined.push_back({g, x.k1, b.k2});
                    x.poly = divmod(x.poly, g).first;
                    b.poly = divmod(b.poly, g).first;
                }
            }
            if (b.poly.degree() > 0) refined.push_back(std::move(b));
        }
    }
    for (Part& x : a)
        if (x.poly.degree() > 0) refined.push_back(std::move(x));

    std::sort(refined.begin(), refined.end(),
              [](const Part& l, const Part& r) { return Poly::less(l.poly, r.poly); });
    std::vector<BranchClass> out;
    for (const Part& p : refined)
        if (p.k1 != 0 || p.k2 != 0) out.push_back({p.poly.degree(), p.k1, p.k2});
    int64_t kinf1 = int64_t(h1.den.degree()) - int64_t(h1.num.degree());
    int64_t kinf2 = h2 ? int64_t(h2->den.degree()) - int64_t(h2->num.degree()) : 0;
    if (kinf1 != 0 || kinf2 != 0) out.push_back({1, kinf1, kinf2});
    return out;
}

int64_t tame_genus(int64_t m1, int64_t m2, const std::vector<BranchClass>& classes) {
    int64_t M = m1 * m2;
    int64_t diff = 0;
    for (const auto& c : classes) {
        int64_t kappa = gcd3(M, c.k1 * m2, c.k2 * m1);
        diff += c.npoints * (M - kappa);
    }
    int64_t two_g = -2 * M + 2 + diff;
    if (two_g % 2 != 0) throw std::logic_error("tame Riemann-Hurwitz gave an odd value");
    if (two_g < 0) throw std::logic_error("tame Riemann-Hurwitz gave negative genus");
    return two_g / 2;
}

int64_t reducibility_index(int64_t m, const std::vector<BranchClass>& classes) {
    int64_t g = m;
    for (const auto& c : classes) g = std::gcd(g, c.k1);
    return g;
}

Lattice2 solve_congruence_lattice(int64_t A, int64_t B, int64_t N) {
    if (N <= 0) throw std::invalid_argument("lattice modulus must be positive");
    A = mod_pos(A, N);
    B = mod_pos(B, N);
    int64_t gA = std::gcd(A, N); // N when A == 0
    Lattice2 L{};
    L.a1 = N / gA;
    L.b1 = 0;
    int64_t b0 = gA / std::gcd(gA, B);
    int64_t a0 = 0;
    if (A != 0) {
        int64_t C = mod_pos(-mod_pos(b0 * B, N), N); // solve a*A = C (mod N)
        int64_t x, y;
        ext_gcd(A, N, x, y); // A x + N y = gA, so x inverts A/gA mod N/gA
        int64_t Ng = N / gA;
        a0 = mod_pos((C / gA) % Ng * mod_pos(x, Ng) % Ng, Ng);
    }
    L.a2 = a0;
    L.b2 = b0;
    return L;
}

DegreeCertificate degree_certificate(int64_t m1, int64_t m2,
                                     const std::vector<BranchClass>& classes) {
    int64_t N = std::lcm(m1, m2);
    // kernel basis of (a,b) -> a*(N/m1)*k1 + b*(N/m2)*k2 mod N over all classes,
    // kept in upper-triangular form with small entries
    int64_t v1a = 1, v1b = 0;
    int64_t v2a = 0, v2b = 1;
    auto reduce = [&]() {
        while (v2a != 0) {
            int64_t t = v1a / v2a;
            int64_t na = v1a - t * v2a, nb = v1b - t * v2b;
            v1a = v2a;
            v1b = v2b;
            v2a = na;
            v2b = nb;
        }
        if (v1a < 0) { v1a = -v1a; v1b = -v1b; }
        if (v2b < 0) v2b = -v2b;
        if (v2b != 0) v1b = mod_pos(v1b, v2b);
    };
    for (const auto& c : classes) {
        int64_t u1 = mod_pos((N / m1) * mod_pos(c.k1, N) % N, N);
        int64_t u2 = mod_pos((N / m2) * mod_pos(c.k2, N) % N, N);
        auto lval = [&](int64_t va, int64_t vb) {
            __int128 s = __int128(va) * u1 + __int128(vb) * u2;
            return mod_pos(int64_t(s % N), N);
        };
        int64_t A = lval(v1a, v1b), B = lval(v2a, v2b);
        Lattice2 sol = solve_congruence_lattice(A, B, N);
        int64_t w1a = sol.a1 * v1a + sol.b1 * v2a, w1b = sol.a1 * v1b + sol.b1 * v2b;
        int64_t w2a = sol.a2 * v1a + sol.b2 * v2a, w2b = sol.a2 * v1b + sol.b2 * v2b;
        v1a = w1a; v1b = w1b; v2a = w2a; v2b = w2b;
        reduce();
    }
    __int128 det = __int128(v1a) * v2b - __int128(v1b) * v2a;
    int64_t index = det < 0 ? int64_t(-det) : int64_t(det);
    DegreeCertificate cert;
    cert.degree = index;
    cert.ok = index == m1 * m2;
    if (!cert.ok) {
        int64_t a = v1a, b = v1b;
        if (a % m1 == 0 && b % m2 == 0) { a = v2a; b = v2b; }
        int64_t A = a * (N / m1), B = b * (N / m2);
        int64_t t = gcd3(A, B, N);
        cert.witness_a = A / t;
        cert.witness_b = B / t;
        cert.witness_n = N / t;
    }
    return cert;
}

} // namespace recip
