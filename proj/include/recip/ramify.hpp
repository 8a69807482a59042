#ifndef RECIP_RAMIFY_HPP
#define RECIP_RAMIFY_HPP

#include <cstdint>
#include <vector>

#include "recip/poly.hpp"

namespace recip {

/// A Galois-stable packet of geometric points of P^1 sharing the same
/// vanishing orders: `npoints` points (one irreducible factor over the
/// coefficient field, or the single point at infinity), with orders k1 / k2
/// in the two given rational functions.
struct BranchClass {
    int64_t npoints;
    int64_t k1;
    int64_t k2;
};

/// Branch classes of (h1, h2) over the coefficient field of h1, including the
/// point at infinity. h2 may be null (single cover; k2 = 0 throughout).
/// Classes with k1 = k2 = 0 are omitted.
std::vector<BranchClass> joint_branch_classes(const RationalFn& h1, const RationalFn* h2);

/// Genus of the compositum of y1^m1 = h1, y2^m2 = h2 over the rational
/// function field by tame Riemann-Hurwitz: the class at a point alpha has
/// kappa_alpha = gcd(m1 m2, k1 m2, k2 m1) points above it on the nonsingular
/// model, contributing m1 m2 - kappa_alpha to the different. Requires the
/// extension to have full degree m1*m2 (see degree_certificate). Use m2 = 1
/// for a single Kummer cover.
int64_t tame_genus(int64_t m1, int64_t m2, const std::vector<BranchClass>& classes);

/// gcd(m, all vanishing orders): 1 certifies that y^m = h is irreducible over
/// the algebraic closure (hence the constant field does not grow).
int64_t reducibility_index(int64_t m, const std::vector<BranchClass>& classes);

/// Degree check for the compositum: the classes of h1, h2 must generate a
/// subgroup of order m1*m2 in the divisor-class group mod N-th powers,
/// N = lcm(m1, m2). On failure, (a, b, n) witnesses h1^a h2^b being an n-th
/// power in the algebraic closure of the function field.
struct DegreeCertificate {
    bool ok = false;
    int64_t degree = 0;
    int64_t witness_a = 0, witness_b = 0, witness_n = 0;
};
DegreeCertificate degree_certificate(int64_t m1, int64_t m2,
                                     const std::vector<BranchClass>& classes);

/// Basis of the 2D integer lattice { (a,b) : a*A + b*B = 0 mod N }.
struct Lattice2 {
    int64_t a1, b1;
    int64_t a2, b2;
};
Lattice2 solve_congruence_lattice(int64_t A, int64_t B, int64_t N);

} // namespace recip

#endif
