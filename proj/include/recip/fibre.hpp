#ifndef RECIP_FIBRE_HPP
#define RECIP_FIBRE_HPP

#include <string>
#include <vector>

#include "recip/kummer.hpp"

namespace recip {

enum class FibreFamily { THM61, THM63 };

/// One factor y_i^{m_i} = h_i(x) of a fibre product over the shared x-line.
struct FibreComponent {
    int64_t m = 0;
    int64_t s = 0;
    Poly f;            // over F_q
    Poly fstar;
    RationalFn h_base; // over F_q
    RationalFn h_ext;
};

/// Fibre product of two Kummer covers: THM61 components are f f*/x^s
/// (m_i | q+1 recorded), THM63 components are x^s f/f* (m_i | q-1 recorded).
/// Theorem-hypothesis breaches are recorded as notes, not errors; only the
/// type invariants (p coprime to m1 m2, f_i(0) != 0, f_i separable) are hard.
struct FibreProduct {
    const Tower* tw = nullptr;
    FibreFamily family = FibreFamily::THM61;
    FibreComponent comp[2];
    int64_t kappa = 0; // gcd(m1 m2, s1 m2, s2 m1)
    std::vector<std::string> hypothesis_notes;
};

FibreProduct make_fibre_product(const Tower& tw, FibreFamily family, int64_t m1, int64_t s1,
                                const Poly& f1, int64_t m2, int64_t s2, const Poly& f2);

/// degree certificate for [F_{q^2}(X) : F_{q^2}(x)] = m1 m2
DegreeCertificate validate_fibre(const FibreProduct& fp);

/// Splitting data above x = alpha: kappa_alpha = gcd(m1 m2, k1 m2, k2 m1)
/// rational places when the unit condition holds on a basis of the lattice
/// { (a,b) : a k1 M/m1 + b k2 M/m2 = 0 mod M }, M = lcm(m1, m2), else none.
struct SplitData {
    int64_t kappa = 0;
    bool rational = false;
};
SplitData kappa_at(const FibreProduct& fp, ProjPoint at);

enum class FibreGenusMode { CLOSED61, CLOSED63, GENERAL };
int64_t genus_fibre(const FibreProduct& fp, FibreGenusMode mode);

CountReport count_points_fibre(const FibreProduct& fp, int threads = 1);

int64_t lower_bound_fibre(const FibreProduct& fp);

} // namespace recip

#endif
