#ifndef RECIP_KUMMER_HPP
#define RECIP_KUMMER_HPP

#include <optional>
#include <string>

#include "recip/poly.hpp"
#include "recip/ramify.hpp"
#include "recip/records.hpp"

namespace recip {

/// Genus, exact point count and bound checks for one curve over F_{q^2}.
struct CountReport {
    int64_t genus = 0;
    int64_t points = 0;
    std::string method;
    bool maximal = false;
    int64_t hasse_weil_upper = 0;
    int64_t hasse_weil_slack = 0;
    bool suspect = false;
    std::string suspect_reason;
    std::optional<Verdict> verdict;
};

/// Parameters of the reciprocal construction y^m = x^{eps*s} f(x) f*(x)^lam.
struct ReciprocalParams {
    int eps = -1;
    int lam = 1;
    int64_t s = 0;
    Poly f;      // over F_q
    Poly fstar;
    int d = 0;
    int d1 = 0;              // deg gcd(f, f*)
    bool separable = true;   // some source tables list non-separable f; the
                             // enumeration engine handles them, the closed
                             // formulas refuse them
    bool divides_q_plus_1 = false;  // m | q+1 (gates Thm 4.1-style bounds)
    bool divides_q_minus_1 = false; // m | q-1 (gates Thm 5.1-style bounds)
};

/// A Kummer cover y^m = h(x) of the x-line over F_{q^2} with h defined over
/// F_q. Carries the reciprocal-construction parameters when built that way.
struct KummerCurve {
    const Tower* tw = nullptr;
    int64_t m = 0;
    RationalFn h_base; // over F_q
    RationalFn h_ext;  // the same function with coefficients in F_{q^2}
    std::optional<ReciprocalParams> recip;
    std::string family; // thm41 | thm51 | generic | thm42 | prop43 | prop44
};

KummerCurve reciprocal_kummer(const Tower& tw, int64_t m, int64_t s, int eps, int lam,
                              const Poly& f_base);
/// y^{q+1} = (b x^{2d} + (b^2+1) x^d + b)/x^d, i.e. f f*/x^d for f = x^d + b
KummerCurve thm42_curve(const Tower& tw, int64_t d, FieldElem b);
/// y^{(q+1)/2} = (x^{2d} + b)/x^d
KummerCurve prop43_curve(const Tower& tw, int64_t d, FieldElem b);
/// y^{q+1} = (x^d + b)^2/x^d
KummerCurve prop44_curve(const Tower& tw, int64_t d, FieldElem b);

/// Closed genus formula for the reciprocal construction; requires d1 < d.
int64_t genus_general(const KummerCurve& c);
/// genus via the tame ramification engine (works for every family)
int64_t genus_engine(const KummerCurve& c);
/// genus by the closed formula when its hypotheses hold, engine otherwise
int64_t curve_genus(const KummerCurve& c);

/// number of rational places of the nonsingular model above x = alpha
/// (0 or gcd(m, k_alpha), decided by the unit power test of Remark-2.2 type)
int64_t places_above(const KummerCurve& c, ProjPoint at);

/// exact count by place enumeration over F_{q^2} plus infinity
CountReport count_points(const KummerCurve& c, int threads = 1);

enum class ClosedVariant { THM42, PROP43, PROP44 };
struct ClosedCount {
    int64_t genus;
    int64_t points;
    bool maximal_by_criterion;
};
/// closed count formulas; throws naming the violated hypothesis clause
ClosedCount closed_count(const KummerCurve& c, ClosedVariant variant);
ClosedCount closed_count_thm42(const Tower& tw, int64_t d, FieldElem b);
ClosedCount closed_count_prop43(const Tower& tw, int64_t d, FieldElem b);
ClosedCount closed_count_prop44(const Tower& tw, int64_t d, FieldElem b);

/// proved lower bounds on the exact count (Thm 4.1 / Thm 5.1 shape)
int64_t lower_bound(const KummerCurve& c);

bool is_maximal(int64_t points, int64_t genus, int64_t q);
bool is_maximal(const CountReport& r, int64_t q);

/// the exact many-points inequality for the Thm 4.2 family, checked in
/// integer arithmetic: sqrt(2) q (d(q-1)+1) + q^2 + 1 <= closed count
bool thm42_many_points_holds(int64_t q, int64_t d);

} // namespace recip

#endif
