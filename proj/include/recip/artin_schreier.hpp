#ifndef RECIP_ARTIN_SCHREIER_HPP
#define RECIP_ARTIN_SCHREIER_HPP

#include "recip/kummer.hpp"
#include "recip/poly.hpp"

namespace recip {

/// y^q + y = f(x) f*(x)/x^s over F_{q^2}. The left side is the relative
/// trace onto F_q, so a non-pole alpha carries q rational places when
/// h(alpha) lies in the embedded F_q and none otherwise; poles are totally
/// ramified and carry one place each.
struct ArtinSchreierCurve {
    const Tower* tw = nullptr;
    int64_t s = 0;
    Poly f;            // over F_q
    RationalFn h_base;
    RationalFn h_ext;
    int64_t pole_order_zero = 0; // 0 when x = 0 is not a pole
    int64_t pole_order_inf = 0;
};

ArtinSchreierCurve artin_schreier_curve(const Tower& tw, int64_t s, const Poly& f_base);

/// g = (q-1)/2 * (-2 + sum over poles of (d_P + 1)); rejects wild poles
int64_t genus_as(const ArtinSchreierCurve& c);

CountReport count_as(const ArtinSchreierCurve& c, int threads = 1);

} // namespace recip

#endif
