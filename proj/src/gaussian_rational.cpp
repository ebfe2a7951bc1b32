#include "legz/gaussian_rational.hpp"

#include <ostream>

namespace legz {

GaussianRational::GaussianRational(const GaussianInt& num, const GaussianInt& den) {
    if (den.is_zero())
        throw std::invalid_argument("GaussianRational: zero denominator");
    if (num.is_zero()) {
        num_ = GaussianInt();
        den_ = GaussianInt(1);
        return;
    }
    GaussianInt g = gcd(num, den);
    GaussianInt n = exact_div(num, g);
    GaussianInt d = exact_div(den, g);
    // Move the residual unit of the denominator into the numerator.
    GaussianInt d_canon = canonical_associate(d);
    GaussianInt u = exact_div(d, d_canon);  // a unit
    num_ = n * unit_inverse(u);
    den_ = d_canon;
}

const GaussianInt& GaussianRational::to_integer() const {
    if (!is_integral())
        throw std::invalid_argument("GaussianRational: not an integer: " + to_string(*this));
    return num_;
}

Rational GaussianRational::squared_modulus() const {
    return Rational(num_.norm(), den_.norm());
}

GaussianInt nearest_lattice(const GaussianRational& q) {
    // q = w / n with n = norm(den) > 0 a rational integer.
    GaussianInt w = q.num() * q.den().conj();
    Integer n = q.den().norm();
    GaussianInt z(floor_div(2 * w.re() + n, 2 * n), floor_div(2 * w.im() + n, 2 * n));
    if ((GaussianRational(z) - q).squared_modulus() > Rational(1, 2))
        throw InvariantFault("nearest_lattice: rounding certificate violated");
    return z;
}

GaussianInt nearest_in_class(const GaussianRational& q, const GaussianInt& r) {
    if (r != GaussianInt(0) && r != GaussianInt(1))
        throw std::invalid_argument("nearest_in_class: class representative must be 0 or 1");
    bool want_even = r == GaussianInt(0);

    // The nearest unconstrained point is within distance sqrt(1/2) of q and
    // the nearest class point within 1, so a +-2 window around the former
    // certainly contains the latter.
    GaussianInt base = nearest_lattice(q);
    bool have = false;
    GaussianInt best;
    Rational best_dist;
    for (int dre = -2; dre <= 2; ++dre) {
        for (int dim = -2; dim <= 2; ++dim) {
            GaussianInt cand = base + GaussianInt(dre, dim);
            if (cand.is_even() != want_even) continue;
            Rational dist = (GaussianRational(cand) - q).squared_modulus();
            if (!have || dist < best_dist ||
                (dist == best_dist && re_im_less(best, cand))) {
                have = true;
                best = cand;
                best_dist = dist;
            }
        }
    }
    if (!have || best_dist > 1)
        throw InvariantFault("nearest_in_class: rounding certificate violated");
    return best;
}

std::string to_string(const GaussianRational& q) {
    if (q.is_integral()) return to_string(q.num());
    return "(" + to_string(q.num()) + ")/(" + to_string(q.den()) + ")";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& q) {
    return os << to_string(q);
}

}  // namespace legz
