#include "legz/gaussian_int.hpp"

#include <cctype>
#include <ostream>
#include <utility>

namespace legz {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

Integer isqrt(const Integer& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative input");
    return boost::multiprecision::sqrt(n);
}

bool re_im_less(const GaussianInt& a, const GaussianInt& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
}

bool norm_re_im_less(const GaussianInt& a, const GaussianInt& b) {
    Integer na = a.norm(), nb = b.norm();
    if (na != nb) return na < nb;
    return re_im_less(a, b);
}

GaussianInt unit_inverse(const GaussianInt& u) {
    if (!u.is_unit()) throw std::invalid_argument("unit_inverse: not a unit");
    return u.conj();
}

GaussianInt canonical_associate(const GaussianInt& g) {
    if (g.is_zero())
        throw std::invalid_argument("canonical_associate: zero has no associate");
    GaussianInt cur = g;
    for (int k = 0; k < 4; ++k) {
        if (cur.re() > 0 && cur.im() >= 0) return cur;
        cur = cur * GaussianInt::i();  // rotate through the associates
    }
    throw InvariantFault("canonical_associate: no quadrant representative found");
}

namespace {

// Nearest integer to u/v with halves rounded toward +infinity; v > 0.
Integer round_half_up(const Integer& u, const Integer& v) {
    return floor_div(2 * u + v, 2 * v);
}

}  // namespace

DivMod euclid_divmod(const GaussianInt& n, const GaussianInt& d) {
    if (d.is_zero()) throw std::invalid_argument("euclid_divmod: division by zero");
    GaussianInt w = n * d.conj();
    Integer nd = d.norm();
    GaussianInt q(round_half_up(w.re(), nd), round_half_up(w.im(), nd));
    GaussianInt r = n - q * d;
    if (2 * r.norm() > nd)
        throw InvariantFault("euclid_divmod: remainder bound violated");
    return DivMod{q, r};
}

std::optional<GaussianInt> try_exact_div(const GaussianInt& n, const GaussianInt& d) {
    if (d.is_zero()) return std::nullopt;
    GaussianInt w = n * d.conj();
    Integer nd = d.norm();
    if (w.re() % nd != 0 || w.im() % nd != 0) return std::nullopt;
    return GaussianInt(w.re() / nd, w.im() / nd);
}

GaussianInt exact_div(const GaussianInt& n, const GaussianInt& d) {
    auto q = try_exact_div(n, d);
    if (!q)
        throw InvariantFault("exact_div: " + to_string(d) + " does not divide " +
                             to_string(n));
    return *q;
}

bool divides(const GaussianInt& d, const GaussianInt& n) {
    if (d.is_zero()) return n.is_zero();
    return try_exact_div(n, d).has_value();
}

GaussianInt gcd(const GaussianInt& g, const GaussianInt& h) {
    if (g.is_zero() && h.is_zero())
        throw std::invalid_argument("gcd: gcd(0, 0) is undefined");
    GaussianInt a = g, b = h;
    while (!b.is_zero()) {
        GaussianInt r = euclid_divmod(a, b).rem;
        a = b;
        b = r;
    }
    return canonical_associate(a);
}

GaussianInt gcd(const GaussianInt& g, const GaussianInt& h, const GaussianInt& k) {
    GaussianInt acc;  // zero
    for (const GaussianInt* p : {&g, &h, &k}) {
        if (p->is_zero()) continue;
        acc = acc.is_zero() ? canonical_associate(*p) : gcd(acc, *p);
        if (acc.is_unit()) return acc;  // cannot get smaller
    }
    if (acc.is_zero()) throw std::invalid_argument("gcd: all arguments are zero");
    return acc;
}

BezoutPair bezout(const GaussianInt& x0, const GaussianInt& y0, const GaussianInt& d) {
    if (x0.is_zero() && y0.is_zero())
        throw std::invalid_argument("bezout: both generators are zero");

    // Extended Euclid on (x0, y0): maintain r = s*x0 + t*y0.
    GaussianInt r0 = x0, r1 = y0;
    GaussianInt s0(1), s1(0), t0(0), t1(1);
    while (!r1.is_zero()) {
        DivMod dm = euclid_divmod(r0, r1);
        GaussianInt r2 = dm.rem;
        GaussianInt s2 = s0 - dm.quot * s1;
        GaussianInt t2 = t0 - dm.quot * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (!r0.is_unit())
        throw NonCoprimeError("bezout: gcd(" + to_string(x0) + ", " + to_string(y0) +
                              ") is not a unit");
    // s0*x0 + t0*y0 = r0 (a unit).  Scale so that y0*X - x0*Y = d.
    GaussianInt w = d * unit_inverse(r0);
    GaussianInt X = t0 * w;
    GaussianInt Y = -(s0 * w);

    // Size-reduce along the homogeneous solution line k*(x0, y0), bringing
    // Y into the divmod remainder range of y0 (X when y0 = 0).
    if (!y0.is_zero()) {
        GaussianInt q = euclid_divmod(Y, y0).quot;
        X -= q * x0;
        Y -= q * y0;
    } else {
        GaussianInt q = euclid_divmod(X, x0).quot;
        X -= q * x0;
    }
    if (y0 * X - x0 * Y != d)
        throw InvariantFault("bezout: combination does not reproduce d");
    return BezoutPair{X, Y};
}

std::optional<GaussianInt> gaussian_sqrt(const GaussianInt& g) {
    if (g.is_zero()) return GaussianInt();
    // If w^2 = g then norm(w) = isqrt(norm(g)) and, writing w = p + qi,
    // p^2 = (norm(w) + re(g))/2 and q^2 = (norm(w) - re(g))/2.
    Integer n = g.norm();
    Integer s = isqrt(n);
    if (s * s != n) return std::nullopt;
    Integer p2 = s + g.re();
    Integer q2 = s - g.re();
    if (p2 % 2 != 0 || q2 % 2 != 0) return std::nullopt;
    p2 /= 2;
    q2 /= 2;
    Integer p = isqrt(p2), q = isqrt(q2);
    if (p * p != p2 || q * q != q2) return std::nullopt;
    GaussianInt w;
    if (p == 0) {
        w = GaussianInt(0, q);
    } else {
        // Sign of q is fixed by im(g) = 2pq with p > 0.
        w = GaussianInt(p, g.im() >= 0 ? q : -q);
    }
    if (w * w != g) return std::nullopt;
    return w;
}

std::string to_string(const GaussianInt& g) {
    if (g.im() == 0) return g.re().str();
    std::string im_digits;
    Integer abs_im = g.im() < 0 ? Integer(-g.im()) : g.im();
    if (abs_im != 1) im_digits = abs_im.str();
    if (g.re() == 0) return (g.im() < 0 ? "-" : "") + im_digits + "i";
    return g.re().str() + (g.im() < 0 ? "-" : "+") + im_digits + "i";
}

namespace {

// Scans [sign][digits] from pos.
struct ScannedTerm {
    Integer value;
    bool has_sign = false;
    bool has_digits = false;
    bool negative = false;
};

ScannedTerm scan_term(std::string_view s, std::size_t& pos) {
    ScannedTerm out;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        out.has_sign = true;
        out.negative = s[pos] == '-';
        ++pos;
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > start) {
        out.has_digits = true;
        out.value = Integer(std::string(s.substr(start, pos - start)));
        if (out.negative) out.value = -out.value;
    }
    return out;
}

}  // namespace

GaussianInt parse_gaussian(std::string_view text) {
    // Grammar: real | imag | real imag, where real is [sign]digits and imag
    // is [sign][digits]'i' (a missing digit run means 1, as in "i" or "2+i").
    // No whitespace anywhere.
    const auto fail = [&] {
        throw ParseError("malformed Gaussian integer \"" + std::string(text) + "\"");
    };
    const auto imag_value = [](const ScannedTerm& t) {
        return t.has_digits ? t.value : Integer(t.negative ? -1 : 1);
    };

    std::size_t pos = 0;
    ScannedTerm first = scan_term(text, pos);

    if (pos < text.size() && text[pos] == 'i') {
        ++pos;  // pure imaginary: "i", "-i", "7i", ...
        if (pos != text.size()) fail();
        return GaussianInt(0, imag_value(first));
    }
    if (!first.has_digits) fail();
    if (pos == text.size()) return GaussianInt(first.value);

    ScannedTerm second = scan_term(text, pos);
    if (!second.has_sign) fail();  // imaginary term needs an explicit +/-
    if (pos >= text.size() || text[pos] != 'i') fail();
    ++pos;
    if (pos != text.size()) fail();
    return GaussianInt(first.value, imag_value(second));
}

std::ostream& operator<<(std::ostream& os, const GaussianInt& g) {
    return os << to_string(g);
}

}  // namespace legz
