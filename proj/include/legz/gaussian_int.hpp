#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "legz/errors.hpp"

namespace legz {

using Integer = boost::multiprecision::cpp_int;

// Floor division for arbitrary-precision integers (cpp_int's `/` truncates
// toward zero).
Integer floor_div(const Integer& a, const Integer& b);

// Largest s with s*s <= n.  Requires n >= 0.
Integer isqrt(const Integer& n);

// A Gaussian integer re + im*i with arbitrary-precision components.
// Immutable value type; all operations are pure.
class GaussianInt {
public:
    GaussianInt() : re_(0), im_(0) {}
    GaussianInt(Integer re) : re_(std::move(re)), im_(0) {}
    GaussianInt(Integer re, Integer im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianInt i() { return GaussianInt(0, 1); }

    const Integer& re() const { return re_; }
    const Integer& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }

    // norm(re + im*i) = re^2 + im^2; always a nonnegative rational integer.
    // The modulus |g| is only ever handled through this exact value.
    Integer norm() const { return re_ * re_ + im_ * im_; }

    bool is_unit() const { return norm() == 1; }

    GaussianInt conj() const { return GaussianInt(re_, -im_); }

    // True when (1+i) divides this value, i.e. re + im is even.
    bool is_even() const { return (re_ + im_) % 2 == 0; }

    GaussianInt operator-() const { return GaussianInt(-re_, -im_); }

    friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
        return GaussianInt(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
        return GaussianInt(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
        return GaussianInt(a.re_ * b.re_ - a.im_ * b.im_,
                           a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianInt& a, const GaussianInt& b) {
        return !(a == b);
    }

    GaussianInt& operator+=(const GaussianInt& o) { return *this = *this + o; }
    GaussianInt& operator-=(const GaussianInt& o) { return *this = *this - o; }
    GaussianInt& operator*=(const GaussianInt& o) { return *this = *this * o; }

private:
    Integer re_, im_;
};

// Deterministic orderings.  Gaussian integers carry no canonical arithmetic
// order, so these are named comparators rather than operator<.
bool re_im_less(const GaussianInt& a, const GaussianInt& b);
bool norm_re_im_less(const GaussianInt& a, const GaussianInt& b);

struct ReImLess {
    bool operator()(const GaussianInt& a, const GaussianInt& b) const {
        return re_im_less(a, b);
    }
};

// For a unit u, u^-1 = conj(u).  Throws std::invalid_argument otherwise.
GaussianInt unit_inverse(const GaussianInt& u);

// The unique associate with re > 0 and im >= 0.  Throws on zero input.
GaussianInt canonical_associate(const GaussianInt& g);

struct DivMod {
    GaussianInt quot;
    GaussianInt rem;
};

// Euclidean division: n = quot*d + rem with 2*norm(rem) <= norm(d).
// Each coordinate of n/d is rounded to the nearest integer, halves toward
// +infinity, so the remainder is a canonical representative of n mod d.
// Throws std::invalid_argument when d = 0.
DivMod euclid_divmod(const GaussianInt& n, const GaussianInt& d);

// Exact quotient n/d; std::nullopt when d does not divide n (or d = 0).
std::optional<GaussianInt> try_exact_div(const GaussianInt& n, const GaussianInt& d);

// Exact quotient n/d; throws InvariantFault when the division is not exact.
// Use only where divisibility is guaranteed by construction.
GaussianInt exact_div(const GaussianInt& n, const GaussianInt& d);

bool divides(const GaussianInt& d, const GaussianInt& n);

// Greatest common divisor as the canonical associate.  gcd(g, 0) = the
// canonical associate of g; gcd(0, 0) throws std::invalid_argument.
GaussianInt gcd(const GaussianInt& g, const GaussianInt& h);
GaussianInt gcd(const GaussianInt& g, const GaussianInt& h, const GaussianInt& k);

// Size-reduced (X, Y) with y0*X - x0*Y = d.  Requires gcd(x0, y0) to be a
// unit (throws NonCoprimeError otherwise; throws std::invalid_argument when
// both are zero).
struct BezoutPair {
    GaussianInt X;
    GaussianInt Y;
};
BezoutPair bezout(const GaussianInt& x0, const GaussianInt& y0, const GaussianInt& d);

// Exact square root in Z[i]: returns w with w*w = g, or std::nullopt when g
// is not a perfect square.
std::optional<GaussianInt> gaussian_sqrt(const GaussianInt& g);

// Text form used everywhere (CLI flags, traces, JSON): "re", "ki" or
// "re+ki"/"re-ki" with the digits of k omitted when k = 1 ("i", "2+i",
// "3-2i").  No whitespace.
std::string to_string(const GaussianInt& g);
GaussianInt parse_gaussian(std::string_view text);

std::ostream& operator<<(std::ostream& os, const GaussianInt& g);

}  // namespace legz
