#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "legz/gaussian_int.hpp"

namespace legz {

using Rational = boost::multiprecision::cpp_rational;

// An element of Q(i) kept in lowest terms: gcd(num, den) is a unit and den is
// the canonical associate of itself, so equal values have equal components.
class GaussianRational {
public:
    GaussianRational() : num_(), den_(Integer(1)) {}
    GaussianRational(GaussianInt value) : num_(std::move(value)), den_(Integer(1)) {}
    GaussianRational(const GaussianInt& num, const GaussianInt& den);

    const GaussianInt& num() const { return num_; }
    const GaussianInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_ == GaussianInt(1); }

    // Requires is_integral().
    const GaussianInt& to_integer() const;

    // |q|^2 as an exact rational number; never a float.
    Rational squared_modulus() const;

    GaussianRational conj() const { return GaussianRational(num_.conj(), den_.conj()); }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw std::invalid_argument("GaussianRational: division by zero");
        return GaussianRational(a.num_ * b.den_, a.den_ * b.num_);
    }
    GaussianRational operator-() const { return GaussianRational(-num_, den_); }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;  // canonical form is unique
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

private:
    GaussianInt num_, den_;
};

// The lattice point Z minimizing |q - Z|, with each coordinate rounded to the
// nearest integer and halves toward +infinity.  Certificate: |q - Z|^2 <= 1/2.
GaussianInt nearest_lattice(const GaussianRational& q);

// The nearest Z in the (1+i)-parity class of r (r must be 0 or 1), i.e. with
// Z - r divisible by 1+i.  Certificate: |q - Z|^2 <= 1.  Equidistant
// candidates are resolved toward the largest (re, im) pair.
GaussianInt nearest_in_class(const GaussianRational& q, const GaussianInt& r);

std::string to_string(const GaussianRational& q);
std::ostream& operator<<(std::ostream& os, const GaussianRational& q);

}  // namespace legz
