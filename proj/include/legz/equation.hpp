#pragma once

#include "legz/gaussian_int.hpp"

namespace legz {

// The diagonal ternary form a*x^2 + b*y^2 + c*z^2 = 0 over Z[i].
// `normal` marks an equation produced by normalize(): coefficients
// square-free and pairwise coprime.
struct LegendreEquation {
    GaussianInt a, b, c;
    bool normal = false;

    LegendreEquation(GaussianInt a_, GaussianInt b_, GaussianInt c_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        if (a.is_zero() || b.is_zero() || c.is_zero())
            throw std::invalid_argument("LegendreEquation: coefficients must be nonzero");
    }

    friend bool operator==(const LegendreEquation& p, const LegendreEquation& q) {
        return p.a == q.a && p.b == q.b && p.c == q.c;
    }
};

// A nontrivial solution candidate.  (0, 0, 0) is not representable; "no
// solution" is expressed by absence (std::optional), never by a zero triple.
struct Solution {
    GaussianInt x, y, z;

    Solution(GaussianInt x_, GaussianInt y_, GaussianInt z_)
        : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
        if (x.is_zero() && y.is_zero() && z.is_zero())
            throw std::invalid_argument("Solution: the zero triple is not a solution");
    }

    friend bool operator==(const Solution& s, const Solution& t) {
        return s.x == t.x && s.y == t.y && s.z == t.z;
    }
};

std::string to_string(const LegendreEquation& eq);
std::string to_string(const Solution& sol);

}  // namespace legz
