#pragma once

// Shared helpers for the unit tests: deterministic random generators and
// slow-but-obviously-correct reference implementations ("oracles") that the
// library is checked against.  Everything here is deliberately independent
// of the library's own algorithms: residues are enumerated from a raw box,
// and the search oracle loops over full coordinate boxes for all three
// components.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "legz/descent.hpp"
#include "legz/equation.hpp"
#include "legz/factorization.hpp"
#include "legz/gaussian_int.hpp"
#include "legz/normal_form.hpp"
#include "legz/solvability.hpp"

namespace legz::testing {

inline GaussianInt random_gaussian(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return GaussianInt(Integer(dist(rng)), Integer(dist(rng)));
}

inline GaussianInt random_nonzero(std::mt19937_64& rng, long lo, long hi) {
    for (;;) {
        GaussianInt g = random_gaussian(rng, lo, hi);
        if (!g.is_zero()) return g;
    }
}

// A coprime pair (x0, y0) suitable for bezout.
inline std::pair<GaussianInt, GaussianInt> random_coprime_pair(std::mt19937_64& rng,
                                                               long lo, long hi) {
    for (;;) {
        GaussianInt x0 = random_nonzero(rng, lo, hi);
        GaussianInt y0 = random_nonzero(rng, lo, hi);
        if (gcd(x0, y0).is_unit()) return {x0, y0};
    }
}

// Normalizes (a, b, c) and requires that nothing changed: the way the tests
// build equations that are known to be in normal form already.
inline LegendreEquation as_normal(const GaussianInt& a, const GaussianInt& b,
                                  const GaussianInt& c) {
    auto [eq, trace] = normalize(LegendreEquation(a, b, c));
    if (!trace.empty() || !(eq == LegendreEquation(a, b, c)))
        throw std::logic_error("as_normal: equation " +
                               to_string(LegendreEquation(a, b, c)) +
                               " is not in normal form");
    return eq;
}

// Reference residue system: the raw box {s + ti : 0 <= s, t < norm(m)}
// reduced mod m and deduplicated, sorted by (norm, re, im).  This is the
// realization the residue-system contract is defined by; the library may
// enumerate differently but must produce the same set.
inline std::vector<GaussianInt> box_residues(const GaussianInt& m) {
    Integer n = m.norm();
    std::vector<GaussianInt> out;
    for (Integer s = 0; s < n; ++s)
        for (Integer t = 0; t < n; ++t)
            out.push_back(reduce_mod(GaussianInt(s, t), m));
    std::sort(out.begin(), out.end(), norm_re_im_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Reference quadratic-residue test by exhaustion over the box residues.
inline bool naive_is_qr(const GaussianInt& n, const GaussianInt& m) {
    for (const GaussianInt& w : box_residues(m))
        if (reduce_mod(w * w - n, m).is_zero()) return true;
    return false;
}

// Reference search: full triple box enumeration over all components with
// norm <= bound, keeping the best primitive unit-normalized solution under
// solution_prefer.  Cubic cost — keep bound at most ~10.
inline std::optional<Solution> naive_search(const LegendreEquation& eq,
                                            long bound) {
    long s = 0;
    while ((s + 1) * (s + 1) <= bound) ++s;
    std::vector<GaussianInt> points;
    for (long re = -s; re <= s; ++re)
        for (long im = -s; im <= s; ++im)
            if (re * re + im * im <= bound)
                points.push_back(GaussianInt(Integer(re), Integer(im)));

    std::optional<Solution> best;
    for (const GaussianInt& x : points)
        for (const GaussianInt& y : points)
            for (const GaussianInt& z : points) {
                if (x.is_zero() && y.is_zero() && z.is_zero()) continue;
                if (!(eq.a * x * x + eq.b * y * y + eq.c * z * z).is_zero()) continue;
                Solution sol(x, y, z);
                if (!is_primitive(sol)) continue;
                sol = normalize_solution_units(sol);
                if (!best || solution_prefer(sol, *best)) best = sol;
            }
    return best;
}

// Restores the factorization work ceiling on scope exit, so tests that
// shrink it cannot poison later tests.
struct CeilingGuard {
    std::uint64_t saved = factor_ceiling();
    ~CeilingGuard() { set_factor_ceiling(saved); }
};

}  // namespace legz::testing
