#include "legz/solvability.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <future>
#include <vector>

#include "legz/factorization.hpp"
#include "legz/normal_form.hpp"

namespace legz {

SolvabilityReport samet_solvable(const LegendreEquation& eq) {
    if (!eq.normal)
        throw std::invalid_argument("samet_solvable requires a normalized equation");

    auto condition = [](const GaussianInt& target, const GaussianInt& modulus) {
        QrCondition cond;
        cond.target = target;
        cond.modulus = modulus;
        cond.witness = sqrt_mod(target, modulus);
        cond.is_residue = cond.witness.has_value();
        if (cond.witness &&
            !reduce_mod(*cond.witness * *cond.witness - target, modulus).is_zero())
            throw InvariantFault("samet_solvable: witness failed verification");
        return cond;
    };

    SolvabilityReport report;
    report.bc_mod_a = condition(eq.b * eq.c, eq.a);
    report.ca_mod_b = condition(eq.c * eq.a, eq.b);
    report.ab_mod_c = condition(eq.a * eq.b, eq.c);
    report.solvable = report.bc_mod_a.is_residue && report.ca_mod_b.is_residue &&
                      report.ab_mod_c.is_residue;
    return report;
}

CheckResult check_solution(const LegendreEquation& eq, const Solution& sol) {
    GaussianInt residual =
        eq.a * sol.x * sol.x + eq.b * sol.y * sol.y + eq.c * sol.z * sol.z;
    return CheckResult{residual.is_zero(), residual};
}

Solution normalize_solution_units(const Solution& sol) {
    const GaussianInt* first = nullptr;
    for (const GaussianInt* p : {&sol.x, &sol.y, &sol.z})
        if (!p->is_zero()) {
            first = p;
            break;
        }
    GaussianInt u = exact_div(canonical_associate(*first), *first);  // a unit
    return Solution(u * sol.x, u * sol.y, u * sol.z);
}

bool solution_prefer(const Solution& s, const Solution& t) {
    std::array<Integer, 3> ns{s.z.norm(), s.y.norm(), s.x.norm()};
    std::array<Integer, 3> nt{t.z.norm(), t.y.norm(), t.x.norm()};
    if (ns != nt) return ns < nt;
    std::array<Integer, 6> ls{s.z.re(), s.z.im(), s.y.re(), s.y.im(), s.x.re(), s.x.im()};
    std::array<Integer, 6> lt{t.z.re(), t.z.im(), t.y.re(), t.y.im(), t.x.re(), t.x.im()};
    return ls > lt;
}

namespace {

constexpr std::uint64_t kSearchBoundCap = 10'000'000;

std::uint64_t isqrt64(std::uint64_t n) {
    if (n == 0) return 0;
    int bits = 64 - __builtin_clzll(n);
    std::uint64_t x0 = std::uint64_t(1) << ((bits + 1) / 2);  // >= sqrt(n)
    std::uint64_t x1 = (x0 + n / x0) / 2;
    while (x1 < x0) {
        x0 = x1;
        x1 = (x0 + n / x0) / 2;
    }
    return x0;
}

struct DomainPoint {
    std::int64_t re, im;       // the lattice point g
    std::int64_t sq_re, sq_im; // g^2
    std::uint64_t norm;
};

DomainPoint make_point(std::int64_t re, std::int64_t im) {
    return DomainPoint{re, im, re * re - im * im, 2 * re * im,
                       std::uint64_t(re * re + im * im)};
}

void sort_domain(std::vector<DomainPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const DomainPoint& a, const DomainPoint& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
}

// 0 together with the canonical associates (re > 0, im >= 0) of norm <= bound.
std::vector<DomainPoint> quadrant_domain(std::uint64_t bound) {
    std::vector<DomainPoint> pts;
    pts.push_back(make_point(0, 0));
    std::int64_t rmax = std::int64_t(isqrt64(bound));
    for (std::int64_t re = 1; re <= rmax; ++re)
        for (std::int64_t im = 0; std::uint64_t(re * re + im * im) <= bound; ++im)
            pts.push_back(make_point(re, im));
    sort_domain(pts);
    return pts;
}

// 0 together with one representative of each +-g pair (im > 0, or im = 0 and
// re > 0) of norm <= bound.
std::vector<DomainPoint> halfplane_domain(std::uint64_t bound) {
    std::vector<DomainPoint> pts;
    pts.push_back(make_point(0, 0));
    std::int64_t rmax = std::int64_t(isqrt64(bound));
    for (std::int64_t re = 1; re <= rmax; ++re) pts.push_back(make_point(re, 0));
    for (std::int64_t im = 1; im <= rmax; ++im)
        for (std::int64_t re = -rmax; re <= rmax; ++re)
            if (std::uint64_t(re * re + im * im) <= bound)
                pts.push_back(make_point(re, im));
    sort_domain(pts);
    return pts;
}

GaussianInt to_gaussian(const DomainPoint& p) {
    return GaussianInt(Integer(p.re), Integer(p.im));
}

// ---- shared scan skeleton -------------------------------------------------
//
// Solutions are scanned with x over the quadrant domain and y over the
// half-plane domain (over the quadrant when x = 0, where y leads the triple).
// Every unit-orbit of solutions has a representative of this shape, and each
// candidate reported below is already unit-normalized, so minimizing
// solution_prefer over the scan minimizes it over all in-bound solutions.

struct RawTriple {
    std::array<std::int64_t, 6> small;  // re/im of x, y, z when small_valid
    bool small_valid = false;
    GaussianInt x, y, z;

    Solution to_solution() const {
        if (small_valid)
            return Solution(GaussianInt(small[0], small[1]),
                            GaussianInt(small[2], small[3]),
                            GaussianInt(small[4], small[5]));
        return Solution(x, y, z);
    }
};

// A visitor receives each primitive in-bound candidate; returning true stops
// the scan (used by existence queries).
using Visitor = std::function<bool(const RawTriple&)>;

bool primitive_triple(const GaussianInt& x, const GaussianInt& y, const GaussianInt& z) {
    return gcd(x, y, z).is_unit();
}

// Exact scan in int64 arithmetic; valid when bound <= 10^6 and coefficient
// norms <= 1024 (all intermediates stay below 2^53).
struct FastCoeff {
    std::int64_t re, im;
    std::int64_t norm;
};

bool fast_eligible(const LegendreEquation& eq, const Integer& bound) {
    return bound <= 1'000'000 && eq.a.norm() <= 1024 && eq.b.norm() <= 1024 &&
           eq.c.norm() <= 1024;
}

FastCoeff fast_coeff(const GaussianInt& g) {
    return FastCoeff{g.re().convert_to<std::int64_t>(),
                     g.im().convert_to<std::int64_t>(),
                     g.norm().convert_to<std::int64_t>()};
}

struct I64 {
    std::int64_t re, im;
};

inline I64 mul(I64 a, I64 b) {
    return I64{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// Mirrors gaussian_sqrt exactly in int64 arithmetic.
bool fast_sqrt(I64 g, I64& out) {
    if (g.re == 0 && g.im == 0) {
        out = I64{0, 0};
        return true;
    }
    std::uint64_t n = std::uint64_t(g.re * g.re + g.im * g.im);
    std::uint64_t s = isqrt64(n);
    if (s * s != n) return false;
    std::int64_t p2 = std::int64_t(s) + g.re;
    std::int64_t q2 = std::int64_t(s) - g.re;
    if (p2 % 2 != 0 || q2 % 2 != 0) return false;
    p2 /= 2;
    q2 /= 2;
    std::int64_t p = std::int64_t(isqrt64(std::uint64_t(p2)));
    std::int64_t q = std::int64_t(isqrt64(std::uint64_t(q2)));
    if (p * p != p2 || q * q != q2) return false;
    if (p == 0)
        out = I64{0, q};
    else
        out = I64{p, g.im >= 0 ? q : -q};
    if (mul(out, out).re != g.re || mul(out, out).im != g.im) return false;
    return true;
}

// Scans x indices [x_lo, x_hi) of the quadrant domain.  Returns true when the
// visitor stopped the scan.
bool scan_fast(const LegendreEquation& eq, std::uint64_t bound,
               const std::vector<DomainPoint>& xs, const std::vector<DomainPoint>& ys_half,
               std::size_t x_lo, std::size_t x_hi, const Visitor& visit) {
    FastCoeff a = fast_coeff(eq.a), b = fast_coeff(eq.b), c = fast_coeff(eq.c);
    I64 cc{c.re, c.im}, c_conj{c.re, -c.im};

    // b*y^2 for the half-plane domain, reused across x.
    std::vector<I64> by2(ys_half.size());
    for (std::size_t j = 0; j < ys_half.size(); ++j)
        by2[j] = mul(I64{b.re, b.im}, I64{ys_half[j].sq_re, ys_half[j].sq_im});

    for (std::size_t i = x_lo; i < x_hi; ++i) {
        const DomainPoint& xp = xs[i];
        bool x_zero = xp.re == 0 && xp.im == 0;
        I64 ax2 = mul(I64{a.re, a.im}, I64{xp.sq_re, xp.sq_im});
        const std::vector<DomainPoint>& ys = x_zero ? xs : ys_half;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const DomainPoint& yp = ys[j];
            if (x_zero && yp.re == 0 && yp.im == 0) continue;
            I64 by = x_zero ? mul(I64{b.re, b.im}, I64{yp.sq_re, yp.sq_im}) : by2[j];
            I64 w{-(ax2.re + by.re), -(ax2.im + by.im)};
            // z^2 = w / c, if exact.
            I64 wc = mul(w, c_conj);
            if (wc.re % c.norm != 0 || wc.im % c.norm != 0) continue;
            I64 z2{wc.re / c.norm, wc.im / c.norm};
            I64 z;
            if (!fast_sqrt(z2, z)) continue;
            if (std::uint64_t(z.re * z.re + z.im * z.im) > bound) continue;
            for (int sign = 0; sign < (z.re == 0 && z.im == 0 ? 1 : 2); ++sign) {
                I64 zc = sign == 0 ? z : I64{-z.re, -z.im};
                if (!primitive_triple(GaussianInt(xp.re, xp.im), GaussianInt(yp.re, yp.im),
                                      GaussianInt(zc.re, zc.im)))
                    continue;
                RawTriple t;
                t.small = {xp.re, xp.im, yp.re, yp.im, zc.re, zc.im};
                t.small_valid = true;
                if (visit(t)) return true;
            }
        }
    }
    return false;
}

// The same scan in full precision.
bool scan_big(const LegendreEquation& eq, const Integer& bound,
              const std::vector<DomainPoint>& xs, const std::vector<DomainPoint>& ys_half,
              std::size_t x_lo, std::size_t x_hi, const Visitor& visit) {
    std::vector<GaussianInt> by2(ys_half.size());
    for (std::size_t j = 0; j < ys_half.size(); ++j)
        by2[j] = eq.b * GaussianInt(ys_half[j].sq_re, ys_half[j].sq_im);

    for (std::size_t i = x_lo; i < x_hi; ++i) {
        const DomainPoint& xp = xs[i];
        bool x_zero = xp.re == 0 && xp.im == 0;
        GaussianInt ax2 = eq.a * GaussianInt(xp.sq_re, xp.sq_im);
        const std::vector<DomainPoint>& ys = x_zero ? xs : ys_half;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const DomainPoint& yp = ys[j];
            if (x_zero && yp.re == 0 && yp.im == 0) continue;
            GaussianInt by = x_zero ? eq.b * GaussianInt(yp.sq_re, yp.sq_im) : by2[j];
            GaussianInt w = -(ax2 + by);
            auto z2 = try_exact_div(w, eq.c);
            if (!z2) continue;
            auto z = gaussian_sqrt(*z2);
            if (!z) continue;
            if (z->norm() > bound) continue;
            for (int sign = 0; sign < (z->is_zero() ? 1 : 2); ++sign) {
                GaussianInt zc = sign == 0 ? *z : -*z;
                GaussianInt xg = to_gaussian(xp), yg = to_gaussian(yp);
                if (!primitive_triple(xg, yg, zc)) continue;
                RawTriple t;
                t.x = xg;
                t.y = yg;
                t.z = zc;
                if (visit(t)) return true;
            }
        }
    }
    return false;
}

struct ScanPlan {
    std::uint64_t bound64;
    bool fast;
    std::vector<DomainPoint> xs;
    std::vector<DomainPoint> ys;
};

ScanPlan make_plan(const LegendreEquation& eq, const Integer& bound) {
    if (bound < 1) throw std::invalid_argument("search bound must be >= 1");
    if (bound > Integer(kSearchBoundCap))
        throw EffortExceeded("search bound " + bound.str() + " exceeds the cap " +
                             std::to_string(kSearchBoundCap));
    ScanPlan plan;
    plan.bound64 = bound.convert_to<std::uint64_t>();
    plan.fast = fast_eligible(eq, bound);
    plan.xs = quadrant_domain(plan.bound64);
    plan.ys = halfplane_domain(plan.bound64);
    return plan;
}

bool run_scan(const LegendreEquation& eq, const Integer& bound, const ScanPlan& plan,
              std::size_t x_lo, std::size_t x_hi, const Visitor& visit) {
    if (plan.fast)
        return scan_fast(eq, plan.bound64, plan.xs, plan.ys, x_lo, x_hi, visit);
    return scan_big(eq, bound, plan.xs, plan.ys, x_lo, x_hi, visit);
}

// Best candidate over a block of x indices under solution_prefer.
std::optional<Solution> best_in_block(const LegendreEquation& eq, const Integer& bound,
                                      const ScanPlan& plan, std::size_t lo, std::size_t hi) {
    std::optional<Solution> best;
    run_scan(eq, bound, plan, lo, hi, [&](const RawTriple& t) {
        Solution cand = t.to_solution();
        if (!best || solution_prefer(cand, *best)) best = cand;
        return false;  // full scan
    });
    return best;
}

}  // namespace

std::optional<Solution> brute_force_search(const LegendreEquation& eq,
                                           const Integer& bound, int jobs) {
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    ScanPlan plan = make_plan(eq, bound);

    std::size_t n = plan.xs.size();
    std::size_t blocks = std::min<std::size_t>(std::size_t(jobs), n);
    if (blocks <= 1) return best_in_block(eq, bound, plan, 0, n);

    std::vector<std::future<std::optional<Solution>>> futures;
    for (std::size_t k = 0; k < blocks; ++k) {
        std::size_t lo = n * k / blocks, hi = n * (k + 1) / blocks;
        futures.push_back(std::async(std::launch::async, [&, lo, hi] {
            return best_in_block(eq, bound, plan, lo, hi);
        }));
    }
    std::optional<Solution> best;
    for (auto& f : futures) {
        std::optional<Solution> cand = f.get();
        if (cand && (!best || solution_prefer(*cand, *best))) best = cand;
    }
    return best;
}

std::optional<Solution> find_any_solution(const LegendreEquation& eq,
                                          const Integer& bound) {
    ScanPlan plan = make_plan(eq, bound);
    std::optional<Solution> first;
    run_scan(eq, bound, plan, 0, plan.xs.size(), [&](const RawTriple& t) {
        first = t.to_solution();
        return true;
    });
    return first;
}

}  // namespace legz
