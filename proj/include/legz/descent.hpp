#pragma once

#include <array>
#include <vector>

#include "legz/equation.hpp"
#include "legz/gaussian_rational.hpp"

namespace legz {

// The two parity cases of a reduction step, split on whether 1+i divides c.
enum class DescentCase { EvenC, OddC };

// One reduction step, recorded with everything needed to re-verify it:
//   - the direction (X, Y, Z) used for the parametrized family,
//   - delta, the divisor actually taken out of the family
//     (c/(1+i) in the EvenC case, (1+i)*c in the OddC case),
//   - t_target, the exact rational point that Z approximates.
struct DescentStep {
    DescentCase case_tag;
    GaussianInt X, Y, Z;
    GaussianInt delta;
    GaussianRational t_target;
    Solution input;
    Solution output;
};

struct DescentTrace {
    LegendreEquation equation;  // the normalized equation being reduced
    std::vector<DescentStep> steps;
    Solution final;  // primitive, satisfies bound_test
};

// Whether norm(z)^2 <= (3 + 2*sqrt(2)) * norm(a*b), decided exactly:
// with L = norm(z)^2 and R = norm(a)*norm(b) this is
// L <= 3R or (L - 3R)^2 <= 8R^2.
bool bound_test(const GaussianInt& z, const GaussianInt& a, const GaussianInt& b);

// The quadratic family built from a solution sol0 and a direction (X, Y, Z):
//   (x0*Q - 2*X*P, y0*Q - 2*Y*P, z0*Q - 2*Z*P)
// with Q = a*X^2 + b*Y^2 + c*Z^2 and P = a*x0*X + b*y0*Y + c*z0*Z.  It
// satisfies the equation identically (possibly as the zero triple, e.g. when
// (X, Y, Z) is proportional to sol0).
std::array<GaussianInt, 3> parametric_family(const LegendreEquation& eq,
                                             const Solution& sol0,
                                             const GaussianInt& X,
                                             const GaussianInt& Y,
                                             const GaussianInt& Z);

// Verifies exactly that delta divides every member of the parametric family
// whatever Z is: requires delta | c, delta | (X*y0 - Y*x0) and gcd(x0, y0) a
// unit, and checks the side condition gcd(delta, a*b*x0*y0) = unit together
// with delta | (a*X^2 + b*Y^2) and delta | (a*x0*X + b*y0*Y), which covers
// all three family members for every Z.
bool divisibility_certificate(const LegendreEquation& eq, const Solution& sol0,
                              const GaussianInt& X, const GaussianInt& Y,
                              const GaussianInt& delta);

// Checks that the z-component of the family is nonzero.  A zero z-component
// contradicts the irrationality of sqrt(a*b) and is a hard fault whenever
// a*b is not a square; when a*b IS a square (only possible for unit a, b with
// a*b = +-1) this returns false instead of faulting.
bool nonzero_z_guard(const LegendreEquation& eq, const Solution& sol0,
                     const GaussianInt& X, const GaussianInt& Y,
                     const GaussianInt& Z);

// The exact value the step's output z must equal:
//   z0 * (-c/delta) * ((Z - t)^2 + a*b*(y0*X - x0*Y)^2 / (c^2 * z0^2))
// with t = -(a*x0*X + b*y0*Y)/(c*z0).  Recomputed independently when
// verifying recorded steps.
GaussianRational step_z_identity(const LegendreEquation& eq, const Solution& sol0,
                                 const GaussianInt& X, const GaussianInt& Y,
                                 const GaussianInt& Z, const GaussianInt& delta);

// One reduction step.  Requires: eq normalized, sol0 a primitive solution
// with z0 != 0 that does NOT yet satisfy bound_test (otherwise
// std::invalid_argument).  The returned step's output solves eq with
// norm(z) strictly smaller than norm(z0); every certificate (Bezout
// relation, rounding distance, divisibility, the z identity and the strict
// decrease) is re-verified exactly before returning.
DescentStep descent_step(const LegendreEquation& eq, const Solution& sol0);

// Repeats descent_step from a (primitivized) seed until bound_test holds.
// Requires eq normalized and sol a solution.  Terminates because norm(z)
// is a strictly decreasing nonnegative integer; a step-count ceiling of
// 10^4 guards against implementation bugs.
DescentTrace holzer_reduce(const LegendreEquation& eq, const Solution& sol);

// "STEP <case> X=.. Y=.. Z=.. delta=.. z_in=.. z_out=.. N(z_in)=.. N(z_out)=.."
std::string to_line(const DescentStep& step);
std::vector<std::string> to_lines(const DescentTrace& trace);

}  // namespace legz
