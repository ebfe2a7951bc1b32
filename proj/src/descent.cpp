#include "legz/descent.hpp"

#include "legz/factorization.hpp"
#include "legz/normal_form.hpp"
#include "legz/solvability.hpp"

namespace legz {

bool bound_test(const GaussianInt& z, const GaussianInt& a, const GaussianInt& b) {
    Integer L = z.norm() * z.norm();
    Integer R = a.norm() * b.norm();
    if (L <= 3 * R) return true;
    Integer d = L - 3 * R;
    return d * d <= 8 * R * R;
}

std::array<GaussianInt, 3> parametric_family(const LegendreEquation& eq,
                                             const Solution& sol0,
                                             const GaussianInt& X,
                                             const GaussianInt& Y,
                                             const GaussianInt& Z) {
    GaussianInt Q = eq.a * X * X + eq.b * Y * Y + eq.c * Z * Z;
    GaussianInt P = eq.a * sol0.x * X + eq.b * sol0.y * Y + eq.c * sol0.z * Z;
    GaussianInt two(2);
    return {sol0.x * Q - two * X * P, sol0.y * Q - two * Y * P,
            sol0.z * Q - two * Z * P};
}

bool divisibility_certificate(const LegendreEquation& eq, const Solution& sol0,
                              const GaussianInt& X, const GaussianInt& Y,
                              const GaussianInt& delta) {
    if (delta.is_zero())
        throw std::invalid_argument("divisibility_certificate: delta must be nonzero");
    if (!gcd(sol0.x, sol0.y).is_unit())
        throw std::invalid_argument(
            "divisibility_certificate: x0 and y0 must be coprime");
    if (!divides(delta, eq.c))
        throw std::invalid_argument("divisibility_certificate: delta does not divide c");
    if (!divides(delta, X * sol0.y - Y * sol0.x))
        throw std::invalid_argument(
            "divisibility_certificate: delta does not divide X*y0 - Y*x0");
    if (delta.is_unit()) return true;  // everything is divisible by a unit

    // Side condition: delta shares no prime with a, b, x0 or y0.
    if (!gcd(delta, eq.a * eq.b * sol0.x * sol0.y).is_unit()) return false;

    // delta | Q and delta | P reduce to the Z-free parts because delta | c;
    // together they make delta divide all three family members for every Z.
    return divides(delta, eq.a * X * X + eq.b * Y * Y) &&
           divides(delta, eq.a * sol0.x * X + eq.b * sol0.y * Y);
}

bool nonzero_z_guard(const LegendreEquation& eq, const Solution& sol0,
                     const GaussianInt& X, const GaussianInt& Y,
                     const GaussianInt& Z) {
    if (!parametric_family(eq, sol0, X, Y, Z)[2].is_zero()) return true;
    // a*b square <=> a, b units with a*b = +-1 (square-free coefficients).
    GaussianInt ab = eq.a * eq.b;
    if (gaussian_sqrt(ab).has_value()) return false;  // outside the guard's claim
    throw InvariantFault(
        "nonzero_z_guard: family z-component vanished although " + to_string(ab) +
        " is not a square");
}

GaussianRational step_z_identity(const LegendreEquation& eq, const Solution& sol0,
                                 const GaussianInt& X, const GaussianInt& Y,
                                 const GaussianInt& Z, const GaussianInt& delta) {
    GaussianRational t(-(eq.a * sol0.x * X + eq.b * sol0.y * Y), eq.c * sol0.z);
    GaussianRational dz = GaussianRational(Z) - t;
    GaussianRational cross(eq.a * eq.b * (sol0.y * X - sol0.x * Y) *
                               (sol0.y * X - sol0.x * Y),
                           eq.c * eq.c * sol0.z * sol0.z);
    GaussianRational scale(-(sol0.z * eq.c), delta);
    return scale * (dz * dz + cross);
}

namespace {

const GaussianInt kOnePlusI(1, 1);

void require(bool ok, const char* what) {
    if (!ok) throw InvariantFault(std::string("descent_step: ") + what);
}

}  // namespace

DescentStep descent_step(const LegendreEquation& eq, const Solution& sol0) {
    if (!eq.normal)
        throw std::invalid_argument("descent_step requires a normalized equation");
    if (!check_solution(eq, sol0).ok)
        throw std::invalid_argument("descent_step: input does not solve the equation");
    if (sol0.z.is_zero())
        throw std::invalid_argument("descent_step: input has z = 0");
    if (!is_primitive(sol0))
        throw std::invalid_argument("descent_step: input solution is not primitive");
    if (bound_test(sol0.z, eq.a, eq.b))
        throw std::invalid_argument(
            "descent_step: input already satisfies the bound; nothing to reduce");
    // For a primitive solution of a normalized equation, y0^2 | c * (unit)
    // would follow from x0 = 0, forcing norm(z0) <= 1 and the bound to hold;
    // so both x0 and y0 are nonzero here.
    require(!sol0.x.is_zero() && !sol0.y.is_zero(),
            "x0 = 0 or y0 = 0 escaped the bound check");
    if (!gcd(sol0.x, sol0.y).is_unit())
        throw std::invalid_argument("descent_step: x0 and y0 are not coprime");

    DescentStep step{DescentCase::OddC, GaussianInt(), GaussianInt(), GaussianInt(),
                     GaussianInt(),     GaussianRational(), sol0, sol0};

    // Bezout direction and divisor, split on the parity of c.
    GaussianInt bez_target;  // the value of y0*X - x0*Y
    if (eq.c.is_even()) {
        step.case_tag = DescentCase::EvenC;
        bez_target = exact_div(eq.c, kOnePlusI);
        step.delta = bez_target;
    } else {
        step.case_tag = DescentCase::OddC;
        bez_target = eq.c;
        step.delta = kOnePlusI * eq.c;
    }
    BezoutPair bz = bezout(sol0.x, sol0.y, bez_target);
    step.X = bz.X;
    step.Y = bz.Y;
    require(sol0.y * step.X - sol0.x * step.Y == bez_target,
            "Bezout relation failed");

    // Z approximates t = -(a*x0*X + b*y0*Y) / (c*z0).
    step.t_target = GaussianRational(-(eq.a * sol0.x * step.X + eq.b * sol0.y * step.Y),
                                     eq.c * sol0.z);
    if (step.case_tag == DescentCase::EvenC) {
        step.Z = nearest_lattice(step.t_target);
        require((GaussianRational(step.Z) - step.t_target).squared_modulus() <=
                    Rational(1, 2),
                "EvenC rounding certificate |Z - t|^2 <= 1/2 failed");
    } else {
        // Parity constraint: a*X^2 + b*Y^2 + c*Z^2 must be even; with odd c
        // that forces Z into the (1+i)-class of a*X + b*Y (g^2 and g share a
        // class, and -1 is in the class of 1).
        GaussianInt r = (eq.a * step.X + eq.b * step.Y).is_even() ? GaussianInt(0)
                                                                  : GaussianInt(1);
        step.Z = nearest_in_class(step.t_target, r);
        require((GaussianRational(step.Z) - step.t_target).squared_modulus() <=
                    Rational(1),
                "OddC rounding certificate |Z - t|^2 <= 1 failed");
        require((eq.a * step.X * step.X + eq.b * step.Y * step.Y +
                 eq.c * step.Z * step.Z)
                    .is_even(),
                "OddC parity certificate (1+i) | Q failed");
    }

    // Divisibility of the whole family by the odd part of delta (exact,
    // Z-independent).  In the odd-c case the remaining factor 1+i of delta
    // is supplied by the parity certificate: (1+i) | Q and (1+i)^2 | 2
    // together make 1+i divide every family member.
    if (!divisibility_certificate(eq, sol0, step.X, step.Y, bez_target))
        throw InvariantFault("descent_step: divisibility certificate failed");

    std::array<GaussianInt, 3> family =
        parametric_family(eq, sol0, step.X, step.Y, step.Z);
    bool z_nonzero = nonzero_z_guard(eq, sol0, step.X, step.Y, step.Z);

    GaussianInt out_x = exact_div(family[0], step.delta);
    GaussianInt out_y = exact_div(family[1], step.delta);
    GaussianInt out_z = exact_div(family[2], step.delta);
    step.output = Solution(out_x, out_y, out_z);  // throws if the family vanished

    require(check_solution(eq, step.output).ok, "output does not solve the equation");
    require(GaussianRational(out_z) ==
                step_z_identity(eq, sol0, step.X, step.Y, step.Z, step.delta),
            "z identity failed");
    require(!z_nonzero || !out_z.is_zero(), "guard and output disagree on z");
    require(out_z.norm() < sol0.z.norm(), "norm(z) did not decrease");
    return step;
}

DescentTrace holzer_reduce(const LegendreEquation& eq, const Solution& sol) {
    if (!eq.normal)
        throw std::invalid_argument("holzer_reduce requires a normalized equation");
    if (!check_solution(eq, sol).ok)
        throw std::invalid_argument("holzer_reduce: input does not solve the equation");

    Solution cur = primitivize(sol);
    // For a normalized equation a primitive solution has pairwise coprime
    // components (a shared prime would have its square divide the remaining
    // coefficient).
    auto assert_pairwise = [&](const Solution& s) {
        bool ok = (s.x.is_zero() || s.y.is_zero() || gcd(s.x, s.y).is_unit()) &&
                  (s.y.is_zero() || s.z.is_zero() || gcd(s.y, s.z).is_unit()) &&
                  (s.z.is_zero() || s.x.is_zero() || gcd(s.z, s.x).is_unit());
        if (!ok)
            throw InvariantFault(
                "holzer_reduce: primitive solution is not pairwise coprime: " +
                to_string(s));
    };
    assert_pairwise(cur);

    DescentTrace trace{eq, {}, cur};
    constexpr int kStepCeiling = 10'000;
    int steps = 0;
    while (!bound_test(cur.z, eq.a, eq.b)) {
        if (++steps > kStepCeiling)
            throw InvariantFault("holzer_reduce: step ceiling exceeded");
        DescentStep step = descent_step(eq, cur);
        cur = primitivize(step.output);
        assert_pairwise(cur);
        trace.steps.push_back(std::move(step));
    }
    trace.final = cur;
    return trace;
}

std::string to_line(const DescentStep& step) {
    const char* tag = step.case_tag == DescentCase::EvenC ? "EvenC" : "OddC";
    return std::string("STEP ") + tag + " X=" + to_string(step.X) +
           " Y=" + to_string(step.Y) + " Z=" + to_string(step.Z) +
           " delta=" + to_string(step.delta) + " z_in=" + to_string(step.input.z) +
           " z_out=" + to_string(step.output.z) +
           " N(z_in)=" + step.input.z.norm().str() +
           " N(z_out)=" + step.output.z.norm().str();
}

std::vector<std::string> to_lines(const DescentTrace& trace) {
    std::vector<std::string> out;
    out.reserve(trace.steps.size());
    for (const auto& step : trace.steps) out.push_back(to_line(step));
    return out;
}

}  // namespace legz
