#include <doctest.h>

#include <random>
#include <vector>

#include "legz/descent.hpp"
#include "legz/normal_form.hpp"
#include "legz/solvability.hpp"
#include "support.hpp"

using namespace legz;
using legz::testing::as_normal;
using legz::testing::random_gaussian;

namespace {

bool same_solution(const Solution& s, const Solution& t) {
    return s.x == t.x && s.y == t.y && s.z == t.z;
}

GaussianInt eval(const LegendreEquation& eq, const GaussianInt& x, const GaussianInt& y,
                 const GaussianInt& z) {
    return eq.a * x * x + eq.b * y * y + eq.c * z * z;
}

// Re-derives every certificate of a recorded step from scratch.
void verify_step(const LegendreEquation& eq, const DescentStep& step) {
    const Solution& s0 = step.input;

    // Case tag and divisor match the parity of c.
    GaussianInt bez_target;
    if (eq.c.is_even()) {
        CHECK(step.case_tag == DescentCase::EvenC);
        bez_target = exact_div(eq.c, GaussianInt(1, 1));
        CHECK(step.delta == bez_target);
    } else {
        CHECK(step.case_tag == DescentCase::OddC);
        bez_target = eq.c;
        CHECK(step.delta == GaussianInt(1, 1) * eq.c);
    }

    // Bezout relation.
    CHECK(s0.y * step.X - s0.x * step.Y == bez_target);

    // Rounding certificate against the recomputed target.
    GaussianRational t(-(eq.a * s0.x * step.X + eq.b * s0.y * step.Y), eq.c * s0.z);
    CHECK(step.t_target == t);
    Rational dist2 = (GaussianRational(step.Z) - t).squared_modulus();
    if (step.case_tag == DescentCase::EvenC) {
        CHECK(dist2 <= Rational(1, 2));
    } else {
        CHECK(dist2 <= Rational(1));
        // Z sits in the (1+i)-class that makes Q even.
        CHECK(step.Z.is_even() == (eq.a * step.X + eq.b * step.Y).is_even());
        CHECK(eval(eq, step.X, step.Y, step.Z).is_even());
    }

    // The family is exactly delta * output.
    auto fam = parametric_family(eq, s0, step.X, step.Y, step.Z);
    CHECK(fam[0] == step.delta * step.output.x);
    CHECK(fam[1] == step.delta * step.output.y);
    CHECK(fam[2] == step.delta * step.output.z);
    CHECK(divisibility_certificate(eq, s0, step.X, step.Y, bez_target));

    // Output solves the equation; z obeys the closed form and shrinks.
    CHECK(check_solution(eq, step.output).ok);
    CHECK(GaussianRational(step.output.z) ==
          step_z_identity(eq, s0, step.X, step.Y, step.Z, step.delta));
    CHECK(step.output.z.norm() < s0.z.norm());
}

}  // namespace

TEST_CASE("bound_test decides norm(z)^2 <= (3 + 2 sqrt 2) norm(ab) exactly") {
    CHECK(bound_test(GaussianInt(1), GaussianInt(1), GaussianInt(1)));
    CHECK(bound_test(GaussianInt(1, 1), GaussianInt(1), GaussianInt(1)));  // 4 <= 5.82..
    CHECK(!bound_test(GaussianInt(2), GaussianInt(1), GaussianInt(1)));    // 16 > 5.82..
    CHECK(bound_test(GaussianInt(), GaussianInt(7), GaussianInt(3)));

    // Boundary pair around 5.82.. * 4 = 23.3..: norm(z)^2 = 16 vs 25.
    CHECK(bound_test(GaussianInt(2), GaussianInt(2), GaussianInt(1)));
    CHECK(!bound_test(GaussianInt(2, 1), GaussianInt(2), GaussianInt(1)));

    // The worked OddC seed: norm(z) = 25 is far outside (3 + 2 sqrt 2) * 49.
    CHECK(!bound_test(GaussianInt(4, -3), GaussianInt(0, 1), GaussianInt(7)));
    CHECK(bound_test(GaussianInt(0, -1), GaussianInt(0, 1), GaussianInt(7)));

    // Agreement with a floating-point rendering of the same inequality on a
    // sweep of small inputs (skipping points too close to the threshold for
    // doubles to be trusted).
    for (long zr = 0; zr <= 6; ++zr)
        for (long zi = 0; zi <= 6; ++zi)
            for (long nab = 1; nab <= 30; ++nab) {
                double nz = double(zr * zr + zi * zi);
                double lhs = nz * nz;                                     // norm(z)^2
                double rhs = (3.0 + 2.0 * 1.4142135623730951) * double(nab) * double(nab);
                if (lhs > rhs * 0.999 && lhs < rhs * 1.001) continue;
                CHECK(bound_test(GaussianInt(zr, zi), GaussianInt(1), GaussianInt(nab)) ==
                      (lhs <= rhs));
            }
}

TEST_CASE("parametric_family: frozen values and the Q^2 identity") {
    LegendreEquation eq(GaussianInt(0, 1), GaussianInt(7), GaussianInt(1));
    Solution sol(GaussianInt(2, 2), GaussianInt(1), GaussianInt(1));

    auto f1 = parametric_family(eq, sol, GaussianInt(1), GaussianInt(), GaussianInt());
    CHECK(f1[0] == GaussianInt(2, -2));
    CHECK(f1[1] == GaussianInt(0, 1));
    CHECK(f1[2] == GaussianInt(0, 1));

    auto f2 = parametric_family(eq, sol, GaussianInt(), GaussianInt(), GaussianInt(1));
    CHECK(f2[0] == GaussianInt(2, 2));
    CHECK(f2[1] == GaussianInt(1));
    CHECK(f2[2] == GaussianInt(-1));

    // Direction equal to the solution collapses the family to zero.
    auto f3 = parametric_family(eq, sol, sol.x, sol.y, sol.z);
    CHECK(f3[0].is_zero());
    CHECK(f3[1].is_zero());
    CHECK(f3[2].is_zero());

    // For any base point (solution or not): E(family) = Q^2 * E(base).
    std::mt19937_64 rng(61);
    for (int k = 0; k < 120; ++k) {
        LegendreEquation e(legz::testing::random_nonzero(rng, -8, 8),
                           legz::testing::random_nonzero(rng, -8, 8),
                           legz::testing::random_nonzero(rng, -8, 8));
        Solution base(random_gaussian(rng, -8, 8), random_gaussian(rng, -8, 8),
                      legz::testing::random_nonzero(rng, -8, 8));
        GaussianInt X = random_gaussian(rng, -8, 8), Y = random_gaussian(rng, -8, 8),
                    Z = random_gaussian(rng, -8, 8);
        auto f = parametric_family(e, base, X, Y, Z);
        GaussianInt Q = eval(e, X, Y, Z);
        CHECK(eval(e, f[0], f[1], f[2]) == Q * Q * eval(e, base.x, base.y, base.z));
    }
}

TEST_CASE("divisibility_certificate") {
    LegendreEquation eq113(GaussianInt(1), GaussianInt(1), GaussianInt(3));
    Solution sol(GaussianInt(0, 2), GaussianInt(1), GaussianInt(1));

    SUBCASE("verifies a genuine divisor and the family is divisible for every Z") {
        CHECK(divisibility_certificate(eq113, sol, GaussianInt(3), GaussianInt(),
                                       GaussianInt(3)));
        for (const GaussianInt& Z : {GaussianInt(), GaussianInt(1), GaussianInt(0, 1),
                                     GaussianInt(2, -1), GaussianInt(-3, 4)}) {
            auto f = parametric_family(eq113, sol, GaussianInt(3), GaussianInt(), Z);
            CHECK(divides(GaussianInt(3), f[0]));
            CHECK(divides(GaussianInt(3), f[1]));
            CHECK(divides(GaussianInt(3), f[2]));
        }
    }

    SUBCASE("unit divisors are trivially fine") {
        CHECK(divisibility_certificate(eq113, sol, GaussianInt(5), GaussianInt(2),
                                       GaussianInt(0, 1)));
    }

    SUBCASE("rejects malformed inputs") {
        CHECK_THROWS_AS(divisibility_certificate(eq113, sol, GaussianInt(3), GaussianInt(),
                                                 GaussianInt()),
                        std::invalid_argument);  // delta = 0
        CHECK_THROWS_AS(divisibility_certificate(eq113, sol, GaussianInt(3), GaussianInt(),
                                                 GaussianInt(2)),
                        std::invalid_argument);  // 2 does not divide c = 3
        CHECK_THROWS_AS(divisibility_certificate(eq113, sol, GaussianInt(1), GaussianInt(),
                                                 GaussianInt(3)),
                        std::invalid_argument);  // 3 does not divide X*y0 - Y*x0 = 1
        Solution bad(GaussianInt(2), GaussianInt(2), GaussianInt(1));
        CHECK_THROWS_AS(divisibility_certificate(eq113, bad, GaussianInt(3), GaussianInt(),
                                                 GaussianInt(3)),
                        std::invalid_argument);  // x0, y0 not coprime
    }

    SUBCASE("returns false when delta shares a prime with the side data") {
        LegendreEquation eq(GaussianInt(3), GaussianInt(1), GaussianInt(3));
        Solution s(GaussianInt(1), GaussianInt(1), GaussianInt(1));
        CHECK(!divisibility_certificate(eq, s, GaussianInt(3), GaussianInt(), GaussianInt(3)));
    }

    SUBCASE("returns false when the Z-free parts are not divisible") {
        Solution s(GaussianInt(1), GaussianInt(2), GaussianInt(1));
        // X*y0 - Y*x0 = 2*1 - (-1)*1 = 3, but a*X^2 + b*Y^2 = 2 is not
        // divisible by 3.
        CHECK(!divisibility_certificate(eq113, s, GaussianInt(1), GaussianInt(-1),
                                        GaussianInt(3)));
    }
}

TEST_CASE("nonzero_z_guard") {
    LegendreEquation eq(GaussianInt(0, 1), GaussianInt(7), GaussianInt(1));
    Solution sol(GaussianInt(2, 2), GaussianInt(1), GaussianInt(1));

    CHECK(nonzero_z_guard(eq, sol, GaussianInt(), GaussianInt(), GaussianInt(1)));

    // Vanishing family with non-square a*b = 7i is a contract violation.
    CHECK_THROWS_AS(nonzero_z_guard(eq, sol, GaussianInt(), GaussianInt(), GaussianInt()),
                    InvariantFault);

    // With a*b = 1 a vanishing z-component is possible; the guard just says no.
    LegendreEquation sq(GaussianInt(1), GaussianInt(1), GaussianInt(1, 1));
    Solution on_cone(GaussianInt(1), GaussianInt(0, 1), GaussianInt());
    CHECK(!nonzero_z_guard(sq, on_cone, GaussianInt(1), GaussianInt(0, 1), GaussianInt()));
}

TEST_CASE("descent_step: odd-c reduction, frozen") {
    LegendreEquation eq = as_normal(GaussianInt(0, 1), GaussianInt(7), GaussianInt(1));
    Solution seed(GaussianInt(7, 5), GaussianInt(-3), GaussianInt(4, -3));
    REQUIRE(check_solution(eq, seed).ok);
    REQUIRE(!bound_test(seed.z, eq.a, eq.b));

    DescentStep step = descent_step(eq, seed);
    CHECK(step.case_tag == DescentCase::OddC);
    CHECK(step.X == GaussianInt(-1, -4));
    CHECK(step.Y == GaussianInt(1, 1));
    CHECK(step.Z == GaussianInt(-3));
    CHECK(step.delta == GaussianInt(1, 1));
    CHECK(same_solution(step.input, seed));
    CHECK(step.output.z == GaussianInt(0, -1));
    CHECK(to_line(step) ==
          "STEP OddC X=-1-4i Y=1+i Z=-3 delta=1+i z_in=4-3i z_out=-i "
          "N(z_in)=25 N(z_out)=1");
    verify_step(eq, step);
    CHECK(bound_test(step.output.z, eq.a, eq.b));
}

TEST_CASE("descent_step: even-c reduction, frozen") {
    LegendreEquation eq = as_normal(GaussianInt(1), GaussianInt(1), GaussianInt(1, 1));
    Solution seed(GaussianInt(0, -1), GaussianInt(-1, 2), GaussianInt(-2));
    REQUIRE(check_solution(eq, seed).ok);
    REQUIRE(!bound_test(seed.z, eq.a, eq.b));

    DescentStep step = descent_step(eq, seed);
    CHECK(step.case_tag == DescentCase::EvenC);
    CHECK(step.X == GaussianInt());
    CHECK(step.Y == GaussianInt(0, -1));
    CHECK(step.Z == GaussianInt(1));
    CHECK(step.delta == GaussianInt(1));
    CHECK(same_solution(step.output, Solution(GaussianInt(1), GaussianInt(0, -1), GaussianInt())));
    CHECK(to_line(step) ==
          "STEP EvenC X=0 Y=-i Z=1 delta=1 z_in=-2 z_out=0 N(z_in)=4 N(z_out)=0");
    verify_step(eq, step);
    CHECK(bound_test(step.output.z, eq.a, eq.b));
}

TEST_CASE("descent_step: rejected inputs") {
    LegendreEquation eq = as_normal(GaussianInt(0, 1), GaussianInt(7), GaussianInt(1));

    // Unnormalized equation object (same coefficients, missing marker).
    CHECK_THROWS_AS(descent_step(LegendreEquation(GaussianInt(0, 1), GaussianInt(7), GaussianInt(1)),
                                 Solution(GaussianInt(7, 5), GaussianInt(-3), GaussianInt(4, -3))),
                    std::invalid_argument);
    // Not a solution.
    CHECK_THROWS_AS(descent_step(eq, Solution(GaussianInt(1), GaussianInt(1), GaussianInt(1))),
                    std::invalid_argument);
    // z = 0.
    LegendreEquation sq = as_normal(GaussianInt(1), GaussianInt(1), GaussianInt(1, 1));
    CHECK_THROWS_AS(descent_step(sq, Solution(GaussianInt(1), GaussianInt(0, 1), GaussianInt())),
                    std::invalid_argument);
    // Not primitive.
    CHECK_THROWS_AS(descent_step(eq, Solution(GaussianInt(14, 10), GaussianInt(-6), GaussianInt(8, -6))),
                    std::invalid_argument);
    // Already within the bound: nothing to reduce.
    CHECK_THROWS_AS(descent_step(eq, Solution(GaussianInt(2, 2), GaussianInt(1), GaussianInt(1))),
                    std::invalid_argument);
}

TEST_CASE("holzer_reduce: frozen traces") {
    SUBCASE("one odd-c step") {
        LegendreEquation eq = as_normal(GaussianInt(0, 1), GaussianInt(7), GaussianInt(1));
        DescentTrace trace =
            holzer_reduce(eq, Solution(GaussianInt(7, 5), GaussianInt(-3), GaussianInt(4, -3)));
        REQUIRE(trace.steps.size() == 1);
        CHECK(same_solution(trace.final, Solution(GaussianInt(2, -2), GaussianInt(0, 1), GaussianInt(0, -1))));
        CHECK(to_lines(trace) ==
              std::vector<std::string>{"STEP OddC X=-1-4i Y=1+i Z=-3 delta=1+i z_in=4-3i "
                                       "z_out=-i N(z_in)=25 N(z_out)=1"});
        CHECK(bound_test(trace.final.z, eq.a, eq.b));
        CHECK(check_solution(eq, trace.final).ok);
        CHECK(is_primitive(trace.final));
    }

    SUBCASE("one even-c step, from an imprimitive seed") {
        LegendreEquation eq = as_normal(GaussianInt(1), GaussianInt(1), GaussianInt(1, 1));
        DescentTrace trace =
            holzer_reduce(eq, Solution(GaussianInt(1, -1), GaussianInt(-3, 1), GaussianInt(-2, -2)));
        REQUIRE(trace.steps.size() == 1);
        CHECK(same_solution(trace.steps[0].input,
                            Solution(GaussianInt(0, -1), GaussianInt(-1, 2), GaussianInt(-2))));
        CHECK(same_solution(trace.final, Solution(GaussianInt(1), GaussianInt(0, -1), GaussianInt())));
    }

    SUBCASE("seed already within the bound: empty trace") {
        LegendreEquation eq = as_normal(GaussianInt(0, 1), GaussianInt(7), GaussianInt(1));
        DescentTrace trace = holzer_reduce(eq, Solution(GaussianInt(4, 4), GaussianInt(2), GaussianInt(2)));
        CHECK(trace.steps.empty());
        CHECK(same_solution(trace.final, Solution(GaussianInt(2, 2), GaussianInt(1), GaussianInt(1))));
    }

    SUBCASE("rejected inputs") {
        CHECK_THROWS_AS(holzer_reduce(LegendreEquation(GaussianInt(0, 1), GaussianInt(7), GaussianInt(1)),
                                      Solution(GaussianInt(2, 2), GaussianInt(1), GaussianInt(1))),
                        std::invalid_argument);
        CHECK_THROWS_AS(holzer_reduce(as_normal(GaussianInt(0, 1), GaussianInt(7), GaussianInt(1)),
                                      Solution(GaussianInt(1), GaussianInt(1), GaussianInt(1))),
                        std::invalid_argument);
    }
}

TEST_CASE("holzer_reduce: randomized descent chains verify step by step") {
    struct Base {
        LegendreEquation eq;
        Solution seed;
    };
    const Base bases[] = {
        {as_normal(GaussianInt(0, 1), GaussianInt(7), GaussianInt(1)),
         Solution(GaussianInt(2, 2), GaussianInt(1), GaussianInt(1))},
        {as_normal(GaussianInt(1), GaussianInt(1), GaussianInt(3)),
         Solution(GaussianInt(0, 2), GaussianInt(1), GaussianInt(1))},
        {as_normal(GaussianInt(1), GaussianInt(1), GaussianInt(1, 1)),
         Solution(GaussianInt(0, -1), GaussianInt(-1, 2), GaussianInt(-2))},
        {as_normal(GaussianInt(3), GaussianInt(1), GaussianInt(7)),
         Solution(GaussianInt(1), GaussianInt(2), GaussianInt(0, 1))},
        {as_normal(GaussianInt(1), GaussianInt(0, -1), GaussianInt(3)),
         Solution(GaussianInt(1), GaussianInt(1, 1), GaussianInt(0, 1))},
        {as_normal(GaussianInt(1), GaussianInt(1), GaussianInt(3, 3)),
         Solution(GaussianInt(-3, 4), GaussianInt(-2, -3), GaussianInt(2))},
    };
    for (const Base& b : bases) REQUIRE(check_solution(b.eq, b.seed).ok);

    std::mt19937_64 rng(62);
    int even_steps = 0, odd_steps = 0, multi_step_chains = 0;
    for (const Base& b : bases) {
        int produced = 0;
        for (int attempt = 0; attempt < 200 && produced < 10; ++attempt) {
            GaussianInt X = random_gaussian(rng, -6, 6), Y = random_gaussian(rng, -6, 6),
                        Z = random_gaussian(rng, -6, 6);
            auto f = parametric_family(b.eq, b.seed, X, Y, Z);
            if (f[0].is_zero() && f[1].is_zero() && f[2].is_zero()) continue;
            if (bound_test(f[2], b.eq.a, b.eq.b)) continue;  // want a real chain
            ++produced;

            DescentTrace trace = holzer_reduce(b.eq, Solution(f[0], f[1], f[2]));
            CHECK(!trace.steps.empty());
            if (trace.steps.size() > 1) ++multi_step_chains;
            for (const DescentStep& step : trace.steps) {
                verify_step(b.eq, step);
                (step.case_tag == DescentCase::EvenC ? even_steps : odd_steps)++;
            }
            // Chained inputs are the primitivized previous outputs.
            for (std::size_t k = 1; k < trace.steps.size(); ++k)
                CHECK(same_solution(trace.steps[k].input,
                                    primitivize(trace.steps[k - 1].output)));
            CHECK(bound_test(trace.final.z, b.eq.a, b.eq.b));
            CHECK(check_solution(b.eq, trace.final).ok);
            CHECK(is_primitive(trace.final));
            CHECK(same_solution(trace.final, primitivize(trace.steps.back().output)));
        }
        CHECK(produced == 10);
    }
    CHECK(even_steps >= 10);
    CHECK(odd_steps >= 10);
    CHECK(multi_step_chains >= 5);
}
