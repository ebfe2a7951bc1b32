#pragma once

#include <optional>

#include "legz/equation.hpp"

namespace legz {

// One quadratic-residue condition of the solvability criterion, with either a
// verified witness (witness^2 = target mod modulus) or, when absent, proof by
// exhaustion of the full residue system.
struct QrCondition {
    GaussianInt target;
    GaussianInt modulus;
    bool is_residue = false;
    std::optional<GaussianInt> witness;
};

struct SolvabilityReport {
    bool solvable = false;
    QrCondition bc_mod_a, ca_mod_b, ab_mod_c;
};

// Samet's criterion: a normalized equation has a nontrivial solution exactly
// when bc, ca, ab are squares mod a, b, c respectively.  Requires eq.normal.
SolvabilityReport samet_solvable(const LegendreEquation& eq);

struct CheckResult {
    bool ok;
    GaussianInt residual;  // a*x^2 + b*y^2 + c*z^2, exactly
};

CheckResult check_solution(const LegendreEquation& eq, const Solution& sol);

// Multiplies by the unit that makes the first nonzero component canonical.
Solution normalize_solution_units(const Solution& sol);

// Strict preference between unit-normalized solutions: smaller
// (norm(z), norm(y), norm(x)) lexicographically; ties resolved toward the
// larger (re z, im z, re y, im y, re x, im x) tuple.
bool solution_prefer(const Solution& s, const Solution& t);

// Exhaustive search for the best primitive solution with
// max(norm(x), norm(y), norm(z)) <= bound, minimal under solution_prefer and
// unit-normalized.  Deterministic; jobs > 1 splits the scan into blocks whose
// results merge to the same answer.  bound must be >= 1 (and is capped at
// 10^7 to keep the scan enumerable).
std::optional<Solution> brute_force_search(const LegendreEquation& eq,
                                           const Integer& bound, int jobs = 1);

// First primitive in-bound solution in scan order, or absence after an
// exhaustive scan.  Same domain as brute_force_search, so an empty result is
// a proof that no solution exists within the bound.
std::optional<Solution> find_any_solution(const LegendreEquation& eq,
                                          const Integer& bound);

}  // namespace legz
