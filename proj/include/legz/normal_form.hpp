#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "legz/equation.hpp"

namespace legz {

// One square-extraction pass: the input coefficients factor as
// (alpha^2 * a', beta^2 * b', gamma^2 * c') with a', b', c' square-free and
// alpha, beta, gamma canonical.  Trivial passes (all three equal 1) are
// never recorded.
struct SquarePartRecord {
    GaussianInt alpha, beta, gamma;
};

enum class CoefficientSlot { A, B, C };

// One prime shift: p divided the two coefficients other than `receiver`;
// those two were divided by p and the receiver was multiplied by it.
struct PrimeShiftRecord {
    GaussianInt p;
    CoefficientSlot receiver;
};

using ReductionRecord = std::variant<SquarePartRecord, PrimeShiftRecord>;

// The reduction records, in the order they were applied (original -> normal).
struct NormalizationTrace {
    std::vector<ReductionRecord> records;

    bool empty() const { return records.empty(); }

    // Runs the records backwards to reconstruct the equation that was
    // normalized.  Exact by construction; a mismatching trace is a hard fault.
    LegendreEquation replay_original(const LegendreEquation& normal_eq) const;
};

// "SQ alpha beta gamma" or "PS p slot" (slot in {a, b, c}).
std::string to_line(const ReductionRecord& record);
std::vector<std::string> to_lines(const NormalizationTrace& trace);

bool is_squarefree_equation(const LegendreEquation& eq);
bool is_pairwise_coprime(const LegendreEquation& eq);
bool is_normal_form(const LegendreEquation& eq);

// Removes the square part of every coefficient.  The returned record holds
// alpha, beta, gamma (each 1 when nothing was extracted).
std::pair<LegendreEquation, SquarePartRecord> squarefree_reduce(const LegendreEquation& eq);

// Shifts shared primes until the coefficients are pairwise coprime.  Each
// shift picks the smallest canonical prime (by norm, re, im) dividing two
// coefficients; the receiver is the first slot in (a, b, c) order whose two
// companions are both divisible.  norm(a*b*c) strictly decreases at every
// shift.  May reintroduce squares when p divided all three coefficients.
std::pair<LegendreEquation, std::vector<PrimeShiftRecord>> coprime_reduce(const LegendreEquation& eq);

// Alternates the two reductions to the fixed point: square-free and pairwise
// coprime.  The result carries normal = true; an already-normal input yields
// an empty trace.
std::pair<LegendreEquation, NormalizationTrace> normalize(const LegendreEquation& eq);

// Transports a solution of the normalized equation back to the original one.
Solution pull_back(const Solution& sol, const NormalizationTrace& trace);

// Transports a solution of the original equation onto the normalized one.
Solution push_forward(const Solution& sol, const NormalizationTrace& trace);

// Divides out gcd(x, y, z); already-primitive solutions come back unchanged.
Solution primitivize(const Solution& sol);

bool is_primitive(const Solution& sol);

}  // namespace legz
