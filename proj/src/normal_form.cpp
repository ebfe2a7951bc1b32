#include "legz/normal_form.hpp"

#include <array>

#include "legz/factorization.hpp"

namespace legz {

namespace {

std::array<GaussianInt, 3> coeffs(const LegendreEquation& eq) {
    return {eq.a, eq.b, eq.c};
}

LegendreEquation from_coeffs(const std::array<GaussianInt, 3>& c) {
    return LegendreEquation(c[0], c[1], c[2]);
}

constexpr const char* slot_name(CoefficientSlot s) {
    switch (s) {
        case CoefficientSlot::A: return "a";
        case CoefficientSlot::B: return "b";
        case CoefficientSlot::C: return "c";
    }
    return "?";
}

// (alpha, rest) with g = alpha^2 * rest, rest square-free, alpha canonical.
std::pair<GaussianInt, GaussianInt> split_square(const GaussianInt& g) {
    Factorization f = factorize(g);
    GaussianInt alpha(1);
    for (const auto& [prime, exponent] : f.factors)
        for (unsigned k = 0; k < exponent / 2; ++k) alpha *= prime;
    alpha = canonical_associate(alpha);
    return {alpha, exact_div(g, alpha * alpha)};
}

}  // namespace

LegendreEquation NormalizationTrace::replay_original(const LegendreEquation& normal_eq) const {
    std::array<GaussianInt, 3> c = coeffs(normal_eq);
    for (auto it = records.rbegin(); it != records.rend(); ++it) {
        if (const auto* sq = std::get_if<SquarePartRecord>(&*it)) {
            c[0] = sq->alpha * sq->alpha * c[0];
            c[1] = sq->beta * sq->beta * c[1];
            c[2] = sq->gamma * sq->gamma * c[2];
        } else {
            const auto& ps = std::get<PrimeShiftRecord>(*it);
            for (int k = 0; k < 3; ++k) {
                if (k == static_cast<int>(ps.receiver))
                    c[k] = exact_div(c[k], ps.p);  // the receiver took the prime
                else
                    c[k] = ps.p * c[k];
            }
        }
    }
    return from_coeffs(c);
}

std::string to_line(const ReductionRecord& record) {
    if (const auto* sq = std::get_if<SquarePartRecord>(&record)) {
        return "SQ " + to_string(sq->alpha) + " " + to_string(sq->beta) + " " +
               to_string(sq->gamma);
    }
    const auto& ps = std::get<PrimeShiftRecord>(record);
    return "PS " + to_string(ps.p) + " " + slot_name(ps.receiver);
}

std::vector<std::string> to_lines(const NormalizationTrace& trace) {
    std::vector<std::string> out;
    out.reserve(trace.records.size());
    for (const auto& rec : trace.records) out.push_back(to_line(rec));
    return out;
}

bool is_squarefree_equation(const LegendreEquation& eq) {
    return is_squarefree(eq.a) && is_squarefree(eq.b) && is_squarefree(eq.c);
}

bool is_pairwise_coprime(const LegendreEquation& eq) {
    return gcd(eq.a, eq.b).is_unit() && gcd(eq.a, eq.c).is_unit() &&
           gcd(eq.b, eq.c).is_unit();
}

bool is_normal_form(const LegendreEquation& eq) {
    return is_squarefree_equation(eq) && is_pairwise_coprime(eq);
}

std::pair<LegendreEquation, SquarePartRecord> squarefree_reduce(const LegendreEquation& eq) {
    auto [alpha, a] = split_square(eq.a);
    auto [beta, b] = split_square(eq.b);
    auto [gamma, c] = split_square(eq.c);
    return {LegendreEquation(a, b, c), SquarePartRecord{alpha, beta, gamma}};
}

namespace {

// Smallest canonical prime dividing at least two coefficients, if any.
std::optional<GaussianInt> smallest_shared_prime(const std::array<GaussianInt, 3>& c) {
    std::optional<GaussianInt> best;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            GaussianInt g = gcd(c[i], c[j]);
            if (g.is_unit()) continue;
            for (const auto& [prime, exponent] : factorize(g).factors) {
                (void)exponent;
                if (!best || norm_re_im_less(prime, *best)) best = prime;
            }
        }
    }
    return best;
}

}  // namespace

std::pair<LegendreEquation, std::vector<PrimeShiftRecord>> coprime_reduce(
    const LegendreEquation& eq) {
    std::array<GaussianInt, 3> c = coeffs(eq);
    std::vector<PrimeShiftRecord> records;
    while (auto p = smallest_shared_prime(c)) {
        // Receiver: first slot whose two companions are both divisible by p.
        int receiver = -1;
        for (int k = 0; k < 3 && receiver < 0; ++k)
            if (divides(*p, c[(k + 1) % 3]) && divides(*p, c[(k + 2) % 3])) receiver = k;
        if (receiver < 0)
            throw InvariantFault("coprime_reduce: shared prime without a receiver");
        Integer before = (c[0] * c[1] * c[2]).norm();
        for (int k = 0; k < 3; ++k)
            c[k] = (k == receiver) ? *p * c[k] : exact_div(c[k], *p);
        if ((c[0] * c[1] * c[2]).norm() >= before)
            throw InvariantFault("coprime_reduce: norm(a*b*c) did not decrease");
        records.push_back(PrimeShiftRecord{*p, static_cast<CoefficientSlot>(receiver)});
    }
    return {from_coeffs(c), records};
}

std::pair<LegendreEquation, NormalizationTrace> normalize(const LegendreEquation& eq) {
    LegendreEquation cur = eq;
    NormalizationTrace trace;
    // Each recorded step strictly decreases norm(a*b*c), so this terminates;
    // the cap only guards against implementation bugs.
    for (int round = 0; round < 10'000; ++round) {
        auto [sq_eq, sq] = squarefree_reduce(cur);
        bool sq_trivial = sq.alpha == GaussianInt(1) && sq.beta == GaussianInt(1) &&
                          sq.gamma == GaussianInt(1);
        if (!sq_trivial) {
            trace.records.emplace_back(sq);
            cur = sq_eq;
        }
        auto [cp_eq, shifts] = coprime_reduce(cur);
        for (const auto& s : shifts) trace.records.emplace_back(s);
        cur = cp_eq;
        if (is_normal_form(cur)) {
            cur.normal = true;
            return {cur, trace};
        }
    }
    throw InvariantFault("normalize: did not reach a fixed point");
}

namespace {

int slot_index(CoefficientSlot s) { return static_cast<int>(s); }

std::array<GaussianInt, 3> components(const Solution& sol) {
    return {sol.x, sol.y, sol.z};
}

Solution from_components(const std::array<GaussianInt, 3>& v) {
    return Solution(v[0], v[1], v[2]);
}

}  // namespace

Solution pull_back(const Solution& sol, const NormalizationTrace& trace) {
    std::array<GaussianInt, 3> v = components(sol);
    for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
        if (const auto* sq = std::get_if<SquarePartRecord>(&*it)) {
            v = {sq->beta * sq->gamma * v[0],
                 sq->gamma * sq->alpha * v[1],
                 sq->alpha * sq->beta * v[2]};
        } else {
            const auto& ps = std::get<PrimeShiftRecord>(*it);
            int r = slot_index(ps.receiver);
            // Preferred transport divides the two shifted components; when
            // that is not exact, multiplying the receiver component gives the
            // same projective solution integrally.
            auto q1 = try_exact_div(v[(r + 1) % 3], ps.p);
            auto q2 = try_exact_div(v[(r + 2) % 3], ps.p);
            if (q1 && q2) {
                v[(r + 1) % 3] = *q1;
                v[(r + 2) % 3] = *q2;
            } else {
                v[r] = ps.p * v[r];
            }
        }
    }
    return from_components(v);
}

Solution push_forward(const Solution& sol, const NormalizationTrace& trace) {
    std::array<GaussianInt, 3> v = components(sol);
    for (const auto& rec : trace.records) {
        if (const auto* sq = std::get_if<SquarePartRecord>(&rec)) {
            v = {sq->alpha * v[0], sq->beta * v[1], sq->gamma * v[2]};
        } else {
            const auto& ps = std::get<PrimeShiftRecord>(rec);
            int r = slot_index(ps.receiver);
            v[(r + 1) % 3] = ps.p * v[(r + 1) % 3];
            v[(r + 2) % 3] = ps.p * v[(r + 2) % 3];
        }
    }
    return from_components(v);
}

Solution primitivize(const Solution& sol) {
    GaussianInt g = gcd(sol.x, sol.y, sol.z);
    return Solution(exact_div(sol.x, g), exact_div(sol.y, g), exact_div(sol.z, g));
}

bool is_primitive(const Solution& sol) {
    return gcd(sol.x, sol.y, sol.z).is_unit();
}

}  // namespace legz
