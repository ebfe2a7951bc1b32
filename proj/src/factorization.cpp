#include "legz/factorization.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace legz {

namespace {

std::atomic<std::uint64_t> g_factor_ceiling{100'000'000};

// Residue-system enumeration walks ~2*norm(m) lattice points; this cap keeps
// that work bounded independently of the factor ceiling.
constexpr std::uint64_t kResidueEnumCap = 1'000'000;

}  // namespace

std::uint64_t factor_ceiling() { return g_factor_ceiling.load(); }

void set_factor_ceiling(std::uint64_t ceiling) {
    if (ceiling == 0) throw std::invalid_argument("factor ceiling must be positive");
    g_factor_ceiling.store(ceiling);
}

GaussianInt Factorization::product() const {
    GaussianInt acc = unit;
    for (const auto& [prime, exponent] : factors)
        for (unsigned k = 0; k < exponent; ++k) acc *= prime;
    return acc;
}

namespace {

// Finds s^2 + t^2 = p for a rational prime p = 1 mod 4.
std::pair<Integer, Integer> two_squares(const Integer& p) {
    for (Integer s = 1; s * s <= p; ++s) {
        Integer t2 = p - s * s;
        Integer t = isqrt(t2);
        if (t * t == t2) return {s, t};
    }
    throw InvariantFault("two_squares: no representation for " + p.str());
}

}  // namespace

Factorization factorize(const GaussianInt& g) {
    if (g.is_zero()) throw std::invalid_argument("factorize: zero input");

    const Integer ceiling = Integer(factor_ceiling());
    Factorization out;
    GaussianInt h = g;

    // Divides h by the canonical prime as often as possible, so the residual
    // unit accumulates in h and the recorded primes multiply back exactly.
    auto peel = [&](const GaussianInt& prime) {
        GaussianInt cp = canonical_associate(prime);
        unsigned e = 0;
        while (true) {
            auto q = try_exact_div(h, cp);
            if (!q) break;
            h = *q;
            ++e;
        }
        if (e > 0) out.factors.push_back(PrimePower{cp, e});
    };

    // Gaussian primes above a rational prime p dividing norm(g).
    auto peel_above = [&](const Integer& p) {
        if (p == 2) {
            peel(GaussianInt(1, 1));  // 2 = -i * (1+i)^2
        } else if (p % 4 == 3) {
            peel(GaussianInt(p));  // inert
        } else {
            if (p > ceiling)
                throw EffortExceeded("coefficient too large: cannot split prime " +
                                     p.str());
            auto [s, t] = two_squares(p);
            peel(GaussianInt(s, t));
            peel(GaussianInt(s, -t));
        }
    };

    Integer n = g.norm();
    for (Integer p = 2; p * p <= n; p = (p == 2) ? Integer(3) : Integer(p + 2)) {
        if (p > ceiling)
            throw EffortExceeded("coefficient too large: unfactored part " + n.str() +
                                 " exceeds the trial-division ceiling");
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        peel_above(p);
    }
    if (n > 1) peel_above(n);  // n is prime: no factor up to sqrt(n) remained

    if (!h.is_unit())
        throw InvariantFault("factorize: non-unit cofactor " + to_string(h) +
                             " left over for " + to_string(g));
    out.unit = h;
    std::sort(out.factors.begin(), out.factors.end(),
              [](const PrimePower& x, const PrimePower& y) {
                  return norm_re_im_less(x.prime, y.prime);
              });
    return out;
}

bool is_squarefree(const GaussianInt& g) {
    Factorization f = factorize(g);
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const PrimePower& pp) { return pp.exponent == 1; });
}

GaussianInt reduce_mod(const GaussianInt& n, const GaussianInt& m) {
    return euclid_divmod(n, m).rem;
}

std::vector<GaussianInt> residue_system(const GaussianInt& m) {
    if (m.is_zero()) throw std::invalid_argument("residue_system: zero modulus");
    Integer count = m.norm();
    if (count > Integer(kResidueEnumCap))
        throw EffortExceeded("modulus too large for residue enumeration: norm " +
                             count.str());

    // The euclid_divmod remainder is a class invariant, so the residue system
    // is exactly the set of its fixed points; all of them satisfy
    // 2*norm(r) <= norm(m), hence lie in a small box.
    Integer radius = isqrt(count / 2) + 1;
    std::vector<GaussianInt> out;
    for (Integer s = -radius; s <= radius; ++s) {
        for (Integer t = -radius; t <= radius; ++t) {
            GaussianInt cand(s, t);
            if (2 * cand.norm() > count) continue;
            if (reduce_mod(cand, m) == cand) out.push_back(cand);
        }
    }
    if (Integer(out.size()) != count)
        throw InvariantFault("residue_system: found " + std::to_string(out.size()) +
                             " classes mod " + to_string(m) + ", expected " +
                             count.str());
    std::sort(out.begin(), out.end(), norm_re_im_less);
    return out;
}

namespace {

struct SquareTable {
    // reduced square -> smallest witness in (norm, re, im) order
    std::map<std::pair<Integer, Integer>, GaussianInt> witness_by_square;
};

std::shared_ptr<const SquareTable> square_table(const GaussianInt& m) {
    static std::mutex mutex;
    static std::map<std::pair<Integer, Integer>, std::shared_ptr<const SquareTable>> cache;

    std::pair<Integer, Integer> key{m.re(), m.im()};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto table = std::make_shared<SquareTable>();
    for (const GaussianInt& w : residue_system(m)) {
        GaussianInt sq = reduce_mod(w * w, m);
        table->witness_by_square.emplace(std::make_pair(sq.re(), sq.im()), w);
    }
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, std::move(table)).first->second;
}

}  // namespace

std::optional<GaussianInt> sqrt_mod(const GaussianInt& n, const GaussianInt& m) {
    if (m.is_zero()) throw std::invalid_argument("sqrt_mod: zero modulus");
    if (m.is_unit()) return GaussianInt();  // everything is 0 mod a unit
    auto table = square_table(m);
    GaussianInt target = reduce_mod(n, m);
    auto it = table->witness_by_square.find({target.re(), target.im()});
    if (it == table->witness_by_square.end()) return std::nullopt;
    return it->second;
}

bool is_quadratic_residue(const GaussianInt& n, const GaussianInt& m) {
    if (m.is_zero()) throw std::invalid_argument("is_quadratic_residue: zero modulus");
    if (m.is_unit()) return true;
    if (!gcd(n, m).is_unit())
        throw NonCoprimeError("is_quadratic_residue: " + to_string(n) + " and " +
                              to_string(m) + " share a non-unit factor");
    return sqrt_mod(n, m).has_value();
}

}  // namespace legz
