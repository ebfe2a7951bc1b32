#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "legz/gaussian_int.hpp"

namespace legz {

struct PrimePower {
    GaussianInt prime;   // canonical associate
    unsigned exponent;   // > 0
};

// unit * product(prime^exponent) with primes canonical, pairwise
// non-associate, and sorted by (norm, re, im).
struct Factorization {
    GaussianInt unit;
    std::vector<PrimePower> factors;

    GaussianInt product() const;
};

// Work ceiling shared by factorization (largest rational trial divisor) and
// residue-system enumeration; exceeding it raises EffortExceeded.  Intended
// to be set once at startup (the CLI honours LEGZ_FACTOR_CEILING).
std::uint64_t factor_ceiling();
void set_factor_ceiling(std::uint64_t ceiling);

// Factors g by trial division of norm(g) over Z, splitting each rational
// prime into Gaussian primes (p = 2 ramifies into (1+i)^2, p = 1 mod 4
// splits, p = 3 mod 4 stays inert).  Throws std::invalid_argument on zero and
// EffortExceeded when the coefficient is too large to certify.
Factorization factorize(const GaussianInt& g);

// True when no prime divides g twice.  Units are square-free.
bool is_squarefree(const GaussianInt& g);

// All canonical residues mod m (exactly norm(m) of them), sorted by
// (norm, re, im).  Residues are the remainders produced by euclid_divmod.
std::vector<GaussianInt> residue_system(const GaussianInt& m);

// The canonical representative of n mod m (the euclid_divmod remainder).
GaussianInt reduce_mod(const GaussianInt& n, const GaussianInt& m);

// Smallest witness w (by (norm, re, im)) with w^2 = n mod m, if any.
// Enumerates the full residue system; results are memoized per modulus.
std::optional<GaussianInt> sqrt_mod(const GaussianInt& n, const GaussianInt& m);

// Whether n is a square mod m.  Requires gcd(n, m) to be a unit (throws
// NonCoprimeError otherwise); a unit modulus makes everything a residue.
bool is_quadratic_residue(const GaussianInt& n, const GaussianInt& m);

}  // namespace legz
