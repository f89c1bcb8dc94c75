#pragma once

// Exact integer primitives shared by every other module.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace pegg {

/// Machine word: bases, coefficients, exponents, moduli and residues.
using Word = std::uint64_t;

/// Arbitrary-precision non-negative integer (A, B, C, N, term values).
using Natural = mpz_class;

struct PrimePower {
  Word prime;
  Word exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

Natural to_natural(Word w);
/// Throws std::overflow_error when n does not fit in a Word.
Word to_word(const Natural& n);
bool fits_word(const Natural& n);
Natural natural_from_string(const std::string& decimal);

Natural pow(const Natural& base, Word exponent);
Natural pow_word(Word base, Word exponent);

/// Largest r with p^r | n. Throws std::invalid_argument for n = 0 or p < 2.
Word padic_valuation(Word p, const Natural& n);

/// Trial-division factorization, primes ascending. factorize(1) is empty.
std::vector<PrimePower> factorize(Word n);

/// True iff no prime divides n k or more times.
bool is_k_free(Word n, Word k);

/// floor(n^(1/k)). Throws std::invalid_argument for k = 0.
Natural integer_kth_root(const Natural& n, Word k);

/// Smallest r with r^k >= n.
Natural ceil_kth_root(const Natural& n, Word k);

bool is_perfect_kth_power(const Natural& n, Word k);

/// Smallest q >= 0 with q = 0 (mod m1) and q = r2 (mod m2); nullopt when the
/// system has no solution.
std::optional<Word> smallest_q(Word m1, Word m2, Word r2);

Word gcd_word(Word a, Word b);
Word lcm_word(Word a, Word b);

/// Primes below `limit`, ascending.
std::vector<Word> primes_below(Word limit);

/// The first `count` primes.
std::vector<Word> first_primes(std::size_t count);

/// Exact floor(log2(n)) for n >= 1, and a double-precision log2 good to ~1e-15.
Word floor_log2(const Natural& n);
double log2_natural(const Natural& n);

/// Inverse of a modulo m (gcd(a, m) = 1 required).
Word inverse_mod(Word a, Word m);

}  // namespace pegg
