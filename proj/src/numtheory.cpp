#include "pegg/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pegg {

Natural to_natural(Word w) {
  Natural n;
  mpz_import(n.get_mpz_t(), 1, -1, sizeof(Word), 0, 0, &w);
  return n;
}

bool fits_word(const Natural& n) {
  return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

Word to_word(const Natural& n) {
  if (!fits_word(n)) throw std::overflow_error("value does not fit in 64 bits: " + n.get_str());
  Word w = 0;
  mpz_export(&w, nullptr, -1, sizeof(Word), 0, 0, n.get_mpz_t());
  return w;
}

Natural natural_from_string(const std::string& decimal) {
  if (decimal.empty() || !std::all_of(decimal.begin(), decimal.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw std::invalid_argument("not a decimal natural number: '" + decimal + "'");
  return Natural(decimal, 10);
}

Natural pow(const Natural& base, Word exponent) {
  if (exponent > std::numeric_limits<unsigned long>::max()) throw std::overflow_error("exponent too large");
  Natural r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent));
  return r;
}

Natural pow_word(Word base, Word exponent) { return pow(to_natural(base), exponent); }

Word padic_valuation(Word p, const Natural& n) {
  if (p < 2) throw std::invalid_argument("padic_valuation: p must be >= 2");
  if (sgn(n) <= 0) throw std::invalid_argument("padic_valuation: n must be >= 1");
  Natural m = n;
  const Natural pp = to_natural(p);
  Word r = 0;
  while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
    ++r;
  }
  return r;
}

std::vector<PrimePower> factorize(Word n) {
  std::vector<PrimePower> out;
  if (n < 2) return out;
  auto take = [&](Word p) {
    Word e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  };
  take(2);
  take(3);
  // 6k +- 1 wheel
  for (Word p = 5; p <= n / p; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_k_free(Word n, Word k) {
  return std::ranges::all_of(factorize(n), [k](const PrimePower& pp) { return pp.exponent < k; });
}

namespace {

// Multiply-back correction: the loop bodies run a handful of times because
// the starting estimate is within a few ulps of the true root.
Natural correct_root(Natural r, const Natural& n, Word k) {
  if (sgn(r) < 0) r = 0;
  while (sgn(r) > 0 && pow(r, k) > n) --r;
  for (;;) {
    Natural next = r + 1;
    if (pow(next, k) > n) break;
    r = next;
  }
  return r;
}

}  // namespace

Natural integer_kth_root(const Natural& n, Word k) {
  if (k == 0) throw std::invalid_argument("integer_kth_root: k must be >= 1");
  if (sgn(n) < 0) throw std::invalid_argument("integer_kth_root: n must be >= 0");
  if (k == 1 || n < 2) return n;

  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());  // n = mant * 2^exp2, mant in [0.5, 1)
  const double log2n = static_cast<double>(exp2) + std::log2(mant);
  const double log2r = log2n / static_cast<double>(k);

  if (log2r < 50.0) {
    const double est = std::floor(std::exp2(log2r));
    return correct_root(to_natural(static_cast<Word>(est)), n, k);
  }

  // Root wider than a double mantissa: scale the floating estimate into an
  // over-estimate, then integer Newton steps descend monotonically to the floor.
  const long shift = std::max(0L, static_cast<long>(std::floor(log2r)) - 52);
  const double top = std::exp2(log2r - static_cast<double>(shift));
  Natural r = to_natural(static_cast<Word>(std::ceil(top * (1.0 + 1e-12)))) + 1;
  r <<= static_cast<unsigned long>(shift);
  const Natural km1 = to_natural(k - 1);
  const Natural kk = to_natural(k);
  for (;;) {
    Natural next = (km1 * r + n / pow(r, k - 1)) / kk;
    if (next >= r) break;
    r = std::move(next);
  }
  return correct_root(std::move(r), n, k);
}

Natural ceil_kth_root(const Natural& n, Word k) {
  Natural r = integer_kth_root(n, k);
  if (pow(r, k) < n) ++r;
  return r;
}

bool is_perfect_kth_power(const Natural& n, Word k) {
  if (sgn(n) < 0) return false;
  return pow(integer_kth_root(n, k), k) == n;
}

std::optional<Word> smallest_q(Word m1, Word m2, Word r2) {
  if (m1 == 0 || m2 == 0) throw std::invalid_argument("smallest_q: moduli must be >= 1");
  if (r2 >= m2) throw std::invalid_argument("smallest_q: residue must be < m2");
  const Word period = lcm_word(m1, m2);
  for (Word q = 0; q < period; q += m1)
    if (q % m2 == r2) return q;
  return std::nullopt;
}

Word gcd_word(Word a, Word b) { return std::gcd(a, b); }
Word lcm_word(Word a, Word b) { return std::lcm(a, b); }

std::vector<Word> primes_below(Word limit) {
  std::vector<Word> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit, false);
  for (Word i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (Word j = i * i; j < limit; j += i) composite[j] = true;
  }
  return out;
}

std::vector<Word> first_primes(std::size_t count) {
  Word limit = 64;
  for (;;) {
    auto ps = primes_below(limit);
    if (ps.size() >= count) {
      ps.resize(count);
      return ps;
    }
    limit *= 2;
  }
}

Word floor_log2(const Natural& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("floor_log2: n must be >= 1");
  return mpz_sizeinbase(n.get_mpz_t(), 2) - 1;
}

double log2_natural(const Natural& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("log2_natural: n must be >= 1");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return static_cast<double>(exp2) + std::log2(mant);
}

Word inverse_mod(Word a, Word m) {
  Natural inv;
  const Natural aa = to_natural(a), mm = to_natural(m);
  if (mpz_invert(inv.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t()) == 0)
    throw std::invalid_argument("inverse_mod: not invertible");
  return to_word(inv);
}

}  // namespace pegg
