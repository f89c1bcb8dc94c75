#pragma once

// Brute-force reference search. Uses only GMP arithmetic and exact root
// tests: no tables, no residue filters, no range formulas from the library.
// The multiplier and re-association are recomputed here from first principles.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using U = std::uint64_t;

enum class Sign { ax_minus_cz, cz_minus_ax, ax_plus_cz };

// exponents (x, y, z); coefficient f on the z-term, d = e = 1
struct Hit {
  U x, y, z;
  Sign sign;
  U a, b, c, f;
  // canonical identity: {sum term} and the unordered pair of addends
  std::string key() const {
    auto t = [](U coef, U base, U exp) {
      return (coef == 1 ? "" : std::to_string(coef) + "*") + std::to_string(base) + "^" + std::to_string(exp);
    };
    std::string ta = t(1, a, x), tb = t(1, b, y), tc = t(f, c, z);
    std::string sum, l, r;
    if (sign == Sign::ax_minus_cz) sum = ta, l = tb, r = tc;
    else if (sign == Sign::cz_minus_ax) sum = tc, l = ta, r = tb;
    else sum = tb, l = ta, r = tc;
    if (r < l) std::swap(l, r);
    return l + " + " + r + " = " + sum;
  }
};

inline mpz_class zpow(U b, U e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

inline bool exact_root(const mpz_class& n, U k, mpz_class& root) {
  if (n < 0) return false;
  return mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0;
}

inline std::vector<U> small_primes(std::size_t n) {
  std::vector<U> p;
  for (U k = 2; p.size() < n; ++k) {
    bool prime = true;
    for (U q : p)
      if (k % q == 0) prime = false;
    if (prime) p.push_back(k);
  }
  return p;
}

// smallest N with N an x-th and y-th power and N f a z-th power, by trial on q
// for each prime; also returns the resultant coefficients (D, E, F)
inline bool multiplier(U x, U y, U z, U f, mpz_class& N, std::array<mpz_class, 3>& coef) {
  N = 1;
  coef = {1, 1, 1};
  U n = f;
  for (U p = 2; n > 1; ++p) {
    if (p * p > n) p = n;
    U v = 0;
    while (n % p == 0) n /= p, ++v;
    if (v == 0) continue;
    U q = 0;
    for (; q < 10000; ++q)
      if (q % x == 0 && q % y == 0 && (q + v) % z == 0) break;
    if (q == 10000) return false;
    N *= zpow(p, q);
    coef[0] *= zpow(p, q / x);
    coef[1] *= zpow(p, q / y);
    coef[2] *= zpow(p, (q + v) / z);
  }
  return true;
}

inline mpz_class gcd3(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// best Pegg Value over the base equation and all p^(k lcm) multiples
// (first 25 primes, any k) whose size stays within s_max
inline mpz_class best_pegg(const Hit& h, const mpz_class& s_max) {
  mpz_class N;
  std::array<mpz_class, 3> coef;
  multiplier(h.x, h.y, h.z, h.f, N, coef);
  const mpz_class A0 = coef[0] * h.a, B0 = coef[1] * h.b, C0 = coef[2] * h.c;
  const U L = std::lcm(std::lcm(h.x, h.y), h.z);
  auto size_of = [&](const mpz_class& A, const mpz_class& B, const mpz_class& C) {
    mpz_class r;
    if (h.sign == Sign::ax_minus_cz) mpz_pow_ui(r.get_mpz_t(), A.get_mpz_t(), h.x);
    else if (h.sign == Sign::cz_minus_ax) mpz_pow_ui(r.get_mpz_t(), C.get_mpz_t(), h.z);
    else mpz_pow_ui(r.get_mpz_t(), B.get_mpz_t(), h.y);
    return r;
  };
  auto pv = [](const mpz_class& A, const mpz_class& B, const mpz_class& C) {
    return mpz_class(std::min({A, B, C}) / gcd3(A, B, C));
  };
  mpz_class best = pv(A0, B0, C0);
  for (U p : small_primes(25))
    for (U k = 1;; ++k) {
      const mpz_class A = A0 * zpow(p, k * L / h.x), B = B0 * zpow(p, k * L / h.y), C = C0 * zpow(p, k * L / h.z);
      if (size_of(A, B, C) > s_max) break;
      best = std::max(best, pv(A, B, C));
    }
  return best;
}

struct Query {
  U x, y, z;
  std::vector<Sign> signs;
  mpz_class s_min, s_max;
  U V;
};

// every equation d=e=1, f >= 2 z-th power free, gcd(a, f c) = 1, b >= 1,
// resultant base size in [s_min, s_max], best Pegg Value >= V
inline std::vector<Hit> naive_search(const Query& q) {
  std::vector<Hit> out;
  // N f >= f^2 for every exponent set with exponents <= 5
  mpz_class f_lim;
  mpz_sqrt(f_lim.get_mpz_t(), q.s_max.get_mpz_t());
  for (U f = 2; f <= f_lim; ++f) {
    bool zfree = true;
    for (U p = 2; p * p <= f && zfree; ++p) {
      U v = 0, n = f;
      while (n % p == 0) n /= p, ++v;
      if (v >= q.z) zfree = false;
    }
    if (!zfree) continue;
    mpz_class N;
    std::array<mpz_class, 3> coef;
    if (!multiplier(q.x, q.y, q.z, f, N, coef)) continue;
    const mpz_class lim = q.s_max / N;  // every term value of a hit is <= the sum term <= s_max / N
    if (lim < f) continue;
    for (Sign s : q.signs) {
      for (U c = 1;; ++c) {
        const mpz_class fcz = f * zpow(c, q.z);
        if (fcz > lim) break;
        for (U a = 1;; ++a) {
          const mpz_class ax = zpow(a, q.x);
          if (ax > lim) break;
          if (s == Sign::cz_minus_ax && ax >= fcz) break;
          mpz_class bval = s == Sign::ax_minus_cz ? mpz_class(ax - fcz)
                           : s == Sign::cz_minus_ax ? mpz_class(fcz - ax)
                                                    : mpz_class(ax + fcz);
          if (bval <= 0) continue;
          if (s == Sign::ax_plus_cz && bval > lim) break;
          mpz_class b;
          if (!exact_root(bval, q.y, b)) continue;
          if (std::gcd(a, f) != 1 || std::gcd(a, c) != 1) continue;
          const U bw = b.get_ui();
          // x = y with both addends a^x and b^y: keep one ordering
          if (s == Sign::cz_minus_ax && q.x == q.y && a < bw) continue;
          const mpz_class sum = s == Sign::ax_minus_cz ? ax : s == Sign::cz_minus_ax ? fcz : bval;
          const mpz_class size = N * sum;
          if (size < q.s_min || size > q.s_max) continue;
          Hit h{q.x, q.y, q.z, s, a, bw, c, f};
          if (best_pegg(h, q.s_max) >= q.V) out.push_back(h);
        }
      }
    }
  }
  return out;
}

inline std::set<std::string> keys(const std::vector<Hit>& hits) {
  std::set<std::string> k;
  for (const auto& h : hits) k.insert(h.key());
  return k;
}

}  // namespace oracle
