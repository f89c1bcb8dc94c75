#include <random>

#include "doctest.h"
#include "pegg/numtheory.hpp"

using namespace pegg;

TEST_SUITE("numtheory") {

TEST_CASE("padic valuation") {
  CHECK(padic_valuation(3, 54) == 3);
  CHECK(padic_valuation(7, 1) == 0);
  CHECK(padic_valuation(2, 518) == 1);
  CHECK(padic_valuation(2, Natural(1) << 200) == 200);
  CHECK_THROWS_AS(padic_valuation(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(padic_valuation(1, 5), std::invalid_argument);
}

TEST_CASE("factorize multiplies back") {
  CHECK(factorize(1).empty());
  CHECK(factorize(518) == std::vector<PrimePower>{{2, 1}, {7, 1}, {37, 1}});
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Word n = rng() % 100000000 + 1;
    Word prod = 1, last = 1;
    for (auto [p, e] : factorize(n)) {
      CHECK(p > last);
      last = p;
      for (Word j = 0; j < e; ++j) prod *= p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("k-free") {
  CHECK(is_k_free(9, 3));
  CHECK_FALSE(is_k_free(8, 3));
  CHECK(is_k_free(518, 4));
  CHECK(is_k_free(1, 3));
  // brute-force oracle
  for (Word n = 1; n < 3000; ++n) {
    bool free = true;
    for (Word p = 2; p * p * p <= n; ++p)
      if (n % (p * p * p) == 0) free = false;
    CHECK(is_k_free(n, 3) == free);
  }
}

TEST_CASE("integer kth root") {
  CHECK(integer_kth_root(pow_word(639, 3), 3) == 639);
  CHECK(integer_kth_root(Natural(1) << 100, 5) == Natural(1) << 20);
  CHECK(integer_kth_root(26, 3) == 2);
  CHECK(integer_kth_root(0, 4) == 0);
  CHECK_THROWS_AS(integer_kth_root(5, 0), std::invalid_argument);

  gmp_randclass rnd(gmp_randinit_default);
  rnd.seed(11);
  for (int i = 0; i < 3000; ++i) {
    const Natural n = rnd.get_z_bits(1 + i % 400);
    const Word k = 2 + i % 7;
    Natural want;
    mpz_root(want.get_mpz_t(), n.get_mpz_t(), k);
    CHECK(integer_kth_root(n, k) == want);
    const Natural up = ceil_kth_root(n, k);
    CHECK(pow(up, k) >= n);
    if (up > 0) CHECK(pow(Natural(up - 1), k) < n);
  }
}

TEST_CASE("perfect power test") {
  CHECK(is_perfect_kth_power(pow_word(126, 4), 4));
  CHECK_FALSE(is_perfect_kth_power(pow_word(126, 4) + 1, 4));
  CHECK(is_perfect_kth_power(0, 3));
  CHECK(is_perfect_kth_power(1, 5));
  for (Word n = 0; n < 20000; ++n) {
    const Natural N = n;
    CHECK(is_perfect_kth_power(N, 3) == (mpz_root(Natural().get_mpz_t(), N.get_mpz_t(), 3) != 0));
  }
}

TEST_CASE("smallest q") {
  CHECK(smallest_q(3, 5, 4) == 9);
  CHECK(smallest_q(12, 5, 4) == 24);
  CHECK_FALSE(smallest_q(3, 3, 2).has_value());
  CHECK(smallest_q(3, 3, 0) == 0);
  for (Word m1 = 1; m1 < 30; ++m1)
    for (Word m2 = 1; m2 < 30; ++m2)
      for (Word r = 0; r < m2; ++r) {
        std::optional<Word> want;
        for (Word q = 0; q < m1 * m2; q += m1)
          if (q % m2 == r) {
            want = q;
            break;
          }
        CHECK(smallest_q(m1, m2, r) == want);
      }
}

TEST_CASE("primes and logs") {
  const auto p = first_primes(25);
  CHECK(p.size() == 25);
  CHECK(p.front() == 2);
  CHECK(p.back() == 97);
  CHECK(primes_below(30) == std::vector<Word>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(floor_log2(1) == 0);
  CHECK(floor_log2((Natural(1) << 90) - 1) == 89);
  CHECK(log2_natural(Natural(1) << 1000) == doctest::Approx(1000.0));
  CHECK(gcd_word(12, 18) == 6);
  CHECK(lcm_word(4, 6) == 12);
  for (Word m : {7ull, 9ull, 1000003ull})
    for (Word a = 1; a < 200; ++a)
      if (gcd_word(a, m) == 1) CHECK(static_cast<unsigned __int128>(a) * inverse_mod(a, m) % m == 1);
}

TEST_CASE("conversions") {
  CHECK(natural_from_string("123456789012345678901234567890") == Natural("123456789012345678901234567890"));
  CHECK_THROWS_AS(natural_from_string("12x"), std::invalid_argument);
  CHECK_THROWS_AS(natural_from_string("-5"), std::invalid_argument);
  CHECK(fits_word(Natural(~Word{0})));
  CHECK_FALSE(fits_word(Natural(1) << 64));
  CHECK_THROWS_AS(to_word(Natural(1) << 64), std::overflow_error);
  CHECK(to_word(to_natural(~Word{0})) == ~Word{0});
}

}
