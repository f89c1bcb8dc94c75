#pragma once

// Division-free reduction by a fixed modulus. The reciprocal is computed once
// (that is the only division); every reduction afterwards is a high multiply,
// a low multiply, a subtract and one conditional subtract.

#include <cstdint>
#include <stdexcept>

namespace pegg {

inline std::uint64_t umulh(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) >> 64);
}

class ReciprocalModulus {
 public:
  ReciprocalModulus() = default;
  explicit ReciprocalModulus(std::uint64_t d) : d_(d) {
    if (d < 2) throw std::invalid_argument("ReciprocalModulus: modulus must be >= 2");
    // floor(2^64 / d) via (2^64 - 1) / d, exact unless d is a power of two,
    // where it is one short; the correction step below absorbs that.
    inv_ = ~std::uint64_t{0} / d;
    // 2^64 mod d, used to fold multi-limb numbers
    r64_ = (~std::uint64_t{0} % d + 1) % d;
  }

  std::uint64_t modulus() const { return d_; }

  // q estimate is at most 2 below the true quotient for d >= 2; the loop body
  // runs at most twice and usually zero times
  std::uint64_t reduce(std::uint64_t a) const {
    std::uint64_t r = a - umulh(a, inv_) * d_;
    while (r >= d_) r -= d_;
    return r;
  }

  // (x * y) mod d for x, y < d < 2^32
  std::uint64_t mulmod(std::uint64_t x, std::uint64_t y) const { return reduce(x * y); }

  // Horner over little-endian 64-bit limbs; requires d < 2^32.
  std::uint64_t reduce_limbs(const std::uint64_t* limbs, std::size_t n) const {
    std::uint64_t r = 0;
    for (std::size_t i = n; i-- > 0;) r = reduce(r * r64_ + reduce(limbs[i]));
    return r;
  }

 private:
  std::uint64_t d_ = 0;
  std::uint64_t inv_ = 0;
  std::uint64_t r64_ = 0;
};

}  // namespace pegg
