#pragma once

// Residue filters for perfect cube / 4th / 5th power testing.
//
// Query paths use only table lookups, multiplies, adds and Barrett
// reductions. The reciprocal and the tables are produced at build time.

#include <cstdint>
#include <string>
#include <vector>

#include "pegg/numtheory.hpp"
#include "pegg/reciprocal.hpp"

namespace pegg {

enum class DiffDirection : std::uint8_t { fc_minus_ax, ax_minus_fc };

enum class FlagLayout : std::uint8_t { bytes, bits };

struct FilterModulus {
  Word m = 0;
  ReciprocalModulus red;
  std::vector<std::uint8_t> flag_bytes;  // 1 iff r is a k-th power residue
  std::vector<std::uint64_t> flag_bits;
  Word residue_count = 0;
  // pow[e][b] = b^e mod m, populated for each exponent in use
  std::vector<std::vector<std::uint16_t>> pow;

  Word reduce(Word v) const { return red.reduce(v); }
  Word pow_mod(Word base_residue, Word e) const { return pow[e][base_residue]; }
};

class ResidueFilterSet {
 public:
  Word k = 0;
  FlagLayout layout = FlagLayout::bytes;
  std::vector<FilterModulus> mods;

  std::vector<Word> moduli() const;

  bool is_residue(const FilterModulus& fm, Word r) const {
    if (layout == FlagLayout::bytes) return fm.flag_bytes[r] != 0;
    return (fm.flag_bits[r >> 6] >> (r & 63)) & 1u;
  }

  /// f*c^z mod m for every modulus, written to out[0..mods.size()).
  void fcz_residues(Word f, Word c, Word z, Word* out) const;

  /// Filter step with f*c^z residues precomputed.
  bool diff_passes(const Word* fcz, Word a, Word x, DiffDirection dir) const {
    for (const auto& fm : mods) {
      const Word ax = fm.pow_mod(fm.reduce(a), x);
      const Word r = *fcz++;
      Word diff = dir == DiffDirection::fc_minus_ax ? r + fm.m - ax : ax + fm.m - r;
      if (diff >= fm.m) diff -= fm.m;
      if (!is_residue(fm, diff)) return false;
    }
    return true;
  }
};

/// k = 3: 9 and the 34 primes p = 1 (mod 3), p <= 367.
/// k = 4: 9, 16, 49 and the 25 primes p = 1 (mod 4), p <= 257.
/// k = 5: 25 and the 23 primes p = 1 (mod 5), p <= 521.
std::vector<Word> default_moduli(Word k);

/// Power tables are built for k and for every exponent in `exponents`.
ResidueFilterSet build_filter(Word k, const std::vector<Word>& moduli, const std::vector<Word>& exponents = {},
                              FlagLayout layout = FlagLayout::bytes);

/// prod_m |residues_m| / m as an exact fraction.
mpq_class surviving_fraction(const ResidueFilterSet& filter);

/// 1 - surviving fraction. Long double only carries ~19 digits; use
/// surviving_fraction with format_percent when more are needed.
long double analytic_elimination_rate(const ResidueFilterSet& filter);

/// 100 * value rounded half-up to `decimals` places.
std::string format_percent(const mpq_class& value, int decimals);

bool diff_passes_filter(const ResidueFilterSet& filter, Word f, Word c, Word z, Word a, Word x, DiffDirection dir);

/// Residue screen followed by the exact test; agrees with
/// is_perfect_kth_power(n, filter.k) on every input.
bool is_kth_power_filtered(const ResidueFilterSet& filter, const Natural& n);

/// Residue screen only.
bool passes_residues(const ResidueFilterSet& filter, const Natural& n);

}  // namespace pegg
