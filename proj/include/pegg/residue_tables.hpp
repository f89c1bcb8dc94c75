#pragma once

// a-base elimination and skipahead tables.
//
// Both are keyed by r = f*c^z mod M. For each pairwise-coprime prime-power
// factor q of M the admissible a-residues for r mod q are computed directly;
// the full tables are CRT products of these components.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pegg/equations.hpp"
#include "pegg/reciprocal.hpp"

namespace pegg {

inline constexpr std::uint64_t kGiB = std::uint64_t{1} << 30;
inline constexpr std::uint64_t kMiB = std::uint64_t{1} << 20;

struct TableSpec {
  ExponentTriple exps;
  Permutation perm = Permutation::ax_minus_cz;
  std::vector<Word> elim_factors;  // pairwise coprime prime powers
  std::vector<Word> skip_factors;
  std::uint64_t budget_bytes = 4 * kGiB;
  // 8 MiB splits the {4,4,3}/{4,4,5} cz moduli in three and {5,5,x} in two
  std::uint64_t cotable_cap_bytes = 8 * kMiB;
  Word single_coeff = 0;  // 0: table serves every coefficient

  Word skip_modulus() const;
  Word elim_modulus_or_zero() const;  // 0 when the product overflows a word
};

std::string describe(const TableSpec& spec);

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t projected, std::uint64_t budget);
  std::uint64_t projected_bytes;
};

/// Exponent sets with a suggested modulus row, in table order.
const std::vector<ExponentTriple>& known_exponent_sets();

/// Standard elimination and skipahead moduli. Throws std::invalid_argument for
/// unknown exponent sets.
TableSpec default_spec(const ExponentTriple& exps, Permutation perm);

/// Larger skipahead modulus for a table that only serves coefficient f.
TableSpec single_coefficient_spec(const ExponentTriple& exps, Permutation perm, Word f);

/// Longest prefix of the standard skipahead factors whose projected table size
/// stays within cap_bytes (possibly empty, i.e. M = 1).
TableSpec compact_spec(const ExponentTriple& exps, Permutation perm, std::uint64_t cap_bytes = 64 * kMiB);

/// Admissible a-residues modulo one prime power q, for every r mod q.
struct ComponentTable {
  Word q = 0;
  std::vector<std::uint32_t> start;  // q + 1 offsets into residues
  std::vector<std::uint32_t> residues;
  std::vector<std::uint8_t> reachable;  // r = f * (z-th power) for the fixed f; all 1 otherwise

  std::uint32_t count(Word r) const { return start[r + 1] - start[r]; }
  const std::uint32_t* begin(Word r) const { return residues.data() + start[r]; }
};

/// By definition: s is admissible for r iff +-(r - s^x) mod q is a y-th power
/// residue, the sign given by the permutation.
ComponentTable build_component(const ExponentTriple& exps, Permutation perm, Word q, Word single_coeff = 0);

class EliminationTable {
 public:
  struct CoTable {
    Word modulus = 0;
    ReciprocalModulus red;
    std::vector<Word> factors;
    std::vector<std::uint8_t> flags;  // 1: no admissible a for this residue
  };

  ExponentTriple exps;
  Permutation perm = Permutation::ax_minus_cz;
  std::vector<CoTable> cotables;

  /// True when the class of f*c^z admits no a base.
  bool eliminated(Word f, Word c) const;
  bool eliminated_residue(std::size_t cotable, Word r) const { return cotables[cotable].flags[r] != 0; }
};

EliminationTable build_elimination_table(const TableSpec& spec);

class SkipaheadTable {
 public:
  ExponentTriple exps;
  Permutation perm = Permutation::ax_minus_cz;
  Word single_coeff = 0;
  Word modulus = 1;
  std::vector<Word> factors;
  std::uint8_t entry_width = 2;
  std::vector<std::uint64_t> offsets;  // modulus + 1, in entries
  std::vector<std::uint32_t> anchors;  // first admissible residue of each class
  std::vector<std::uint16_t> gaps16;
  std::vector<std::uint32_t> gaps32;
  ReciprocalModulus red;

  Word class_count() const { return modulus; }
  Word class_size(Word r) const { return offsets[r + 1] - offsets[r]; }
  Word gap(std::uint64_t i) const { return entry_width == 2 ? gaps16[i] : gaps32[i]; }
  Word residue_of(Word f, Word c) const;
  std::uint64_t entry_count() const { return offsets.empty() ? 0 : offsets.back(); }
  std::uint64_t delta_bytes() const { return entry_count() * entry_width; }
  /// Admissible residues of class r, ascending (decoded from the gaps).
  std::vector<Word> class_residues(Word r) const;
};

/// width * sum over classes of the admissible count (offsets and anchors excluded).
std::uint64_t projected_skip_bytes(const TableSpec& spec, std::uint8_t width = 2);

/// Throws BudgetExceeded when the projection exceeds spec.budget_bytes.
std::shared_ptr<SkipaheadTable> build_skipahead_table(const TableSpec& spec);
std::shared_ptr<SkipaheadTable> build_skipahead_table_serial(const TableSpec& spec);

/// Walks the admissible a in [a_start, a_max] for one class, ascending.
class AdmissibleIterator {
 public:
  AdmissibleIterator(const SkipaheadTable& table, Word fc_residue, Word a_start, Word a_max);
  bool next(Word& a);

 private:
  const SkipaheadTable* t_;
  std::uint64_t first_ = 0, count_ = 0, idx_ = 0;
  Word cur_ = 0, a_max_ = 0;
  bool done_ = true;
};

std::vector<Word> admissible_a(const SkipaheadTable& table, Word fc_residue, Word a_start, Word a_max);

struct Rates {
  double elimination = 0;  // percent
  double skipahead = 0;
  double combined = 0;
};

enum class RateWeighting : std::uint8_t { z_free_coefficients, all_residues };

/// Percentage of (f, c, a) combinations ruled out by each table and by both.
Rates measure_rates(const TableSpec& spec, Word f_limit, RateWeighting w = RateWeighting::z_free_coefficients);

}  // namespace pegg
