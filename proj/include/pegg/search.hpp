#pragma once

// Table-driven search for single-coefficient equations
//   a^x - f c^z = b^y   or   f c^z - a^x = b^y
// within a resultant-size window, keeping those whose best re-associated
// resultant reaches a requested Pegg Value.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pegg/equations.hpp"
#include "pegg/powerfilter.hpp"
#include "pegg/residue_tables.hpp"

namespace pegg {

struct SearchConfig {
  // z carries the coefficient, a (exponent x) is looped, b (exponent y) is
  // power tested.
  ExponentTriple exps{3, 3, 4};
  std::vector<Permutation> perms{Permutation::ax_minus_cz, Permutation::cz_minus_ax};
  Natural s_min = 1;
  Natural s_max = Natural(1) << 32;
  Word V = 2;
  std::optional<std::vector<Word>> coeffs;  // replaces the generated range; steps 1-3 still apply
  // {3,4,5} only: restrict to the three single-coefficient cases that can
  // reach large Pegg Values (2 on the cube, 2 on the 4th power, 8 on the 5th
  // power), with the matching base minimums and no re-association.
  bool three_four_five_cases = false;
  bool gcd_before_power = false;
  int workers = 0;  // 0: OpenMP default
};

/// Throws std::invalid_argument describing the first violated requirement.
void validate_config(const SearchConfig& cfg);

struct BaseMinimums {
  Word a_min1 = 1, b_min1 = 1, c_min1 = 1;
  friend bool operator==(const BaseMinimums&, const BaseMinimums&) = default;
};

BaseMinimums base_minimums(const SearchConfig& cfg);

struct SearchRecord {
  OriginalEquation original;
  ResultantEquation resultant;
  PeggReport report;
};

/// Inclusive range; empty when lo > hi.
struct BaseRange {
  Word lo = 1, hi = 0;
  bool empty() const { return lo > hi; }
};

class RangeOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Smallest multiplier for coefficient f on the z-term; nullopt if none exists.
std::optional<Natural> coefficient_multiplier(const ExponentTriple& exps, Word f);

/// Resultant coefficient of the highest-exponent base for coefficient f.
std::optional<Natural> highest_coefficient(const ExponentTriple& exps, Word f);

/// floor(S_max^(1/H) / V) with H the highest exponent.
Natural max_highest_coefficient(const SearchConfig& cfg);

/// Largest original coefficient that can map to a highest-exponent resultant
/// coefficient <= max_highest_coefficient. Zero when nothing can.
Natural max_original_coefficient(const SearchConfig& cfg);

/// c-range for coefficient f. Bounds that do not fit a Word throw RangeOverflow.
BaseRange c_range(Word f, Permutation perm, const SearchConfig& cfg);
/// Exact versions that return the raw bounds (useful when the range is empty
/// and the bounds are large).
std::pair<Natural, Natural> c_bounds(Word f, Permutation perm, const SearchConfig& cfg);

BaseRange a_range(Word f, Word c, Permutation perm, const SearchConfig& cfg);
std::pair<Natural, Natural> a_bounds(Word f, Word c, Permutation perm, const SearchConfig& cfg);

/// Coefficients surviving z-th power freeness, the multiplier bound and a
/// nonempty c-range for at least one configured permutation. Throws
/// std::length_error when the candidate range is too large to enumerate.
std::vector<Word> coefficient_candidates(const SearchConfig& cfg);

// ---------------------------------------------------------------- tables

enum class TableProfile : std::uint8_t { standard, compact, automatic, none };

std::string to_string(TableProfile p);
TableProfile table_profile_from_string(const std::string& s);

struct TableOptions {
  TableProfile profile = TableProfile::automatic;
  std::filesystem::path dir;  // empty: no persistence
  bool build_missing = true;  // otherwise a missing standard table is an error
  bool save_built = false;
  bool use_single_coefficient = true;  // single-coefficient files found in dir
  std::uint64_t budget_bytes = 4 * kGiB;
  std::uint64_t compact_cap_bytes = 64 * kMiB;
  std::uint64_t auto_build_cap_bytes = 256 * kMiB;
};

class MissingTable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loads, builds and caches tables. Skipahead tables are shared between the
/// two permutations when y is odd (the admissible sets coincide).
class TableSet {
 public:
  explicit TableSet(TableOptions opts = {});

  TableSpec spec_for(const ExponentTriple& exps, Permutation perm);
  std::shared_ptr<const EliminationTable> elimination(const ExponentTriple& exps, Permutation perm);
  std::shared_ptr<const SkipaheadTable> skipahead(const ExponentTriple& exps, Permutation perm);
  /// Single-coefficient table for f if a cache file exists, else null.
  std::shared_ptr<const SkipaheadTable> single_coefficient(const ExponentTriple& exps, Permutation perm, Word f);

  const TableOptions& options() const { return opts_; }

 private:
  std::shared_ptr<const SkipaheadTable> skip_for_spec(const TableSpec& spec, bool must_exist);

  TableOptions opts_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const EliminationTable>> elim_;
  std::map<std::string, std::shared_ptr<const SkipaheadTable>> skip_;
  std::map<std::string, bool> absent_;
};

/// Residue-filter moduli for y-th powers that are not already implied by the
/// skipahead factors.
std::vector<Word> filter_moduli(Word y, const std::vector<Word>& skip_factors);

// ---------------------------------------------------------------- search

/// Every qualifying record for exactly cfg.exps and cfg.perms (ax_minus_cz,
/// cz_minus_ax), sorted by (size, a, c, f).
std::vector<SearchRecord> search_all(const SearchConfig& cfg, TableSet& tables);
std::vector<SearchRecord> search_all_serial(const SearchConfig& cfg, TableSet& tables);

/// First record in loop order (permutation, c, f, a), or nullopt once the
/// whole range is exhausted. The answer does not depend on the worker count.
std::optional<SearchRecord> search_once(const SearchConfig& cfg, TableSet& tables);

struct RunPlan {
  ExponentTriple exps;    // ordering handed to the search
  Permutation perm;       // permutation searched
  Permutation reported;   // permutation of the equation it represents
};

/// All-distinct exponents with the coefficient exponent last: the three
/// (ordering, permutation) runs that cover every sign pattern.
std::vector<RunPlan> reorder_for_distinct_exponents(const ExponentTriple& exps);

/// Runs every permutation for cfg.exps: the two direct ones when x = y, the
/// three reordered runs when all exponents differ (cfg.perms then names the
/// reported permutations). Sorted like search_all.
std::vector<SearchRecord> search_all_permutations(const SearchConfig& cfg, TableSet& tables);
std::optional<SearchRecord> search_once_permutations(const SearchConfig& cfg, TableSet& tables);

/// Smallest resultant equations with strictly increasing Pegg Value, starting
/// above cfg.V - 1, over [cfg.s_min, cfg.s_max] in power-of-two chunks.
std::vector<SearchRecord> ladder(const SearchConfig& cfg, TableSet& tables);

/// Builds a record for a verified original equation: conversion,
/// re-association within s_max (unless disabled) and the report.
SearchRecord make_record(const OriginalEquation& eq, const Natural& s_max, bool reassociate = true);

}  // namespace pegg
