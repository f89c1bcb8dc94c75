#pragma once

// Original and resultant equations, conversion, Pegg Value bookkeeping.
//
// Equations are held in symmetric form: three positioned terms (a, b, c) with
// coefficients, and a Permutation naming which term is the sum of the other
// two. Position, not exponent value, identifies a term, so {x,x,z} sets are
// unambiguous.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pegg/numtheory.hpp"

namespace pegg {

enum class Term : std::uint8_t { a = 0, b = 1, c = 2 };

// Named after what b^y equals in the single-coefficient form:
//   ax_minus_cz: a^x - f c^z = b^y  (the a-term is the sum)
//   cz_minus_ax: f c^z - a^x = b^y  (the c-term is the sum)
//   ax_plus_cz:  a^x + f c^z = b^y  (the b-term is the sum)
enum class Permutation : std::uint8_t { ax_minus_cz = 0, cz_minus_ax = 1, ax_plus_cz = 2 };

Term sum_term(Permutation p);
std::string to_string(Permutation p);
Permutation permutation_from_string(const std::string& s);

struct ExponentTriple {
  Word x = 3, y = 3, z = 3;

  Word operator[](Term t) const { return t == Term::a ? x : t == Term::b ? y : z; }
  Word operator[](std::size_t i) const { return i == 0 ? x : i == 1 ? y : z; }
  Word highest() const { return std::max({x, y, z}); }
  bool distinct() const { return x != y && y != z && x != z; }
  friend bool operator==(const ExponentTriple&, const ExponentTriple&) = default;
};

std::string to_string(const ExponentTriple& e);
/// Parses "3,3,4" (also accepts braces and spaces).
ExponentTriple exponents_from_string(const std::string& s);

// A coefficient of 0 only appears in generate_identity output, where the
// source coefficient V^(x+2)-1 can be wider than a word.
struct OriginalEquation {
  ExponentTriple exps;
  Word d = 1, e = 1, f = 1;
  Word a = 1, b = 1, c = 1;
  Permutation perm = Permutation::cz_minus_ax;

  Word coef(Term t) const { return t == Term::a ? d : t == Term::b ? e : f; }
  Word base(Term t) const { return t == Term::a ? a : t == Term::b ? b : c; }
  Natural term_value(Term t) const;
  friend bool operator==(const OriginalEquation&, const OriginalEquation&) = default;
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

class NoSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ValidationResult validate_original(const OriginalEquation& eq);

/// True iff the signed sum is exactly zero.
bool identity_holds(const OriginalEquation& eq);

/// Throws NoSolution naming the unsolvable congruence.
Natural smallest_multiplier(const OriginalEquation& eq);

struct ResultantEquation {
  ExponentTriple exps;
  Natural A, B, C;
  Natural D, E, F;
  Natural N;
  OriginalEquation source;

  const Natural& base(Term t) const { return t == Term::a ? A : t == Term::b ? B : C; }
  const Natural& coef(Term t) const { return t == Term::a ? D : t == Term::b ? E : F; }
  Natural term_value(Term t) const { return pow(base(t), exps[t]); }
  /// Value of the sum term, i.e. the equation size C^z in presentation form.
  Natural size() const { return term_value(sum_term(source.perm)); }
};

ResultantEquation convert_to_resultant(const OriginalEquation& eq);

/// Exact check of the resultant identity and of A = D a, D^x = N d (all three).
bool resultant_consistent(const ResultantEquation& r);

struct PeggReport {
  Natural pegg_value;
  double pegg_power = 0.0;
  Natural gcd;
  Natural min_base;
  double log2_size = 0.0;
  bool stolen = false;
};

PeggReport pegg_report(const ResultantEquation& res);

/// Multiply by p^(k*lcm(x,y,z)) for one prime p and power count k.
ResultantEquation scale_resultant(const ResultantEquation& res, Word p, Word k);

/// The base equation followed by every re-associated variant within s_max:
/// for each of the first 25 primes that does not divide a highest-exponent
/// base, the smallest power of p^lcm that moves min(A,B,C) onto a
/// highest-exponent term.
std::vector<ResultantEquation> pegg_variants(const ResultantEquation& res, const Natural& s_max);

/// The variant with the largest Pegg Value (smallest size on ties); res itself
/// when nothing improves.
ResultantEquation reassociate_min(const ResultantEquation& res, const Natural& s_max);

/// True when min(A,B,C) is attained on a term carrying the highest exponent.
bool min_on_highest(const ResultantEquation& res);

/// Power of p in the resultant coefficient of the highest-exponent base(s) for
/// {x,x,z} with the coefficient on the z-term.
Word cvt(Word x, Word z, Word v);

/// [log_p D, log_p E, log_p F] for one prime with v_p(coefficient on `which`) = v.
std::optional<std::array<Word, 3>> prime_power_profile(const ExponentTriple& exps, Term which, Word v);

ResultantEquation generate_identity(Word V, Word x);

std::string render(const OriginalEquation& eq);
std::string render(const ResultantEquation& res);

}  // namespace pegg
