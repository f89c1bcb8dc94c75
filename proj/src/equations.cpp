#include "pegg/equations.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

namespace pegg {

Term sum_term(Permutation p) {
  switch (p) {
    case Permutation::ax_minus_cz: return Term::a;
    case Permutation::cz_minus_ax: return Term::c;
    case Permutation::ax_plus_cz: return Term::b;
  }
  return Term::c;
}

std::string to_string(Permutation p) {
  switch (p) {
    case Permutation::ax_minus_cz: return "ax_minus_cz";
    case Permutation::cz_minus_ax: return "cz_minus_ax";
    case Permutation::ax_plus_cz: return "ax_plus_cz";
  }
  return "?";
}

Permutation permutation_from_string(const std::string& s) {
  if (s == "ax_minus_cz") return Permutation::ax_minus_cz;
  if (s == "cz_minus_ax") return Permutation::cz_minus_ax;
  if (s == "ax_plus_cz") return Permutation::ax_plus_cz;
  throw std::invalid_argument("unknown permutation '" + s + "'");
}

std::string to_string(const ExponentTriple& e) {
  return "{" + std::to_string(e.x) + "," + std::to_string(e.y) + "," + std::to_string(e.z) + "}";
}

ExponentTriple exponents_from_string(const std::string& s) {
  std::vector<Word> v;
  std::string digits;
  auto flush = [&] {
    if (!digits.empty()) v.push_back(std::stoull(digits));
    digits.clear();
  };
  for (char ch : s) {
    if (std::isdigit(static_cast<unsigned char>(ch)))
      digits += ch;
    else if (ch == ',' || ch == ' ' || ch == '{' || ch == '}')
      flush();
    else
      throw std::invalid_argument("bad exponent list '" + s + "'");
  }
  flush();
  if (v.size() != 3) throw std::invalid_argument("expected three exponents in '" + s + "'");
  return {v[0], v[1], v[2]};
}

namespace {

constexpr Term kTerms[3] = {Term::a, Term::b, Term::c};

std::size_t idx(Term t) { return static_cast<std::size_t>(t); }

struct PrimeShift {
  Word p;
  Word q;      // p^q divides N
  Term owner;  // term whose coefficient p divides
  Word v;      // v_p of that coefficient
};

// One entry per prime dividing any coefficient, with the minimal exponent of
// p in N.
std::vector<PrimeShift> multiplier_primes(const OriginalEquation& eq) {
  std::vector<PrimeShift> out;
  for (Term t : kTerms) {
    const Word k = eq.coef(t);
    if (k == 0) throw std::invalid_argument("coefficient too wide for conversion");
    for (const auto& [p, v] : factorize(k)) {
      for (Term u : kTerms)
        if (u != t && eq.coef(u) % p == 0)
          throw NoSolution("prime " + std::to_string(p) + " divides two coefficients");
      Word m1 = 1;
      for (Term u : kTerms)
        if (u != t) m1 = lcm_word(m1, eq.exps[u]);
      const Word m2 = eq.exps[t];
      const Word r2 = (m2 - v % m2) % m2;
      auto q = smallest_q(m1, m2, r2);
      if (!q)
        throw NoSolution("no q with q = 0 (mod " + std::to_string(m1) + ") and q = " + std::to_string(r2) +
                         " (mod " + std::to_string(m2) + ") for prime " + std::to_string(p));
      out.push_back({p, *q, t, v});
    }
  }
  return out;
}

Natural signed_sum(const std::array<Natural, 3>& terms, Permutation perm) {
  const Term s = sum_term(perm);
  Natural rest = 0;
  for (Term t : kTerms)
    if (t != s) rest += terms[idx(t)];
  return terms[idx(s)] - rest;
}

}  // namespace

Natural OriginalEquation::term_value(Term t) const { return to_natural(coef(t)) * pow_word(base(t), exps[t]); }

bool identity_holds(const OriginalEquation& eq) {
  return signed_sum({eq.term_value(Term::a), eq.term_value(Term::b), eq.term_value(Term::c)}, eq.perm) == 0;
}

ValidationResult validate_original(const OriginalEquation& eq) {
  ValidationResult r;
  auto& out = r.violations;
  const auto& x = eq.exps;
  if (x.x < 3 || x.y < 3 || x.z < 3) out.push_back("exponents must each be >= 3");
  if (gcd_word(gcd_word(x.x, x.y), x.z) != 1) out.push_back("gcd(x,y,z)=1 required");
  for (Term t : kTerms) {
    if (eq.coef(t) == 0 || eq.base(t) == 0) out.push_back("coefficients and bases must be >= 1");
  }
  if (!out.empty()) return r;

  if (eq.d == 1 && eq.e == 1 && eq.f == 1) out.push_back("at least one of d,e,f > 1");
  static const char* kFree[3] = {"d must be x-th power free", "e must be y-th power free", "f must be z-th power free"};
  for (Term t : kTerms)
    if (!is_k_free(eq.coef(t), x[t])) out.push_back(kFree[idx(t)]);

  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (gcd_word(x[i], x[j]) != 1 && (eq.coef(kTerms[i]) != 1 || eq.coef(kTerms[j]) != 1))
        out.push_back("bases with non-coprime exponents must have coefficient 1");

  const Natural g = gcd(gcd(to_natural(eq.d) * to_natural(eq.a), to_natural(eq.e) * to_natural(eq.b)),
                        to_natural(eq.f) * to_natural(eq.c));
  if (g != 1) out.push_back("gcd(d*a, e*b, f*c)=1 required");
  if (!identity_holds(eq)) out.push_back("equation does not hold");
  return r;
}

Natural smallest_multiplier(const OriginalEquation& eq) {
  Natural n = 1;
  for (const auto& s : multiplier_primes(eq)) n *= pow_word(s.p, s.q);
  return n;
}

ResultantEquation convert_to_resultant(const OriginalEquation& eq) {
  ResultantEquation r;
  r.exps = eq.exps;
  r.source = eq;
  r.N = 1;
  std::array<Natural, 3> coef = {1, 1, 1};
  for (const auto& s : multiplier_primes(eq)) {
    r.N *= pow_word(s.p, s.q);
    for (Term t : kTerms) {
      const Word total = s.q + (t == s.owner ? s.v : 0);
      assert(total % eq.exps[t] == 0);
      coef[idx(t)] *= pow_word(s.p, total / eq.exps[t]);
    }
  }
  r.D = coef[0];
  r.E = coef[1];
  r.F = coef[2];
  r.A = r.D * to_natural(eq.a);
  r.B = r.E * to_natural(eq.b);
  r.C = r.F * to_natural(eq.c);
  return r;
}

bool resultant_consistent(const ResultantEquation& r) {
  if (signed_sum({r.term_value(Term::a), r.term_value(Term::b), r.term_value(Term::c)}, r.source.perm) != 0)
    return false;
  for (Term t : kTerms) {
    if (r.base(t) != r.coef(t) * to_natural(r.source.base(t))) return false;
    const Natural powered = pow(r.coef(t), r.exps[t]);
    if (r.source.coef(t) != 0 && powered != r.N * to_natural(r.source.coef(t))) return false;
    if (r.source.coef(t) == 0 && !mpz_divisible_p(powered.get_mpz_t(), r.N.get_mpz_t())) return false;
  }
  return true;
}

namespace {

Term min_term(const ResultantEquation& res) {
  // among equal minima prefer the highest exponent, then the earlier position
  Term best = Term::a;
  for (Term t : {Term::b, Term::c}) {
    const int c = cmp(res.base(t), res.base(best));
    if (c < 0 || (c == 0 && res.exps[t] > res.exps[best])) best = t;
  }
  return best;
}

}  // namespace

bool min_on_highest(const ResultantEquation& res) { return res.exps[min_term(res)] == res.exps.highest(); }

PeggReport pegg_report(const ResultantEquation& res) {
  PeggReport rep;
  rep.gcd = gcd(gcd(res.A, res.B), res.C);
  const Term mt = min_term(res);
  rep.min_base = res.base(mt);
  assert(mpz_divisible_p(rep.min_base.get_mpz_t(), rep.gcd.get_mpz_t()));
  mpz_divexact(rep.pegg_value.get_mpz_t(), rep.min_base.get_mpz_t(), rep.gcd.get_mpz_t());
  const Natural size = res.size();
  rep.log2_size = log2_natural(size);
  rep.pegg_power = rep.pegg_value > 1 ? log2_natural(rep.pegg_value) / rep.log2_size : 0.0;
  rep.stolen = res.exps[mt] == res.exps.highest() && rep.gcd > res.coef(mt);
  return rep;
}

ResultantEquation scale_resultant(const ResultantEquation& res, Word p, Word k) {
  const Word L = lcm_word(lcm_word(res.exps.x, res.exps.y), res.exps.z);
  ResultantEquation out = res;
  out.N *= pow_word(p, k * L);
  const Natural sa = pow_word(p, k * L / res.exps.x);
  const Natural sb = pow_word(p, k * L / res.exps.y);
  const Natural sc = pow_word(p, k * L / res.exps.z);
  out.D *= sa;
  out.A *= sa;
  out.E *= sb;
  out.B *= sb;
  out.F *= sc;
  out.C *= sc;
  return out;
}

std::vector<ResultantEquation> pegg_variants(const ResultantEquation& res, const Natural& s_max) {
  std::vector<ResultantEquation> out{res};
  if (min_on_highest(res)) return out;
  const Word H = res.exps.highest();
  for (Word p : first_primes(25)) {
    bool divides_target = false;
    for (Term t : kTerms)
      if (res.exps[t] == H && res.source.base(t) % p == 0) divides_target = true;
    if (divides_target) continue;
    for (Word k = 1;; ++k) {
      ResultantEquation v = scale_resultant(res, p, k);
      if (v.size() > s_max) break;
      if (min_on_highest(v)) {
        out.push_back(std::move(v));
        break;
      }
    }
  }
  return out;
}

ResultantEquation reassociate_min(const ResultantEquation& res, const Natural& s_max) {
  auto vars = pegg_variants(res, s_max);
  std::size_t best = 0;
  PeggReport best_rep = pegg_report(vars[0]);
  Natural best_size = vars[0].size();
  for (std::size_t i = 1; i < vars.size(); ++i) {
    PeggReport rep = pegg_report(vars[i]);
    Natural sz = vars[i].size();
    if (rep.pegg_value > best_rep.pegg_value || (rep.pegg_value == best_rep.pegg_value && sz < best_size)) {
      best = i;
      best_rep = std::move(rep);
      best_size = std::move(sz);
    }
  }
  return vars[best];
}

Word cvt(Word x, Word z, Word v) {
  if (x < 3 || z < 3) throw std::invalid_argument("cvt: exponents must be >= 3");
  if (v == 0 || v >= z) throw std::invalid_argument("cvt: need 0 < v < z");
  if (gcd_word(x, z) != 1) throw std::invalid_argument("cvt: gcd(x,z) must be 1");
  const Word q = *smallest_q(x, z, (z - v) % z);
  return z < x ? q / x : (q + v) / z;
}

std::optional<std::array<Word, 3>> prime_power_profile(const ExponentTriple& exps, Term which, Word v) {
  const Word m2 = exps[which];
  if (v == 0 || v >= m2) throw std::invalid_argument("prime_power_profile: need 0 < v < exponent");
  Word m1 = 1;
  for (Term t : kTerms)
    if (t != which) m1 = lcm_word(m1, exps[t]);
  auto q = smallest_q(m1, m2, (m2 - v) % m2);
  if (!q) return std::nullopt;
  std::array<Word, 3> out{};
  for (Term t : kTerms) out[idx(t)] = (*q + (t == which ? v : 0)) / exps[t];
  return out;
}

ResultantEquation generate_identity(Word V, Word x) {
  if (V < 2) throw std::invalid_argument("identity: V must be >= 2");
  if (x < 3) throw std::invalid_argument("identity: x must be >= 3");
  const Natural W = pow_word(V, x + 2) - 1;
  ResultantEquation r;
  r.exps = {x, x + 1, x + 2};
  // 1 + W = V^(x+2), lifted by N = W^(x(x+2))
  r.source.exps = r.exps;
  r.source.a = 1;
  r.source.b = 1;
  r.source.c = V;
  r.source.e = fits_word(W) ? to_word(W) : 0;
  r.source.perm = Permutation::cz_minus_ax;
  r.N = pow(W, x * (x + 2));
  r.D = pow(W, x + 2);
  r.E = pow(W, x + 1);
  r.F = pow(W, x);
  r.A = r.D;
  r.B = r.E;
  r.C = r.F * to_natural(V);
  return r;
}

namespace {

std::string term_text(Word coef, Word base, Word exp) {
  std::ostringstream os;
  if (coef != 1) os << coef << '*';
  os << base << '^' << exp;
  return os.str();
}

}  // namespace

std::string render(const OriginalEquation& eq) {
  const Term s = sum_term(eq.perm);
  std::vector<std::string> lhs;
  for (Term t : kTerms)
    if (t != s) lhs.push_back(term_text(eq.coef(t), eq.base(t), eq.exps[t]));
  return lhs[0] + " + " + lhs[1] + " = " + term_text(eq.coef(s), eq.base(s), eq.exps[s]);
}

std::string render(const ResultantEquation& res) {
  const Term s = sum_term(res.source.perm);
  std::vector<std::string> lhs;
  for (Term t : kTerms)
    if (t != s) lhs.push_back(res.base(t).get_str() + "^" + std::to_string(res.exps[t]));
  return lhs[0] + " + " + lhs[1] + " = " + res.base(s).get_str() + "^" + std::to_string(res.exps[s]);
}

}  // namespace pegg
