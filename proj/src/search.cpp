#include "pegg/search.hpp"

#include <algorithm>
#include <tuple>

#include <omp.h>

#include "pegg/table_io.hpp"

namespace pegg {

namespace {

Natural ceil_div(const Natural& a, const Natural& b) {
  Natural q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Natural floor_div(const Natural& a, const Natural& b) {
  Natural q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Word word_or_throw(const Natural& n, const char* what) {
  if (!fits_word(n)) throw RangeOverflow(std::string(what) + " exceeds the 64-bit base range");
  return to_word(n);
}

bool is_345(const ExponentTriple& e) {
  std::array<Word, 3> v{e.x, e.y, e.z};
  std::sort(v.begin(), v.end());
  return v == std::array<Word, 3>{3, 4, 5};
}

Term highest_position(const ExponentTriple& e) {
  const Word H = e.highest();
  if (e.x == H) return Term::a;
  if (e.y == H) return Term::b;
  return Term::c;
}

// Per-coefficient quantities reused for every c.
struct Limits {
  Word f = 0;
  Natural N;
  Natural smax_n;  // floor(S_max / N)
  Natural smin_n;  // ceil(S_min / N)
};

Limits limits_for(const SearchConfig& cfg, Word f, const Natural& N) {
  return {f, N, floor_div(cfg.s_max, N), ceil_div(cfg.s_min, N)};
}

std::pair<Natural, Natural> c_bounds_impl(const Limits& L, Permutation perm, const SearchConfig& cfg,
                                          const BaseMinimums& m) {
  const Word x = cfg.exps.x, y = cfg.exps.y, z = cfg.exps.z;
  const Natural f = to_natural(L.f);
  const Natural bpow = pow_word(m.b_min1, y);
  if (perm == Permutation::ax_minus_cz) {
    const Natural t = L.smax_n - bpow;
    const Natural hi = sgn(t) < 0 ? Natural(0) : integer_kth_root(floor_div(t, f), z);
    return {to_natural(m.c_min1), hi};
  }
  const Natural min2 = ceil_kth_root(ceil_div(cfg.s_min, L.N * f), z);
  const Natural min3 = ceil_kth_root(ceil_div(pow_word(m.a_min1, x) + bpow, f), z);
  Natural lo = to_natural(m.c_min1);
  if (min2 > lo) lo = min2;
  if (min3 > lo) lo = min3;
  return {lo, integer_kth_root(floor_div(cfg.s_max, L.N * f), z)};
}

std::pair<Natural, Natural> a_bounds_impl(const Limits& L, const Natural& fcz, Permutation perm,
                                          const SearchConfig& cfg, const BaseMinimums& m) {
  const Word x = cfg.exps.x, y = cfg.exps.y;
  const Natural bpow = pow_word(m.b_min1, y);
  Natural lo = to_natural(m.a_min1);
  if (perm == Permutation::ax_minus_cz) {
    const Natural min2 = ceil_kth_root(L.smin_n, x);
    const Natural min3 = ceil_kth_root(fcz + bpow, x);
    if (min2 > lo) lo = min2;
    if (min3 > lo) lo = min3;
    return {lo, integer_kth_root(L.smax_n, x)};
  }
  if (x == y) {
    const Natural half = ceil_kth_root(ceil_div(fcz, 2), x);
    if (half > lo) lo = half;
  }
  const Natural t = fcz - bpow;
  return {lo, sgn(t) < 0 ? Natural(0) : integer_kth_root(t, x)};
}

BaseRange to_range(const std::pair<Natural, Natural>& b, const char* what) {
  if (b.first > b.second) {
    // empty: keep the order visible without overflowing
    BaseRange r;
    r.hi = fits_word(b.second) ? to_word(b.second) : ~Word{0} - 1;
    r.lo = fits_word(b.first) ? to_word(b.first) : ~Word{0};
    if (r.lo <= r.hi) r.lo = r.hi + 1;
    return r;
  }
  return {word_or_throw(b.first, what), word_or_throw(b.second, what)};
}

std::vector<Word> three_four_five_coefficients(const ExponentTriple& e) {
  return {e.z == 5 ? Word{8} : Word{2}};
}

Limits checked_limits(Word f, const SearchConfig& cfg) {
  auto N = coefficient_multiplier(cfg.exps, f);
  if (!N) throw std::invalid_argument("coefficient " + std::to_string(f) + " has no multiplier");
  return limits_for(cfg, f, *N);
}

}  // namespace

// ------------------------------------------------------------ configuration

void validate_config(const SearchConfig& cfg) {
  const auto& e = cfg.exps;
  if (e.x < 3 || e.y < 3 || e.z < 3) throw std::invalid_argument("exponents must each be >= 3");
  if (gcd_word(e.z, e.x) != 1 || gcd_word(e.z, e.y) != 1)
    throw std::invalid_argument("the coefficient exponent z must be coprime to x and y");
  if (e.x != e.y && (e.x == e.z || e.y == e.z)) throw std::invalid_argument("exponents must be {x,x,z} or distinct");
  if (cfg.V < 1) throw std::invalid_argument("V must be >= 1");
  if (cfg.s_min < 1) throw std::invalid_argument("S_min must be >= 1");
  if (!(cfg.s_min < cfg.s_max)) throw std::invalid_argument("S_min must be below S_max");
  if (cfg.perms.empty()) throw std::invalid_argument("no permutation selected");
  if (cfg.three_four_five_cases && !is_345(e))
    throw std::invalid_argument("three_four_five_cases needs a permutation of {3,4,5}");
}

BaseMinimums base_minimums(const SearchConfig& cfg) {
  const auto& e = cfg.exps;
  const Word V = cfg.V;
  BaseMinimums m;
  if (e.x == e.y) {
    if (e.z > e.x)
      m.c_min1 = V;
    else
      m.a_min1 = m.b_min1 = V;
    return m;
  }
  if (cfg.three_four_five_cases) {
    if (!is_345(e)) throw std::invalid_argument("three_four_five_cases needs a permutation of {3,4,5}");
    auto cdiv = [](Word a, Word b) { return std::max<Word>(1, (a + b - 1) / b); };
    // divisor per exponent 3, 4, 5, keyed by the coefficient's exponent
    Word div[3];
    switch (e.z) {
      case 3: div[0] = 8, div[1] = 2, div[2] = 1; break;
      case 4: div[0] = 4, div[1] = 2, div[2] = 1; break;
      default: div[0] = 2, div[1] = 1, div[2] = 1; break;
    }
    m.a_min1 = cdiv(V, div[e.x - 3]);
    m.b_min1 = cdiv(V, div[e.y - 3]);
    m.c_min1 = cdiv(V, div[e.z - 3]);
    return m;
  }
  const Word H = e.highest();
  if (e.x == H) m.a_min1 = V;
  if (e.y == H) m.b_min1 = V;
  if (e.z == H) m.c_min1 = V;
  return m;
}

std::optional<Natural> coefficient_multiplier(const ExponentTriple& exps, Word f) {
  OriginalEquation eq;
  eq.exps = exps;
  eq.f = f;
  try {
    return smallest_multiplier(eq);
  } catch (const NoSolution&) {
    return std::nullopt;
  }
}

std::optional<Natural> highest_coefficient(const ExponentTriple& exps, Word f) {
  const auto hp = static_cast<std::size_t>(highest_position(exps));
  Natural R = 1;
  for (const auto& [p, v] : factorize(f)) {
    if (v >= exps.z) return std::nullopt;
    auto prof = prime_power_profile(exps, Term::c, v);
    if (!prof) return std::nullopt;
    R *= pow_word(p, (*prof)[hp]);
  }
  return R;
}

Natural max_highest_coefficient(const SearchConfig& cfg) {
  return integer_kth_root(cfg.s_max, cfg.exps.highest()) / to_natural(cfg.V);
}

Natural max_original_coefficient(const SearchConfig& cfg) {
  const Natural R = max_highest_coefficient(cfg);
  if (R < 2) return 0;
  const auto hp = static_cast<std::size_t>(highest_position(cfg.exps));
  Natural best = 0;
  for (Word v = 1; v < cfg.exps.z; ++v) {
    auto prof = prime_power_profile(cfg.exps, Term::c, v);
    if (!prof || (*prof)[hp] == 0) continue;
    const Natural cand = integer_kth_root(pow(R, v), (*prof)[hp]);
    if (cand > best) best = cand;
  }
  return best;
}

std::pair<Natural, Natural> c_bounds(Word f, Permutation perm, const SearchConfig& cfg) {
  return c_bounds_impl(checked_limits(f, cfg), perm, cfg, base_minimums(cfg));
}

BaseRange c_range(Word f, Permutation perm, const SearchConfig& cfg) {
  return to_range(c_bounds(f, perm, cfg), "c");
}

std::pair<Natural, Natural> a_bounds(Word f, Word c, Permutation perm, const SearchConfig& cfg) {
  const Natural fcz = to_natural(f) * pow_word(c, cfg.exps.z);
  return a_bounds_impl(checked_limits(f, cfg), fcz, perm, cfg, base_minimums(cfg));
}

BaseRange a_range(Word f, Word c, Permutation perm, const SearchConfig& cfg) {
  return to_range(a_bounds(f, c, perm, cfg), "a");
}

std::vector<Word> coefficient_candidates(const SearchConfig& cfg) {
  validate_config(cfg);
  const Word z = cfg.exps.z;
  const BaseMinimums mins = base_minimums(cfg);
  const Natural R_max = max_highest_coefficient(cfg);

  std::vector<Word> pool;
  if (cfg.coeffs) {
    pool = *cfg.coeffs;
  } else if (cfg.three_four_five_cases) {
    pool = three_four_five_coefficients(cfg.exps);
  } else {
    const Natural F_max = max_original_coefficient(cfg);
    if (F_max > Natural(1) << 32)
      throw std::length_error("coefficient range up to " + F_max.get_str() + " is too large; pass explicit coefficients");
    const Word top = to_word(F_max);
    for (Word f = 2; f <= top; ++f) pool.push_back(f);
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::vector<Word> out;
  for (Word f : pool) {
    if (f < 2 || !is_k_free(f, z)) continue;  // step 1
    auto R = highest_coefficient(cfg.exps, f);
    if (!R || *R > R_max) continue;  // step 2
    auto N = coefficient_multiplier(cfg.exps, f);
    if (!N) continue;
    const Limits L = limits_for(cfg, f, *N);
    bool any = false;  // step 3
    for (Permutation p : cfg.perms) {
      if (p == Permutation::ax_plus_cz) continue;
      const auto b = c_bounds_impl(L, p, cfg, mins);
      if (b.first <= b.second) any = true;
    }
    if (any) out.push_back(f);
  }
  return out;
}

// ------------------------------------------------------------------- tables

std::string to_string(TableProfile p) {
  switch (p) {
    case TableProfile::standard: return "standard";
    case TableProfile::compact: return "compact";
    case TableProfile::automatic: return "auto";
    case TableProfile::none: return "none";
  }
  return "?";
}

TableProfile table_profile_from_string(const std::string& s) {
  if (s == "standard") return TableProfile::standard;
  if (s == "compact") return TableProfile::compact;
  if (s == "auto") return TableProfile::automatic;
  if (s == "none") return TableProfile::none;
  throw std::invalid_argument("unknown table profile '" + s + "'");
}

TableSet::TableSet(TableOptions opts) : opts_(std::move(opts)) {}

namespace {

bool known_set(const ExponentTriple& e) {
  const auto& k = known_exponent_sets();
  return std::find(k.begin(), k.end(), e) != k.end();
}

// Skipahead tables coincide for both permutations when y is odd.
TableSpec canonical_skip(TableSpec s) {
  if (s.exps.y % 2 == 1) s.perm = Permutation::ax_minus_cz;
  return s;
}

}  // namespace

TableSpec TableSet::spec_for(const ExponentTriple& exps, Permutation perm) {
  TableSpec s;
  s.exps = exps;
  s.perm = perm;
  if (opts_.profile != TableProfile::none && known_set(exps)) {
    switch (opts_.profile) {
      case TableProfile::standard: s = default_spec(exps, perm); break;
      case TableProfile::compact: s = compact_spec(exps, perm, opts_.compact_cap_bytes); break;
      default: {
        const TableSpec std_spec = default_spec(exps, perm);
        const bool cached = !opts_.dir.empty() && std::filesystem::exists(skipahead_file(opts_.dir, canonical_skip(std_spec)));
        s = cached || projected_skip_bytes(std_spec) <= opts_.auto_build_cap_bytes
                ? std_spec
                : compact_spec(exps, perm, opts_.compact_cap_bytes);
      }
    }
  }
  s.budget_bytes = opts_.budget_bytes;
  return s;
}

std::shared_ptr<const EliminationTable> TableSet::elimination(const ExponentTriple& exps, Permutation perm) {
  const TableSpec spec = spec_for(exps, perm);
  const std::string key = describe(spec);
  std::lock_guard lock(mu_);
  if (auto it = elim_.find(key); it != elim_.end()) return it->second;
  std::shared_ptr<const EliminationTable> t;
  const auto path = opts_.dir.empty() ? std::filesystem::path() : elimination_file(opts_.dir, spec);
  if (!path.empty() && std::filesystem::exists(path)) {
    t = std::make_shared<EliminationTable>(load_elimination(path, spec));
  } else {
    auto built = std::make_shared<EliminationTable>(build_elimination_table(spec));
    if (opts_.save_built && !path.empty() && !spec.elim_factors.empty()) save_table(*built, path);
    t = built;
  }
  elim_[key] = t;
  return t;
}

std::shared_ptr<const SkipaheadTable> TableSet::skip_for_spec(const TableSpec& spec_in, bool must_exist) {
  const TableSpec spec = canonical_skip(spec_in);
  const std::string key = describe(spec);
  std::lock_guard lock(mu_);
  if (auto it = skip_.find(key); it != skip_.end()) return it->second;
  if (absent_.count(key)) return nullptr;
  const auto path = opts_.dir.empty() ? std::filesystem::path() : skipahead_file(opts_.dir, spec);
  std::shared_ptr<const SkipaheadTable> t;
  if (!path.empty() && std::filesystem::exists(path)) {
    t = load_skipahead(path, spec);
  } else if (must_exist) {
    absent_[key] = true;
    return nullptr;
  } else {
    if (!opts_.build_missing && projected_skip_bytes(spec) > opts_.auto_build_cap_bytes)
      throw MissingTable("no cached table for " + describe(spec) +
                         (opts_.dir.empty() ? std::string() : " in " + opts_.dir.string()) +
                         "; build it first or allow building");
    auto built = build_skipahead_table(spec);
    if (opts_.save_built && !path.empty() && spec.skip_modulus() > 1) save_table(*built, path);
    t = built;
  }
  skip_[key] = t;
  return t;
}

std::shared_ptr<const SkipaheadTable> TableSet::skipahead(const ExponentTriple& exps, Permutation perm) {
  return skip_for_spec(spec_for(exps, perm), false);
}

std::shared_ptr<const SkipaheadTable> TableSet::single_coefficient(const ExponentTriple& exps, Permutation perm,
                                                                    Word f) {
  if (!opts_.use_single_coefficient || opts_.dir.empty() || opts_.profile == TableProfile::none) return nullptr;
  TableSpec spec;
  try {
    spec = single_coefficient_spec(exps, perm, f);
  } catch (const std::invalid_argument&) {
    return nullptr;
  }
  spec.budget_bytes = opts_.budget_bytes;
  return skip_for_spec(spec, true);
}

std::vector<Word> filter_moduli(Word y, const std::vector<Word>& skip_factors) {
  std::vector<Word> base;
  if (y >= 3 && y <= 5) {
    base = default_moduli(y);
  } else {
    for (Word p : primes_below(1u << 16))
      if (p % y == 1 && base.size() < 24) base.push_back(p);
  }
  std::vector<Word> out;
  for (Word m : base) {
    const bool implied = std::any_of(skip_factors.begin(), skip_factors.end(), [m](Word q) { return q % m == 0; });
    if (!implied) out.push_back(m);
  }
  return out;
}

// ------------------------------------------------------------------- search

SearchRecord make_record(const OriginalEquation& eq, const Natural& s_max, bool reassociate) {
  SearchRecord r;
  r.original = eq;
  const ResultantEquation base = convert_to_resultant(eq);
  r.resultant = reassociate ? reassociate_min(base, s_max) : base;
  r.report = pegg_report(r.resultant);
  return r;
}

namespace {

struct CoeffPlan {
  Limits lim;
  Word c_lo = 1, c_hi = 0;
  Word a_hi_ax = 0;  // ax_minus_cz upper a bound, independent of c
  Natural a_lo_ax;   // max(a_min1, ceil((S_min/N)^(1/x)))
  const SkipaheadTable* skip = nullptr;
  const ResidueFilterSet* filter = nullptr;
};

struct PermPlan {
  Permutation perm = Permutation::ax_minus_cz;
  DiffDirection dir = DiffDirection::ax_minus_fc;
  std::shared_ptr<const EliminationTable> elim;
  std::vector<std::shared_ptr<const SkipaheadTable>> tables;  // keeps singles alive
  std::vector<std::shared_ptr<const ResidueFilterSet>> filters;
  std::vector<CoeffPlan> coeffs;  // by c_hi descending, then f
  Word c_lo = 1, c_hi = 0;
};

struct Context {
  SearchConfig cfg;
  BaseMinimums mins;
  bool reassociate = true;
  std::vector<PermPlan> perms;
};

Context prepare(const SearchConfig& cfg, TableSet& tables) {
  validate_config(cfg);
  for (Permutation p : cfg.perms)
    if (p == Permutation::ax_plus_cz)
      throw std::invalid_argument("ax_plus_cz is searched through exponent reordering");
  Context ctx;
  ctx.cfg = cfg;
  ctx.mins = base_minimums(cfg);
  ctx.reassociate = !cfg.three_four_five_cases;
  const auto& e = cfg.exps;
  const std::vector<Word> coeffs = coefficient_candidates(cfg);

  for (Permutation perm : cfg.perms) {
    PermPlan pp;
    pp.perm = perm;
    pp.dir = perm == Permutation::ax_minus_cz ? DiffDirection::ax_minus_fc : DiffDirection::fc_minus_ax;
    pp.elim = tables.elimination(e, perm);
    if (pp.elim->cotables.empty()) pp.elim.reset();
    auto std_skip = tables.skipahead(e, perm);
    pp.tables.push_back(std_skip);
    pp.filters.push_back(std::make_shared<ResidueFilterSet>(
        build_filter(e.y, filter_moduli(e.y, std_skip->factors), {e.x, e.z})));
    const ResidueFilterSet* std_filter = pp.filters.back().get();

    for (Word f : coeffs) {
      CoeffPlan cp;
      cp.lim = checked_limits(f, cfg);
      const auto cb = c_bounds_impl(cp.lim, perm, cfg, ctx.mins);
      if (cb.first > cb.second) continue;
      cp.c_lo = word_or_throw(cb.first, "c");
      cp.c_hi = word_or_throw(cb.second, "c");
      cp.a_hi_ax = word_or_throw(integer_kth_root(cp.lim.smax_n, e.x), "a");
      cp.a_lo_ax = std::max(to_natural(ctx.mins.a_min1), ceil_kth_root(cp.lim.smin_n, e.x));
      cp.skip = std_skip.get();
      cp.filter = std_filter;
      if (auto single = tables.single_coefficient(e, perm, f)) {
        pp.tables.push_back(single);
        pp.filters.push_back(std::make_shared<ResidueFilterSet>(
            build_filter(e.y, filter_moduli(e.y, single->factors), {e.x, e.z})));
        cp.skip = single.get();
        cp.filter = pp.filters.back().get();
      }
      pp.coeffs.push_back(std::move(cp));
    }
    std::sort(pp.coeffs.begin(), pp.coeffs.end(), [](const CoeffPlan& a, const CoeffPlan& b) {
      return a.c_hi != b.c_hi ? a.c_hi > b.c_hi : a.lim.f < b.lim.f;
    });
    if (!pp.coeffs.empty()) {
      pp.c_hi = pp.coeffs.front().c_hi;
      pp.c_lo = std::min_element(pp.coeffs.begin(), pp.coeffs.end(), [](const CoeffPlan& a, const CoeffPlan& b) {
                  return a.c_lo < b.c_lo;
                })->c_lo;
    }
    ctx.perms.push_back(std::move(pp));
  }
  return ctx;
}

// Scans c in [c_lo, c_hi] for one permutation; `sink` returns true to stop.
template <typename Sink>
bool scan_block(const Context& ctx, const PermPlan& pp, Word c_lo, Word c_hi, Sink&& sink) {
  const auto& cfg = ctx.cfg;
  const Word x = cfg.exps.x, y = cfg.exps.y, z = cfg.exps.z;
  const bool ax = pp.perm == Permutation::ax_minus_cz;
  std::vector<Word> fcz_res(64);
  Natural cz, fcz, axv, diff, root, check;

  for (Word c = c_lo; c <= c_hi; ++c) {
    bool have_cz = false;
    for (const CoeffPlan& cp : pp.coeffs) {
      if (cp.c_hi < c) break;
      if (c < cp.c_lo) continue;
      const Word f = cp.lim.f;
      if (pp.elim && pp.elim->eliminated(f, c)) continue;
      if (!have_cz) {
        mpz_ui_pow_ui(cz.get_mpz_t(), c, z);
        have_cz = true;
      }
      mpz_mul_ui(fcz.get_mpz_t(), cz.get_mpz_t(), f);

      Word a_lo, a_hi;
      if (ax) {
        Natural lo = ceil_kth_root(fcz + pow_word(ctx.mins.b_min1, y), x);
        if (lo < cp.a_lo_ax) lo = cp.a_lo_ax;
        if (!fits_word(lo) || to_word(lo) > cp.a_hi_ax) continue;
        a_lo = to_word(lo);
        a_hi = cp.a_hi_ax;
      } else {
        const auto b = a_bounds_impl(cp.lim, fcz, pp.perm, cfg, ctx.mins);
        if (b.first > b.second) continue;
        a_lo = word_or_throw(b.first, "a");
        a_hi = word_or_throw(b.second, "a");
      }

      const ResidueFilterSet& filter = *cp.filter;
      if (fcz_res.size() < filter.mods.size()) fcz_res.resize(filter.mods.size());
      filter.fcz_residues(f, c, z, fcz_res.data());
      AdmissibleIterator it(*cp.skip, cp.skip->residue_of(f, c), a_lo, a_hi);
      for (Word a; it.next(a);) {
        if (cfg.gcd_before_power && (gcd_word(a, c) != 1 || gcd_word(a, f) != 1)) continue;
        if (!filter.diff_passes(fcz_res.data(), a, x, pp.dir)) continue;
        mpz_ui_pow_ui(axv.get_mpz_t(), a, x);
        if (ax)
          diff = axv - fcz;
        else
          diff = fcz - axv;
        if (sgn(diff) <= 0) continue;
        if (!mpz_root(root.get_mpz_t(), diff.get_mpz_t(), y)) continue;
        if (!fits_word(root)) continue;
        const Word b = to_word(root);
        if (b < ctx.mins.b_min1) continue;
        if (!cfg.gcd_before_power && (gcd_word(a, c) != 1 || gcd_word(a, f) != 1)) continue;

        OriginalEquation eq;
        eq.exps = cfg.exps;
        eq.f = f;
        eq.a = a;
        eq.b = b;
        eq.c = c;
        eq.perm = pp.perm;
        const Natural base_size = cp.lim.N * (ax ? axv : fcz);
        if (base_size < cfg.s_min || base_size > cfg.s_max) continue;
        SearchRecord rec = make_record(eq, cfg.s_max, ctx.reassociate);
        if (rec.report.pegg_value < cfg.V) continue;
        if (sink(std::move(rec))) return true;
      }
    }
    if (c == c_hi) break;  // c_hi may be the largest word
  }
  return false;
}

struct Block {
  std::size_t perm;
  Word lo, hi;
};

std::vector<Block> make_blocks(const Context& ctx, std::size_t perm_index, std::size_t target) {
  std::vector<Block> out;
  const PermPlan& pp = ctx.perms[perm_index];
  if (pp.coeffs.empty() || pp.c_lo > pp.c_hi) return out;
  const Word span = pp.c_hi - pp.c_lo;
  const Word step = std::max<Word>(1, span / std::max<std::size_t>(target, 1) + 1);
  for (Word lo = pp.c_lo;; lo += step) {
    const Word hi = (pp.c_hi - lo < step - 1) ? pp.c_hi : lo + step - 1;
    out.push_back({perm_index, lo, hi});
    if (hi == pp.c_hi) break;
  }
  return out;
}

int thread_count(const SearchConfig& cfg) { return cfg.workers > 0 ? cfg.workers : omp_get_max_threads(); }

auto record_key(const SearchRecord& r) {
  return std::make_tuple(r.resultant.size(), r.original.a, r.original.c, r.original.f, r.original.b,
                         static_cast<int>(r.original.perm));
}

void sort_records(std::vector<SearchRecord>& v) {
  std::vector<std::pair<decltype(record_key(v[0])), std::size_t>> keys;
  keys.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) keys.emplace_back(record_key(v[i]), i);
  std::sort(keys.begin(), keys.end());
  std::vector<SearchRecord> out;
  out.reserve(v.size());
  for (auto& k : keys) out.push_back(std::move(v[k.second]));
  v = std::move(out);
}

}  // namespace

std::vector<SearchRecord> search_all(const SearchConfig& cfg, TableSet& tables) {
  const Context ctx = prepare(cfg, tables);
  const int threads = thread_count(cfg);
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < ctx.perms.size(); ++i) {
    auto b = make_blocks(ctx, i, static_cast<std::size_t>(threads) * 64);
    blocks.insert(blocks.end(), b.begin(), b.end());
  }
  std::vector<std::vector<SearchRecord>> found(blocks.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(blocks.size()); ++i) {
    try {
      const Block& b = blocks[static_cast<std::size_t>(i)];
      scan_block(ctx, ctx.perms[b.perm], b.lo, b.hi, [&](SearchRecord&& r) {
        found[static_cast<std::size_t>(i)].push_back(std::move(r));
        return false;
      });
    } catch (...) {
#pragma omp critical(pegg_search_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<SearchRecord> out;
  for (auto& v : found)
    for (auto& r : v) out.push_back(std::move(r));
  if (!out.empty()) sort_records(out);
  return out;
}

std::vector<SearchRecord> search_all_serial(const SearchConfig& cfg, TableSet& tables) {
  const Context ctx = prepare(cfg, tables);
  std::vector<SearchRecord> out;
  for (const PermPlan& pp : ctx.perms) {
    if (pp.coeffs.empty()) continue;
    scan_block(ctx, pp, pp.c_lo, pp.c_hi, [&](SearchRecord&& r) {
      out.push_back(std::move(r));
      return false;
    });
  }
  if (!out.empty()) sort_records(out);
  return out;
}

std::optional<SearchRecord> search_once(const SearchConfig& cfg, TableSet& tables) {
  const Context ctx = prepare(cfg, tables);
  const int threads = thread_count(cfg);
  const std::size_t wave = static_cast<std::size_t>(threads) * 4;
  for (std::size_t p = 0; p < ctx.perms.size(); ++p) {
    const auto blocks = make_blocks(ctx, p, static_cast<std::size_t>(threads) * 64);
    for (std::size_t start = 0; start < blocks.size(); start += wave) {
      const std::size_t n = std::min(wave, blocks.size() - start);
      std::vector<std::optional<SearchRecord>> first(n);
      std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        try {
          const Block& b = blocks[start + static_cast<std::size_t>(i)];
          scan_block(ctx, ctx.perms[p], b.lo, b.hi, [&](SearchRecord&& r) {
            first[static_cast<std::size_t>(i)] = std::move(r);
            return true;
          });
        } catch (...) {
#pragma omp critical(pegg_search_error)
          if (!error) error = std::current_exception();
        }
      }
      if (error) std::rethrow_exception(error);
      for (auto& r : first)
        if (r) return std::move(r);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- reordering

std::vector<RunPlan> reorder_for_distinct_exponents(const ExponentTriple& exps) {
  if (!exps.distinct()) throw std::invalid_argument("reordering needs three distinct exponents");
  const Word e1 = std::max(exps.x, exps.y), e2 = std::min(exps.x, exps.y), z = exps.z;
  return {
      {{e1, e2, z}, Permutation::ax_minus_cz, Permutation::ax_minus_cz},
      {{e1, e2, z}, Permutation::cz_minus_ax, Permutation::cz_minus_ax},
      {{e2, e1, z}, Permutation::ax_minus_cz, Permutation::ax_plus_cz},
  };
}

namespace {

// a'^e2 - f c^z = b'^e1 read as b'^e1 + f c^z = a'^e2
OriginalEquation as_plus(const OriginalEquation& eq) {
  OriginalEquation out = eq;
  out.exps = {eq.exps.y, eq.exps.x, eq.exps.z};
  out.a = eq.b;
  out.b = eq.a;
  out.d = eq.e;
  out.e = eq.d;
  out.perm = Permutation::ax_plus_cz;
  return out;
}

bool wants(const SearchConfig& cfg, Permutation p) {
  return std::find(cfg.perms.begin(), cfg.perms.end(), p) != cfg.perms.end();
}

std::vector<std::pair<SearchConfig, RunPlan>> runs_for(const SearchConfig& cfg) {
  std::vector<std::pair<SearchConfig, RunPlan>> out;
  if (!cfg.exps.distinct()) {
    SearchConfig sub = cfg;
    sub.perms.clear();
    for (Permutation p : {Permutation::ax_minus_cz, Permutation::cz_minus_ax})
      if (wants(cfg, p) || (p == Permutation::ax_minus_cz && wants(cfg, Permutation::ax_plus_cz)))
        sub.perms.push_back(p);
    for (Permutation p : sub.perms) {
      SearchConfig one = sub;
      one.perms = {p};
      out.push_back({one, {cfg.exps, p, p}});
    }
    return out;
  }
  for (const RunPlan& plan : reorder_for_distinct_exponents(cfg.exps)) {
    if (!wants(cfg, plan.reported)) continue;
    SearchConfig sub = cfg;
    sub.exps = plan.exps;
    sub.perms = {plan.perm};
    out.push_back({sub, plan});
  }
  return out;
}

SearchRecord report_as(const SearchRecord& r, const RunPlan& plan, const SearchConfig& cfg) {
  if (plan.reported == plan.perm) return r;
  return make_record(as_plus(r.original), cfg.s_max, !cfg.three_four_five_cases);
}

}  // namespace

std::vector<SearchRecord> search_all_permutations(const SearchConfig& cfg, TableSet& tables) {
  std::vector<SearchRecord> out;
  for (const auto& [sub, plan] : runs_for(cfg))
    for (auto& r : search_all(sub, tables)) out.push_back(report_as(r, plan, cfg));
  if (!out.empty()) sort_records(out);
  return out;
}

std::optional<SearchRecord> search_once_permutations(const SearchConfig& cfg, TableSet& tables) {
  for (const auto& [sub, plan] : runs_for(cfg))
    if (auto r = search_once(sub, tables)) return report_as(*r, plan, cfg);
  return std::nullopt;
}

// -------------------------------------------------------------------- ladder

std::vector<SearchRecord> ladder(const SearchConfig& cfg, TableSet& tables) {
  validate_config(cfg);
  std::vector<SearchRecord> rows;
  Natural best = to_natural(cfg.V) - 1;
  Natural lo = 0;
  Natural hi = Natural(1) << 20;
  while (hi <= cfg.s_min) hi <<= 1;
  for (;;) {
    if (hi > cfg.s_max) hi = cfg.s_max;
    SearchConfig sub = cfg;
    sub.s_min = 1;
    sub.s_max = hi;
    sub.V = to_word(best + 1);
    const bool reassoc = !cfg.three_four_five_cases;

    struct Cand {
      SearchRecord rec;
      Natural size;
    };
    std::vector<Cand> cands;
    for (const SearchRecord& r : search_all_permutations(sub, tables)) {
      const ResultantEquation base = convert_to_resultant(r.original);
      const auto variants = reassoc ? pegg_variants(base, hi) : std::vector<ResultantEquation>{base};
      for (const auto& v : variants) {
        Natural size = v.size();
        if (size <= lo || size < cfg.s_min) continue;
        PeggReport rep = pegg_report(v);
        if (rep.pegg_value <= best) continue;
        cands.push_back({{r.original, v, std::move(rep)}, std::move(size)});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.size != b.size) return a.size < b.size;
      if (a.rec.report.pegg_value != b.rec.report.pegg_value) return a.rec.report.pegg_value > b.rec.report.pegg_value;
      return std::tie(a.rec.original.a, a.rec.original.c, a.rec.original.f) <
             std::tie(b.rec.original.a, b.rec.original.c, b.rec.original.f);
    });
    for (auto& c : cands) {
      if (c.rec.report.pegg_value <= best) continue;
      best = c.rec.report.pegg_value;
      rows.push_back(std::move(c.rec));
    }
    if (hi == cfg.s_max || !fits_word(best + 1)) break;
    lo = hi;
    hi <<= 1;
  }
  return rows;
}

}  // namespace pegg
