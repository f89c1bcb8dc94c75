#include "pegg/residue_tables.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <sstream>

#include <omp.h>

namespace pegg {

Word TableSpec::skip_modulus() const {
  Word m = 1;
  for (Word q : skip_factors) m *= q;
  return m;
}

Word TableSpec::elim_modulus_or_zero() const {
  Natural m = 1;
  for (Word q : elim_factors) m *= to_natural(q);
  return fits_word(m) ? to_word(m) : 0;
}

std::string describe(const TableSpec& spec) {
  auto join = [](const std::vector<Word>& v) {
    std::string s;
    for (Word q : v) s += (s.empty() ? "" : "*") + std::to_string(q);
    return s.empty() ? std::string("1") : s;
  };
  std::ostringstream os;
  os << to_string(spec.exps) << ' ' << to_string(spec.perm) << " elim " << join(spec.elim_factors) << " skip "
     << join(spec.skip_factors);
  if (spec.single_coeff) os << " coeff " << spec.single_coeff;
  return os.str();
}

BudgetExceeded::BudgetExceeded(std::uint64_t projected, std::uint64_t budget)
    : std::runtime_error("skipahead table needs " + std::to_string(projected) + " bytes, budget is " +
                         std::to_string(budget)),
      projected_bytes(projected) {}

namespace {

struct Row {
  ExponentTriple exps;
  int perm;  // -1: both
  std::vector<Word> elim, skip;
};

const std::vector<Row>& rows() {
  static const std::vector<Word> e443cz = {5, 13, 16, 17, 27, 29, 49, 121, 1849};
  static const std::vector<Row> r = {
      {{3, 3, 4}, -1, {7, 9}, {13, 19, 31, 37}},
      {{3, 3, 5}, -1, {7, 9}, {13, 19, 31, 37}},
      {{4, 4, 3}, 0, {5, 16, 17}, {9, 13, 29, 37}},
      {{4, 4, 3}, 1, e443cz, {9, 13, 29, 37}},
      {{4, 4, 5}, 0, {5, 16, 17}, {9, 13, 29, 37}},
      {{4, 4, 5}, 1, e443cz, {37, 41, 53}},
      {{5, 5, 3}, -1, {11, 25, 31, 41, 61}, {61, 71, 101}},
      {{5, 5, 4}, -1, {11, 25, 31, 41, 61}, {41, 61, 71}},
      {{4, 3, 5}, -1, {13}, {7, 9, 19, 31}},
      {{5, 3, 4}, -1, {31}, {7, 9, 13, 19}},
      {{3, 4, 5}, -1, {13}, {5, 9, 16, 17, 29}},
      {{5, 4, 3}, -1, {11, 41}, {5, 9, 13, 16}},
      {{3, 5, 4}, -1, {31}, {11, 25, 41, 61}},
      {{4, 5, 3}, -1, {11, 41}, {25, 31, 61}},
  };
  return r;
}

}  // namespace

const std::vector<ExponentTriple>& known_exponent_sets() {
  static const std::vector<ExponentTriple> v = [] {
    std::vector<ExponentTriple> out;
    for (const auto& r : rows())
      if (out.empty() || !(out.back() == r.exps)) out.push_back(r.exps);
    return out;
  }();
  return v;
}

TableSpec default_spec(const ExponentTriple& exps, Permutation perm) {
  if (perm == Permutation::ax_plus_cz) throw std::invalid_argument("tables exist for ax_minus_cz and cz_minus_ax only");
  for (const auto& r : rows()) {
    if (!(r.exps == exps)) continue;
    if (r.perm >= 0 && r.perm != static_cast<int>(perm)) continue;
    TableSpec s;
    s.exps = exps;
    s.perm = perm;
    s.elim_factors = r.elim;
    s.skip_factors = r.skip;
    return s;
  }
  throw std::invalid_argument("no suggested moduli for exponent set " + to_string(exps));
}

TableSpec single_coefficient_spec(const ExponentTriple& exps, Permutation perm, Word f) {
  TableSpec s = default_spec(exps, perm);
  s.single_coeff = f;
  if (exps == ExponentTriple{3, 3, 4} || exps == ExponentTriple{3, 3, 5})
    s.skip_factors = {7, 13, 19, 31, 37};
  else if (exps == ExponentTriple{4, 4, 3})
    s.skip_factors = {5, 9, 13, 29, 37};
  else
    throw std::invalid_argument("no single-coefficient moduli for exponent set " + to_string(exps));
  return s;
}

TableSpec compact_spec(const ExponentTriple& exps, Permutation perm, std::uint64_t cap_bytes) {
  TableSpec full = default_spec(exps, perm);
  TableSpec s = full;
  s.skip_factors.clear();
  for (Word q : full.skip_factors) {
    TableSpec t = s;
    t.skip_factors.push_back(q);
    if (projected_skip_bytes(t) > cap_bytes) break;
    s = std::move(t);
  }
  return s;
}

ComponentTable build_component(const ExponentTriple& exps, Permutation perm, Word q, Word single_coeff) {
  ComponentTable t;
  t.q = q;
  std::vector<Word> px(q), yres(q, 0);
  for (Word s = 0; s < q; ++s) {
    Word v = 1 % q, w = 1 % q;
    for (Word i = 0; i < exps.x; ++i) v = v * s % q;
    for (Word i = 0; i < exps.y; ++i) w = w * s % q;
    px[s] = v;
    yres[w] = 1;
  }
  t.reachable.assign(q, single_coeff ? 0 : 1);
  if (single_coeff) {
    const Word fq = single_coeff % q;
    for (Word c = 0; c < q; ++c) {
      Word v = 1 % q;
      for (Word i = 0; i < exps.z; ++i) v = v * c % q;
      t.reachable[fq * v % q] = 1;
    }
  }
  t.start.assign(q + 1, 0);
  for (Word r = 0; r < q; ++r) {
    t.start[r] = static_cast<std::uint32_t>(t.residues.size());
    for (Word s = 0; s < q; ++s) {
      Word d = 0;
      switch (perm) {
        case Permutation::ax_minus_cz: d = (px[s] + q - r) % q; break;
        case Permutation::cz_minus_ax: d = (r + q - px[s]) % q; break;
        case Permutation::ax_plus_cz: d = (r + px[s]) % q; break;
      }
      if (yres[d]) t.residues.push_back(static_cast<std::uint32_t>(s));
    }
  }
  t.start[q] = static_cast<std::uint32_t>(t.residues.size());
  return t;
}

// ---------------------------------------------------------------- elimination

bool EliminationTable::eliminated(Word f, Word c) const {
  for (const auto& ct : cotables) {
    const Word rc = ct.red.reduce(c);
    Word cz = 1 % ct.modulus;
    for (Word i = 0; i < exps.z; ++i) cz = ct.red.mulmod(cz, rc);
    if (ct.flags[ct.red.mulmod(ct.red.reduce(f), cz)]) return true;
  }
  return false;
}

EliminationTable build_elimination_table(const TableSpec& spec) {
  EliminationTable et;
  et.exps = spec.exps;
  et.perm = spec.perm;

  // greedy grouping in spec order; a factor larger than the cap gets its own table
  std::vector<std::vector<Word>> groups;
  Word prod = 1;
  for (Word q : spec.elim_factors) {
    if (groups.empty() || prod * q > spec.cotable_cap_bytes) {
      groups.push_back({});
      prod = 1;
    }
    groups.back().push_back(q);
    prod *= q;
  }

  for (const auto& g : groups) {
    EliminationTable::CoTable ct;
    ct.factors = g;
    ct.modulus = std::accumulate(g.begin(), g.end(), Word{1}, std::multiplies<>());
    ct.red = ReciprocalModulus(std::max<Word>(ct.modulus, 2));
    std::vector<std::vector<std::uint8_t>> comp_flag;
    for (Word q : g) {
      const ComponentTable comp = build_component(spec.exps, spec.perm, q);
      std::vector<std::uint8_t> fl(q);
      for (Word r = 0; r < q; ++r) fl[r] = comp.count(r) == 0;
      comp_flag.push_back(std::move(fl));
    }
    ct.flags.assign(ct.modulus, 0);
    std::vector<Word> rq(g.size(), 0);
    for (Word r = 0; r < ct.modulus; ++r) {
      std::uint8_t any = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        any |= comp_flag[i][rq[i]];
        if (++rq[i] == g[i]) rq[i] = 0;
      }
      ct.flags[r] = any;
    }
    et.cotables.push_back(std::move(ct));
  }
  return et;
}

// ----------------------------------------------------------------- skipahead

Word SkipaheadTable::residue_of(Word f, Word c) const {
  if (modulus == 1) return 0;
  const Word rc = red.reduce(c);
  Word cz = 1;
  for (Word i = 0; i < exps.z; ++i) cz = red.mulmod(cz, rc);
  return red.mulmod(red.reduce(f), cz);
}

std::vector<Word> SkipaheadTable::class_residues(Word r) const {
  std::vector<Word> out;
  const std::uint64_t n = class_size(r);
  if (n == 0) return out;
  Word s = anchors[r];
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(s);
    s += gap(offsets[r] + i);
  }
  return out;
}

namespace {

std::vector<ComponentTable> skip_components(const TableSpec& spec) {
  std::vector<ComponentTable> comps;
  for (Word q : spec.skip_factors) comps.push_back(build_component(spec.exps, spec.perm, q, spec.single_coeff));
  return comps;
}

Word class_count_of(const std::vector<ComponentTable>& comps, Word r) {
  Word n = 1;
  for (const auto& c : comps) {
    const Word rq = r % c.q;
    if (!c.reachable[rq]) return 0;
    n *= c.count(rq);
  }
  return n;
}

struct FillScratch {
  std::vector<std::uint32_t> vals, next;
  std::vector<std::uint64_t> bitmap;
};

// Writes the gaps of class r into out[0..n). Returns the largest gap.
template <typename Entry>
Word fill_class(const std::vector<ComponentTable>& comps, const std::vector<std::vector<std::uint32_t>>& weight,
                Word M, Word r, Entry* out, std::uint32_t& anchor, FillScratch& sc) {
  auto& vals = sc.vals;
  auto& next = sc.next;
  vals.assign(1, 0);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    const Word rq = r % c.q;
    const std::uint32_t* L = c.begin(rq);
    const std::uint32_t n = c.count(rq);
    next.resize(vals.size() * n);
    std::size_t k = 0;
    for (std::uint32_t v : vals)
      for (std::uint32_t j = 0; j < n; ++j) {
        Word s = Word{v} + weight[i][L[j]];
        if (s >= M) s -= M;
        next[k++] = static_cast<std::uint32_t>(s);
      }
    vals.swap(next);
  }

  const std::size_t n = vals.size();
  Word max_gap = 0;
  Word prev = 0;
  std::size_t k = 0;
  auto emit = [&](Word s) {
    if (k == 0)
      anchor = static_cast<std::uint32_t>(s);
    else {
      const Word g = s - prev;
      max_gap = std::max(max_gap, g);
      out[k - 1] = static_cast<Entry>(g);
    }
    prev = s;
    ++k;
  };

  if (n * 64 < M) {
    std::sort(vals.begin(), vals.end());
    for (std::uint32_t s : vals) emit(s);
  } else {
    auto& bm = sc.bitmap;
    bm.assign((M + 63) / 64, 0);
    for (std::uint32_t s : vals) bm[s >> 6] |= std::uint64_t{1} << (s & 63);
    for (std::size_t w = 0; w < bm.size(); ++w) {
      std::uint64_t bits = bm[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        emit(w * 64 + static_cast<Word>(b));
        bits &= bits - 1;
      }
    }
  }
  const Word wrap = M - prev + anchor;
  max_gap = std::max(max_gap, wrap);
  out[n - 1] = static_cast<Entry>(wrap);
  return max_gap;
}

std::shared_ptr<SkipaheadTable> build_impl(const TableSpec& spec, bool parallel) {
  const std::uint64_t projected = projected_skip_bytes(spec);
  if (projected > spec.budget_bytes) throw BudgetExceeded(projected, spec.budget_bytes);

  auto t = std::make_shared<SkipaheadTable>();
  t->exps = spec.exps;
  t->perm = spec.perm;
  t->single_coeff = spec.single_coeff;
  t->factors = spec.skip_factors;
  const Word M = spec.skip_modulus();
  if (M >= (Word{1} << 32)) throw std::invalid_argument("skipahead modulus must be below 2^32");
  t->modulus = M;
  if (M > 1) t->red = ReciprocalModulus(M);

  const auto comps = skip_components(spec);
  std::vector<std::vector<std::uint32_t>> weight;
  for (const auto& c : comps) {
    // CRT idempotent for this factor: e = (M/q) * ((M/q)^-1 mod q)
    const Word mq = M / c.q;
    const Word e = mq * inverse_mod(mq % c.q, c.q);
    std::vector<std::uint32_t> w(c.q);
    for (Word s = 0; s < c.q; ++s) w[s] = static_cast<std::uint32_t>(static_cast<unsigned __int128>(s) * e % M);
    weight.push_back(std::move(w));
  }

  t->offsets.assign(M + 1, 0);
  for (Word r = 0; r < M; ++r) t->offsets[r + 1] = t->offsets[r] + class_count_of(comps, r);
  t->anchors.assign(M, 0);

  auto fill_all = [&](auto* entries) -> Word {
    std::atomic<Word> worst{0};
    const std::int64_t classes = static_cast<std::int64_t>(M);
#pragma omp parallel if (parallel)
    {
      FillScratch sc;
      Word local = 0;
#pragma omp for schedule(dynamic, 256)
      for (std::int64_t r = 0; r < classes; ++r) {
        if (t->offsets[r + 1] == t->offsets[r]) continue;
        local = std::max(local, fill_class(comps, weight, M, static_cast<Word>(r), entries + t->offsets[r],
                                           t->anchors[r], sc));
      }
      Word seen = worst.load();
      while (local > seen && !worst.compare_exchange_weak(seen, local)) {
      }
    }
    return worst.load();
  };

  t->entry_width = 2;
  t->gaps16.resize(t->offsets.back());
  if (fill_all(t->gaps16.data()) > 0xFFFF) {
    t->gaps16.clear();
    t->gaps16.shrink_to_fit();
    t->entry_width = 4;
    t->gaps32.resize(t->offsets.back());
    fill_all(t->gaps32.data());
  }
  return t;
}

}  // namespace

std::uint64_t projected_skip_bytes(const TableSpec& spec, std::uint8_t width) {
  Natural total = 1;
  for (const auto& c : skip_components(spec)) {
    Word s = 0;
    for (Word r = 0; r < c.q; ++r)
      if (c.reachable[r]) s += c.count(r);
    total *= to_natural(s);
  }
  total *= to_natural(width);
  return fits_word(total) ? to_word(total) : ~std::uint64_t{0};
}

std::shared_ptr<SkipaheadTable> build_skipahead_table(const TableSpec& spec) { return build_impl(spec, true); }
std::shared_ptr<SkipaheadTable> build_skipahead_table_serial(const TableSpec& spec) { return build_impl(spec, false); }

AdmissibleIterator::AdmissibleIterator(const SkipaheadTable& table, Word fc_residue, Word a_start, Word a_max)
    : t_(&table), a_max_(a_max) {
  first_ = table.offsets[fc_residue];
  count_ = table.offsets[fc_residue + 1] - first_;
  if (count_ == 0 || a_start > a_max) return;
  const Word M = table.modulus;
  const Word target = M == 1 ? 0 : table.red.reduce(a_start);
  // one linear walk from the anchor to the first admissible residue >= target
  Word s = table.anchors[fc_residue];
  idx_ = 0;
  while (s < target) {
    s += table.gap(first_ + idx_);
    if (++idx_ == count_) idx_ = 0;
  }
  const Word base = a_start - target;
  if (s > a_max - base) return;  // also guards base + s against overflow
  cur_ = base + s;
  done_ = false;
}

bool AdmissibleIterator::next(Word& a) {
  if (done_) return false;
  a = cur_;
  const Word g = t_->gap(first_ + idx_);
  if (++idx_ == count_) idx_ = 0;
  if (g > a_max_ || cur_ > a_max_ - g)
    done_ = true;
  else
    cur_ += g;
  return true;
}

std::vector<Word> admissible_a(const SkipaheadTable& table, Word fc_residue, Word a_start, Word a_max) {
  std::vector<Word> out;
  AdmissibleIterator it(table, fc_residue, a_start, a_max);
  for (Word a; it.next(a);) out.push_back(a);
  return out;
}

// --------------------------------------------------------------------- rates

namespace {

Word prime_of(Word q) { return factorize(q).front().prime; }

struct PrimeGroup {
  Word Q = 1;                                // p^max
  const ComponentTable* elim = nullptr;      // may be null
  const ComponentTable* skip = nullptr;      // may be null
  std::vector<double> s_elim, s_skip, s_comb;  // survival by f mod Q
};

}  // namespace

Rates measure_rates(const TableSpec& spec, Word f_limit, RateWeighting w) {
  std::vector<ComponentTable> el, sk;
  for (Word q : spec.elim_factors) el.push_back(build_component(spec.exps, spec.perm, q));
  for (Word q : spec.skip_factors) sk.push_back(build_component(spec.exps, spec.perm, q));

  std::map<Word, PrimeGroup> groups;
  for (const auto& c : el) {
    auto& g = groups[prime_of(c.q)];
    g.elim = &c;
    g.Q = std::max(g.Q, c.q);
  }
  for (const auto& c : sk) {
    auto& g = groups[prime_of(c.q)];
    g.skip = &c;
    g.Q = std::max(g.Q, c.q);
  }

  const Word z = spec.exps.z;
  for (auto& [p, g] : groups) {
    std::vector<Word> cz(g.Q);
    for (Word c = 0; c < g.Q; ++c) {
      Word v = 1 % g.Q;
      for (Word i = 0; i < z; ++i) v = v * c % g.Q;
      cz[c] = v;
    }
    g.s_elim.assign(g.Q, 1.0);
    g.s_skip.assign(g.Q, 1.0);
    g.s_comb.assign(g.Q, 1.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t fi = 0; fi < static_cast<std::int64_t>(g.Q); ++fi) {
      const Word fr = static_cast<Word>(fi);
      double se = 0, ss = 0, sc = 0;
      for (Word c = 0; c < g.Q; ++c) {
        const Word r = fr * cz[c] % g.Q;
        const double ok = g.elim ? (g.elim->count(r % g.elim->q) != 0 ? 1.0 : 0.0) : 1.0;
        const double frac = g.skip ? static_cast<double>(g.skip->count(r % g.skip->q)) / static_cast<double>(g.skip->q) : 1.0;
        se += ok;
        ss += frac;
        sc += ok * frac;
      }
      g.s_elim[fr] = se / static_cast<double>(g.Q);
      g.s_skip[fr] = ss / static_cast<double>(g.Q);
      g.s_comb[fr] = sc / static_cast<double>(g.Q);
    }
  }

  Rates out;
  if (w == RateWeighting::all_residues) {
    double pe = 1, ps = 1, pc = 1;
    for (const auto& [p, g] : groups) {
      auto mean = [&](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); };
      pe *= mean(g.s_elim);
      ps *= mean(g.s_skip);
      pc *= mean(g.s_comb);
    }
    out.elimination = 100.0 * (1 - pe);
    out.skipahead = 100.0 * (1 - ps);
    out.combined = 100.0 * (1 - pc);
    return out;
  }

  double se = 0, ss = 0, sc = 0;
  Word n = 0;
  for (Word f = 2; f <= f_limit; ++f) {
    if (!is_k_free(f, z)) continue;
    double pe = 1, ps = 1, pc = 1;
    for (const auto& [p, g] : groups) {
      const Word fr = f % g.Q;
      pe *= g.s_elim[fr];
      ps *= g.s_skip[fr];
      pc *= g.s_comb[fr];
    }
    se += 1 - pe;
    ss += 1 - ps;
    sc += 1 - pc;
    ++n;
  }
  if (n) {
    out.elimination = 100.0 * se / static_cast<double>(n);
    out.skipahead = 100.0 * ss / static_cast<double>(n);
    out.combined = 100.0 * sc / static_cast<double>(n);
  }
  return out;
}

}  // namespace pegg
