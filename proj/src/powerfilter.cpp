#include "pegg/powerfilter.hpp"

#include <algorithm>
#include <stdexcept>

namespace pegg {

std::vector<Word> ResidueFilterSet::moduli() const {
  std::vector<Word> out;
  for (const auto& fm : mods) out.push_back(fm.m);
  return out;
}

void ResidueFilterSet::fcz_residues(Word f, Word c, Word z, Word* out) const {
  for (const auto& fm : mods) *out++ = fm.red.mulmod(fm.reduce(f), fm.pow_mod(fm.reduce(c), z));
}

std::vector<Word> default_moduli(Word k) {
  std::vector<Word> out;
  Word bound = 0;
  std::size_t expect = 0;
  switch (k) {
    case 3: out = {9}, bound = 367, expect = 34; break;
    case 4: out = {9, 16, 49}, bound = 257, expect = 25; break;
    case 5: out = {25}, bound = 521, expect = 23; break;
    default: throw std::invalid_argument("default_moduli: k must be 3, 4 or 5");
  }
  std::size_t n = 0;
  for (Word p : primes_below(bound + 1))
    if (p % k == 1) {
      out.push_back(p);
      ++n;
    }
  if (n != expect) throw std::logic_error("default_moduli: unexpected prime count");
  return out;
}

ResidueFilterSet build_filter(Word k, const std::vector<Word>& moduli, const std::vector<Word>& exponents,
                              FlagLayout layout) {
  ResidueFilterSet fs;
  fs.k = k;
  fs.layout = layout;
  std::vector<Word> exps = exponents;
  exps.push_back(k);
  const Word max_e = *std::max_element(exps.begin(), exps.end());
  for (Word m : moduli) {
    if (m < 2 || m >= (1u << 16)) throw std::invalid_argument("build_filter: moduli must lie in [2, 65536)");
    FilterModulus fm;
    fm.m = m;
    fm.red = ReciprocalModulus(m);
    fm.pow.resize(max_e + 1);
    for (Word e : exps) {
      if (!fm.pow[e].empty()) continue;
      auto& t = fm.pow[e];
      t.resize(m);
      for (Word b = 0; b < m; ++b) {
        Word r = 1 % m;
        for (Word i = 0; i < e; ++i) r = r * b % m;
        t[b] = static_cast<std::uint16_t>(r);
      }
    }
    fm.flag_bytes.assign(m, 0);
    for (Word s = 0; s < m; ++s) fm.flag_bytes[fm.pow[k][s]] = 1;
    fm.residue_count = static_cast<Word>(std::count(fm.flag_bytes.begin(), fm.flag_bytes.end(), 1));
    fm.flag_bits.assign((m + 63) / 64, 0);
    for (Word r = 0; r < m; ++r)
      if (fm.flag_bytes[r]) fm.flag_bits[r >> 6] |= std::uint64_t{1} << (r & 63);
    if (layout == FlagLayout::bits) {
      fm.flag_bytes.clear();
      fm.flag_bytes.shrink_to_fit();
    }
    fs.mods.push_back(std::move(fm));
  }
  return fs;
}

mpq_class surviving_fraction(const ResidueFilterSet& filter) {
  Natural num = 1, den = 1;
  for (const auto& fm : filter.mods) {
    num *= to_natural(fm.residue_count);
    den *= to_natural(fm.m);
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

long double analytic_elimination_rate(const ResidueFilterSet& filter) {
  long double s = 1.0L;
  for (const auto& fm : filter.mods) s *= static_cast<long double>(fm.residue_count) / static_cast<long double>(fm.m);
  return 1.0L - s;
}

std::string format_percent(const mpq_class& value, int decimals) {
  Natural scale = pow_word(10, static_cast<Word>(decimals));
  mpq_class scaled = value * mpq_class(Natural(100) * scale) + mpq_class(1, 2);
  Natural n = scaled.get_num() / scaled.get_den();
  std::string digits = n.get_str();
  if (decimals == 0) return digits;
  if (digits.size() <= static_cast<std::size_t>(decimals))
    digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
  digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  return digits;
}

bool diff_passes_filter(const ResidueFilterSet& filter, Word f, Word c, Word z, Word a, Word x, DiffDirection dir) {
  std::vector<Word> fcz(filter.mods.size());
  filter.fcz_residues(f, c, z, fcz.data());
  return filter.diff_passes(fcz.data(), a, x, dir);
}

bool passes_residues(const ResidueFilterSet& filter, const Natural& n) {
  if (sgn(n) < 0) return false;
  static_assert(sizeof(mp_limb_t) == sizeof(std::uint64_t));
  const std::size_t limbs = mpz_size(n.get_mpz_t());
  const auto* data = reinterpret_cast<const std::uint64_t*>(mpz_limbs_read(n.get_mpz_t()));
  for (const auto& fm : filter.mods)
    if (!filter.is_residue(fm, fm.red.reduce_limbs(data, limbs))) return false;
  return true;
}

bool is_kth_power_filtered(const ResidueFilterSet& filter, const Natural& n) {
  if (!passes_residues(filter, n)) return false;
  return is_perfect_kth_power(n, filter.k);
}

}  // namespace pegg
