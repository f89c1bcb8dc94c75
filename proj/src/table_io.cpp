#include "pegg/table_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace pegg {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// FNV-1a over 8-byte little-endian words; a short tail is zero padded.
class Checksum {
 public:
  void update(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    while (n && fill_) {
      buf_[fill_++] = *p++;
      --n;
      if (fill_ == 8) flush();
    }
    while (n >= 8) {
      std::uint64_t w;
      std::memcpy(&w, p, 8);
      mix(w);
      p += 8;
      n -= 8;
    }
    while (n--) buf_[fill_++] = *p++;
  }
  std::uint64_t value() const {
    std::uint64_t h = h_;
    if (fill_) {
      std::array<unsigned char, 8> tail{};
      std::memcpy(tail.data(), buf_.data(), fill_);
      std::uint64_t w;
      std::memcpy(&w, tail.data(), 8);
      h = (h ^ w) * kFnvPrime;
    }
    return h;
  }

 private:
  void mix(std::uint64_t w) { h_ = (h_ ^ w) * kFnvPrime; }
  void flush() {
    std::uint64_t w;
    std::memcpy(&w, buf_.data(), 8);
    mix(w);
    fill_ = 0;
  }
  std::uint64_t h_ = kFnvOffset;
  std::array<unsigned char, 8> buf_{};
  std::size_t fill_ = 0;
};

static_assert(std::endian::native == std::endian::little, "table files assume a little-endian host");

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : path_(path), tmp_(path.string() + ".partial") {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw TableError("cannot write " + tmp_.string());
  }
  template <typename T>
  void put(T v) {
    bytes(&v, sizeof v);
  }
  void bytes(const void* p, std::size_t n) {
    sum_.update(p, n);
    out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  }
  void finish() {
    const std::uint64_t h = sum_.value();
    out_.write(reinterpret_cast<const char*>(&h), sizeof h);
    out_.close();
    if (!out_) throw TableError("write failed for " + tmp_.string());
    std::filesystem::rename(tmp_, path_);
  }

 private:
  std::filesystem::path path_, tmp_;
  std::ofstream out_;
  Checksum sum_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : path_(path) {
    in_.open(path, std::ios::binary);
    if (!in_) throw TableError("cannot open " + path.string());
    size_ = std::filesystem::file_size(path);
  }
  template <typename T>
  T get() {
    T v;
    bytes(&v, sizeof v);
    return v;
  }
  void bytes(void* p, std::size_t n) {
    if (pos_ + n + 8 > size_) throw CorruptFile(path_.string() + ": truncated");
    in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!in_) throw CorruptFile(path_.string() + ": read failed");
    sum_.update(p, n);
    pos_ += n;
  }
  void expect_remaining(std::uint64_t n) const {
    if (size_ < pos_ + 8 || size_ - pos_ - 8 != n) throw CorruptFile(path_.string() + ": size does not match header");
  }
  void finish() {
    if (pos_ + 8 != size_) throw CorruptFile(path_.string() + ": trailing bytes");
    std::uint64_t stored;
    in_.read(reinterpret_cast<char*>(&stored), 8);
    if (!in_ || stored != sum_.value()) throw CorruptFile(path_.string() + ": checksum mismatch");
  }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::uint64_t size_ = 0, pos_ = 0;
  Checksum sum_;
};

void put_header(Writer& w, const char* magic, const ExponentTriple& e, Permutation perm) {
  w.bytes(magic, 4);
  w.put<std::uint32_t>(kTableFormatVersion);
  w.put<std::uint16_t>(static_cast<std::uint16_t>(e.x));
  w.put<std::uint16_t>(static_cast<std::uint16_t>(e.y));
  w.put<std::uint16_t>(static_cast<std::uint16_t>(e.z));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(perm));
}

void get_header(Reader& r, const char* magic, ExponentTriple& e, Permutation& perm, const std::filesystem::path& path) {
  char m[4];
  r.bytes(m, 4);
  if (std::memcmp(m, magic, 4) != 0) throw CorruptFile(path.string() + ": bad magic");
  const auto ver = r.get<std::uint32_t>();
  if (ver != kTableFormatVersion)
    throw VersionMismatch(path.string() + ": format version " + std::to_string(ver) + ", expected " +
                          std::to_string(kTableFormatVersion));
  e.x = r.get<std::uint16_t>();
  e.y = r.get<std::uint16_t>();
  e.z = r.get<std::uint16_t>();
  const auto p = r.get<std::uint8_t>();
  if (p > 2) throw CorruptFile(path.string() + ": bad permutation tag");
  perm = static_cast<Permutation>(p);
}

std::vector<Word> prime_power_factors(Word m) {
  std::vector<Word> out;
  for (const auto& [p, e] : factorize(m)) {
    Word q = 1;
    for (Word i = 0; i < e; ++i) q *= p;
    out.push_back(q);
  }
  return out;
}

std::vector<Word> sorted(std::vector<Word> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string spec_tag(const TableSpec& spec) {
  std::string s = std::to_string(spec.exps.x) + std::to_string(spec.exps.y) + std::to_string(spec.exps.z) + "_" +
                  (spec.perm == Permutation::ax_minus_cz ? "axcz" : "czax");
  return s;
}

std::string join(const std::vector<Word>& v) {
  std::string s;
  for (Word q : v) s += (s.empty() ? "" : "-") + std::to_string(q);
  return s.empty() ? "1" : s;
}

}  // namespace

void save_table(const SkipaheadTable& t, const std::filesystem::path& path) {
  Writer w(path);
  put_header(w, "PGGT", t.exps, t.perm);
  w.put<std::uint64_t>(t.single_coeff);
  w.put<std::uint64_t>(t.modulus);
  w.put<std::uint8_t>(t.entry_width);
  w.put<std::uint64_t>(t.class_count());
  w.bytes(t.offsets.data(), t.offsets.size() * sizeof(std::uint64_t));
  w.bytes(t.anchors.data(), t.anchors.size() * sizeof(std::uint32_t));
  if (t.entry_width == 2)
    w.bytes(t.gaps16.data(), t.gaps16.size() * 2);
  else
    w.bytes(t.gaps32.data(), t.gaps32.size() * 4);
  w.finish();
}

std::shared_ptr<SkipaheadTable> load_skipahead(const std::filesystem::path& path) {
  Reader r(path);
  auto t = std::make_shared<SkipaheadTable>();
  get_header(r, "PGGT", t->exps, t->perm, path);
  t->single_coeff = r.get<std::uint64_t>();
  t->modulus = r.get<std::uint64_t>();
  t->entry_width = r.get<std::uint8_t>();
  const auto count = r.get<std::uint64_t>();
  if (t->modulus == 0 || t->modulus >= (Word{1} << 32) || count != t->modulus ||
      (t->entry_width != 2 && t->entry_width != 4))
    throw CorruptFile(path.string() + ": inconsistent header");
  t->offsets.resize(count + 1);
  r.bytes(t->offsets.data(), t->offsets.size() * 8);
  const std::uint64_t entries = t->offsets.back();
  r.expect_remaining(count * 4 + entries * t->entry_width);
  t->anchors.resize(count);
  r.bytes(t->anchors.data(), count * 4);
  if (t->entry_width == 2) {
    t->gaps16.resize(entries);
    r.bytes(t->gaps16.data(), entries * 2);
  } else {
    t->gaps32.resize(entries);
    r.bytes(t->gaps32.data(), entries * 4);
  }
  r.finish();
  for (std::size_t i = 0; i < count; ++i)
    if (t->offsets[i] > t->offsets[i + 1]) throw CorruptFile(path.string() + ": offsets not monotone");
  t->factors = prime_power_factors(t->modulus);
  if (t->modulus > 1) t->red = ReciprocalModulus(t->modulus);
  return t;
}

std::shared_ptr<SkipaheadTable> load_skipahead(const std::filesystem::path& path, const TableSpec& spec) {
  auto t = load_skipahead(path);
  if (!(t->exps == spec.exps) || t->perm != spec.perm || t->single_coeff != spec.single_coeff ||
      t->modulus != spec.skip_modulus() || sorted(t->factors) != sorted(spec.skip_factors))
    throw SpecMismatch(path.string() + ": table was built for " + to_string(t->exps) + " " + to_string(t->perm) +
                       " modulus " + std::to_string(t->modulus) + ", wanted " + describe(spec));
  return t;
}

void save_table(const EliminationTable& t, const std::filesystem::path& path) {
  Writer w(path);
  put_header(w, "PGGE", t.exps, t.perm);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(t.cotables.size()));
  for (const auto& ct : t.cotables) {
    w.put<std::uint32_t>(static_cast<std::uint32_t>(ct.factors.size()));
    for (Word q : ct.factors) w.put<std::uint64_t>(q);
    w.put<std::uint64_t>(ct.modulus);
    w.bytes(ct.flags.data(), ct.flags.size());
  }
  w.finish();
}

EliminationTable load_elimination(const std::filesystem::path& path) {
  Reader r(path);
  EliminationTable t;
  get_header(r, "PGGE", t.exps, t.perm, path);
  const auto n = r.get<std::uint32_t>();
  if (n > 64) throw CorruptFile(path.string() + ": implausible co-table count");
  for (std::uint32_t i = 0; i < n; ++i) {
    EliminationTable::CoTable ct;
    const auto nf = r.get<std::uint32_t>();
    if (nf > 64) throw CorruptFile(path.string() + ": implausible factor count");
    Natural prod = 1;
    for (std::uint32_t j = 0; j < nf; ++j) {
      ct.factors.push_back(r.get<std::uint64_t>());
      prod *= to_natural(ct.factors.back());
    }
    ct.modulus = r.get<std::uint64_t>();
    if (ct.modulus == 0 || ct.modulus >= (Word{1} << 32) || prod != to_natural(ct.modulus))
      throw CorruptFile(path.string() + ": inconsistent co-table");
    ct.red = ReciprocalModulus(std::max<Word>(ct.modulus, 2));
    ct.flags.resize(ct.modulus);
    r.bytes(ct.flags.data(), ct.flags.size());
    t.cotables.push_back(std::move(ct));
  }
  r.finish();
  return t;
}

EliminationTable load_elimination(const std::filesystem::path& path, const TableSpec& spec) {
  EliminationTable t = load_elimination(path);
  std::vector<Word> factors;
  for (const auto& ct : t.cotables) factors.insert(factors.end(), ct.factors.begin(), ct.factors.end());
  if (!(t.exps == spec.exps) || t.perm != spec.perm || sorted(factors) != sorted(spec.elim_factors))
    throw SpecMismatch(path.string() + ": elimination table was built for " + to_string(t.exps) + " " +
                       to_string(t.perm) + ", wanted " + describe(spec));
  return t;
}

std::filesystem::path skipahead_file(const std::filesystem::path& dir, const TableSpec& spec) {
  std::string name = "skip_" + spec_tag(spec) + "_" + join(spec.skip_factors);
  if (spec.single_coeff) name += "_f" + std::to_string(spec.single_coeff);
  return dir / (name + ".pggt");
}

std::filesystem::path elimination_file(const std::filesystem::path& dir, const TableSpec& spec) {
  return dir / ("elim_" + spec_tag(spec) + "_" + join(spec.elim_factors) + ".pgge");
}

}  // namespace pegg
