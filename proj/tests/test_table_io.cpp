#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "doctest.h"
#include "pegg/table_io.hpp"

using namespace pegg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pegg_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

TableSpec spec334() {
  TableSpec s;
  s.exps = {3, 3, 4};
  s.perm = Permutation::cz_minus_ax;
  s.elim_factors = {7, 9};
  s.skip_factors = {13, 19};
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

}  // namespace

TEST_SUITE("table_io") {

TEST_CASE("skipahead round trip") {
  TempDir d;
  const auto spec = spec334();
  const auto t = build_skipahead_table(spec);
  const auto path = skipahead_file(d.path, spec);
  save_table(*t, path);
  CHECK_FALSE(fs::exists(path.string() + ".partial"));
  const auto u = load_skipahead(path, spec);
  CHECK(u->exps == t->exps);
  CHECK(u->perm == t->perm);
  CHECK(u->modulus == t->modulus);
  CHECK(u->factors == t->factors);
  CHECK(u->entry_width == t->entry_width);
  CHECK(u->offsets == t->offsets);
  CHECK(u->anchors == t->anchors);
  CHECK(u->gaps16 == t->gaps16);
  CHECK(admissible_a(*u, 5, 1, 5000) == admissible_a(*t, 5, 1, 5000));
}

TEST_CASE("elimination round trip") {
  TempDir d;
  const auto spec = spec334();
  const auto t = build_elimination_table(spec);
  const auto path = elimination_file(d.path, spec);
  save_table(t, path);
  const auto u = load_elimination(path, spec);
  REQUIRE(u.cotables.size() == t.cotables.size());
  for (std::size_t i = 0; i < t.cotables.size(); ++i) {
    CHECK(u.cotables[i].modulus == t.cotables[i].modulus);
    CHECK(u.cotables[i].factors == t.cotables[i].factors);
    CHECK(u.cotables[i].flags == t.cotables[i].flags);
  }
  for (Word c = 1; c < 300; ++c) CHECK(u.eliminated(9, c) == t.eliminated(9, c));
}

TEST_CASE("file names are deterministic") {
  const auto spec = spec334();
  CHECK(skipahead_file("d", spec) == skipahead_file("d", spec));
  auto other = spec;
  other.perm = Permutation::ax_minus_cz;
  CHECK(skipahead_file("d", spec) != skipahead_file("d", other));
  auto single = spec;
  single.single_coeff = 2;
  CHECK(skipahead_file("d", spec) != skipahead_file("d", single));
  CHECK(skipahead_file("d", spec).extension() == ".pggt");
  CHECK(elimination_file("d", spec).extension() == ".pgge");
}

TEST_CASE("damaged files are rejected") {
  TempDir d;
  const auto spec = spec334();
  const auto path = skipahead_file(d.path, spec);
  save_table(*build_skipahead_table(spec), path);
  const std::string good = slurp(path);

  SUBCASE("truncated") {
    spit(path, good.substr(0, good.size() / 2));
    CHECK_THROWS_AS(load_skipahead(path), CorruptFile);
  }
  SUBCASE("flipped payload byte") {
    std::string bad = good;
    bad[bad.size() / 2] ^= 0x40;
    spit(path, bad);
    CHECK_THROWS_AS(load_skipahead(path), CorruptFile);
  }
  SUBCASE("bad magic") {
    std::string bad = good;
    bad[0] = 'X';
    spit(path, bad);
    CHECK_THROWS_AS(load_skipahead(path), CorruptFile);
  }
  SUBCASE("empty") {
    spit(path, "");
    CHECK_THROWS_AS(load_skipahead(path), CorruptFile);
  }
  SUBCASE("missing") {
    CHECK_THROWS_AS(load_skipahead(d.path / "nope.pggt"), TableError);
  }
  SUBCASE("elimination file read as skipahead") {
    const auto epath = elimination_file(d.path, spec);
    save_table(build_elimination_table(spec), epath);
    CHECK_THROWS_AS(load_skipahead(epath), CorruptFile);
  }
}

TEST_CASE("version mismatch") {
  TempDir d;
  const auto spec = spec334();
  const auto path = skipahead_file(d.path, spec);
  save_table(*build_skipahead_table(spec), path);
  std::string bad = slurp(path);
  bad[4] = static_cast<char>(kTableFormatVersion + 1);  // u32 after the magic
  spit(path, bad);
  CHECK_THROWS_AS(load_skipahead(path), VersionMismatch);
}

TEST_CASE("spec mismatch") {
  TempDir d;
  auto built = spec334();
  built.exps = {3, 3, 5};
  const auto path = d.path / "t.pggt";
  save_table(*build_skipahead_table(built), path);
  CHECK_NOTHROW(load_skipahead(path, built));
  CHECK_THROWS_AS(load_skipahead(path, spec334()), SpecMismatch);
  auto factors = built;
  factors.skip_factors = {13, 31};
  CHECK_THROWS_AS(load_skipahead(path, factors), SpecMismatch);

  const auto epath = d.path / "t.pgge";
  save_table(build_elimination_table(built), epath);
  CHECK_THROWS_AS(load_elimination(epath, spec334()), SpecMismatch);
}

}
