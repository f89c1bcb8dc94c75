#pragma once

// Binary cache files for skipahead and elimination tables.
//
// Little-endian. Skipahead ("PGGT"): version u32, exponents u16 x3,
// permutation u8, single coefficient u64, modulus u64, entry width u8, class
// count u64, offsets (count+1) x u64, anchors count x u32, deltas, then a
// 64-bit checksum over everything before it. Elimination ("PGGE"): version,
// exponents, permutation, co-table count u32, then per co-table its factor
// count u32, factors u64..., modulus u64 and flag bytes; same checksum.

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>

#include "pegg/residue_tables.hpp"

namespace pegg {

inline constexpr std::uint32_t kTableFormatVersion = 1;

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CorruptFile : public TableError {
 public:
  using TableError::TableError;
};
class VersionMismatch : public TableError {
 public:
  using TableError::TableError;
};
class SpecMismatch : public TableError {
 public:
  using TableError::TableError;
};

void save_table(const SkipaheadTable& table, const std::filesystem::path& path);
void save_table(const EliminationTable& table, const std::filesystem::path& path);

std::shared_ptr<SkipaheadTable> load_skipahead(const std::filesystem::path& path);
EliminationTable load_elimination(const std::filesystem::path& path);

/// Loads and checks the stored exponents, permutation, coefficient and factors
/// against `spec`; throws SpecMismatch on any difference.
std::shared_ptr<SkipaheadTable> load_skipahead(const std::filesystem::path& path, const TableSpec& spec);
EliminationTable load_elimination(const std::filesystem::path& path, const TableSpec& spec);

/// Deterministic file names for a spec inside a cache directory.
std::filesystem::path skipahead_file(const std::filesystem::path& dir, const TableSpec& spec);
std::filesystem::path elimination_file(const std::filesystem::path& dir, const TableSpec& spec);

}  // namespace pegg
