#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "moment_forge/arith/divisor_table.hpp"
#include "moment_forge/error.hpp"

namespace moment_forge::arith {

// On-disk layout, native endianness:
//   8 bytes  magic "MFTAU\0\0\1"
//   u64      k, then k pairs of f64 (re, im)
//   u64      X, then X pairs of f64 for tau(1..X)
class TableCache {
 public:
  static constexpr std::array<char, 8> kMagic{'M', 'F', 'T', 'A', 'U', 0, 0, 1};

  explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Directory named by MOMENT_FORGE_CACHE, if set and non-empty.
  static std::optional<TableCache> from_env() {
    const char* dir = std::getenv("MOMENT_FORGE_CACHE");
    if (!dir || !*dir) return std::nullopt;
    return TableCache(dir);
  }

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path path_for(const ShiftMultiset& shifts, std::uint64_t bound) const {
    std::ostringstream name;
    name << "tau_" << std::hex << shifts.hash() << std::dec << "_" << bound << ".bin";
    return dir_ / name.str();
  }

  void store(const DivisorTable& table) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw CacheError("cannot create cache directory " + dir_.string() + ": " + ec.message());
    auto path = path_for(table.shifts(), table.bound());
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw CacheError("cannot write " + tmp.string());
      out.write(kMagic.data(), kMagic.size());
      write_u64(out, table.shifts().size());
      for (auto a : table.shifts()) write_complex(out, a);
      write_u64(out, table.bound());
      auto values = table.values();
      out.write(reinterpret_cast<const char*>(values.data() + 1),
                static_cast<std::streamsize>(table.bound() * sizeof(Complex)));
      if (!out) throw CacheError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw CacheError("cannot move cache file into place: " + ec.message());
  }

  /// Returns the cached table, or nullopt when absent or not matching (shifts, X) bit for bit.
  std::optional<DivisorTable> load(const ShiftMultiset& shifts, std::uint64_t bound) const {
    std::ifstream in(path_for(shifts, bound), std::ios::binary);
    if (!in) return std::nullopt;
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) return std::nullopt;
    std::uint64_t k = read_u64(in);
    if (!in || k != shifts.size()) return std::nullopt;
    std::vector<Complex> stored(k);
    for (auto& a : stored) a = read_complex(in);
    if (!in || ShiftMultiset(stored) != shifts) return std::nullopt;
    if (read_u64(in) != bound || !in) return std::nullopt;
    std::vector<Complex> values(bound + 1);
    in.read(reinterpret_cast<char*>(values.data() + 1), static_cast<std::streamsize>(bound * sizeof(Complex)));
    if (!in) return std::nullopt;
    return DivisorTable::from_values(ShiftMultiset(stored), std::move(values));
  }

 private:
  static void write_u64(std::ostream& out, std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }
  static void write_complex(std::ostream& out, Complex z) {
    double parts[2] = {z.real(), z.imag()};
    out.write(reinterpret_cast<const char*>(parts), 16);
  }
  static std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  }
  static Complex read_complex(std::istream& in) {
    double parts[2] = {0, 0};
    in.read(reinterpret_cast<char*>(parts), 16);
    return {parts[0], parts[1]};
  }

  std::filesystem::path dir_;
};

/// Builds tau_A up to X, going through the cache when one is given.
inline DivisorTable tau_table(const ShiftMultiset& shifts, std::uint64_t bound,
                              const std::optional<TableCache>& cache = std::nullopt, bool rebuild = false) {
  if (cache && !rebuild)
    if (auto hit = cache->load(shifts, bound)) return std::move(*hit);
  auto table = DivisorTable::build(shifts, bound);
  if (cache) cache->store(table);
  return table;
}

}  // namespace moment_forge::arith
