#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "schur2/block.hpp"

namespace schur2 {

/// Persistent classical-row cache: one self-describing JSON file per
/// (p, kind) under the cache directory. Files that fail to parse, carry
/// the wrong version, or contain rows failing the shape checks are
/// ignored; the rows are simply recomputed.

inline constexpr int kRowCacheVersion = 1;

namespace detail {

inline std::filesystem::path row_cache_file(const std::filesystem::path& dir,
                                            Weight p, RowKind kind) {
  return dir / ("classical-p" + std::to_string(p) + "-" +
                std::string(to_string(kind)) + ".json");
}

inline std::size_t load_rows(const std::filesystem::path& file, ClassicalRows& rows) {
  std::ifstream in(file);
  if (!in) return 0;
  std::size_t loaded = 0;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("format") != "schur2-rowcache") return 0;
    if (j.at("version").get<int>() != kRowCacheVersion) return 0;
    if (j.at("p").get<Weight>() != rows.prime()) return 0;
    if (j.at("kind").get<std::string>() != to_string(rows.kind())) return 0;
    for (const auto& entry : j.at("rows")) {
      Weight m = entry.at(0).get<Weight>();
      auto indices = entry.at(1).get<std::vector<Weight>>();
      if (rows.seed(m, SparseRow(std::move(indices)))) ++loaded;
    }
  } catch (const std::exception&) {
    return loaded;  // partial or no load; everything else is recomputed
  }
  return loaded;
}

inline void save_rows(const std::filesystem::path& file, const ClassicalRows& rows) {
  nlohmann::json entries = nlohmann::json::array();
  std::vector<std::pair<Weight, std::vector<Weight>>> sorted;
  rows.for_each_cached([&](Weight m, const SparseRow& r) {
    sorted.emplace_back(m, r.indices());
  });
  std::sort(sorted.begin(), sorted.end());
  for (auto& [m, r] : sorted) entries.push_back(nlohmann::json::array({m, r}));
  nlohmann::json j{{"format", "schur2-rowcache"},
                   {"version", kRowCacheVersion},
                   {"p", rows.prime()},
                   {"kind", to_string(rows.kind())},
                   {"rows", std::move(entries)}};
  std::ofstream out(file);
  out << j.dump() << "\n";
}

}  // namespace detail

/// Seed a table from the cache directory; returns rows accepted.
inline std::size_t load_row_cache(const std::filesystem::path& dir,
                                  BlockTable& table) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return 0;
  std::size_t n = 0;
  n += detail::load_rows(detail::row_cache_file(dir, table.prime(),
                                                RowKind::Decomposition),
                         table.classical_decomp());
  n += detail::load_rows(detail::row_cache_file(dir, table.prime(), RowKind::Tilting),
                         table.classical_tilt());
  return n;
}

/// Write the table's cached classical rows back to the directory.
inline void save_row_cache(const std::filesystem::path& dir, BlockTable& table) {
  std::filesystem::create_directories(dir);
  detail::save_rows(detail::row_cache_file(dir, table.prime(),
                                           RowKind::Decomposition),
                    table.classical_decomp());
  detail::save_rows(detail::row_cache_file(dir, table.prime(), RowKind::Tilting),
                    table.classical_tilt());
}

}  // namespace schur2
