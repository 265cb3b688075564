#pragma once

// On-disk cache of restriction tables. One text file per (shape, orientation,
// torus) with a versioned header and a checksum over the body; a file that
// fails any check is ignored and rewritten after recomputation.

#include "qk/ktheory.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace qk::cache {

inline constexpr std::string_view kMagic = "qk-comin restriction cache v1";

/// $QK_CACHE_DIR, else $XDG_CACHE_HOME/qk-comin, else $HOME/.cache/qk-comin.
std::filesystem::path default_directory();

std::filesystem::path table_path(const std::filesystem::path& dir, const FlagShape& shape, Orientation o,
                                 const Torus& torus);

std::uint64_t fnv1a(std::string_view bytes);

std::string serialize_table(const RestrictionTable& table, const Torus& torus);
/// Returns nullopt on any header, checksum or parse mismatch.
std::optional<std::vector<std::vector<Laurent>>> parse_table(std::string_view text, const FlagVariety& space,
                                                               Orientation o, const Torus& torus);

std::optional<std::vector<std::vector<Laurent>>> load(const std::filesystem::path& dir, const FlagVariety& space,
                                                        Orientation o, const Torus& torus);
/// Best effort; I/O failures are swallowed since the cache is re-derivable.
void store(const std::filesystem::path& dir, const RestrictionTable& table, const Torus& torus);

struct Stats {
  std::size_t files = 0;
  std::uintmax_t bytes = 0;
};
Stats stats(const std::filesystem::path& dir);
/// Removes cache files; returns how many were deleted.
std::size_t clear(const std::filesystem::path& dir);

}  // namespace qk::cache
