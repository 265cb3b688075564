#include "qk/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qk::cache {

namespace fs = std::filesystem;

namespace {

std::string header(const FlagVariety& space, Orientation o, const Torus& torus) {
  std::ostringstream h;
  h << kMagic << '\n'
    << "shape " << space.shape().to_string() << '\n'
    << "orientation " << to_string(o) << '\n'
    << "torus " << torus.key() << ' ' << torus.n() << '\n'
    << "points " << space.size() << '\n';
  return h.str();
}

char hex_digit(unsigned v) { return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10)); }

std::string hex64(std::uint64_t v) {
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = hex_digit(static_cast<unsigned>(v & 0xf));
  return s;
}

}  // namespace

fs::path default_directory() {
  if (const char* dir = std::getenv("QK_CACHE_DIR"); dir && *dir) return fs::path(dir);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "qk-comin";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "qk-comin";
  return fs::temp_directory_path() / "qk-comin";
}

fs::path table_path(const fs::path& dir, const FlagShape& shape, Orientation o, const Torus& torus) {
  return dir / ("restrictions-v1-" + torus.key() + "-" + shape.key() + "-" + std::string(to_string(o)) + ".txt");
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Body: one line per class, "[w] -> {[v]: value; [v]: value}" listing the
// nonzero restrictions in point order.
std::string serialize_table(const RestrictionTable& table, const Torus& torus) {
  const auto& space = *table.space;
  std::ostringstream body;
  for (std::size_t w = 0; w < space.size(); ++w) {
    body << space.point(w).to_string() << " -> {";
    bool first = true;
    for (std::size_t v = 0; v < space.size(); ++v) {
      const auto& val = table.values[w][v];
      if (val.is_zero()) continue;
      body << (first ? "" : "; ") << space.point(v).to_string() << ": " << val.to_string();
      first = false;
    }
    body << "}\n";
  }
  const std::string b = body.str();
  return header(space, table.orientation, torus) + "checksum " + hex64(fnv1a(b)) + "\n" + b;
}

std::optional<std::vector<std::vector<Laurent>>> parse_table(std::string_view text, const FlagVariety& space,
                                                               Orientation o, const Torus& torus) {
  const std::string expected = header(space, o, torus);
  if (text.substr(0, expected.size()) != expected) return std::nullopt;
  text.remove_prefix(expected.size());
  constexpr std::string_view kChecksum = "checksum ";
  if (text.substr(0, kChecksum.size()) != kChecksum || text.size() < kChecksum.size() + 17) return std::nullopt;
  const std::string_view sum = text.substr(kChecksum.size(), 16);
  text.remove_prefix(kChecksum.size() + 17);
  if (sum != hex64(fnv1a(text))) return std::nullopt;

  const std::size_t N = space.size();
  std::vector<std::vector<Laurent>> values(N, std::vector<Laurent>(N, torus.zero()));
  try {
    std::size_t line_no = 0;
    while (!text.empty()) {
      const auto nl = text.find('\n');
      if (nl == std::string_view::npos) return std::nullopt;
      std::string_view line = text.substr(0, nl);
      text.remove_prefix(nl + 1);
      if (line_no >= N) return std::nullopt;
      const auto arrow = line.find(" -> {");
      if (arrow == std::string_view::npos || line.back() != '}') return std::nullopt;
      if (Permutation::parse(line.substr(0, arrow)) != space.point(line_no)) return std::nullopt;
      std::string_view entries = line.substr(arrow + 5, line.size() - arrow - 6);
      while (!entries.empty()) {
        const auto semi = entries.find("; ");
        std::string_view entry = entries.substr(0, semi);
        const auto colon = entry.find(": ");
        if (colon == std::string_view::npos) return std::nullopt;
        auto v = space.find_minrep(Permutation::parse(entry.substr(0, colon)));
        if (!v) return std::nullopt;
        values[line_no][*v] = Laurent::parse(entry.substr(colon + 2), torus.num_vars());
        if (semi == std::string_view::npos) break;
        entries.remove_prefix(semi + 2);
      }
      ++line_no;
    }
    if (line_no != N) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return values;
}

std::optional<std::vector<std::vector<Laurent>>> load(const fs::path& dir, const FlagVariety& space, Orientation o,
                                                        const Torus& torus) {
  std::ifstream in(table_path(dir, space.shape(), o, torus), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str(), space, o, torus);
}

void store(const fs::path& dir, const RestrictionTable& table, const Torus& torus) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return;
  const auto path = table_path(dir, table.space->shape(), table.orientation, torus);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(&table));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << serialize_table(table, torus);
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

Stats stats(const fs::path& dir) {
  Stats s;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return s;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file() || entry.path().filename().string().rfind("restrictions-v1-", 0) != 0) continue;
    ++s.files;
    s.bytes += entry.file_size(ec);
  }
  return s;
}

std::size_t clear(const fs::path& dir) {
  std::size_t removed = 0;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return 0;
  std::vector<fs::path> victims;
  for (const auto& entry : fs::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().filename().string().rfind("restrictions-v1-", 0) == 0)
      victims.push_back(entry.path());
  for (const auto& p : victims) removed += fs::remove(p, ec) ? 1 : 0;
  return removed;
}

}  // namespace qk::cache
