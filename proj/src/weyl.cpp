#include "qk/weyl.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace qk {

namespace {

int parse_int(std::string_view s) {
  int value = 0;
  auto first = s.data();
  auto last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<int> split_ints(std::string_view s) {
  std::vector<int> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    out.push_back(parse_int(trim(s.substr(start, comma - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Positions [begin, end) (0-based) of each parabolic block.
std::vector<std::pair<int, int>> blocks(const ParabolicSet& p) {
  std::vector<std::pair<int, int>> out;
  int begin = 0;
  for (int i = 1; i <= p.n(); ++i) {
    if (i == p.n() || !p.contains(i)) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

void check_same_n(const Permutation& w, const ParabolicSet& p) {
  if (w.size() != p.n()) throw ShapeMismatch("permutation and parabolic set have different n");
}

}  // namespace

// --- Permutation ---------------------------------------------------------

Permutation::Permutation(std::vector<int> one_line) : w_(std::move(one_line)) {
  const auto n = w_.size();
  if (n > 16) throw std::invalid_argument("permutations are limited to n <= 16");
  std::vector<bool> seen(n + 1, false);
  for (int v : w_) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation of 1..n");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  return Permutation(std::move(w));
}

Permutation Permutation::longest(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = n - i;
  return Permutation(std::move(w));
}

Permutation Permutation::parse(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw std::invalid_argument("permutation must be written as [a,b,...]");
  return Permutation(split_ints(text.substr(1, text.size() - 2)));
}

int Permutation::length() const {
  int inv = 0;
  for (std::size_t i = 0; i < w_.size(); ++i)
    for (std::size_t j = i + 1; j < w_.size(); ++j) inv += w_[i] > w_[j];
  return inv;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i) inv[static_cast<std::size_t>(w_[i] - 1)] = static_cast<int>(i) + 1;
  Permutation r;
  r.w_ = std::move(inv);
  return r;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("composition of permutations of different size");
  std::vector<int> c(b.w_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.w_[static_cast<std::size_t>(b.w_[i] - 1)];
  Permutation r;
  r.w_ = std::move(c);
  return r;
}

Permutation Permutation::times_simple(int i) const { return times_transposition(i, i + 1); }

Permutation Permutation::times_transposition(int i, int j) const {
  Permutation r = *this;
  std::swap(r.w_[static_cast<std::size_t>(i - 1)], r.w_[static_cast<std::size_t>(j - 1)]);
  return r;
}

Permutation Permutation::simple_times(int i) const {
  Permutation r = *this;
  for (int& v : r.w_) {
    if (v == i)
      v = i + 1;
    else if (v == i + 1)
      v = i;
  }
  return r;
}

std::uint64_t Permutation::code() const {
  std::uint64_t c = static_cast<std::uint64_t>(w_.size());
  for (int v : w_) c = (c << 4) | static_cast<std::uint64_t>(v - 1);
  // n <= 15 fits; n = 16 overflows the size nibble but codes of equal n stay injective
  return c;
}

std::string Permutation::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w_[i]);
  }
  return s + "]";
}

bool bruhat_leq(const Permutation& u, const Permutation& v) {
  if (u.size() != v.size()) throw std::invalid_argument("bruhat_leq: different n");
  const int n = u.size();
  std::vector<int> pu, pv;
  pu.reserve(static_cast<std::size_t>(n));
  pv.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) {
    pu.insert(std::upper_bound(pu.begin(), pu.end(), u(k)), u(k));
    pv.insert(std::upper_bound(pv.begin(), pv.end(), v(k)), v(k));
    for (std::size_t i = 0; i < pu.size(); ++i)
      if (pu[i] > pv[i]) return false;
  }
  return true;
}

// --- ParabolicSet / FlagShape ---------------------------------------------

ParabolicSet::ParabolicSet(int n, const std::vector<int>& indices) : n_(n), in_(static_cast<std::size_t>(std::max(n, 1)), false) {
  if (n < 1) throw std::invalid_argument("parabolic set needs n >= 1");
  for (int i : indices) {
    if (i < 1 || i >= n) throw std::invalid_argument("simple reflection index out of range");
    in_[static_cast<std::size_t>(i)] = true;
  }
}

ParabolicSet ParabolicSet::all(int n) {
  std::vector<int> idx;
  for (int i = 1; i < n; ++i) idx.push_back(i);
  return ParabolicSet(n, idx);
}

ParabolicSet ParabolicSet::grassmannian(int m, int n) { return FlagShape::grassmannian(m, n).parabolic(); }

std::vector<int> ParabolicSet::indices() const {
  std::vector<int> out;
  for (int i = 1; i < n_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

bool ParabolicSet::is_subset_of(const ParabolicSet& other) const {
  if (n_ != other.n_) return false;
  for (int i = 1; i < n_; ++i)
    if (contains(i) && !other.contains(i)) return false;
  return true;
}

FlagShape::FlagShape(int n, std::vector<int> dims) : n_(n) {
  if (n < 1) throw std::invalid_argument("flag shape needs n >= 1");
  int prev = -1;
  for (int a : dims) {
    if (a < 0 || a > n) throw std::invalid_argument("flag step out of range");
    if (a <= prev) throw std::invalid_argument("flag steps must be strictly increasing");
    prev = a;
    if (a != 0 && a != n) dims_.push_back(a);
  }
}

FlagShape FlagShape::full(int n) {
  std::vector<int> d;
  for (int i = 1; i < n; ++i) d.push_back(i);
  return FlagShape(n, d);
}

FlagShape FlagShape::from_parabolic(const ParabolicSet& p) {
  std::vector<int> d;
  for (int i = 1; i < p.n(); ++i)
    if (!p.contains(i)) d.push_back(i);
  return FlagShape(p.n(), d);
}

ParabolicSet FlagShape::parabolic() const {
  std::vector<int> idx;
  for (int i = 1; i < n_; ++i)
    if (!std::binary_search(dims_.begin(), dims_.end(), i)) idx.push_back(i);
  return ParabolicSet(n_, idx);
}

std::vector<int> FlagShape::block_sizes() const {
  std::vector<int> out;
  int prev = 0;
  for (int a : dims_) {
    out.push_back(a - prev);
    prev = a;
  }
  out.push_back(n_ - prev);
  return out;
}

std::vector<int> FlagShape::block_of_position() const {
  std::vector<int> out(static_cast<std::size_t>(n_ + 1), 0);
  int b = 0;
  for (int i = 1; i <= n_; ++i) {
    out[static_cast<std::size_t>(i)] = b;
    if (std::binary_search(dims_.begin(), dims_.end(), i)) ++b;
  }
  return out;
}

bool FlagShape::refines(const FlagShape& coarser) const {
  if (n_ != coarser.n_) return false;
  return std::includes(dims_.begin(), dims_.end(), coarser.dims_.begin(), coarser.dims_.end());
}

std::string FlagShape::to_string() const {
  std::string s = "Fl(";
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(dims_[i]);
  }
  return s + ";" + std::to_string(n_) + ")";
}

std::string FlagShape::key() const {
  std::string s = "n" + std::to_string(n_) + "-";
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) s += '_';
    s += std::to_string(dims_[i]);
  }
  return s;
}

// --- cosets -----------------------------------------------------------------

Permutation min_coset_rep(const Permutation& w, const ParabolicSet& p) {
  check_same_n(w, p);
  auto v = w.one_line();
  for (auto [b, e] : blocks(p)) std::sort(v.begin() + b, v.begin() + e);
  return Permutation(std::move(v));
}

Permutation max_coset_rep(const Permutation& w, const ParabolicSet& p) {
  check_same_n(w, p);
  auto v = w.one_line();
  for (auto [b, e] : blocks(p)) std::sort(v.begin() + b, v.begin() + e, std::greater<>());
  return Permutation(std::move(v));
}

int parabolic_component_length(const Permutation& w, const ParabolicSet& p) {
  check_same_n(w, p);
  int inv = 0;
  for (auto [b, e] : blocks(p))
    for (int i = b; i < e; ++i)
      for (int j = i + 1; j < e; ++j) inv += w(i + 1) > w(j + 1);
  return inv;
}

// --- partitions -------------------------------------------------------------

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("partition parts must be non-negative");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

Partition Partition::parse(std::string_view text) { return Partition(split_ints(text)); }

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

bool Partition::fits_box(int rows, int cols) const {
  return static_cast<int>(parts_.size()) <= rows && (parts_.empty() || parts_[0] <= cols);
}

bool Partition::contains(const Partition& mu) const {
  for (std::size_t i = 0; i < mu.parts_.size(); ++i)
    if (mu.parts_[i] > part(i)) return false;
  return true;
}

std::string Partition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

Permutation partition_to_minrep(const Partition& lambda, int m, int n) {
  if (m < 0 || m > n) throw std::invalid_argument("bad Grassmannian Gr(m,n)");
  if (!lambda.fits_box(m, n - m))
    throw BoxError("partition (" + lambda.to_string() + ") does not fit in the " + std::to_string(m) + " x " +
                   std::to_string(n - m) + " box");
  std::vector<int> w;
  std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
  for (int i = 1; i <= m; ++i) {
    int v = i + lambda.part(static_cast<std::size_t>(m - i));
    w.push_back(v);
    used[static_cast<std::size_t>(v)] = true;
  }
  for (int v = 1; v <= n; ++v)
    if (!used[static_cast<std::size_t>(v)]) w.push_back(v);
  return Permutation(std::move(w));
}

Partition minrep_to_partition(const Permutation& w, int m) {
  std::vector<int> parts(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    if (i > 1 && w(i) < w(i - 1)) throw std::invalid_argument("not a Grassmannian permutation");
    parts[static_cast<std::size_t>(m - i)] = w(i) - i;
  }
  for (int i = m + 2; i <= w.size(); ++i)
    if (w(i) < w(i - 1)) throw std::invalid_argument("not a Grassmannian permutation");
  return Partition(std::move(parts));
}

std::string_view to_string(Orientation o) { return o == Orientation::Opposite ? "opposite" : "plain"; }

// --- Schubert index transport ----------------------------------------------

Permutation twist_index(const Permutation& w, const ParabolicSet& p) {
  return min_coset_rep(Permutation::longest(w.size()) * w, p);
}

namespace {
void check_projection(const Permutation& w, const ParabolicSet& r, const ParabolicSet& q) {
  if (r.n() != q.n() || w.size() != r.n()) throw ShapeMismatch("projection: different ambient n");
  if (!r.is_subset_of(q)) throw ShapeMismatch("projection G/R -> G/Q needs R contained in Q");
}
}  // namespace

Permutation schubert_image_index(const Permutation& w, const ParabolicSet& r, const ParabolicSet& q, Orientation o) {
  check_projection(w, r, q);
  if (o == Orientation::Plain) return min_coset_rep(w, q);
  return twist_index(min_coset_rep(twist_index(w, r), q), q);
}

Permutation schubert_preimage_index(const Permutation& w, const ParabolicSet& r, const ParabolicSet& q,
                                    Orientation o) {
  check_projection(w, r, q);
  if (o == Orientation::Plain) return min_coset_rep(max_coset_rep(w, q), r);
  return twist_index(min_coset_rep(max_coset_rep(twist_index(w, q), q), r), r);
}

// --- FlagVariety ------------------------------------------------------------

FlagVariety::FlagVariety(FlagShape shape) : shape_(std::move(shape)), parabolic_(shape_.parabolic()) {
  const int n = shape_.n();
  const auto sizes = shape_.block_sizes();
  // Assign each value 1..n a block label; every multiset arrangement is one coset.
  std::vector<int> label;
  for (std::size_t b = 0; b < sizes.size(); ++b) label.insert(label.end(), static_cast<std::size_t>(sizes[b]), static_cast<int>(b));
  std::vector<int> start(sizes.size(), 0);
  for (std::size_t b = 1; b < sizes.size(); ++b) start[b] = start[b - 1] + sizes[b - 1];
  do {
    std::vector<int> w(static_cast<std::size_t>(n));
    auto fill = start;
    for (int v = 1; v <= n; ++v) {
      auto b = static_cast<std::size_t>(label[static_cast<std::size_t>(v - 1)]);
      w[static_cast<std::size_t>(fill[b]++)] = v;
    }
    points_.emplace_back(std::move(w));
  } while (std::next_permutation(label.begin(), label.end()));

  std::sort(points_.begin(), points_.end(), [](const Permutation& a, const Permutation& b) {
    const int la = a.length(), lb = b.length();
    return la != lb ? la < lb : a < b;
  });
  lengths_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    lengths_.push_back(points_[i].length());
    index_.emplace(points_[i].code(), i);
  }
  const auto block = shape_.block_of_position();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (block[static_cast<std::size_t>(i)] != block[static_cast<std::size_t>(j)]) directions_.emplace_back(i, j);
}

std::optional<std::size_t> FlagVariety::find_minrep(const Permutation& w) const {
  auto it = index_.find(w.code());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FlagVariety::index_of(const Permutation& w) const {
  if (w.size() != n()) throw ShapeMismatch("point of a different flag variety");
  auto idx = find_minrep(min_coset_rep(w, parabolic_));
  if (!idx) throw std::logic_error("coset lookup failed");
  return *idx;
}

}  // namespace qk
