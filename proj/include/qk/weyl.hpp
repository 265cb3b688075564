#pragma once

// Type-A Weyl group combinatorics: permutations, Bruhat order, parabolic
// cosets of S_n, and the partition dictionary for Grassmannians.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qk {

class Permutation {
public:
  Permutation() = default;
  /// One-line notation with values 1..n; throws std::invalid_argument.
  explicit Permutation(std::vector<int> one_line);

  static Permutation identity(int n);
  static Permutation longest(int n);
  /// Parses "[2,4,1,3]".
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(w_.size()); }
  /// Value at 1-based position i.
  int operator()(int i) const { return w_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& one_line() const { return w_; }

  /// Number of inversions.
  int length() const;
  Permutation inverse() const;
  /// Composition (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  /// w * s_i: swaps positions i and i+1.
  Permutation times_simple(int i) const;
  /// s_i * w: swaps values i and i+1.
  Permutation simple_times(int i) const;
  /// w * t_{ij}: swaps positions i and j.
  Permutation times_transposition(int i, int j) const;
  bool has_right_descent(int i) const { return (*this)(i) > (*this)(i + 1); }

  /// Injective 64-bit code for n <= 16.
  std::uint64_t code() const;
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> w_;
};

/// Bruhat order via the tableau criterion: for every k, the sorted first k
/// entries of u are entrywise <= those of v.
bool bruhat_leq(const Permutation& u, const Permutation& v);

/// A set of simple-reflection indices in {1..n-1}, generating W_P.
class ParabolicSet {
public:
  ParabolicSet() = default;
  ParabolicSet(int n, const std::vector<int>& indices);
  static ParabolicSet empty(int n) { return ParabolicSet(n, {}); }
  static ParabolicSet all(int n);
  /// W_P for Gr(m,n): every simple reflection except s_m.
  static ParabolicSet grassmannian(int m, int n);

  int n() const { return n_; }
  bool contains(int i) const { return i >= 1 && i < n_ && in_[static_cast<std::size_t>(i)]; }
  std::vector<int> indices() const;
  bool is_subset_of(const ParabolicSet& other) const;

  friend bool operator==(const ParabolicSet&, const ParabolicSet&) = default;

private:
  int n_ = 0;
  std::vector<bool> in_;  // indexed 0..n-1, entry 0 unused
};

/// Partial flag shape Fl(a_1 < ... < a_k; n). Steps equal to 0 or n are
/// degenerate and dropped, so the empty shape is the point G/G.
class FlagShape {
public:
  FlagShape() = default;
  FlagShape(int n, std::vector<int> dims);
  static FlagShape grassmannian(int m, int n) { return FlagShape(n, {m}); }
  static FlagShape full(int n);
  /// The shape whose W_P is the given parabolic set.
  static FlagShape from_parabolic(const ParabolicSet& p);

  int n() const { return n_; }
  const std::vector<int>& dims() const { return dims_; }
  ParabolicSet parabolic() const;
  /// Block sizes of positions 1..n between consecutive steps.
  std::vector<int> block_sizes() const;
  /// Block number (0-based) of each 1-based position; entry 0 unused.
  std::vector<int> block_of_position() const;
  /// True when this shape remembers every step of `coarser` (G/this -> G/coarser).
  bool refines(const FlagShape& coarser) const;

  std::string to_string() const;  // "Fl(1,3;4)"
  std::string key() const;         // "n4-1_3", file-name safe

  friend bool operator==(const FlagShape&, const FlagShape&) = default;

private:
  int n_ = 0;
  std::vector<int> dims_;
};

/// Unique shortest element of w W_P (sort values within each block).
Permutation min_coset_rep(const Permutation& w, const ParabolicSet& p);
/// Unique longest element of w W_P (sort values decreasingly within blocks).
Permutation max_coset_rep(const Permutation& w, const ParabolicSet& p);
/// Length of the W_P factor of w = min_coset_rep(w,P) * x.
int parabolic_component_length(const Permutation& w, const ParabolicSet& p);

/// Weakly decreasing positive parts; the empty partition is the empty vector.
class Partition {
public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  /// Parses "2,1" (comma separated) or "" for the empty partition.
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  int part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  std::size_t num_parts() const { return parts_.size(); }
  int size() const;
  bool fits_box(int rows, int cols) const;
  bool contains(const Partition& mu) const;  // mu is a subset of this
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

private:
  std::vector<int> parts_;
};

class BoxError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Grassmannian permutation of lambda in the m x (n-m) box:
/// w(i) = i + lambda_{m+1-i} for i <= m, remaining values increasing.
Permutation partition_to_minrep(const Partition& lambda, int m, int n);
Partition minrep_to_partition(const Permutation& w, int m);

enum class Orientation { Opposite, Plain };
std::string_view to_string(Orientation o);

class ShapeMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Index of the image Schubert variety under G/R -> G/Q (R a subset of Q).
/// Plain (B-stable) indices map to min_coset_rep(w, Q); opposite indices go
/// through the twist w -> w0 w.
Permutation schubert_image_index(const Permutation& w, const ParabolicSet& r, const ParabolicSet& q,
                                 Orientation o = Orientation::Plain);
/// Index of the full preimage Schubert variety under G/R -> G/Q.
Permutation schubert_preimage_index(const Permutation& w, const ParabolicSet& r, const ParabolicSet& q,
                                    Orientation o = Orientation::Plain);
/// Index of w0 * X on G/P: the minimal representative of w0 * w.
Permutation twist_index(const Permutation& w, const ParabolicSet& p);

/// Enumerated torus-fixed points of a flag variety G/P: minimal coset
/// representatives sorted by (length, one-line lex), a linear extension of
/// the Bruhat order.
class FlagVariety {
public:
  explicit FlagVariety(FlagShape shape);

  const FlagShape& shape() const { return shape_; }
  const ParabolicSet& parabolic() const { return parabolic_; }
  int n() const { return shape_.n(); }
  std::size_t size() const { return points_.size(); }
  int dimension() const { return lengths_.back(); }

  const Permutation& point(std::size_t i) const { return points_[i]; }
  const std::vector<Permutation>& points() const { return points_; }
  int length(std::size_t i) const { return lengths_[i]; }
  /// Index of the coset of any w (not necessarily minimal).
  std::size_t index_of(const Permutation& w) const;
  std::optional<std::size_t> find_minrep(const Permutation& w) const;
  std::size_t identity_index() const { return 0; }
  std::size_t top_index() const { return points_.size() - 1; }
  bool leq(std::size_t a, std::size_t b) const { return bruhat_leq(points_[a], points_[b]); }

  /// T-stable curves through point v: pairs (i,j), i<j in different blocks.
  const std::vector<std::pair<int, int>>& curve_directions() const { return directions_; }

private:
  FlagShape shape_;
  ParabolicSet parabolic_;
  std::vector<Permutation> points_;
  std::vector<int> lengths_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::pair<int, int>> directions_;
};

}  // namespace qk
