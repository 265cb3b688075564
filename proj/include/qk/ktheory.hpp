#pragma once

// Equivariant K-theory of type-A partial flag varieties in the fixed-point
// (GKM) localization model.
//
// Conventions. T is the diagonal torus of GL_n with characters t_i = e^{eps_i};
// B is upper triangular. The fixed point of G/P indexed by a minimal coset
// representative v is the flag spanned by e_{v(1)}, e_{v(2)}, ...; its tangent
// weights are eps_{v(j)} - eps_{v(i)} for i < j in different blocks, and the
// class of a point p restricts to prod (1 - e^{-chi}) over the tangent
// weights chi at p. X_w is the closure of BwP (dimension l(w)), X^w the
// closure of B^-wP (codimension l(w)).

#include "qk/laurent.hpp"
#include "qk/tailed_series.hpp"
#include "qk/weyl.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qk {

using TailedScalarSeries = TailedSeries<Laurent>;

/// Coefficient ring for localized classes. `equivariant(n)` is the full
/// representation ring Z[t_1^{+-1},...,t_n^{+-1}]. `generic_line(n)`
/// restricts to the one-parameter subgroup t_i -> x^i: every root maps to a
/// nonzero power of x, so localization stays injective and all eliminations
/// stay exact, and evaluating at x = 1 gives non-equivariant K-theory.
class Torus {
public:
  static Torus equivariant(int n);
  static Torus generic_line(int n);

  int n() const { return n_; }
  bool is_equivariant() const { return equivariant_; }
  int num_vars() const { return equivariant_ ? n_ : 1; }

  /// Exponent of the character e^{eps_i - eps_j} (1-based i, j).
  Exponent weight(int i, int j) const;
  Laurent character(int i, int j) const { return Laurent::monomial(num_vars(), weight(i, j)); }
  Laurent zero() const { return Laurent(num_vars()); }
  Laurent one() const { return Laurent(num_vars(), 1); }
  Laurent constant(Integer c) const { return Laurent(num_vars(), std::move(c)); }
  /// Action of the longest element w0 (eps_i -> eps_{n+1-i}) on degree-zero
  /// elements. On the line torus this is x -> x^{-1}.
  Laurent twist(const Laurent& f) const;
  /// Image of an element of the full representation ring (n variables).
  Laurent specialize(const Laurent& gamma) const;
  /// "eq" or "line", used in cache keys.
  std::string key() const { return equivariant_ ? "eq" : "line"; }

  friend bool operator==(const Torus&, const Torus&) = default;

private:
  Torus(int n, bool eq) : n_(n), equivariant_(eq) {}
  int n_ = 0;
  bool equivariant_ = true;
};

class NotInSpan : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Restrictions of every Schubert class of one orientation to every fixed
/// point of G/P: values[class][point].
struct RestrictionTable {
  std::shared_ptr<const FlagVariety> space;
  Orientation orientation = Orientation::Opposite;
  std::vector<std::vector<Laurent>> values;
  /// Points where values[class][point] is nonzero, ascending.
  std::vector<std::vector<std::size_t>> support;
  /// values[w][w] = prod (1 - x^e) over these exponents.
  std::vector<std::vector<Exponent>> diagonal_factors;
};

/// A class in K_T(G/P), stored as its value at every fixed point.
class LocalizedClass {
public:
  LocalizedClass(std::shared_ptr<const FlagVariety> space, std::vector<Laurent> values);

  const std::shared_ptr<const FlagVariety>& space() const { return space_; }
  const FlagShape& shape() const { return space_->shape(); }
  const std::vector<Laurent>& values() const { return values_; }
  const Laurent& at(std::size_t point) const { return values_[point]; }
  bool is_zero() const;

  friend bool operator==(const LocalizedClass& a, const LocalizedClass& b) {
    return a.shape() == b.shape() && a.values_ == b.values_;
  }

private:
  std::shared_ptr<const FlagVariety> space_;
  std::vector<Laurent> values_;
};

/// Sum of c_w * O^w (opposite) or c_w * O_w (plain); keys are point indices of
/// `space`. Zero coefficients are never stored.
struct BasisExpansion {
  std::shared_ptr<const FlagVariety> space;
  Orientation orientation = Orientation::Opposite;
  std::map<std::size_t, Laurent> coefficients;

  bool is_zero() const { return coefficients.empty(); }
  /// Adds c to the coefficient of `index`, dropping it when it cancels.
  void add(std::size_t index, const Laurent& c);
  BasisExpansion& operator+=(const BasisExpansion& o);
  BasisExpansion operator-(const BasisExpansion& o) const;
  BasisExpansion scaled(const Laurent& c) const;
  /// Sum of all coefficients; this is the Euler characteristic.
  Laurent coefficient_sum(int num_vars) const;

  friend bool operator==(const BasisExpansion& a, const BasisExpansion& b) {
    return a.orientation == b.orientation && a.coefficients == b.coefficients;
  }
};

/// Engine owning the torus, memoized restriction tables and the optional
/// on-disk cache. Const methods are safe to call concurrently.
class KTheory {
public:
  explicit KTheory(Torus torus, std::optional<std::filesystem::path> cache_dir = std::nullopt);

  const Torus& torus() const { return torus_; }
  const std::optional<std::filesystem::path>& cache_dir() const { return cache_dir_; }

  std::shared_ptr<const FlagVariety> variety(const FlagShape& shape) const;
  const RestrictionTable& restrictions(const FlagShape& shape, Orientation o) const;

  LocalizedClass schubert_class(const FlagShape& shape, const Permutation& w, Orientation o) const;
  LocalizedClass schubert_class(const FlagShape& shape, std::size_t index, Orientation o) const;
  LocalizedClass one(const FlagShape& shape) const;
  LocalizedClass zero(const FlagShape& shape) const;

  LocalizedClass multiply(const LocalizedClass& a, const LocalizedClass& b) const;
  LocalizedClass add(const LocalizedClass& a, const LocalizedClass& b) const;

  /// Triangular elimination along the Bruhat order; throws NotInSpan.
  BasisExpansion expand(const LocalizedClass& a, Orientation o) const;
  LocalizedClass recombine(const BasisExpansion& e) const;

  /// Precomposition with G/finer -> G/coarser on fixed points.
  LocalizedClass pullback(const LocalizedClass& f, const FlagShape& finer) const;
  /// Pushforward along G/finer -> G/coarser by basis transport
  /// [O_{X_w}] -> [O_{X_{image(w)}}].
  LocalizedClass pushforward(const LocalizedClass& f, const FlagShape& coarser) const;
  BasisExpansion pushforward_plain(const BasisExpansion& plain, const FlagShape& coarser) const;

  Laurent euler_char(const LocalizedClass& f, Orientation via = Orientation::Opposite) const;

  /// [O_{X_v}] in the opposite basis, and [O_{X^w}] in the plain basis.
  const BasisExpansion& plain_to_opposite(const FlagShape& shape, std::size_t v) const;
  const BasisExpansion& opposite_to_plain(const FlagShape& shape, std::size_t w) const;
  /// Re-expresses an expansion in the other basis.
  BasisExpansion convert(const BasisExpansion& e, Orientation target) const;

  /// Differences along every T-stable curve are divisible by 1 - e^{-beta}.
  bool satisfies_gkm(const LocalizedClass& f) const;

  /// Restriction of the full-flag Schubert class of orientation o indexed by
  /// w (any permutation) to every permutation, indexed by `full_flag_points`.
  std::vector<Laurent> full_flag_class(const Permutation& w, Orientation o) const;
  const FlagVariety& full_flag_points() const;

  /// Normal weights at w of the Schubert variety of index w (see RestrictionTable).
  std::vector<Exponent> diagonal_factors(const FlagVariety& space, std::size_t w, Orientation o) const;

private:
  struct TableKey {
    std::string shape;
    Orientation orientation;
    bool operator<(const TableKey& o) const {
      return shape != o.shape ? shape < o.shape : orientation < o.orientation;
    }
  };

  std::unique_ptr<RestrictionTable> compute_table(const FlagShape& shape, Orientation o) const;
  void apply_demazure(std::vector<Laurent>& cls, int i) const;
  std::vector<Laurent> point_class(const Permutation& p) const;

  Torus torus_;
  std::optional<std::filesystem::path> cache_dir_;

  mutable std::recursive_mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const FlagVariety>> varieties_;
  mutable std::map<TableKey, std::unique_ptr<RestrictionTable>> tables_;
  mutable std::map<std::pair<std::string, int>, std::map<std::size_t, BasisExpansion>> conversions_;
  mutable std::shared_ptr<const FlagVariety> full_flag_;
  mutable std::vector<std::vector<std::size_t>> full_times_simple_;
};

}  // namespace qk
