#pragma once

// Quantum K-theory of the Grassmannian X = Gr(m,n) built from projected
// Gromov-Witten varieties:
//
//   O^u (.) O_v = sum_d [O_{Gamma_d(X^u, X_v)}] q^d,
//   O^u  *  O_v = (1 - q psi)(O^u (.) O_v),   psi(O^w) = O^{w(-1)}.
//
// Gamma_d(X^u, X_v) is realized through the kernel-span diagram
//
//          T_d = Fl(a, m, b; n)
//        p /              \ q
//   X = Gr(m, n)        Y_d = Fl(a, b; n),      a = max(m-d,0), b = min(m+d,n),
//
// as p(q^{-1}(Y^{u_d} cap Y_{v_d})), where u_d and v_d are the Schubert
// indices of q(p^{-1}(X^u)) and q(p^{-1}(X_v)).

#include "qk/ktheory.hpp"
#include "qk/tailed_series.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace qk {

struct Grassmannian {
  int m = 1;
  int n = 2;

  FlagShape shape() const { return FlagShape::grassmannian(m, n); }
  int rows() const { return m; }
  int cols() const { return n - m; }
  std::string to_string() const { return "gr:" + std::to_string(m) + "," + std::to_string(n); }
  /// Parses "gr:m,n"; requires 0 < m < n.
  static Grassmannian parse(std::string_view text);

  friend bool operator==(const Grassmannian&, const Grassmannian&) = default;
};

BasisExpansion operator+(BasisExpansion a, const BasisExpansion& b);

/// sum_d q^d sum_w c_{w,d} O^w with finitely many nonzero terms.
class QKElement {
public:
  QKElement() = default;
  explicit QKElement(std::shared_ptr<const FlagVariety> space) : space_(std::move(space)) {}

  const std::shared_ptr<const FlagVariety>& space() const { return space_; }
  const std::map<int, BasisExpansion>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Adds q^d * e (opposite basis).
  void add(int d, const BasisExpansion& e);
  void add_term(int d, std::size_t w, const Laurent& c);
  int min_degree() const;  // requires nonzero
  int max_degree() const;
  const BasisExpansion* at_degree(int d) const;

  friend bool operator==(const QKElement& a, const QKElement& b) { return a.terms_ == b.terms_; }

private:
  std::shared_ptr<const FlagVariety> space_;
  std::map<int, BasisExpansion> terms_;
};

/// Coefficients of q^d for the Gamma_d classes, eventually the class 1.
using TailedQSeries = TailedSeries<BasisExpansion>;

struct StructureEntry {
  std::size_t w = 0;
  int d = 0;
  /// Structure constant in the representation ring of the n-dimensional torus
  /// (an integer constant for non-equivariant tables).
  Laurent N;
};

/// All nonzero N^{w,d}_{u,v} of one product, ordered by (d, partition of w).
struct StructureTable {
  Grassmannian space;
  bool equivariant = true;
  std::size_t u = 0;
  std::size_t v = 0;
  Orientation v_basis = Orientation::Plain;
  std::vector<StructureEntry> entries;

  Laurent sum() const;
};

/// Indices and shapes of the kernel-span diagram for one (u, v, d).
struct DiagramData {
  FlagShape y;
  FlagShape t;
  Permutation u_d;  // opposite index on Y_d
  Permutation v_d;  // plain index on Y_d
  bool nonempty = false;
  bool full = false;  // Richardson variety is all of Y_d
};

class QuantumK {
public:
  QuantumK(Grassmannian x, std::shared_ptr<const KTheory> kt);

  const Grassmannian& grassmannian() const { return x_; }
  const KTheory& ktheory() const { return *kt_; }
  const Torus& torus() const { return kt_->torus(); }
  const std::shared_ptr<const FlagVariety>& space() const { return space_; }
  std::size_t size() const { return space_->size(); }

  std::size_t index_of(const Partition& lambda) const;  // throws BoxError
  Partition partition_of(std::size_t w) const;

  int diameter() const { return std::min(x_.m, x_.n - x_.m); }
  /// (Y_d, T_d) with degenerate steps dropped.
  std::pair<FlagShape, FlagShape> kernel_span_shapes(int d) const;

  /// w(-d) by transporting X^w around the diagram.
  std::size_t curve_neighborhood_by_diagram(std::size_t w, int d) const;
  /// lambda(-d)_i = max(lambda_{i+d} - d, 0).
  static Partition shift_rule(const Partition& lambda, int d);
  /// Compares the shift rule with the diagram for every (w, d); the rule is
  /// used by curve_neighborhood_index only after this returns true.
  bool validate_shift_rule();
  bool shift_rule_enabled() const { return shift_rule_enabled_.load(); }
  std::size_t curve_neighborhood_index(std::size_t w, int d) const;

  /// min { d : u(-d) <= v }.
  int dist(std::size_t u, std::size_t v) const;

  DiagramData diagram(std::size_t u, std::size_t v, int d) const;
  /// [O_{Gamma_d(X^u, X_v)}] in the opposite basis of X.
  const BasisExpansion& projected_gw_expansion(std::size_t u, std::size_t v, int d) const;
  LocalizedClass projected_gw_class(std::size_t u, std::size_t v, int d) const;
  /// Same class computed literally: pull the Richardson class back to T_d and
  /// push it forward to X through a plain-basis expansion on T_d.
  LocalizedClass projected_gw_class_via_total_space(std::size_t u, std::size_t v, int d) const;

  TailedQSeries odot(std::size_t u, std::size_t v) const;
  BasisExpansion psi(const BasisExpansion& a) const;

  /// O^u * O_v.
  const QKElement& star(std::size_t u, std::size_t v_plain) const;
  /// O^u * O^v, through the exact change of basis O^v = sum b_x O_x.
  QKElement star_opposite(std::size_t u, std::size_t v_opposite) const;
  /// Bilinear extension to arbitrary elements (opposite basis).
  QKElement multiply(const QKElement& a, const QKElement& b) const;
  QKElement basis_element(std::size_t w, int d = 0) const;

  StructureTable structure_constants(std::size_t u, std::size_t v, Orientation v_basis) const;

  /// Euler characteristic coefficient-wise: entry d is chi of the q^d part,
  /// without trailing zeros.
  std::vector<Laurent> chi_q(const QKElement& a) const;
  /// chi followed by q -> 1.
  Laurent chi_hat(const QKElement& a) const;

  /// Presents an internal coefficient in the n-variable representation ring
  /// (non-equivariant values collapse to integers).
  Laurent present(const Laurent& c) const;

private:
  Grassmannian x_;
  std::shared_ptr<const KTheory> kt_;
  std::shared_ptr<const FlagVariety> space_;
  std::atomic<bool> shift_rule_enabled_{false};

  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::size_t, int>, std::size_t> neighborhoods_;
  mutable std::map<std::tuple<std::size_t, std::size_t, int>, BasisExpansion> projected_;
  mutable std::map<std::pair<std::size_t, std::size_t>, QKElement> stars_;
};

/// Line-oriented outcome of one identity check.
struct CheckReport {
  std::string name;
  std::size_t pairs = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

/// Runs f(u, v) for every pair, on `jobs` threads.
void for_each_pair(std::size_t count, unsigned jobs, const std::function<void(std::size_t, std::size_t)>& f);

/// Sum over w, d of N^{w,d}_{u,v} equals 1, for v in both bases.
CheckReport verify_sum_rule(const QuantumK& qk, unsigned jobs = 1);
/// chi_q(O^u * O_v) = q^{dist(u,v)}; `independent_dist` (optional) supplies a
/// second distance that must agree with the Bruhat-iteration one.
CheckReport verify_euler_degree(const QuantumK& qk, unsigned jobs = 1,
                                const std::function<int(std::size_t, std::size_t)>& independent_dist = {});
/// chi_hat(O^u * O_v) = chi_hat(O^u) chi_hat(O_v), and likewise for O^v.
CheckReport verify_euler_multiplicative(const QuantumK& qk, unsigned jobs = 1);

struct PositivityReport {
  std::string convention;
  std::size_t entries = 0;
  std::vector<std::string> flagged;
};
/// Checks (-1)^{|w| + n d - codim(u) - codim(v)} N >= 0 for each entry, with
/// codim of X_v equal to m(n-m) - |v|. Diagnostic only.
PositivityReport positivity_sign_report(const QuantumK& qk, const StructureTable& table);

}  // namespace qk
