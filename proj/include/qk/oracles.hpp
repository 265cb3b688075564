#pragma once

// Independent reference computations used to cross-check the engine. None of
// them goes through the localization tables or the kernel-span diagram.

#include "qk/integer.hpp"
#include "qk/ktheory.hpp"
#include "qk/weyl.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace qk::oracles {

/// T-fixed points of Gr(m,n) as m-subsets of {1..n} (bitmasks), with an edge
/// for every T-stable curve: subsets differing in exactly one element.
class MomentGraph {
public:
  using Vertex = std::uint32_t;

  MomentGraph(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::vector<Vertex> neighbors(Vertex v) const;

  /// Vertices reachable from S by at most d edges.
  std::set<Vertex> gamma(const std::set<Vertex>& s, int d) const;
  /// Fixed points of X^w: subsets dominating the subset of w entrywise.
  std::set<Vertex> opposite_schubert_points(const Permutation& w) const;
  /// Fixed points of X_w: subsets dominated by the subset of w.
  std::set<Vertex> schubert_points(const Permutation& w) const;
  /// The unique minimal subset of S under entrywise dominance, provided S is
  /// exactly its up-set (so S is the fixed-point set of an opposite Schubert
  /// variety); throws std::logic_error otherwise.
  Permutation opposite_index_of(const std::set<Vertex>& s) const;

  /// Least d with Gamma_d(X^u) meeting X_v.
  int dist(const Permutation& u, const Permutation& v) const;
  Vertex vertex_of(const Permutation& w) const;
  Permutation minrep_of(Vertex s) const;

private:
  std::vector<int> sorted(Vertex s) const;
  bool dominates(Vertex a, Vertex b) const;  // a >= b entrywise

  int m_, n_;
  std::vector<Vertex> vertices_;
};

/// Sum over set-valued tableaux of shape lambda with entries in 1..m of
/// (-1)^{|T|-|lambda|} x^T: the stable Grothendieck polynomial in m variables.
using Polynomial = std::map<std::vector<int>, Integer>;
Polynomial grothendieck_polynomial(const Partition& lambda, int m);

/// c^nu_{lambda,mu} with G_lambda G_mu = sum c^nu G_nu, obtained by
/// multiplying set-valued tableau expansions and peeling off leading terms;
/// nu outside the m x (n-m) box are discarded.
std::map<Partition, Integer> lr_constants_setvalued(const Partition& lambda, const Partition& mu, int m, int n);

/// Quantum K product of two points on P^1, from the two- and three-point
/// K-theoretic Gromov-Witten invariants and the quantum K-metric, computed in
/// Z[[q]] truncated at q^order. Returns degree -> (partition -> coefficient)
/// and throws if the result does not terminate below the truncation.
std::map<int, std::map<Partition, Integer>> givental_p1_product(int order = 12);

/// Restriction of the opposite Schubert class O^w of G/B to the fixed point
/// v through the subword expansion along a reduced word of v.
Laurent subword_restriction(const Torus& torus, const Permutation& w, const Permutation& v);
/// A reduced word (i_1, ..., i_l) with v = s_{i_1} ... s_{i_l}.
std::vector<int> reduced_word(const Permutation& v);

}  // namespace qk::oracles
