#include "qk/oracles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qk::oracles {

// --- moment graph -------------------------------------------------------------

MomentGraph::MomentGraph(int m, int n) : m_(m), n_(n) {
  if (m <= 0 || m >= n || n > 20) throw std::invalid_argument("moment graph needs 0 < m < n <= 20");
  for (Vertex s = 0; s < (Vertex{1} << n); ++s)
    if (std::popcount(s) == m) vertices_.push_back(s);
}

std::vector<int> MomentGraph::sorted(Vertex s) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (s >> i & 1) out.push_back(i + 1);
  return out;
}

bool MomentGraph::dominates(Vertex a, Vertex b) const {
  const auto x = sorted(a), y = sorted(b);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < y[i]) return false;
  return true;
}

std::vector<MomentGraph::Vertex> MomentGraph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for (int i = 0; i < n_; ++i) {
    if (!(v >> i & 1)) continue;
    for (int j = 0; j < n_; ++j)
      if (!(v >> j & 1)) out.push_back((v & ~(Vertex{1} << i)) | (Vertex{1} << j));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<MomentGraph::Vertex> MomentGraph::gamma(const std::set<Vertex>& s, int d) const {
  std::set<Vertex> reached = s;
  std::vector<Vertex> frontier(s.begin(), s.end());
  for (int step = 0; step < d && !frontier.empty(); ++step) {
    std::vector<Vertex> next;
    for (Vertex v : frontier)
      for (Vertex u : neighbors(v))
        if (reached.insert(u).second) next.push_back(u);
    frontier = std::move(next);
  }
  return reached;
}

MomentGraph::Vertex MomentGraph::vertex_of(const Permutation& w) const {
  Vertex s = 0;
  for (int i = 1; i <= m_; ++i) s |= Vertex{1} << (w(i) - 1);
  return s;
}

Permutation MomentGraph::minrep_of(Vertex s) const {
  std::vector<int> w = sorted(s);
  for (int i = 1; i <= n_; ++i)
    if (!(s >> (i - 1) & 1)) w.push_back(i);
  return Permutation(std::move(w));
}

std::set<MomentGraph::Vertex> MomentGraph::opposite_schubert_points(const Permutation& w) const {
  const Vertex base = vertex_of(w);
  std::set<Vertex> out;
  for (Vertex v : vertices_)
    if (dominates(v, base)) out.insert(v);
  return out;
}

std::set<MomentGraph::Vertex> MomentGraph::schubert_points(const Permutation& w) const {
  const Vertex top = vertex_of(w);
  std::set<Vertex> out;
  for (Vertex v : vertices_)
    if (dominates(top, v)) out.insert(v);
  return out;
}

Permutation MomentGraph::opposite_index_of(const std::set<Vertex>& s) const {
  std::vector<Vertex> minimal;
  for (Vertex a : s) {
    bool is_min = true;
    for (Vertex b : s)
      if (b != a && dominates(a, b)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(a);
  }
  if (minimal.size() != 1) throw std::logic_error("vertex set has no unique minimum");
  const Permutation w = minrep_of(minimal.front());
  if (opposite_schubert_points(w) != s) throw std::logic_error("vertex set is not an up-set");
  return w;
}

int MomentGraph::dist(const Permutation& u, const Permutation& v) const {
  const auto target = schubert_points(v);
  const auto start = opposite_schubert_points(u);
  for (int d = 0; d <= n_; ++d) {
    const auto g = gamma(start, d);
    for (Vertex x : g)
      if (target.count(x)) return d;
  }
  throw std::logic_error("moment graph is disconnected");
}

// --- set-valued tableaux ------------------------------------------------------

namespace {

struct TableauFiller {
  const Partition& shape;
  int m;
  std::vector<std::pair<int, int>> boxes;        // (row, col) in row-major order
  std::vector<std::pair<int, int>> filled;       // (min, max) per box
  std::vector<int> weight;
  int size = 0;
  Polynomial out;

  TableauFiller(const Partition& s, int vars) : shape(s), m(vars), weight(static_cast<std::size_t>(vars), 0) {
    for (std::size_t r = 0; r < s.num_parts(); ++r)
      for (int c = 0; c < s.part(r); ++c) boxes.emplace_back(static_cast<int>(r), c);
    filled.resize(boxes.size());
  }

  std::size_t box_index(int r, int c) const {
    std::size_t k = 0;
    for (int i = 0; i < r; ++i) k += static_cast<std::size_t>(shape.part(static_cast<std::size_t>(i)));
    return k + static_cast<std::size_t>(c);
  }

  void fill(std::size_t k) {
    if (k == boxes.size()) {
      Integer c = (size - static_cast<int>(boxes.size())) % 2 == 0 ? 1 : -1;
      out[weight] += c;
      return;
    }
    const auto [r, c] = boxes[k];
    int lo = 1;
    if (c > 0) lo = std::max(lo, filled[box_index(r, c - 1)].second);
    if (r > 0) lo = std::max(lo, filled[box_index(r - 1, c)].second + 1);
    for (unsigned set = 1; set < (1u << m); ++set) {
      const int mn = std::countr_zero(set) + 1;
      const int mx = 32 - std::countl_zero(set);
      if (mn < lo) continue;
      filled[k] = {mn, mx};
      for (int i = 0; i < m; ++i)
        if (set >> i & 1) ++weight[static_cast<std::size_t>(i)];
      size += std::popcount(set);
      fill(k + 1);
      size -= std::popcount(set);
      for (int i = 0; i < m; ++i)
        if (set >> i & 1) --weight[static_cast<std::size_t>(i)];
    }
  }
};

void add_scaled(Polynomial& p, const Polynomial& q, const Integer& c) {
  for (const auto& [e, v] : q) {
    auto& slot = p[e];
    slot.add_product(c, v);
    if (slot.is_zero()) p.erase(e);
  }
}

}  // namespace

Polynomial grothendieck_polynomial(const Partition& lambda, int m) {
  if (lambda.num_parts() > static_cast<std::size_t>(m)) return {};
  TableauFiller f(lambda, m);
  f.fill(0);
  std::erase_if(f.out, [](const auto& kv) { return kv.second.is_zero(); });
  return f.out;
}

std::map<Partition, Integer> lr_constants_setvalued(const Partition& lambda, const Partition& mu, int m, int n) {
  const Polynomial a = grothendieck_polynomial(lambda, m), b = grothendieck_polynomial(mu, m);
  Polynomial p;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(static_cast<std::size_t>(m));
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto& slot = p[e];
      slot.add_product(ca, cb);
      if (slot.is_zero()) p.erase(e);
    }

  std::map<Partition, Integer> out;
  while (!p.empty()) {
    int low = -1;
    const std::vector<int>* lead = nullptr;
    for (const auto& [e, c] : p) {
      int deg = 0;
      for (int x : e) deg += x;
      if (low < 0 || deg < low || (deg == low && e > *lead)) {
        low = deg;
        lead = &e;
      }
    }
    if (!std::is_sorted(lead->begin(), lead->end(), std::greater<>()))
      throw std::logic_error("leading monomial is not a partition");
    std::vector<int> parts;
    for (int x : *lead)
      if (x > 0) parts.push_back(x);
    const Partition nu(parts);
    const Integer c = p.at(*lead);
    out[nu] += c;
    add_scaled(p, grothendieck_polynomial(nu, m), -c);
  }
  std::erase_if(out, [&](const auto& kv) { return kv.second.is_zero() || !kv.first.fits_box(m, n - m); });
  return out;
}

// --- P^1 from Gromov-Witten invariants ------------------------------------------

namespace {

using Series = std::vector<Integer>;  // coefficients of q^0 .. q^order

Series series_mul(const Series& a, const Series& b) {
  Series r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j].add_product(a[i], b[j]);
  return r;
}

Series series_inverse(const Series& a) {
  if (!(a[0] == Integer(1) || a[0] == Integer(-1))) throw std::domain_error("series is not a unit");
  Series r(a.size(), 0);
  r[0] = a[0];  // a[0]^{-1} = a[0]
  for (std::size_t k = 1; k < a.size(); ++k) {
    Integer s = 0;
    for (std::size_t j = 1; j <= k; ++j) s.add_product(a[j], r[k - j]);
    r[k] = -(s * a[0]);
  }
  return r;
}

Series series_add(Series a, const Series& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

std::map<int, std::map<Partition, Integer>> givental_p1_product(int order) {
  if (order < 3) throw std::invalid_argument("truncation order too small");
  const std::size_t K = static_cast<std::size_t>(order) + 1;
  // Basis e0 = 1, e1 = point class; classical chi of a product is 1 unless the
  // point class occurs twice. Every invariant of positive degree equals 1.
  auto classical = [](int points) { return points <= 1 ? 1 : 0; };
  auto invariant = [&](int points) {
    Series s(K, 1);
    s[0] = classical(points);
    return s;
  };
  Series G[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) G[a][b] = invariant(a + b);
  Series off = series_mul(G[0][1], G[1][0]);
  for (auto& x : off) x = -x;
  const Series det = series_add(series_mul(G[0][0], G[1][1]), off);
  const Series inv_det = series_inverse(det);
  Series Ginv[2][2];
  Ginv[0][0] = series_mul(G[1][1], inv_det);
  Ginv[1][1] = series_mul(G[0][0], inv_det);
  Ginv[0][1] = series_mul(G[0][1], inv_det);
  Ginv[1][0] = series_mul(G[1][0], inv_det);
  for (auto& x : Ginv[0][1]) x = -x;
  for (auto& x : Ginv[1][0]) x = -x;

  // e1 * e1 = sum_{e,f} F_{1,1,e} G^{e,f} e_f.
  Series coeff[2] = {Series(K, 0), Series(K, 0)};
  for (int e = 0; e < 2; ++e)
    for (int f = 0; f < 2; ++f) coeff[f] = series_add(coeff[f], series_mul(invariant(2 + e), Ginv[e][f]));

  std::map<int, std::map<Partition, Integer>> out;
  const Partition basis[2] = {Partition(), Partition({1})};
  int last = -1;
  for (int f = 0; f < 2; ++f)
    for (std::size_t d = 0; d < K; ++d)
      if (!coeff[f][d].is_zero()) {
        out[static_cast<int>(d)][basis[f]] = coeff[f][d];
        last = std::max(last, static_cast<int>(d));
      }
  if (last >= order - 1) throw std::domain_error("product does not terminate below the truncation order");
  return out;
}

// --- subword expansion ------------------------------------------------------------

std::vector<int> reduced_word(const Permutation& v) {
  std::vector<int> word;
  Permutation x = v;
  for (bool again = true; again;) {
    again = false;
    for (int i = 1; i < x.size(); ++i)
      if (x.has_right_descent(i)) {
        word.push_back(i);
        x = x.times_simple(i);
        again = true;
        break;
      }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

Laurent subword_restriction(const Torus& torus, const Permutation& w, const Permutation& v) {
  // Sum over subwords J whose Demazure product is w of
  //   (-1)^{|J| - l(w)} prod_{j in J} (1 - e^{-beta_j}),
  // beta_j = s_{i_1} ... s_{i_{j-1}} (alpha_{i_j}).
  std::map<Permutation, Laurent> states{{Permutation::identity(v.size()), torus.one()}};
  Permutation prefix = Permutation::identity(v.size());
  for (int i : reduced_word(v)) {
    const Laurent factor = torus.one() - torus.character(prefix(i + 1), prefix(i));
    auto next = states;
    for (const auto& [y, f] : states) {
      const Permutation y2 = y.has_right_descent(i) ? y : y.times_simple(i);
      auto& slot = next.try_emplace(y2, torus.zero()).first->second;
      slot.sub_product(f, factor);
    }
    states = std::move(next);
    prefix = prefix.times_simple(i);
  }
  auto it = states.find(w);
  if (it == states.end()) return torus.zero();
  return w.length() % 2 == 0 ? it->second : -it->second;
}

}  // namespace qk::oracles
