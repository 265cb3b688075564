#include "qk/ktheory.hpp"

#include "qk/cache.hpp"

#include <algorithm>
#include <numeric>

namespace qk {

// --- Torus ------------------------------------------------------------------

Torus Torus::equivariant(int n) {
  if (n < 1 || n > kMaxVariables) throw std::invalid_argument("equivariant torus supports 1 <= n <= 8");
  return Torus(n, true);
}

Torus Torus::generic_line(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("line torus supports 1 <= n <= 16");
  return Torus(n, false);
}

Exponent Torus::weight(int i, int j) const {
  Exponent e{};
  if (equivariant_) {
    e[static_cast<std::size_t>(i - 1)] += 1;
    e[static_cast<std::size_t>(j - 1)] -= 1;
  } else {
    e[0] = static_cast<std::int16_t>(i - j);
  }
  return e;
}

Laurent Torus::twist(const Laurent& f) const {
  if (!equivariant_) return f.invert_variables();
  std::vector<int> perm(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) perm[static_cast<std::size_t>(i)] = n_ - 1 - i;
  return f.permute_variables(perm);
}

Laurent Torus::specialize(const Laurent& gamma) const {
  if (gamma.num_vars() != n_) throw std::invalid_argument("specialize: element is not in n variables");
  if (equivariant_) return gamma;
  std::vector<Exponent> images(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) images[static_cast<std::size_t>(i)][0] = static_cast<std::int16_t>(i + 1);
  return gamma.substitute(images, 1);
}

// --- LocalizedClass / BasisExpansion ------------------------------------------

LocalizedClass::LocalizedClass(std::shared_ptr<const FlagVariety> space, std::vector<Laurent> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_ || values_.size() != space_->size()) throw std::invalid_argument("localized class must be total");
}

bool LocalizedClass::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Laurent& v) { return v.is_zero(); });
}

void BasisExpansion::add(std::size_t index, const Laurent& c) {
  if (c.is_zero()) return;
  auto it = coefficients.find(index);
  if (it == coefficients.end()) {
    coefficients.emplace(index, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coefficients.erase(it);
}

BasisExpansion& BasisExpansion::operator+=(const BasisExpansion& o) {
  if (o.orientation != orientation) throw std::invalid_argument("adding expansions in different bases");
  if (!space) space = o.space;
  for (const auto& [k, c] : o.coefficients) add(k, c);
  return *this;
}

BasisExpansion BasisExpansion::operator-(const BasisExpansion& o) const {
  BasisExpansion r = *this;
  if (!r.space) r.space = o.space;
  if (o.orientation != orientation) throw std::invalid_argument("subtracting expansions in different bases");
  for (const auto& [k, c] : o.coefficients) r.add(k, -c);
  return r;
}

BasisExpansion BasisExpansion::scaled(const Laurent& c) const {
  BasisExpansion r{space, orientation, {}};
  if (c.is_zero()) return r;
  for (const auto& [k, v] : coefficients) r.add(k, v * c);
  return r;
}

Laurent BasisExpansion::coefficient_sum(int num_vars) const {
  Laurent s(num_vars);
  for (const auto& [k, c] : coefficients) s += c;
  return s;
}

// --- KTheory ----------------------------------------------------------------

KTheory::KTheory(Torus torus, std::optional<std::filesystem::path> cache_dir)
    : torus_(torus), cache_dir_(std::move(cache_dir)) {}

std::shared_ptr<const FlagVariety> KTheory::variety(const FlagShape& shape) const {
  if (shape.n() != torus_.n()) throw ShapeMismatch("flag shape and torus have different n");
  std::lock_guard lock(mutex_);
  auto& slot = varieties_[shape.key()];
  if (!slot) slot = std::make_shared<const FlagVariety>(shape);
  return slot;
}

const FlagVariety& KTheory::full_flag_points() const {
  std::lock_guard lock(mutex_);
  if (!full_flag_) {
    full_flag_ = variety(FlagShape::full(torus_.n()));
    const auto& pts = full_flag_->points();
    full_times_simple_.assign(pts.size(), std::vector<std::size_t>(static_cast<std::size_t>(torus_.n()), 0));
    for (std::size_t v = 0; v < pts.size(); ++v)
      for (int i = 1; i < torus_.n(); ++i)
        full_times_simple_[v][static_cast<std::size_t>(i)] = *full_flag_->find_minrep(pts[v].times_simple(i));
  }
  return *full_flag_;
}

std::vector<Laurent> KTheory::point_class(const Permutation& p) const {
  const auto& full = full_flag_points();
  std::vector<Laurent> cls(full.size(), torus_.zero());
  Laurent value = torus_.one();
  const int n = torus_.n();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) value *= torus_.one() - torus_.character(p(i), p(j));
  cls[*full.find_minrep(p)] = std::move(value);
  return cls;
}

// The push-pull operator along G/B -> G/P_i:
//   (D_i f)(v) = (f(v) - c_v f(v s_i)) / (1 - c_v),  c_v = t_{v(i)} / t_{v(i+1)}.
// It sends O^x to O^{x s_i} when x s_i < x, and O_x to O_{x s_i} when x s_i > x.
void KTheory::apply_demazure(std::vector<Laurent>& cls, int i) const {
  const auto& full = full_flag_points();
  std::vector<Laurent> out(cls.size(), torus_.zero());
  for (std::size_t v = 0; v < cls.size(); ++v) {
    const std::size_t vs = full_times_simple_[v][static_cast<std::size_t>(i)];
    if (cls[v].is_zero() && cls[vs].is_zero()) continue;
    const auto& p = full.point(v);
    const Exponent c = torus_.weight(p(i), p(i + 1));
    Laurent num = cls[v] - cls[vs].times_monomial(c);
    out[v] = num.exact_div_binomial(c);
  }
  cls = std::move(out);
}

std::vector<Laurent> KTheory::full_flag_class(const Permutation& w, Orientation o) const {
  if (w.size() != torus_.n()) throw ShapeMismatch("permutation and torus have different n");
  const int n = torus_.n();
  // Walk from w to the extreme element recording the reflections, then replay.
  std::vector<int> steps;
  Permutation x = w;
  while (true) {
    int found = 0;
    for (int i = 1; i < n && !found; ++i)
      if ((o == Orientation::Opposite) != x.has_right_descent(i)) found = i;
    if (!found) break;
    steps.push_back(found);
    x = x.times_simple(found);
  }
  auto cls = point_class(x);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) apply_demazure(cls, *it);
  return cls;
}

std::vector<Exponent> KTheory::diagonal_factors(const FlagVariety& space, std::size_t w, Orientation o) const {
  const auto& p = space.point(w);
  std::vector<Exponent> out;
  for (auto [i, j] : space.curve_directions()) {
    const bool inversion = p(i) > p(j);
    if ((o == Orientation::Opposite) == inversion) out.push_back(torus_.weight(p(i), p(j)));
  }
  return out;
}

std::unique_ptr<RestrictionTable> KTheory::compute_table(const FlagShape& shape, Orientation o) const {
  auto table = std::make_unique<RestrictionTable>();
  table->space = variety(shape);
  table->orientation = o;
  const auto& space = *table->space;
  const auto& full = full_flag_points();
  const std::size_t N = space.size();

  std::optional<std::vector<std::vector<Laurent>>> cached;
  if (cache_dir_) cached = cache::load(*cache_dir_, space, o, torus_);
  if (cached) {
    table->values = std::move(*cached);
  } else {
    table->values.assign(N, {});
    for (std::size_t w = 0; w < N; ++w) {
      // Pull back to G/B: X^w has preimage X^w, X_w has preimage X_{max rep}.
      const Permutation rep = o == Orientation::Opposite ? space.point(w) : max_coset_rep(space.point(w), space.parabolic());
      auto cls = full_flag_class(rep, o);
      auto& row = table->values[w];
      row.reserve(N);
      for (std::size_t v = 0; v < N; ++v) row.push_back(std::move(cls[*full.find_minrep(space.point(v))]));
    }
  }

  table->support.assign(N, {});
  table->diagonal_factors.assign(N, {});
  for (std::size_t w = 0; w < N; ++w) {
    for (std::size_t v = 0; v < N; ++v)
      if (!table->values[w][v].is_zero()) table->support[w].push_back(v);
    table->diagonal_factors[w] = diagonal_factors(space, w, o);
    Laurent diag = torus_.one();
    for (const auto& e : table->diagonal_factors[w]) diag *= torus_.one() - Laurent::monomial(torus_.num_vars(), e);
    if (!(diag == table->values[w][w]))
      throw std::logic_error("restriction table for " + shape.to_string() + " disagrees with its normal weights at " +
                             space.point(w).to_string());
  }
  if (cache_dir_ && !cached) cache::store(*cache_dir_, *table, torus_);
  return table;
}

const RestrictionTable& KTheory::restrictions(const FlagShape& shape, Orientation o) const {
  std::lock_guard lock(mutex_);
  auto& slot = tables_[TableKey{shape.key(), o}];
  if (!slot) slot = compute_table(shape, o);
  return *slot;
}

LocalizedClass KTheory::schubert_class(const FlagShape& shape, std::size_t index, Orientation o) const {
  const auto& t = restrictions(shape, o);
  if (index >= t.space->size()) throw std::out_of_range("Schubert index out of range");
  return LocalizedClass(t.space, t.values[index]);
}

LocalizedClass KTheory::schubert_class(const FlagShape& shape, const Permutation& w, Orientation o) const {
  auto space = variety(shape);
  auto idx = space->find_minrep(w);
  if (!idx) throw std::invalid_argument(w.to_string() + " is not a minimal coset representative for " + shape.to_string());
  return schubert_class(shape, *idx, o);
}

LocalizedClass KTheory::one(const FlagShape& shape) const {
  auto space = variety(shape);
  return LocalizedClass(space, std::vector<Laurent>(space->size(), torus_.one()));
}

LocalizedClass KTheory::zero(const FlagShape& shape) const {
  auto space = variety(shape);
  return LocalizedClass(space, std::vector<Laurent>(space->size(), torus_.zero()));
}

LocalizedClass KTheory::multiply(const LocalizedClass& a, const LocalizedClass& b) const {
  if (!(a.shape() == b.shape())) throw ShapeMismatch("multiply: different flag shapes");
  std::vector<Laurent> v;
  v.reserve(a.values().size());
  for (std::size_t i = 0; i < a.values().size(); ++i) v.push_back(a.at(i) * b.at(i));
  return LocalizedClass(a.space(), std::move(v));
}

LocalizedClass KTheory::add(const LocalizedClass& a, const LocalizedClass& b) const {
  if (!(a.shape() == b.shape())) throw ShapeMismatch("add: different flag shapes");
  std::vector<Laurent> v;
  v.reserve(a.values().size());
  for (std::size_t i = 0; i < a.values().size(); ++i) v.push_back(a.at(i) + b.at(i));
  return LocalizedClass(a.space(), std::move(v));
}

BasisExpansion KTheory::expand(const LocalizedClass& a, Orientation o) const {
  const auto& t = restrictions(a.shape(), o);
  BasisExpansion out{t.space, o, {}};
  auto residual = a.values();
  const std::size_t N = residual.size();
  for (std::size_t step = 0; step < N; ++step) {
    const std::size_t x = o == Orientation::Opposite ? step : N - 1 - step;
    if (residual[x].is_zero()) continue;
    Laurent c = residual[x];
    try {
      for (const auto& e : t.diagonal_factors[x]) c = c.exact_div_binomial(e);
    } catch (const NotDivisible&) {
      throw NotInSpan("class is not in the span of Schubert classes (failed at " + t.space->point(x).to_string() + ")");
    }
    for (std::size_t v : t.support[x]) residual[v].sub_product(c, t.values[x][v]);
    out.coefficients.emplace(x, std::move(c));
  }
  return out;
}

LocalizedClass KTheory::recombine(const BasisExpansion& e) const {
  if (!e.space) throw std::invalid_argument("recombine: expansion without a space");
  const auto& t = restrictions(e.space->shape(), e.orientation);
  std::vector<Laurent> v(t.space->size(), torus_.zero());
  for (const auto& [x, c] : e.coefficients)
    for (std::size_t p : t.support[x]) v[p].add_product(c, t.values[x][p]);
  return LocalizedClass(t.space, std::move(v));
}

LocalizedClass KTheory::pullback(const LocalizedClass& f, const FlagShape& finer) const {
  if (!finer.refines(f.shape())) throw ShapeMismatch(finer.to_string() + " does not project to " + f.shape().to_string());
  auto fine = variety(finer);
  std::vector<Laurent> v;
  v.reserve(fine->size());
  for (const auto& p : fine->points()) v.push_back(f.at(f.space()->index_of(p)));
  return LocalizedClass(fine, std::move(v));
}

BasisExpansion KTheory::pushforward_plain(const BasisExpansion& plain, const FlagShape& coarser) const {
  if (plain.orientation != Orientation::Plain) throw std::invalid_argument("pushforward_plain needs a plain-basis expansion");
  if (!plain.space->shape().refines(coarser))
    throw ShapeMismatch(plain.space->shape().to_string() + " does not project to " + coarser.to_string());
  auto target = variety(coarser);
  BasisExpansion out{target, Orientation::Plain, {}};
  for (const auto& [y, c] : plain.coefficients) out.add(target->index_of(plain.space->point(y)), c);
  return out;
}

LocalizedClass KTheory::pushforward(const LocalizedClass& f, const FlagShape& coarser) const {
  return recombine(pushforward_plain(expand(f, Orientation::Plain), coarser));
}

Laurent KTheory::euler_char(const LocalizedClass& f, Orientation via) const {
  return expand(f, via).coefficient_sum(torus_.num_vars());
}

const BasisExpansion& KTheory::plain_to_opposite(const FlagShape& shape, std::size_t v) const {
  std::lock_guard lock(mutex_);
  auto& memo = conversions_[{shape.key(), static_cast<int>(Orientation::Plain)}];
  auto it = memo.find(v);
  if (it == memo.end()) it = memo.emplace(v, expand(schubert_class(shape, v, Orientation::Plain), Orientation::Opposite)).first;
  return it->second;
}

const BasisExpansion& KTheory::opposite_to_plain(const FlagShape& shape, std::size_t w) const {
  std::lock_guard lock(mutex_);
  auto& memo = conversions_[{shape.key(), static_cast<int>(Orientation::Opposite)}];
  auto it = memo.find(w);
  if (it == memo.end()) it = memo.emplace(w, expand(schubert_class(shape, w, Orientation::Opposite), Orientation::Plain)).first;
  return it->second;
}

BasisExpansion KTheory::convert(const BasisExpansion& e, Orientation target) const {
  if (e.orientation == target) return e;
  BasisExpansion out{e.space, target, {}};
  for (const auto& [x, c] : e.coefficients) {
    const auto& basis = target == Orientation::Opposite ? plain_to_opposite(e.space->shape(), x)
                                                        : opposite_to_plain(e.space->shape(), x);
    out += basis.scaled(c);
  }
  return out;
}

bool KTheory::satisfies_gkm(const LocalizedClass& f) const {
  const auto& space = *f.space();
  for (std::size_t v = 0; v < space.size(); ++v) {
    const auto& p = space.point(v);
    for (auto [i, j] : space.curve_directions()) {
      const std::size_t u = space.index_of(p.times_transposition(i, j));
      if (u < v) continue;
      if (!(f.at(v) - f.at(u)).divisible_by_binomial(torus_.weight(p(j), p(i)))) return false;
    }
  }
  return true;
}

}  // namespace qk
