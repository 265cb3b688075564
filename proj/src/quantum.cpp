#include "qk/quantum.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <thread>

namespace qk {

Grassmannian Grassmannian::parse(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("expected gr:m,n with 0 < m < n, got '" + std::string(text) + "'"); };
  if (text.substr(0, 3) != "gr:") throw fail();
  const auto body = text.substr(3);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) throw fail();
  int m = 0, n = 0;
  auto a = body.substr(0, comma), b = body.substr(comma + 1);
  auto r1 = std::from_chars(a.data(), a.data() + a.size(), m);
  auto r2 = std::from_chars(b.data(), b.data() + b.size(), n);
  if (a.empty() || b.empty() || r1.ec != std::errc{} || r1.ptr != a.data() + a.size() || r2.ec != std::errc{} ||
      r2.ptr != b.data() + b.size())
    throw fail();
  if (m <= 0 || m >= n) throw fail();
  return Grassmannian{m, n};
}

BasisExpansion operator+(BasisExpansion a, const BasisExpansion& b) {
  a += b;
  return a;
}

// --- QKElement --------------------------------------------------------------

void QKElement::add(int d, const BasisExpansion& e) {
  if (e.is_zero()) return;
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    terms_.emplace(d, e).first->second.space = space_;
    return;
  }
  it->second += e;
  if (it->second.is_zero()) terms_.erase(it);
}

void QKElement::add_term(int d, std::size_t w, const Laurent& c) {
  BasisExpansion e{space_, Orientation::Opposite, {}};
  e.add(w, c);
  add(d, e);
}

int QKElement::min_degree() const {
  if (terms_.empty()) throw std::logic_error("degree of the zero element");
  return terms_.begin()->first;
}

int QKElement::max_degree() const {
  if (terms_.empty()) throw std::logic_error("degree of the zero element");
  return terms_.rbegin()->first;
}

const BasisExpansion* QKElement::at_degree(int d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? nullptr : &it->second;
}

Laurent StructureTable::sum() const {
  Laurent s(space.n);
  for (const auto& e : entries) s += e.N;
  return s;
}

// --- QuantumK ---------------------------------------------------------------

QuantumK::QuantumK(Grassmannian x, std::shared_ptr<const KTheory> kt) : x_(x), kt_(std::move(kt)) {
  if (x_.n != kt_->torus().n()) throw ShapeMismatch("Grassmannian and torus have different n");
  space_ = kt_->variety(x_.shape());
}

std::size_t QuantumK::index_of(const Partition& lambda) const {
  return *space_->find_minrep(partition_to_minrep(lambda, x_.m, x_.n));
}

Partition QuantumK::partition_of(std::size_t w) const { return minrep_to_partition(space_->point(w), x_.m); }

std::pair<FlagShape, FlagShape> QuantumK::kernel_span_shapes(int d) const {
  if (d < 0) throw std::invalid_argument("negative degree");
  const int a = std::max(x_.m - d, 0), b = std::min(x_.m + d, x_.n);
  std::vector<int> y{a};
  if (b != a) y.push_back(b);
  std::vector<int> t{a};
  if (x_.m != a) t.push_back(x_.m);
  if (b != x_.m) t.push_back(b);
  return {FlagShape(x_.n, y), FlagShape(x_.n, t)};
}

std::size_t QuantumK::curve_neighborhood_by_diagram(std::size_t w, int d) const {
  const auto [y, t] = kernel_span_shapes(d);
  const auto rx = space_->parabolic(), ry = y.parabolic(), rt = t.parabolic();
  constexpr auto O = Orientation::Opposite;
  const Permutation up = schubert_preimage_index(space_->point(w), rt, rx, O);
  const Permutation on_y = schubert_image_index(up, rt, ry, O);
  const Permutation back = schubert_preimage_index(on_y, rt, ry, O);
  return space_->index_of(schubert_image_index(back, rt, rx, O));
}

Partition QuantumK::shift_rule(const Partition& lambda, int d) {
  std::vector<int> parts;
  for (std::size_t i = 0; i < lambda.num_parts(); ++i) {
    const int p = lambda.part(i + static_cast<std::size_t>(d)) - d;
    if (p <= 0) break;
    parts.push_back(p);
  }
  return Partition(std::move(parts));
}

bool QuantumK::validate_shift_rule() {
  for (std::size_t w = 0; w < size(); ++w)
    for (int d = 0; d <= diameter() + 1; ++d)
      if (index_of(shift_rule(partition_of(w), d)) != curve_neighborhood_by_diagram(w, d)) {
        shift_rule_enabled_ = false;
        return false;
      }
  shift_rule_enabled_ = true;
  return true;
}

std::size_t QuantumK::curve_neighborhood_index(std::size_t w, int d) const {
  if (shift_rule_enabled_) return index_of(shift_rule(partition_of(w), d));
  {
    std::lock_guard lock(mutex_);
    if (auto it = neighborhoods_.find({w, d}); it != neighborhoods_.end()) return it->second;
  }
  const std::size_t r = curve_neighborhood_by_diagram(w, d);
  std::lock_guard lock(mutex_);
  neighborhoods_.emplace(std::make_pair(w, d), r);
  return r;
}

int QuantumK::dist(std::size_t u, std::size_t v) const {
  for (int d = 0; d <= diameter(); ++d)
    if (space_->leq(curve_neighborhood_index(u, d), v)) return d;
  throw std::logic_error("no curve degree connects the two Schubert varieties");
}

DiagramData QuantumK::diagram(std::size_t u, std::size_t v, int d) const {
  const auto [y, t] = kernel_span_shapes(d);
  const auto rx = space_->parabolic(), ry = y.parabolic(), rt = t.parabolic();
  DiagramData D{y, t, {}, {}, false, false};
  D.u_d = schubert_image_index(schubert_preimage_index(space_->point(u), rt, rx, Orientation::Opposite), rt, ry,
                               Orientation::Opposite);
  D.v_d = schubert_image_index(schubert_preimage_index(space_->point(v), rt, rx, Orientation::Plain), rt, ry,
                               Orientation::Plain);
  D.nonempty = bruhat_leq(D.u_d, D.v_d);
  const auto yspace = kt_->variety(y);
  D.full = D.u_d == yspace->point(yspace->identity_index()) && D.v_d == yspace->point(yspace->top_index());
  return D;
}

const BasisExpansion& QuantumK::projected_gw_expansion(std::size_t u, std::size_t v, int d) const {
  const auto key = std::make_tuple(u, v, d);
  {
    std::lock_guard lock(mutex_);
    if (auto it = projected_.find(key); it != projected_.end()) return it->second;
  }
  const DiagramData D = diagram(u, v, d);
  BasisExpansion out{space_, Orientation::Opposite, {}};
  if (D.full) {
    out.add(space_->identity_index(), torus().one());
  } else if (D.nonempty) {
    const auto yspace = kt_->variety(D.y);
    const auto richardson = kt_->multiply(kt_->schubert_class(D.y, D.u_d, Orientation::Opposite),
                                          kt_->schubert_class(D.y, D.v_d, Orientation::Plain));
    const auto rx = space_->parabolic(), ry = D.y.parabolic(), rt = D.t.parabolic();
    // q^* O_{Y_y} = O_{T_{y'}} and p_* O_{T_{y'}} = O_{X_{p(y')}}.
    BasisExpansion plain{space_, Orientation::Plain, {}};
    for (const auto& [y, c] : kt_->expand(richardson, Orientation::Plain).coefficients) {
      const Permutation up = schubert_preimage_index(yspace->point(y), rt, ry, Orientation::Plain);
      plain.add(space_->index_of(schubert_image_index(up, rt, rx, Orientation::Plain)), c);
    }
    out = kt_->convert(plain, Orientation::Opposite);
  }
  std::lock_guard lock(mutex_);
  return projected_.emplace(key, std::move(out)).first->second;
}

LocalizedClass QuantumK::projected_gw_class(std::size_t u, std::size_t v, int d) const {
  return kt_->recombine(projected_gw_expansion(u, v, d));
}

LocalizedClass QuantumK::projected_gw_class_via_total_space(std::size_t u, std::size_t v, int d) const {
  const DiagramData D = diagram(u, v, d);
  const auto richardson = kt_->multiply(kt_->schubert_class(D.y, D.u_d, Orientation::Opposite),
                                        kt_->schubert_class(D.y, D.v_d, Orientation::Plain));
  return kt_->pushforward(kt_->pullback(richardson, D.t), x_.shape());
}

TailedQSeries QuantumK::odot(std::size_t u, std::size_t v) const {
  std::vector<BasisExpansion> head;
  const int guard = 2 * diameter() + 1;
  for (int d = 0; d <= guard; ++d) {
    const auto& g = projected_gw_expansion(u, v, d);
    if (g.coefficients.size() == 1 && g.coefficients.begin()->first == space_->identity_index() &&
        g.coefficients.begin()->second.is_one())
      return TailedQSeries(std::move(head), g);
    head.push_back(g);
  }
  throw std::logic_error("projected Gromov-Witten classes did not stabilize");
}

BasisExpansion QuantumK::psi(const BasisExpansion& a) const {
  if (a.orientation != Orientation::Opposite) throw std::invalid_argument("psi acts on the opposite basis");
  BasisExpansion out{space_, Orientation::Opposite, {}};
  for (const auto& [w, c] : a.coefficients) out.add(curve_neighborhood_index(w, 1), c);
  return out;
}

const QKElement& QuantumK::star(std::size_t u, std::size_t v) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = stars_.find({u, v}); it != stars_.end()) return it->second;
  }
  const auto coeffs = odot(u, v).apply_one_minus_qshift([this](const BasisExpansion& a) { return psi(a); });
  QKElement r(space_);
  for (std::size_t d = 0; d < coeffs.size(); ++d) r.add(static_cast<int>(d), coeffs[d]);
  std::lock_guard lock(mutex_);
  return stars_.emplace(std::make_pair(u, v), std::move(r)).first->second;
}

QKElement QuantumK::star_opposite(std::size_t u, std::size_t v) const {
  QKElement r(space_);
  for (const auto& [x, b] : kt_->opposite_to_plain(x_.shape(), v).coefficients)
    for (const auto& [d, e] : star(u, x).terms()) r.add(d, e.scaled(b));
  return r;
}

QKElement QuantumK::basis_element(std::size_t w, int d) const {
  QKElement r(space_);
  r.add_term(d, w, torus().one());
  return r;
}

QKElement QuantumK::multiply(const QKElement& a, const QKElement& b) const {
  QKElement r(space_);
  std::map<std::pair<std::size_t, std::size_t>, QKElement> products;
  for (const auto& [da, ea] : a.terms())
    for (const auto& [db, eb] : b.terms())
      for (const auto& [w, cw] : ea.coefficients)
        for (const auto& [x, cx] : eb.coefficients) {
          auto it = products.find({w, x});
          if (it == products.end()) it = products.emplace(std::make_pair(w, x), star_opposite(w, x)).first;
          const Laurent c = cw * cx;
          for (const auto& [d, e] : it->second.terms()) r.add(da + db + d, e.scaled(c));
        }
  return r;
}

Laurent QuantumK::present(const Laurent& c) const {
  if (torus().is_equivariant()) return c;
  return Laurent(x_.n, c.specialize_ones());
}

StructureTable QuantumK::structure_constants(std::size_t u, std::size_t v, Orientation v_basis) const {
  StructureTable t{x_, torus().is_equivariant(), u, v, v_basis, {}};
  const QKElement prod = v_basis == Orientation::Plain ? star(u, v) : star_opposite(u, v);
  for (const auto& [d, e] : prod.terms())
    for (const auto& [w, c] : e.coefficients) {
      Laurent N = present(c);
      if (!N.is_zero()) t.entries.push_back({w, d, std::move(N)});
    }
  std::stable_sort(t.entries.begin(), t.entries.end(), [this](const StructureEntry& a, const StructureEntry& b) {
    if (a.d != b.d) return a.d < b.d;
    return partition_of(a.w) < partition_of(b.w);
  });
  return t;
}

std::vector<Laurent> QuantumK::chi_q(const QKElement& a) const {
  if (a.is_zero()) return {};
  std::vector<Laurent> out(static_cast<std::size_t>(a.max_degree() + 1), torus().zero());
  for (const auto& [d, e] : a.terms()) out[static_cast<std::size_t>(d)] = e.coefficient_sum(torus().num_vars());
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

Laurent QuantumK::chi_hat(const QKElement& a) const {
  Laurent s = torus().zero();
  for (const auto& c : chi_q(a)) s += c;
  return s;
}

// --- checks -----------------------------------------------------------------

void for_each_pair(std::size_t count, unsigned jobs, const std::function<void(std::size_t, std::size_t)>& f) {
  const std::size_t total = count * count;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) {
      try {
        f(k / count, k % count);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = total;
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

namespace {

std::string pair_label(const QuantumK& qk, std::size_t u, std::size_t v, Orientation o) {
  return "u=(" + qk.partition_of(u).to_string() + ") v=(" + qk.partition_of(v).to_string() + ") " +
         std::string(to_string(o));
}

template <class Check>
CheckReport run_check(const QuantumK& qk, std::string name, unsigned jobs, Check&& check) {
  CheckReport report{std::move(name), 0, {}};
  std::mutex m;
  for_each_pair(qk.size(), jobs, [&](std::size_t u, std::size_t v) {
    std::vector<std::string> bad;
    check(u, v, bad);
    std::lock_guard lock(m);
    ++report.pairs;
    for (auto& s : bad) report.violations.push_back(std::move(s));
  });
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

}  // namespace

CheckReport verify_sum_rule(const QuantumK& qk, unsigned jobs) {
  return run_check(qk, "sum rule", jobs, [&](std::size_t u, std::size_t v, std::vector<std::string>& bad) {
    for (Orientation o : {Orientation::Plain, Orientation::Opposite}) {
      const QKElement prod = o == Orientation::Plain ? qk.star(u, v) : qk.star_opposite(u, v);
      Laurent s = qk.torus().zero();
      for (const auto& [d, e] : prod.terms()) s += e.coefficient_sum(qk.torus().num_vars());
      if (!s.is_one()) bad.push_back(pair_label(qk, u, v, o) + ": sum " + s.to_string());
      if (qk.torus().is_equivariant())
        for (const auto& [d, e] : prod.terms())
          for (const auto& [w, c] : e.coefficients)
            if (!c.is_degree_zero()) bad.push_back(pair_label(qk, u, v, o) + ": coefficient of positive degree");
    }
  });
}

CheckReport verify_euler_degree(const QuantumK& qk, unsigned jobs,
                                const std::function<int(std::size_t, std::size_t)>& independent_dist) {
  return run_check(qk, "chi_q is q^dist", jobs, [&](std::size_t u, std::size_t v, std::vector<std::string>& bad) {
    const int d = qk.dist(u, v);
    if (independent_dist) {
      const int e = independent_dist(u, v);
      if (e != d)
        bad.push_back(pair_label(qk, u, v, Orientation::Plain) + ": dist " + std::to_string(d) + " vs moment graph " +
                      std::to_string(e));
    }
    const auto chi = qk.chi_q(qk.star(u, v));
    bool ok = chi.size() == static_cast<std::size_t>(d + 1);
    for (std::size_t k = 0; ok && k < chi.size(); ++k) ok = static_cast<int>(k) == d ? chi[k].is_one() : chi[k].is_zero();
    if (!ok) {
      std::string s;
      for (std::size_t k = 0; k < chi.size(); ++k) s += (k ? ", " : "") + chi[k].to_string();
      bad.push_back(pair_label(qk, u, v, Orientation::Plain) + ": chi_q [" + s + "] but dist " + std::to_string(d));
    }
  });
}

CheckReport verify_euler_multiplicative(const QuantumK& qk, unsigned jobs) {
  const auto& kt = qk.ktheory();
  const auto shape = qk.grassmannian().shape();
  std::vector<Laurent> chi_opp, chi_plain;
  for (std::size_t w = 0; w < qk.size(); ++w) {
    chi_opp.push_back(kt.euler_char(kt.schubert_class(shape, w, Orientation::Opposite)));
    chi_plain.push_back(kt.euler_char(kt.schubert_class(shape, w, Orientation::Plain)));
  }
  return run_check(qk, "chi_hat multiplicative", jobs, [&](std::size_t u, std::size_t v, std::vector<std::string>& bad) {
    for (Orientation o : {Orientation::Plain, Orientation::Opposite}) {
      const QKElement prod = o == Orientation::Plain ? qk.star(u, v) : qk.star_opposite(u, v);
      const Laurent lhs = qk.chi_hat(prod);
      const Laurent rhs = chi_opp[u] * (o == Orientation::Plain ? chi_plain[v] : chi_opp[v]);
      if (!(lhs == rhs)) bad.push_back(pair_label(qk, u, v, o) + ": " + lhs.to_string() + " != " + rhs.to_string());
    }
  });
}

PositivityReport positivity_sign_report(const QuantumK& qk, const StructureTable& table) {
  const auto& X = qk.grassmannian();
  PositivityReport r;
  r.convention = "(-1)^{|w| + n*d - codim(u) - codim(v)} N >= 0, codim(X_v) = m(n-m) - |v|";
  if (table.equivariant) {
    r.convention += " (checked on non-equivariant tables only)";
    return r;
  }
  const int cu = qk.partition_of(table.u).size();
  const int sv = qk.partition_of(table.v).size();
  const int cv = table.v_basis == Orientation::Plain ? X.m * (X.n - X.m) - sv : sv;
  for (const auto& e : table.entries) {
    ++r.entries;
    const int exponent = qk.partition_of(e.w).size() + X.n * e.d - cu - cv;
    const int sign = (exponent % 2 == 0) ? 1 : -1;
    if (e.N.constant_term().sign() * sign < 0)
      r.flagged.push_back("w=(" + qk.partition_of(e.w).to_string() + ") d=" + std::to_string(e.d) + " N=" +
                          e.N.to_string());
  }
  return r;
}

}  // namespace qk
