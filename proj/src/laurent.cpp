#include "qk/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace qk {

bool exponent_less(const Exponent& a, const Exponent& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Exponent exponent_add(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (int i = 0; i < kMaxVariables; ++i) {
    int s = a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
    if (s > INT16_MAX || s < INT16_MIN) throw std::overflow_error("Laurent exponent overflow");
    r[static_cast<std::size_t>(i)] = static_cast<std::int16_t>(s);
  }
  return r;
}

Exponent exponent_neg(const Exponent& a) {
  Exponent r{};
  for (int i = 0; i < kMaxVariables; ++i) r[static_cast<std::size_t>(i)] = static_cast<std::int16_t>(-a[static_cast<std::size_t>(i)]);
  return r;
}

bool exponent_is_zero(const Exponent& a) {
  return std::all_of(a.begin(), a.end(), [](std::int16_t e) { return e == 0; });
}

int Laurent::check_vars(int k) {
  if (k < 0 || k > kMaxVariables) throw std::invalid_argument("Laurent: variable count out of range");
  return k;
}

Laurent::Laurent(int num_vars, Integer constant) : nvars_(check_vars(num_vars)) {
  if (!constant.is_zero()) terms_.push_back(Term{Exponent{}, std::move(constant)});
}

Laurent Laurent::monomial(int num_vars, const Exponent& e, Integer coefficient) {
  Laurent r(num_vars);
  for (int i = num_vars; i < kMaxVariables; ++i)
    if (e[static_cast<std::size_t>(i)] != 0) throw std::invalid_argument("exponent uses undeclared variable");
  if (!coefficient.is_zero()) r.terms_.push_back(Term{e, std::move(coefficient)});
  return r;
}

bool Laurent::is_one() const {
  return terms_.size() == 1 && exponent_is_zero(terms_[0].exponent) && terms_[0].coefficient.is_one();
}

bool Laurent::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && exponent_is_zero(terms_[0].exponent));
}

Integer Laurent::constant_term() const {
  for (const auto& t : terms_)
    if (exponent_is_zero(t.exponent)) return t.coefficient;
  return 0;
}

void Laurent::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return exponent_less(a.exponent, b.exponent); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    Term acc = std::move(terms_[i]);
    std::size_t j = i + 1;
    while (j < terms_.size() && terms_[j].exponent == acc.exponent) acc.coefficient += terms_[j++].coefficient;
    if (!acc.coefficient.is_zero()) terms_[out++] = std::move(acc);
    i = j;
  }
  terms_.resize(out);
}

namespace {

// Merge b into a with sign; both sorted.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && exponent_less(a[i].exponent, b[j].exponent))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || exponent_less(b[j].exponent, a[i].exponent)) {
      out.push_back(Term{b[j].exponent, subtract ? -b[j].coefficient : b[j].coefficient});
      ++j;
    } else {
      Integer c = a[i].coefficient;
      if (subtract)
        c -= b[j].coefficient;
      else
        c += b[j].coefficient;
      if (!c.is_zero()) out.push_back(Term{a[i].exponent, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

void require_same_vars(const Laurent& a, const Laurent& b) {
  if (a.num_vars() != b.num_vars()) throw std::invalid_argument("Laurent: mismatched variable counts");
}

}  // namespace

Laurent& Laurent::operator+=(const Laurent& o) {
  require_same_vars(*this, o);
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  require_same_vars(*this, o);
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

Laurent Laurent::times_monomial(const Exponent& e) const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.exponent = exponent_add(t.exponent, e);
  return r;  // lex order is translation invariant
}

Laurent Laurent::times_scalar(const Integer& c) const {
  if (c.is_zero()) return Laurent(nvars_);
  Laurent r = *this;
  for (auto& t : r.terms_) t.coefficient *= c;
  return r;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  require_same_vars(a, b);
  Laurent r(a.nvars_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].exponent).times_scalar(a.terms_[0].coefficient);
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].exponent).times_scalar(b.terms_[0].coefficient);

  if (a.nvars_ == 1) {
    // Dense convolution; exponents of one variable are contiguous after sorting.
    const int alo = a.terms_.front().exponent[0], ahi = a.terms_.back().exponent[0];
    const int blo = b.terms_.front().exponent[0], bhi = b.terms_.back().exponent[0];
    std::vector<Integer> acc(static_cast<std::size_t>(ahi - alo + bhi - blo + 1));
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_)
        acc[static_cast<std::size_t>(s.exponent[0] - alo + t.exponent[0] - blo)].add_product(s.coefficient, t.coefficient);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      if (acc[k].is_zero()) continue;
      Exponent e{};
      e[0] = static_cast<std::int16_t>(alo + blo + static_cast<int>(k));
      r.terms_.push_back(Term{e, std::move(acc[k])});
    }
    return r;
  }

  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) r.terms_.push_back(Term{exponent_add(s.exponent, t.exponent), s.coefficient * t.coefficient});
  r.normalize();
  return r;
}

void Laurent::add_product(const Laurent& a, const Laurent& b) { *this += a * b; }
void Laurent::sub_product(const Laurent& a, const Laurent& b) { *this -= a * b; }

namespace {

struct LineTerm {
  Exponent base;
  int step;
  const Integer* coefficient;
};

// Groups terms along lines a + Z*m. `k` is a coordinate with m[k] > 0.
std::vector<LineTerm> line_terms(const std::vector<Term>& terms, const Exponent& m, int k) {
  std::vector<LineTerm> lines;
  lines.reserve(terms.size());
  const int mk = m[static_cast<std::size_t>(k)];
  for (const auto& t : terms) {
    const int ak = t.exponent[static_cast<std::size_t>(k)];
    int j = ak >= 0 ? ak / mk : -((-ak + mk - 1) / mk);
    Exponent base{};
    for (int i = 0; i < kMaxVariables; ++i)
      base[static_cast<std::size_t>(i)] = static_cast<std::int16_t>(t.exponent[static_cast<std::size_t>(i)] - j * m[static_cast<std::size_t>(i)]);
    lines.push_back(LineTerm{base, j, &t.coefficient});
  }
  std::sort(lines.begin(), lines.end(), [](const LineTerm& x, const LineTerm& y) {
    if (x.base != y.base) return exponent_less(x.base, y.base);
    return x.step < y.step;
  });
  return lines;
}

int first_nonzero(const Exponent& m) {
  for (int i = 0; i < kMaxVariables; ++i)
    if (m[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

}  // namespace

bool Laurent::divisible_by_binomial(const Exponent& m) const {
  const int k = first_nonzero(m);
  if (k < 0) return terms_.empty();
  const Exponent pos = m[static_cast<std::size_t>(k)] > 0 ? m : exponent_neg(m);
  auto lines = line_terms(terms_, pos, k);
  for (std::size_t i = 0; i < lines.size();) {
    Integer sum = 0;
    std::size_t j = i;
    while (j < lines.size() && lines[j].base == lines[i].base) sum += *lines[j++].coefficient;
    if (!sum.is_zero()) return false;
    i = j;
  }
  return true;
}

Laurent Laurent::exact_div_binomial(const Exponent& m) const {
  const int k = first_nonzero(m);
  if (k < 0) throw NotDivisible("division by 1 - 1");
  if (k >= nvars_) throw std::invalid_argument("binomial uses undeclared variable");
  if (m[static_cast<std::size_t>(k)] < 0) {
    // f / (1 - x^m) = -x^{-m} * f / (1 - x^{-m})
    const Exponent neg = exponent_neg(m);
    return -(exact_div_binomial(neg).times_monomial(neg));
  }
  Laurent q(nvars_);
  auto lines = line_terms(terms_, m, k);
  for (std::size_t i = 0; i < lines.size();) {
    std::size_t j = i;
    Integer prefix = 0;
    int step = lines[i].step;
    // On one line, f = sum f_j y^j and the quotient has coefficients prefix sums.
    while (j < lines.size() && lines[j].base == lines[i].base) {
      const int next = lines[j].step;
      if (!prefix.is_zero()) {
        for (int s = step; s < next; ++s) {
          Exponent e = lines[i].base;
          for (int v = 0; v < kMaxVariables; ++v)
            e[static_cast<std::size_t>(v)] = static_cast<std::int16_t>(e[static_cast<std::size_t>(v)] + s * m[static_cast<std::size_t>(v)]);
          q.terms_.push_back(Term{e, prefix});
        }
      }
      prefix += *lines[j].coefficient;
      step = next;
      ++j;
    }
    if (!prefix.is_zero()) throw NotDivisible("not divisible by 1 - " + monomial_to_string(m, nvars_));
    i = j;
  }
  q.normalize();
  return q;
}

Integer Laurent::specialize_ones() const {
  Integer s = 0;
  for (const auto& t : terms_) s += t.coefficient;
  return s;
}

bool Laurent::is_degree_zero() const {
  for (const auto& t : terms_) {
    int d = 0;
    for (auto e : t.exponent) d += e;
    if (d != 0) return false;
  }
  return true;
}

Laurent Laurent::permute_variables(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != nvars_) throw std::invalid_argument("permute_variables: wrong size");
  Laurent r(nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponent e{};
    for (int i = 0; i < nvars_; ++i) e[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = t.exponent[static_cast<std::size_t>(i)];
    r.terms_.push_back(Term{e, t.coefficient});
  }
  r.normalize();
  return r;
}

Laurent Laurent::invert_variables() const {
  Laurent r(nvars_);
  r.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.push_back(Term{exponent_neg(it->exponent), it->coefficient});
  return r;  // negation reverses lex order
}

Laurent Laurent::substitute(std::span<const Exponent> images, int target_vars) const {
  if (static_cast<int>(images.size()) != nvars_) throw std::invalid_argument("substitute: wrong image count");
  Laurent r(target_vars);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::array<int, kMaxVariables> acc{};
    for (int i = 0; i < nvars_; ++i)
      for (int v = 0; v < kMaxVariables; ++v)
        acc[static_cast<std::size_t>(v)] += t.exponent[static_cast<std::size_t>(i)] * images[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)];
    Exponent e{};
    for (int v = 0; v < kMaxVariables; ++v) {
      if (acc[static_cast<std::size_t>(v)] > INT16_MAX || acc[static_cast<std::size_t>(v)] < INT16_MIN)
        throw std::overflow_error("Laurent exponent overflow");
      e[static_cast<std::size_t>(v)] = static_cast<std::int16_t>(acc[static_cast<std::size_t>(v)]);
    }
    r.terms_.push_back(Term{e, t.coefficient});
  }
  r.normalize();
  return r;
}

bool operator==(const Laurent& a, const Laurent& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exponent != b.terms_[i].exponent || !(a.terms_[i].coefficient == b.terms_[i].coefficient)) return false;
  return true;
}

// --- text grammar -----------------------------------------------------------

std::string monomial_to_string(const Exponent& e, int num_vars) {
  std::string s;
  for (int i = 0; i < num_vars; ++i) {
    const int x = e[static_cast<std::size_t>(i)];
    if (x == 0) continue;
    if (!s.empty()) s += '*';
    s += 't' + std::to_string(i + 1);
    if (x != 1) s += '^' + std::to_string(x);
  }
  return s;
}

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    const bool negative = t.coefficient.sign() < 0;
    if (i == 0)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    const Integer mag = negative ? -t.coefficient : t.coefficient;
    const std::string mono = monomial_to_string(t.exponent, nvars_);
    if (mono.empty())
      s += mag.to_string();
    else if (mag.is_one())
      s += mono;
    else
      s += mag.to_string() + "*" + mono;
  }
  return s;
}

namespace {

[[noreturn]] void grammar_error(std::string_view text, std::string_view why) {
  throw std::invalid_argument("bad Laurent polynomial '" + std::string(text) + "': " + std::string(why));
}

int read_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto first = s.data();
  auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) grammar_error(whole, "bad integer");
  return v;
}

}  // namespace

Laurent Laurent::parse(std::string_view text, int num_vars) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact.empty()) grammar_error(text, "empty");
  Laurent r(num_vars);
  std::size_t pos = 0;
  while (pos < compact.size()) {
    bool negative = false;
    if (compact[pos] == '+' || compact[pos] == '-') {
      negative = compact[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      grammar_error(text, "missing operator");
    }
    // A term ends at the next sign that does not follow '^'.
    std::size_t end = pos;
    while (end < compact.size() && !((compact[end] == '+' || compact[end] == '-') && end > pos && compact[end - 1] != '^')) ++end;
    std::string_view body(compact.data() + pos, end - pos);
    if (body.empty()) grammar_error(text, "empty term");
    Integer coeff = 1;
    Exponent e{};
    bool first = true;
    std::size_t fpos = 0;
    while (fpos <= body.size()) {
      auto star = body.find('*', fpos);
      auto factor = body.substr(fpos, star == std::string_view::npos ? std::string_view::npos : star - fpos);
      if (factor.empty()) grammar_error(text, "empty factor");
      if (factor[0] == 't') {
        auto caret = factor.find('^');
        int var = read_int(factor.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1), text);
        int ex = caret == std::string_view::npos ? 1 : read_int(factor.substr(caret + 1), text);
        if (var < 1 || var > num_vars) grammar_error(text, "variable index out of range");
        int total = e[static_cast<std::size_t>(var - 1)] + ex;
        if (total > INT16_MAX || total < INT16_MIN) grammar_error(text, "exponent overflow");
        e[static_cast<std::size_t>(var - 1)] = static_cast<std::int16_t>(total);
      } else if (first && std::isdigit(static_cast<unsigned char>(factor[0]))) {
        coeff = Integer(factor);
      } else {
        grammar_error(text, "unexpected factor '" + std::string(factor) + "'");
      }
      first = false;
      if (star == std::string_view::npos) break;
      fpos = star + 1;
    }
    if (negative) coeff = -coeff;
    r.terms_.push_back(Term{e, std::move(coeff)});
    pos = end;
  }
  r.normalize();
  return r;
}

}  // namespace qk
