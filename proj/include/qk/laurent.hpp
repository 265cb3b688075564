#pragma once

// Exact arithmetic in the representation ring of the torus: Laurent
// polynomials with arbitrary-precision integer coefficients.

#include "qk/integer.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qk {

inline constexpr int kMaxVariables = 8;
using Exponent = std::array<std::int16_t, kMaxVariables>;

struct Term {
  Exponent exponent{};
  Integer coefficient;
};

class NotDivisible : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Element of Z[t_1^{+-1}, ..., t_k^{+-1}].
///
/// Terms are kept sorted by lexicographic order on exponent vectors with no
/// zero coefficients, so equality is structural and text output is canonical.
class Laurent {
public:
  Laurent() = default;
  explicit Laurent(int num_vars) : nvars_(check_vars(num_vars)) {}
  Laurent(int num_vars, Integer constant);

  static Laurent monomial(int num_vars, const Exponent& e, Integer coefficient = 1);
  /// Parses the text grammar, e.g. "1 - t1*t2^-1".
  static Laurent parse(std::string_view text, int num_vars);

  int num_vars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  /// Constant term (coefficient of the trivial monomial).
  Integer constant_term() const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent operator-() const;

  /// this += a * b.
  void add_product(const Laurent& a, const Laurent& b);
  /// this -= a * b.
  void sub_product(const Laurent& a, const Laurent& b);

  Laurent times_monomial(const Exponent& e) const;
  Laurent times_scalar(const Integer& c) const;

  /// Exact quotient by 1 - x^m for a nontrivial monomial x^m.
  /// Throws NotDivisible when no Laurent polynomial quotient exists.
  Laurent exact_div_binomial(const Exponent& m) const;
  bool divisible_by_binomial(const Exponent& m) const;

  /// Image under every variable = 1.
  Integer specialize_ones() const;
  /// True when every monomial has total degree zero.
  bool is_degree_zero() const;

  /// Substitution t_i -> t_{perm[i]} (0-based indices).
  Laurent permute_variables(std::span<const int> perm) const;
  /// Substitution t_i -> t_i^{-1}.
  Laurent invert_variables() const;
  /// Ring map into `target_vars` variables sending t_i to the monomial images[i].
  Laurent substitute(std::span<const Exponent> images, int target_vars) const;

  std::string to_string() const;

  friend bool operator==(const Laurent& a, const Laurent& b);

private:
  static int check_vars(int k);
  void normalize();  // sort, combine, drop zeros

  int nvars_ = 0;
  std::vector<Term> terms_;
};

bool exponent_less(const Exponent& a, const Exponent& b);
Exponent exponent_add(const Exponent& a, const Exponent& b);
Exponent exponent_neg(const Exponent& a);
bool exponent_is_zero(const Exponent& a);

/// Renders a monomial in the text grammar ("t1*t2^-1", "" for the unit).
std::string monomial_to_string(const Exponent& e, int num_vars);

}  // namespace qk
