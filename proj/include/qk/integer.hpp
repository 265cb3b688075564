#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace qk {

/// Arbitrary-precision integer with an inline 64-bit fast path.
///
/// Almost every coefficient met in restriction tables fits in a machine word,
/// so values live in `small_` until an operation overflows; only then is a
/// heap-allocated `cpp_int` created. Results that fit again are demoted.
class Integer {
public:
  using Big = boost::multiprecision::cpp_int;

  Integer() = default;
  Integer(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Integer(const Big& v);
  explicit Integer(std::string_view decimal);

  Integer(const Integer& o) : small_(o.small_), big_(o.big_ ? std::make_unique<Big>(*o.big_) : nullptr) {}
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o);
  Integer& operator=(Integer&&) noexcept = default;

  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_one() const { return !big_ && small_ == 1; }
  int sign() const;
  bool fits_int64() const { return !big_; }
  std::int64_t to_int64() const;  // throws std::overflow_error
  Big to_big() const { return big_ ? *big_ : Big(small_); }
  std::string to_string() const;

  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);
  /// this += a * b without a temporary on the fast path.
  void add_product(const Integer& a, const Integer& b);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  Integer operator-() const;

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);
  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

private:
  void set_big(Big v);

  std::int64_t small_ = 0;
  std::unique_ptr<Big> big_;
};

}  // namespace qk
