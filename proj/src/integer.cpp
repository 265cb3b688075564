#include "qk/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace qk {

namespace {
const Integer::Big kMin64(std::numeric_limits<std::int64_t>::min());
const Integer::Big kMax64(std::numeric_limits<std::int64_t>::max());
}  // namespace

Integer::Integer(const Big& v) { set_big(v); }

Integer::Integer(std::string_view decimal) {
  if (decimal.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t pos = (decimal[0] == '-' || decimal[0] == '+') ? 1 : 0;
  if (pos == decimal.size()) throw std::invalid_argument("bad integer literal");
  for (std::size_t i = pos; i < decimal.size(); ++i)
    if (decimal[i] < '0' || decimal[i] > '9')
      throw std::invalid_argument("bad integer literal: " + std::string(decimal));
  Big v(std::string(decimal.substr(pos)));
  if (decimal[0] == '-') v = -v;
  set_big(std::move(v));
}

Integer& Integer::operator=(const Integer& o) {
  if (this != &o) {
    small_ = o.small_;
    big_ = o.big_ ? std::make_unique<Big>(*o.big_) : nullptr;
  }
  return *this;
}

void Integer::set_big(Big v) {
  if (v >= kMin64 && v <= kMax64) {
    small_ = static_cast<std::int64_t>(v);
    big_.reset();
  } else {
    small_ = 0;
    big_ = std::make_unique<Big>(std::move(v));
  }
}

int Integer::sign() const {
  if (big_) return big_->sign();
  return (small_ > 0) - (small_ < 0);
}

std::int64_t Integer::to_int64() const {
  if (big_) throw std::overflow_error("integer does not fit in 64 bits");
  return small_;
}

std::string Integer::to_string() const {
  return big_ ? big_->str() : std::to_string(small_);
}

Integer& Integer::operator+=(const Integer& o) {
  std::int64_t r;
  if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  set_big(to_big() + o.to_big());
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  std::int64_t r;
  if (!big_ && !o.big_ && !__builtin_sub_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  set_big(to_big() - o.to_big());
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  std::int64_t r;
  if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  set_big(to_big() * o.to_big());
  return *this;
}

void Integer::add_product(const Integer& a, const Integer& b) {
  std::int64_t p, r;
  if (!big_ && !a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &p) &&
      !__builtin_add_overflow(small_, p, &r)) {
    small_ = r;
    return;
  }
  set_big(to_big() + a.to_big() * b.to_big());
}

Integer Integer::operator-() const {
  Integer r;
  if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) {
    r.small_ = -small_;
  } else {
    r.set_big(-to_big());
  }
  return r;
}

bool operator==(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  // Normalized: a big value never fits in int64, so mixed forms differ.
  if (!a.big_ || !b.big_) return false;
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  const auto ab = a.to_big();
  const auto bb = b.to_big();
  if (ab < bb) return std::strong_ordering::less;
  if (ab > bb) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

}  // namespace qk
