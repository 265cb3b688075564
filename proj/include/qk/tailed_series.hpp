#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qk {

class TailNotFixed : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Eventually constant power series in q: coefficients head[0..D-1] followed
/// by `tail` for every q^d with d >= D.
///
/// T needs value semantics, +, -, == and is_zero().
template <class T>
class TailedSeries {
public:
  TailedSeries(std::vector<T> head, T tail) : head_(std::move(head)), tail_(std::move(tail)) { normalize(); }

  std::size_t stabilization_degree() const { return head_.size(); }
  const std::vector<T>& head() const { return head_; }
  const T& tail() const { return tail_; }
  const T& coefficient(std::size_t d) const { return d < head_.size() ? head_[d] : tail_; }

  TailedSeries& operator+=(const TailedSeries& o) {
    const std::size_t D = std::max(head_.size(), o.head_.size());
    std::vector<T> h;
    h.reserve(D);
    for (std::size_t d = 0; d < D; ++d) h.push_back(coefficient(d) + o.coefficient(d));
    head_ = std::move(h);
    tail_ = tail_ + o.tail_;
    normalize();
    return *this;
  }

  template <class Scalar>
  TailedSeries scaled(const Scalar& c) const {
    std::vector<T> h;
    h.reserve(head_.size());
    for (const auto& x : head_) h.push_back(x * c);
    return TailedSeries(std::move(h), tail_ * c);
  }

  /// (1 - q*shift) applied termwise. The tail must be fixed by `shift`, and
  /// the result is then the finite polynomial r_0 + r_1 q + ... + r_D q^D with
  /// r_0 = a_0 and r_d = a_d - shift(a_{d-1}).
  template <class Shift>
  std::vector<T> apply_one_minus_qshift(Shift&& shift) const {
    if (!(shift(tail_) == tail_)) throw TailNotFixed("shift operator does not fix the tail value");
    const std::size_t D = head_.size();
    std::vector<T> out;
    out.reserve(D + 1);
    out.push_back(coefficient(0));
    for (std::size_t d = 1; d <= D; ++d) out.push_back(coefficient(d) - shift(coefficient(d - 1)));
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    return out;
  }

private:
  void normalize() {
    while (!head_.empty() && head_.back() == tail_) head_.pop_back();
  }

  std::vector<T> head_;
  T tail_;
};

}  // namespace qk
