#include "qk/weyl.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace qk;

namespace {

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// Bruhat order as the transitive closure of w < w t_{ij} with l increasing.
std::set<std::pair<std::uint64_t, std::uint64_t>> bruhat_closure(int n) {
  const auto perms = all_permutations(n);
  std::set<std::pair<std::uint64_t, std::uint64_t>> rel;
  for (const auto& w : perms) rel.insert({w.code(), w.code()});
  std::vector<Permutation> by_len = perms;
  std::sort(by_len.begin(), by_len.end(), [](const auto& a, const auto& b) { return a.length() > b.length(); });
  // Process from the top so every cover's up-set is complete.
  std::map<std::uint64_t, std::set<std::uint64_t>> up;
  for (const auto& w : by_len) {
    auto& s = up[w.code()];
    s.insert(w.code());
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const auto x = w.times_transposition(i, j);
        if (x.length() > w.length()) s.insert(up[x.code()].begin(), up[x.code()].end());
      }
  }
  for (const auto& [w, s] : up)
    for (auto x : s) rel.insert({w, x});
  return rel;
}

}  // namespace

TEST(Permutation, BasicOperations) {
  const auto w = Permutation::parse("[2,4,1,3]");
  EXPECT_EQ(w.length(), 3);
  EXPECT_EQ(w.inverse().to_string(), "[3,1,4,2]");
  EXPECT_EQ(w * w.inverse(), Permutation::identity(4));
  EXPECT_EQ(w.times_simple(1).to_string(), "[4,2,1,3]");
  EXPECT_EQ(w.simple_times(1).to_string(), "[1,4,2,3]");
  EXPECT_EQ(Permutation::longest(4).length(), 6);
  EXPECT_THROW(Permutation::parse("[1,1,2]"), std::invalid_argument);
  EXPECT_THROW(Permutation::parse("1,2"), std::invalid_argument);
}

TEST(Permutation, BruhatMatchesTranspositionClosure) {
  for (int n = 1; n <= 5; ++n) {
    const auto rel = bruhat_closure(n);
    for (const auto& u : all_permutations(n))
      for (const auto& v : all_permutations(n))
        EXPECT_EQ(bruhat_leq(u, v), rel.count({u.code(), v.code()}) == 1) << u.to_string() << " " << v.to_string();
  }
}

TEST(Parabolic, CosetRepresentatives) {
  for (int n = 2; n <= 6; ++n)
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
      std::vector<int> dims;
      for (int i = 1; i < n; ++i)
        if (mask >> (i - 1) & 1) dims.push_back(i);
      const FlagShape shape(n, dims);
      const auto P = shape.parabolic();
      EXPECT_EQ(FlagShape::from_parabolic(P), shape);
      const FlagVariety X(shape);
      std::size_t expected = 1;
      {
        int total = 0;
        for (int b : shape.block_sizes()) {
          for (int k = 1; k <= b; ++k) expected = expected * static_cast<std::size_t>(total + k) / static_cast<std::size_t>(k);
          total += b;
        }
      }
      EXPECT_EQ(X.size(), expected) << shape.to_string();
      for (std::size_t i = 1; i < X.size(); ++i) EXPECT_LE(X.length(i - 1), X.length(i));
      for (const auto& w : all_permutations(n)) {
        const auto lo = min_coset_rep(w, P), hi = max_coset_rep(w, P);
        EXPECT_TRUE(bruhat_leq(lo, w));
        EXPECT_TRUE(bruhat_leq(w, hi));
        EXPECT_EQ(lo.length() + parabolic_component_length(w, P), w.length());
        EXPECT_EQ(X.point(X.index_of(w)), lo);
      }
    }
}

TEST(Partition, Dictionary) {
  EXPECT_EQ(partition_to_minrep(Partition({1}), 2, 4).to_string(), "[1,3,2,4]");
  EXPECT_EQ(partition_to_minrep(Partition({2, 2}), 2, 4).to_string(), "[3,4,1,2]");
  EXPECT_EQ(partition_to_minrep(Partition(), 2, 4), Permutation::identity(4));
  EXPECT_THROW(partition_to_minrep(Partition({3}), 2, 4), BoxError);
  EXPECT_EQ(Partition::parse("2,1").to_string(), "2,1");
  EXPECT_EQ(Partition::parse(""), Partition());
  EXPECT_THROW(Partition::parse("1,2"), std::invalid_argument);
  for (int n = 2; n <= 7; ++n)
    for (int m = 1; m < n; ++m) {
      const FlagVariety X(FlagShape::grassmannian(m, n));
      for (const auto& w : X.points()) {
        const auto lambda = minrep_to_partition(w, m);
        EXPECT_EQ(lambda.size(), w.length());
        EXPECT_EQ(partition_to_minrep(lambda, m, n), w);
      }
    }
}

TEST(Parabolic, SchubertTransportPreservesOrder) {
  // Image and preimage indices are monotone for the Bruhat order, and image of
  // preimage is the identity.
  for (int n = 3; n <= 5; ++n) {
    const FlagShape fine = FlagShape::full(n);
    for (int m = 1; m < n; ++m) {
      const auto R = fine.parabolic(), Q = FlagShape::grassmannian(m, n).parabolic();
      const FlagVariety X(FlagShape::grassmannian(m, n));
      for (Orientation o : {Orientation::Plain, Orientation::Opposite})
        for (const auto& a : X.points()) {
          EXPECT_EQ(schubert_image_index(schubert_preimage_index(a, R, Q, o), R, Q, o), a);
          for (const auto& b : X.points())
            if (bruhat_leq(a, b))
              EXPECT_TRUE(bruhat_leq(schubert_preimage_index(a, R, Q, o), schubert_preimage_index(b, R, Q, o)));
        }
    }
  }
}

TEST(FlagShape, Refinement) {
  const FlagShape t(5, {1, 2, 4}), x(5, {2}), y(5, {1, 4});
  EXPECT_TRUE(t.refines(x));
  EXPECT_TRUE(t.refines(y));
  EXPECT_FALSE(x.refines(y));
  EXPECT_EQ(FlagShape(5, {0, 5}).dims().size(), 0u);
  EXPECT_EQ(FlagVariety(FlagShape(5, {})).size(), 1u);
  EXPECT_EQ(t.to_string(), "Fl(1,2,4;5)");
}
