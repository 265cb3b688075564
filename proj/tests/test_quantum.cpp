#include "qk/oracles.hpp"
#include "qk/quantum.hpp"
#include "qk/table_json.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qk;

namespace {

std::shared_ptr<const KTheory> engine(int n, bool equivariant) {
  return std::make_shared<const KTheory>(equivariant ? Torus::equivariant(n) : Torus::generic_line(n));
}

std::size_t at(const QuantumK& q, const char* p) { return q.index_of(Partition::parse(p)); }

std::map<std::pair<int, std::string>, Integer> integer_terms(const QuantumK& q, const QKElement& e) {
  std::map<std::pair<int, std::string>, Integer> out;
  for (const auto& [d, x] : e.terms())
    for (const auto& [w, c] : x.coefficients) {
      Integer v = c.specialize_ones();
      if (!v.is_zero()) out[{d, q.partition_of(w).to_string()}] = v;
    }
  return out;
}

}  // namespace

TEST(Quantum, KernelSpanShapes) {
  QuantumK q({2, 5}, engine(5, false));
  EXPECT_EQ(q.kernel_span_shapes(0).first, FlagShape::grassmannian(2, 5));
  EXPECT_EQ(q.kernel_span_shapes(0).second, FlagShape::grassmannian(2, 5));
  EXPECT_EQ(q.kernel_span_shapes(1).first, FlagShape(5, {1, 3}));
  EXPECT_EQ(q.kernel_span_shapes(1).second, FlagShape(5, {1, 2, 3}));
  EXPECT_EQ(q.kernel_span_shapes(2).first, FlagShape(5, {4}));
  EXPECT_EQ(q.kernel_span_shapes(2).second, FlagShape(5, {2, 4}));
  EXPECT_EQ(q.kernel_span_shapes(3).first, FlagShape(5, {}));
  EXPECT_EQ(q.diameter(), 2);
}

TEST(Quantum, CurveNeighborhoodsMatchMomentGraph) {
  for (int n = 2; n <= 6; ++n)
    for (int m = 1; m < n; ++m) {
      QuantumK q({m, n}, engine(n, false));
      oracles::MomentGraph g(m, n);
      for (std::size_t w = 0; w < q.size(); ++w)
        for (int d = 0; d <= q.diameter() + 1; ++d) {
          const auto pts = g.gamma(g.opposite_schubert_points(q.space()->point(w)), d);
          EXPECT_EQ(q.space()->point(q.curve_neighborhood_by_diagram(w, d)), g.opposite_index_of(pts))
              << "Gr(" << m << "," << n << ") w=" << q.partition_of(w).to_string() << " d=" << d;
        }
      EXPECT_TRUE(q.validate_shift_rule());
    }
}

TEST(Quantum, ShiftRuleExamples) {
  EXPECT_EQ(QuantumK::shift_rule(Partition({2, 2}), 1), Partition({1}));
  EXPECT_EQ(QuantumK::shift_rule(Partition({3, 2, 1}), 1), Partition({1}));
  EXPECT_EQ(QuantumK::shift_rule(Partition({4, 4, 3}), 2), Partition({1}));
  EXPECT_EQ(QuantumK::shift_rule(Partition({2, 1}), 0), Partition({2, 1}));
  QuantumK q({2, 4}, engine(4, false));
  EXPECT_EQ(q.partition_of(q.curve_neighborhood_by_diagram(at(q, "2,2"), 1)), Partition({1}));
}

TEST(Quantum, DistanceMatchesMomentGraph) {
  for (auto [m, n] : {std::pair{2, 4}, {2, 5}, {3, 6}}) {
    QuantumK q({m, n}, engine(n, false));
    oracles::MomentGraph g(m, n);
    for (std::size_t u = 0; u < q.size(); ++u)
      for (std::size_t v = 0; v < q.size(); ++v)
        EXPECT_EQ(q.dist(u, v), g.dist(q.space()->point(u), q.space()->point(v)));
  }
}

TEST(Quantum, TotalSpaceRouteAgrees) {
  for (auto [m, n, eq] : {std::tuple{1, 3, true}, {2, 4, true}, {2, 5, false}}) {
    QuantumK q({m, n}, engine(n, eq));
    for (std::size_t u = 0; u < q.size(); ++u)
      for (std::size_t v = 0; v < q.size(); ++v)
        for (int d = 0; d <= q.diameter(); ++d)
          ASSERT_TRUE(q.projected_gw_class(u, v, d) == q.projected_gw_class_via_total_space(u, v, d))
              << u << " " << v << " " << d;
  }
}

TEST(Quantum, ProjectedClassesAreGkmAndNested) {
  QuantumK q({2, 4}, engine(4, true));
  for (std::size_t u = 0; u < q.size(); ++u)
    for (std::size_t v = 0; v < q.size(); ++v) {
      const auto series = q.odot(u, v);
      EXPECT_LE(series.stabilization_degree(), static_cast<std::size_t>(q.dist(u, v) + q.diameter() + 1));
      for (int d = 0; d <= q.diameter(); ++d) {
        const auto cls = q.projected_gw_class(u, v, d);
        EXPECT_TRUE(q.ktheory().satisfies_gkm(cls));
        EXPECT_EQ(cls.is_zero(), d < q.dist(u, v));
        if (!cls.is_zero()) EXPECT_TRUE(q.ktheory().euler_char(cls).is_one());
      }
    }
}

TEST(Quantum, ProjectiveLine) {
  QuantumK q({1, 2}, engine(2, true));
  const auto& p = q.star(at(q, "1"), at(q, ""));
  ASSERT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.terms().begin()->first, 1);
  EXPECT_EQ(p.terms().begin()->second.coefficients.size(), 1u);
  EXPECT_TRUE(p.terms().begin()->second.coefficients.at(0).is_one());
}

TEST(Quantum, GrassmannianTwoFourProducts) {
  QuantumK q({2, 4}, engine(4, false));
  // O^1 * O^{2,1} = O^{2,2} + q - q O^1.
  std::map<std::pair<int, std::string>, Integer> want{{{0, "2,2"}, 1}, {{1, ""}, 1}, {{1, "1"}, -1}};
  EXPECT_EQ(integer_terms(q, q.star_opposite(at(q, "1"), at(q, "2,1"))), want);
  // O^{2,2} * O^{2,2} = q^2 in quantum cohomology; O^{2,2} * O^1 = q O^1.
  std::map<std::pair<int, std::string>, Integer> sq{{{2, ""}, 1}};
  EXPECT_EQ(integer_terms(q, q.star_opposite(at(q, "2,2"), at(q, "2,2"))), sq);
  std::map<std::pair<int, std::string>, Integer> pt{{{1, "1"}, 1}};
  EXPECT_EQ(integer_terms(q, q.star_opposite(at(q, "2,2"), at(q, "1"))), pt);
}

TEST(Quantum, RingLawsGrTwoFour) {
  QuantumK q({2, 4}, engine(4, true));
  const std::size_t N = q.size();
  for (std::size_t u = 0; u < N; ++u) {
    EXPECT_EQ(q.star_opposite(0, u), q.basis_element(u));
    for (std::size_t v = 0; v < N; ++v) EXPECT_EQ(q.star_opposite(u, v), q.star_opposite(v, u));
  }
  std::mt19937 rng(1);
  for (int k = 0; k < 20; ++k) {
    const std::size_t a = rng() % N, b = rng() % N, c = rng() % N;
    EXPECT_EQ(q.multiply(q.star_opposite(a, b), q.basis_element(c)),
              q.multiply(q.basis_element(a), q.star_opposite(b, c)));
  }
}

TEST(Quantum, EquivariantChecksSmallShapes) {
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 4}}) {
    QuantumK q({m, n}, engine(n, true));
    EXPECT_TRUE(verify_sum_rule(q).passed());
    EXPECT_TRUE(verify_euler_degree(q).passed());
    EXPECT_TRUE(verify_euler_multiplicative(q, 2).passed());
  }
}

TEST(Quantum, StructureTableOrderingAndJson) {
  QuantumK q({2, 4}, engine(4, true));
  const auto t = q.structure_constants(at(q, "1"), at(q, "1"), Orientation::Plain);
  for (std::size_t i = 1; i < t.entries.size(); ++i) {
    const auto &a = t.entries[i - 1], &b = t.entries[i];
    EXPECT_TRUE(a.d < b.d || (a.d == b.d && q.partition_of(a.w) < q.partition_of(b.w)));
  }
  EXPECT_TRUE(t.sum().is_one());
  const std::string json = table_to_json(q, t);
  EXPECT_EQ(json.rfind(R"({"space":"gr:2,4","equivariant":true,"u":"1","v":"1","v_basis":"plain","terms":[)", 0), 0u);
  const auto back = ingest_table_json(json);
  EXPECT_TRUE(back.sum_matches());
  EXPECT_TRUE(back.recomputed_sum.is_one());
  ASSERT_EQ(back.terms.size(), t.entries.size());
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    EXPECT_EQ(back.terms[i].N, t.entries[i].N);
    EXPECT_EQ(back.terms[i].w, q.partition_of(t.entries[i].w));
  }
  EXPECT_THROW(ingest_table_json("{}"), SchemaError);
  EXPECT_THROW(ingest_table_json("not json"), SchemaError);
  auto tampered = json;
  tampered.replace(tampered.rfind("\"1\""), 3, "\"2\"");
  EXPECT_FALSE(ingest_table_json(tampered).sum_matches());
}

TEST(Quantum, TableOrder) {
  QuantumK q({2, 4}, engine(4, false));
  const auto pairs = table_pair_order(q);
  ASSERT_EQ(pairs.size(), 36u);
  EXPECT_EQ(q.partition_of(pairs.front().first), Partition());
  EXPECT_EQ(q.partition_of(pairs[6].first), Partition({1}));
  EXPECT_EQ(q.partition_of(pairs[12].first), Partition({1, 1}));
  EXPECT_EQ(q.partition_of(pairs[18].first), Partition({2}));
}

TEST(Quantum, PositivityReportOnOppositeProducts) {
  QuantumK q({2, 5}, engine(5, false));
  for (std::size_t u = 0; u < q.size(); ++u)
    for (std::size_t v = 0; v < q.size(); ++v) {
      const auto r = positivity_sign_report(q, q.structure_constants(u, v, Orientation::Opposite));
      EXPECT_TRUE(r.flagged.empty()) << r.flagged.front();
    }
}

TEST(Quantum, GrassmannianParsing) {
  EXPECT_EQ(Grassmannian::parse("gr:2,4"), (Grassmannian{2, 4}));
  EXPECT_THROW(Grassmannian::parse("gr:4,2"), std::invalid_argument);
  EXPECT_THROW(Grassmannian::parse("gr:2"), std::invalid_argument);
  EXPECT_THROW(Grassmannian::parse("gr:2,4x"), std::invalid_argument);
  EXPECT_THROW(Grassmannian::parse("pn:2,4"), std::invalid_argument);
}
