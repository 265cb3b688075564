#pragma once

// JSON form of structure-constant tables:
//
//   {"space":"gr:2,4","equivariant":true,"u":"1","v":"2,1","v_basis":"plain",
//    "terms":[{"w":"2,1","d":0,"N":"1 - t1*t2^-1"}, ...],"sum_check":"1"}
//
// Partitions are comma separated ("" is the empty partition); N uses the
// Laurent text grammar. sum_check is the sum of all N.

#include "qk/quantum.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qk {

/// One compact JSON object, no trailing newline.
std::string table_to_json(const QuantumK& qk, const StructureTable& table);

/// Pairs (u, v) of the table command: sorted by (|u|, u lex, |v|, v lex).
std::vector<std::pair<std::size_t, std::size_t>> table_pair_order(const QuantumK& qk);

struct IngestedTerm {
  Partition w;
  int d = 0;
  Laurent N;
};

struct IngestedTable {
  Grassmannian space;
  bool equivariant = true;
  Partition u, v;
  Orientation v_basis = Orientation::Plain;
  std::vector<IngestedTerm> terms;
  Laurent declared_sum;
  Laurent recomputed_sum;
  bool sum_matches() const { return declared_sum == recomputed_sum; }
};

class SchemaError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Parses one table object and recomputes its sum; throws SchemaError.
IngestedTable ingest_table_json(std::string_view text);
/// Accepts a single object or an array of objects.
std::vector<IngestedTable> ingest_table_document(std::string_view text);

}  // namespace qk
