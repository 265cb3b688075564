#include "qk/table_json.hpp"

#include "json.hpp"

#include <algorithm>

namespace qk {

using ordered_json = nlohmann::ordered_json;

std::string table_to_json(const QuantumK& qk, const StructureTable& table) {
  ordered_json j;
  j["space"] = table.space.to_string();
  j["equivariant"] = table.equivariant;
  j["u"] = qk.partition_of(table.u).to_string();
  j["v"] = qk.partition_of(table.v).to_string();
  j["v_basis"] = std::string(to_string(table.v_basis));
  ordered_json terms = ordered_json::array();
  for (const auto& e : table.entries) {
    ordered_json t;
    t["w"] = qk.partition_of(e.w).to_string();
    t["d"] = e.d;
    t["N"] = e.N.to_string();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  j["sum_check"] = table.sum().to_string();
  return j.dump();
}

std::vector<std::pair<std::size_t, std::size_t>> table_pair_order(const QuantumK& qk) {
  std::vector<std::size_t> order(qk.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Partition pa = qk.partition_of(a), pb = qk.partition_of(b);
    if (pa.size() != pb.size()) return pa.size() < pb.size();
    return pa < pb;
  });
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u : order)
    for (std::size_t v : order) pairs.emplace_back(u, v);
  return pairs;
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const nlohmann::json& j, const char* key) {
  const auto& f = field(j, key);
  if (!f.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
  return f.get<std::string>();
}

Partition partition_field(const nlohmann::json& j, const char* key, const Grassmannian& X) {
  Partition p;
  try {
    p = Partition::parse(string_field(j, key));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
  if (!p.fits_box(X.m, X.n - X.m)) throw SchemaError(std::string("field '") + key + "' does not fit the box");
  return p;
}

Laurent laurent_field(const nlohmann::json& j, const char* key, int nvars) {
  try {
    return Laurent::parse(string_field(j, key), nvars);
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
}

IngestedTable ingest_object(const nlohmann::json& j) {
  IngestedTable t;
  try {
    t.space = Grassmannian::parse(string_field(j, "space"));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(e.what());
  }
  if (t.space.n > kMaxVariables) throw SchemaError("space too large for the coefficient ring");
  const auto& eq = field(j, "equivariant");
  if (!eq.is_boolean()) throw SchemaError("field 'equivariant' must be a boolean");
  t.equivariant = eq.get<bool>();
  t.u = partition_field(j, "u", t.space);
  t.v = partition_field(j, "v", t.space);
  const std::string basis = string_field(j, "v_basis");
  if (basis == "plain")
    t.v_basis = Orientation::Plain;
  else if (basis == "opposite")
    t.v_basis = Orientation::Opposite;
  else
    throw SchemaError("field 'v_basis' must be plain or opposite");
  const auto& terms = field(j, "terms");
  if (!terms.is_array()) throw SchemaError("field 'terms' must be an array");
  t.recomputed_sum = Laurent(t.space.n);
  for (const auto& term : terms) {
    IngestedTerm it;
    it.w = partition_field(term, "w", t.space);
    const auto& d = field(term, "d");
    if (!d.is_number_integer() || d.get<long long>() < 0) throw SchemaError("field 'd' must be a non-negative integer");
    it.d = d.get<int>();
    it.N = laurent_field(term, "N", t.space.n);
    t.recomputed_sum += it.N;
    t.terms.push_back(std::move(it));
  }
  t.declared_sum = laurent_field(j, "sum_check", t.space.n);
  return t;
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

IngestedTable ingest_table_json(std::string_view text) { return ingest_object(parse_json(text)); }

std::vector<IngestedTable> ingest_table_document(std::string_view text) {
  const auto j = parse_json(text);
  std::vector<IngestedTable> out;
  if (j.is_array()) {
    for (const auto& o : j) out.push_back(ingest_object(o));
  } else {
    out.push_back(ingest_object(j));
  }
  return out;
}

}  // namespace qk
