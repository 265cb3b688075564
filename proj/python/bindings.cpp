#include "qk/cache.hpp"
#include "qk/quantum.hpp"
#include "qk/table_json.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qk;

namespace {

class Engine {
public:
  Engine(const std::string& space, bool equivariant, bool use_cache)
      : q_(Grassmannian::parse(space), make_kt(space, equivariant, use_cache)) {}

  std::string space() const { return q_.grassmannian().to_string(); }
  bool equivariant() const { return q_.torus().is_equivariant(); }
  std::size_t size() const { return q_.size(); }

  std::vector<std::string> partitions() const {
    std::vector<std::string> out;
    for (std::size_t w = 0; w < q_.size(); ++w) out.push_back(q_.partition_of(w).to_string());
    return out;
  }

  std::vector<std::tuple<std::string, int, std::string>> product(const std::string& u, const std::string& v,
                                                                 const std::string& v_basis) const {
    const auto t = table(u, v, v_basis);
    std::vector<std::tuple<std::string, int, std::string>> out;
    for (const auto& e : t.entries) out.emplace_back(q_.partition_of(e.w).to_string(), e.d, e.N.to_string());
    return out;
  }

  std::string product_json(const std::string& u, const std::string& v, const std::string& v_basis) const {
    return table_to_json(q_, table(u, v, v_basis));
  }

  int dist(const std::string& u, const std::string& v) const { return q_.dist(index(u), index(v)); }

  std::string neighborhood(const std::string& w, int d) const {
    if (d < 0) throw std::invalid_argument("degree must be non-negative");
    return q_.partition_of(q_.curve_neighborhood_index(index(w), d)).to_string();
  }

  std::vector<std::string> table_json(const std::string& v_basis) const {
    std::vector<std::string> out;
    for (auto [u, v] : table_pair_order(q_))
      out.push_back(table_to_json(q_, q_.structure_constants(u, v, basis(v_basis))));
    return out;
  }

  std::map<std::string, std::pair<std::size_t, std::vector<std::string>>> verify(unsigned jobs) const {
    std::map<std::string, std::pair<std::size_t, std::vector<std::string>>> out;
    for (const auto& r : {verify_sum_rule(q_, jobs), verify_euler_degree(q_, jobs), verify_euler_multiplicative(q_, jobs)})
      out[r.name] = {r.pairs, r.violations};
    return out;
  }

private:
  static std::shared_ptr<const KTheory> make_kt(const std::string& space, bool equivariant, bool use_cache) {
    const int n = Grassmannian::parse(space).n;
    if (n > (equivariant ? 5 : 8)) throw std::invalid_argument(space + " exceeds the size budget");
    std::optional<std::filesystem::path> dir;
    if (use_cache) dir = cache::default_directory();
    return std::make_shared<const KTheory>(equivariant ? Torus::equivariant(n) : Torus::generic_line(n), dir);
  }

  static Orientation basis(const std::string& s) {
    if (s == "plain") return Orientation::Plain;
    if (s == "opposite") return Orientation::Opposite;
    throw std::invalid_argument("v_basis must be 'plain' or 'opposite'");
  }

  std::size_t index(const std::string& p) const { return q_.index_of(Partition::parse(p)); }

  StructureTable table(const std::string& u, const std::string& v, const std::string& v_basis) const {
    return q_.structure_constants(index(u), index(v), basis(v_basis));
  }

  QuantumK q_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact quantum K-theory of Grassmannians";

  py::class_<Engine>(m, "Engine")
      .def(py::init<const std::string&, bool, bool>(), py::arg("space"), py::arg("equivariant") = false,
           py::arg("cache") = false)
      .def_property_readonly("space", &Engine::space)
      .def_property_readonly("equivariant", &Engine::equivariant)
      .def("__len__", &Engine::size)
      .def("partitions", &Engine::partitions, "Schubert indices as partitions, in Bruhat-compatible order")
      .def("product", &Engine::product, py::arg("u"), py::arg("v"), py::arg("v_basis") = "plain",
           py::call_guard<py::gil_scoped_release>(),
           "Nonzero structure constants of O^u * O_v (or O^u * O^v) as (w, d, N) tuples")
      .def("product_json", &Engine::product_json, py::arg("u"), py::arg("v"), py::arg("v_basis") = "plain",
           py::call_guard<py::gil_scoped_release>())
      .def("dist", &Engine::dist, py::arg("u"), py::arg("v"), py::call_guard<py::gil_scoped_release>())
      .def("neighborhood", &Engine::neighborhood, py::arg("w"), py::arg("d"),
           py::call_guard<py::gil_scoped_release>(), "Partition of w(-d)")
      .def("table_json", &Engine::table_json, py::arg("v_basis") = "plain", py::call_guard<py::gil_scoped_release>())
      .def("verify", &Engine::verify, py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>(),
           "Runs every identity check; returns name -> (pairs, violations)");

  m.def(
      "ingest",
      [](const std::string& text) {
        std::vector<py::dict> out;
        for (const auto& t : ingest_table_document(text)) {
          py::dict d;
          d["space"] = t.space.to_string();
          d["u"] = t.u.to_string();
          d["v"] = t.v.to_string();
          d["declared_sum"] = t.declared_sum.to_string();
          d["recomputed_sum"] = t.recomputed_sum.to_string();
          d["sum_matches"] = t.sum_matches();
          out.push_back(std::move(d));
        }
        return out;
      },
      py::arg("text"), "Parses table JSON and recomputes every sum_check");

  m.def(
      "normalize_laurent", [](const std::string& text, int nvars) { return Laurent::parse(text, nvars).to_string(); },
      py::arg("text"), py::arg("nvars"), "Canonical text form of a Laurent polynomial");

  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<BoxError>(m, "BoxError", PyExc_ValueError);
}
