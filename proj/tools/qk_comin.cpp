// qk-comin: structure constants, distances and verification for the quantum
// K-theory of Grassmannians.
//
// Exit codes: 0 success, 1 verification failure, 2 usage / parse / budget
// error, 3 I/O error.

#include "qk/cache.hpp"
#include "qk/oracles.hpp"
#include "qk/quantum.hpp"
#include "qk/table_json.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace qk;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string space;
  bool equivariant = false;
  std::string v_basis = "plain";
  bool oracle = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool no_cache = false;
  std::string out;
  int max_n = 8;
  int max_n_equivariant = 5;

  std::string u, v, w, check = "all", ingest;
  int d = 0;
  bool positivity = false;
};

Grassmannian parse_space(const Options& o) {
  if (o.space.empty()) throw UsageError("--space gr:m,n is required");
  Grassmannian X;
  try {
    X = Grassmannian::parse(o.space);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const int ceiling = o.equivariant ? o.max_n_equivariant : o.max_n;
  if (X.n > ceiling)
    throw UsageError(X.to_string() + " is over budget (n <= " + std::to_string(ceiling) +
                     (o.equivariant ? " equivariant)" : " non-equivariant)"));
  if (X.n > (o.equivariant ? kMaxVariables : 16)) throw UsageError(X.to_string() + " exceeds the engine limits");
  return X;
}

QuantumK make_engine(const Options& o) {
  const Grassmannian X = parse_space(o);
  std::optional<std::filesystem::path> dir;
  if (!o.no_cache) dir = cache::default_directory();
  auto kt = std::make_shared<const KTheory>(o.equivariant ? Torus::equivariant(X.n) : Torus::generic_line(X.n), dir);
  return QuantumK(X, kt);
}

Orientation parse_basis(const std::string& s) {
  if (s == "plain") return Orientation::Plain;
  if (s == "opposite") return Orientation::Opposite;
  throw UsageError("--v-basis must be plain or opposite");
}

std::size_t parse_index(const QuantumK& q, const std::string& text, const char* what) {
  try {
    return q.index_of(Partition::parse(text));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  const std::filesystem::path path(o.out);
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f << text;
    f.close();
    if (!f) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write " + path.string());
  }
}

int cmd_product(const Options& o) {
  const auto q = make_engine(o);
  const auto u = parse_index(q, o.u, "--u"), v = parse_index(q, o.v, "--v");
  const auto table = q.structure_constants(u, v, parse_basis(o.v_basis));
  if (o.positivity) {
    const auto r = positivity_sign_report(q, table);
    std::cerr << "positivity convention: " << r.convention << "\n";
    for (const auto& f : r.flagged) std::cerr << "sign anomaly: " << f << "\n";
  }
  if (o.oracle && !q.torus().is_equivariant() && parse_basis(o.v_basis) == Orientation::Opposite &&
      q.grassmannian().n <= 6) {
    const auto lr = oracles::lr_constants_setvalued(q.partition_of(u), q.partition_of(v), q.grassmannian().m,
                                           q.grassmannian().n);
    std::map<Partition, Integer> mine;
    for (const auto& e : table.entries)
      if (e.d == 0) mine[q.partition_of(e.w)] = e.N.constant_term();
    if (mine != lr) {
      std::cerr << "oracle mismatch: classical sector disagrees with set-valued tableaux\n";
      return 1;
    }
  }
  emit(o, table_to_json(q, table) + "\n");
  return 0;
}

int cmd_dist(const Options& o) {
  const auto q = make_engine(o);
  if (parse_basis(o.v_basis) != Orientation::Plain) throw UsageError("dist takes v in the plain basis");
  const auto u = parse_index(q, o.u, "--u"), v = parse_index(q, o.v, "--v");
  const int d = q.dist(u, v);
  if (o.oracle && q.grassmannian().n <= 6) {
    oracles::MomentGraph g(q.grassmannian().m, q.grassmannian().n);
    if (g.dist(q.space()->point(u), q.space()->point(v)) != d) {
      std::cerr << "oracle mismatch: moment graph distance differs\n";
      return 1;
    }
  }
  nlohmann::ordered_json j;
  j["dist"] = d;
  emit(o, j.dump() + "\n");
  return 0;
}

int cmd_neighborhood(const Options& o) {
  const auto q = make_engine(o);
  const auto w = parse_index(q, o.w, "--w");
  if (o.d < 0) throw UsageError("--d must be non-negative");
  const auto r = q.curve_neighborhood_index(w, o.d);
  if (o.oracle && q.grassmannian().n <= 6) {
    oracles::MomentGraph g(q.grassmannian().m, q.grassmannian().n);
    if (g.opposite_index_of(g.gamma(g.opposite_schubert_points(q.space()->point(w)), o.d)) != q.space()->point(r)) {
      std::cerr << "oracle mismatch: moment graph neighborhood differs\n";
      return 1;
    }
  }
  nlohmann::ordered_json j;
  j["w_minus_d"] = q.partition_of(r).to_string();
  emit(o, j.dump() + "\n");
  return 0;
}

int cmd_table(const Options& o) {
  if (!o.ingest.empty()) {
    std::ifstream in(o.ingest, std::ios::binary);
    if (!in) throw IoError("cannot read " + o.ingest);
    std::stringstream ss;
    ss << in.rdbuf();
    std::vector<IngestedTable> tables;
    try {
      tables = ingest_table_document(ss.str());
    } catch (const SchemaError& e) {
      throw UsageError(o.ingest + ": " + e.what());
    }
    std::size_t bad = 0;
    for (const auto& t : tables)
      if (!t.sum_matches()) {
        ++bad;
        std::cerr << "sum_check mismatch: " << t.space.to_string() << " u=(" << t.u.to_string() << ") v=("
                  << t.v.to_string() << ") declared " << t.declared_sum.to_string() << ", terms sum to "
                  << t.recomputed_sum.to_string() << "\n";
      }
    nlohmann::ordered_json j;
    j["tables"] = tables.size();
    j["sum_check_mismatches"] = bad;
    emit(o, j.dump() + "\n");
    return bad ? 1 : 0;
  }
  const auto q = make_engine(o);
  const Orientation basis = parse_basis(o.v_basis);
  const auto pairs = table_pair_order(q);
  std::vector<std::string> lines(pairs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex m;
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < pairs.size();) {
      try {
        lines[k] = table_to_json(q, q.structure_constants(pairs[k].first, pairs[k].second, basis));
      } catch (...) {
        std::lock_guard lock(m);
        if (!error) error = std::current_exception();
        next = pairs.size();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < o.jobs; ++j) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);
  std::string text = "[\n";
  for (std::size_t k = 0; k < lines.size(); ++k) text += lines[k] + (k + 1 < lines.size() ? ",\n" : "\n");
  text += "]\n";
  emit(o, text);
  return 0;
}

int cmd_verify(const Options& o) {
  const auto q = make_engine(o);
  const bool all = o.check == "all";
  if (!all && o.check != "sum" && o.check != "degree" && o.check != "multiplicative")
    throw UsageError("--check must be all, sum, degree or multiplicative");
  std::vector<CheckReport> reports;
  std::function<int(std::size_t, std::size_t)> oracle_dist;
  std::optional<oracles::MomentGraph> graph;
  const bool oracles_on = o.oracle && q.grassmannian().n <= 6;
  if (o.oracle && !oracles_on) std::cerr << "note: oracles cover n <= 6 only; skipped\n";
  if (oracles_on) {
    graph.emplace(q.grassmannian().m, q.grassmannian().n);
    oracle_dist = [&](std::size_t u, std::size_t v) { return graph->dist(q.space()->point(u), q.space()->point(v)); };
  }
  if (all || o.check == "sum") reports.push_back(verify_sum_rule(q, o.jobs));
  if (all || o.check == "degree") reports.push_back(verify_euler_degree(q, o.jobs, oracle_dist));
  if (all || o.check == "multiplicative") reports.push_back(verify_euler_multiplicative(q, o.jobs));
  if (oracles_on) {
    CheckReport r{"oracles", 0, {}};
    for (std::size_t w = 0; w < q.size(); ++w)
      for (int d = 0; d <= q.diameter() + 1; ++d)
        if (graph->opposite_index_of(graph->gamma(graph->opposite_schubert_points(q.space()->point(w)), d)) !=
            q.space()->point(q.curve_neighborhood_index(w, d)))
          r.violations.push_back("neighborhood w=(" + q.partition_of(w).to_string() + ") d=" + std::to_string(d));
    for (std::size_t u = 0; u < q.size(); ++u)
      for (std::size_t v = 0; v < q.size(); ++v) {
        ++r.pairs;
        const auto lr = oracles::lr_constants_setvalued(q.partition_of(u), q.partition_of(v), q.grassmannian().m,
                                               q.grassmannian().n);
        std::map<Partition, Integer> mine;
        const QKElement prod = q.star_opposite(u, v);
        if (const auto* e = prod.at_degree(0))
          for (const auto& [w, c] : e->coefficients)
            if (auto k = c.specialize_ones(); !k.is_zero()) mine[q.partition_of(w)] = k;
        if (mine != lr)
          r.violations.push_back("classical sector u=(" + q.partition_of(u).to_string() + ") v=(" +
                                 q.partition_of(v).to_string() + ")");
      }
    reports.push_back(std::move(r));
  }
  std::size_t bad = 0;
  for (const auto& r : reports)
    for (const auto& v : r.violations) {
      std::cout << "FAIL " << r.name << ": " << v << "\n";
      ++bad;
    }
  if (bad) {
    std::cout << "FAIL violations=" << bad << "\n";
    return 1;
  }
  std::cout << "PASS pairs=" << q.size() * q.size() << "\n";
  return 0;
}

int cmd_cache(const std::string& action) {
  const auto dir = cache::default_directory();
  if (action == "path") {
    std::cout << dir.string() << "\n";
  } else if (action == "clear") {
    std::cout << "removed " << cache::clear(dir) << "\n";
  } else if (action == "stats") {
    const auto s = cache::stats(dir);
    nlohmann::ordered_json j;
    j["path"] = dir.string();
    j["files"] = s.files;
    j["bytes"] = s.bytes;
    std::cout << j.dump() << "\n";
  } else {
    throw UsageError("cache action must be path, clear or stats");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum K-theory of Grassmannians: exact structure constants and checks", "qk-comin"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--space", o.space, "Grassmannian, e.g. gr:2,4");
  app.add_flag("--equivariant", o.equivariant, "Work in torus-equivariant K-theory");
  app.add_option("--v-basis", o.v_basis, "Basis of the second factor: plain (O_v) or opposite (O^v)");
  app.add_flag("--oracle", o.oracle, "Also cross-check against independent oracles (n <= 6)");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-cache", o.no_cache, "Do not read or write the restriction cache");
  app.add_option("--out", o.out, "Write output to this file instead of standard output");
  app.add_option("--max-n", o.max_n, "Size ceiling for non-equivariant runs");
  app.add_option("--max-n-equivariant", o.max_n_equivariant, "Size ceiling for equivariant runs");

  auto* product = app.add_subcommand("product", "Structure constants of O^u * O_v (or O^u * O^v)");
  product->add_option("--u", o.u, "Partition u")->required();
  product->add_option("--v", o.v, "Partition v")->required();
  product->add_flag("--positivity", o.positivity, "Report sign anomalies on standard error");

  auto* dist = app.add_subcommand("dist", "Smallest degree joining X^u and X_v");
  dist->add_option("--u", o.u, "Partition u")->required();
  dist->add_option("--v", o.v, "Partition v")->required();

  auto* neighborhood = app.add_subcommand("neighborhood", "Index of the degree-d curve neighborhood of X^w");
  neighborhood->add_option("--w", o.w, "Partition w")->required();
  neighborhood->add_option("--d", o.d, "Degree")->required();

  auto* table = app.add_subcommand("table", "All structure-constant tables of a Grassmannian");
  table->add_option("--ingest", o.ingest, "Read a table file and recheck every sum_check instead");

  auto* verify = app.add_subcommand("verify", "Check the sum rule and both Euler characteristic identities");
  verify->add_option("--check", o.check, "all, sum, degree or multiplicative");

  std::string action;
  auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear the restriction cache");
  cache_cmd->add_option("action", action, "path, clear or stats")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*product) return cmd_product(o);
    if (*dist) return cmd_dist(o);
    if (*neighborhood) return cmd_neighborhood(o);
    if (*table) return cmd_table(o);
    if (*verify) return cmd_verify(o);
    if (*cache_cmd) return cmd_cache(action);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
