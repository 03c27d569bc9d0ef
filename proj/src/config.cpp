#include "stitlab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <tomlplusplus/toml.hpp>

#include "stitlab/error.hpp"

namespace stitlab {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw Error(Errc::Config, path + ": " + what); }

// Typed access to one table with path-qualified diagnostics; unknown keys are
// rejected by finish().
class Reader {
 public:
  Reader(const toml::table& table, std::string prefix) : table_(table), prefix_(std::move(prefix)) {}

  std::string path(std::string_view key) const { return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key); }

  const toml::node* node(std::string_view key) {
    seen_.insert(std::string(key));
    return table_.get(key);
  }

  void number(std::string_view key, double& out) {
    if (const auto* n = node(key)) {
      if (auto v = n->value<double>()) out = *v;
      else fail(path(key), "expected a number");
    }
  }

  void positive(std::string_view key, double& out) {
    number(key, out);
    if (!(out > 0.0)) fail(path(key), "must be positive");
  }

  template <class Int>
  void integer(std::string_view key, Int& out, std::int64_t min = 0) {
    if (const auto* n = node(key)) {
      const auto v = n->value_exact<std::int64_t>();
      if (!v) fail(path(key), "expected an integer");
      if (*v < min) fail(path(key), "must be at least " + std::to_string(min));
      out = static_cast<Int>(*v);
    }
  }

  void string(std::string_view key, std::string& out) {
    if (const auto* n = node(key)) {
      if (auto v = n->value_exact<std::string>()) out = *v;
      else fail(path(key), "expected a string");
    }
  }

  std::vector<double> numbers(std::string_view key) {
    std::vector<double> out;
    const auto* n = node(key);
    if (!n) return out;
    const auto* arr = n->as_array();
    if (!arr) fail(path(key), "expected an array of numbers");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      auto v = (*arr)[i].value<double>();
      if (!v) fail(path(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(*v);
    }
    return out;
  }

  const toml::array* array(std::string_view key) {
    const auto* n = node(key);
    if (!n) return nullptr;
    if (!n->is_array()) fail(path(key), "expected an array");
    return n->as_array();
  }

  /// Sub-table reader, or nullopt when absent.
  std::optional<Reader> table(std::string_view key) {
    const auto* n = node(key);
    if (!n) return std::nullopt;
    if (!n->is_table()) fail(path(key), "expected a table");
    return Reader(*n->as_table(), path(key));
  }

  void finish() const {
    for (const auto& [k, v] : table_)
      if (!seen_.count(std::string(k.str()))) fail(path(k.str()), "unknown key");
  }

 private:
  const toml::table& table_;
  std::string prefix_;
  std::set<std::string> seen_;
};

toml::table parse_document(std::string_view text) {
  try {
    return toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "line " << e.source().begin.line << ", column " << e.source().begin.column << ": " << e.description();
    throw Error(Errc::Config, msg.str());
  }
}

std::string canonical(const toml::table& t) {
  std::ostringstream os;
  os << toml::toml_formatter(t);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Config, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MeasureSpec read_measure(Reader& r, int dim) {
  MeasureSpec m;
  r.string("type", m.type);
  if (m.type == "discrete") {
    const auto* atoms = r.array("atoms");
    if (!atoms || atoms->empty()) fail(r.path("atoms"), "discrete measure needs atoms");
    for (std::size_t i = 0; i < atoms->size(); ++i) {
      const std::string p = r.path("atoms") + "[" + std::to_string(i) + "]";
      const auto* t = (*atoms)[i].as_table();
      if (!t) fail(p, "expected a table {normal, weight}");
      Reader a(*t, p);
      const auto nv = a.numbers("normal");
      if (nv.size() != static_cast<std::size_t>(dim)) fail(a.path("normal"), "expected " + std::to_string(dim) + " components");
      DirectionalAtom atom;
      atom.normal = Vec::Zero();
      for (int k = 0; k < dim; ++k) atom.normal[k] = nv[k];
      a.positive("weight", atom.weight);
      a.finish();
      m.atoms.push_back(atom);
    }
  } else if (m.type != "isotropic" && m.type != "axis-parallel") {
    fail(r.path("type"), "expected \"isotropic\", \"axis-parallel\" or \"discrete\"");
  }
  r.finish();
  try {
    (void)m.build(dim);
  } catch (const Error& e) {
    fail(r.path("atoms"), e.what());
  }
  return m;
}

}  // namespace

HyperplaneMeasure MeasureSpec::build(int dim) const {
  if (type == "isotropic") return HyperplaneMeasure(DirectionalDistribution::isotropic(dim));
  if (type == "axis-parallel") return HyperplaneMeasure(DirectionalDistribution::axis_parallel(dim));
  if (type == "discrete") return HyperplaneMeasure(DirectionalDistribution::discrete(atoms, dim));
  throw Error(Errc::Config, "unknown measure type '" + type + "'");
}

MeasureSpec parse_measure_name(std::string_view name) {
  MeasureSpec m;
  if (name == "iso" || name == "isotropic") m.type = "isotropic";
  else if (name == "axis" || name == "axis-parallel") m.type = "axis-parallel";
  else throw Error(Errc::Config, "measure: expected isotropic or axis-parallel, got '" + std::string(name) + "'");
  return m;
}

std::string config_hash(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

AcceptanceConfig parse_acceptance_config(std::string_view text, std::string* hash) {
  const auto doc = parse_document(text);
  if (hash) *hash = config_hash(canonical(doc));
  AcceptanceConfig c;
  Reader r(doc, "");
  r.integer("master_seed", c.master_seed);
  r.integer("threads", c.threads);
  r.number("alpha", c.alpha);
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) fail("alpha", "must lie in (0, 1)");
  r.integer("min_samples", c.min_samples, 1);
  if (const auto* only = r.array("only")) {
    for (std::size_t i = 0; i < only->size(); ++i) {
      const auto v = (*only)[i].value_exact<std::int64_t>();
      if (!v || *v < 1 || *v > kCriterionCount)
        fail("only[" + std::to_string(i) + "]", "expected a criterion number 1.." + std::to_string(kCriterionCount));
      c.only.push_back(static_cast<int>(*v));
    }
  }
  if (auto w = r.table("window")) {
    w->positive("side", c.window_side);
    w->positive("margin", c.window_margin);
    if (!(2 * c.window_margin < c.window_side)) fail("window.margin", "must be less than half the side");
    w->finish();
  }
  if (auto s = r.table("golden")) {
    s->positive("abs_tol", c.golden.abs_tol);
    s->positive("time_budget", c.golden.time_budget);
    s->finish();
  }
  if (auto s = r.table("moments")) {
    s->integer("n_head", c.moments.n_head, 1);
    s->positive("tolerance", c.moments.tolerance);
    s->positive("time_budget", c.moments.time_budget);
    s->finish();
  }
  if (auto s = r.table("palm")) {
    s->integer("samples", c.palm.samples, 1);
    if (const auto* cases = s->array("cases")) {
      c.palm.cases.clear();
      for (std::size_t i = 0; i < cases->size(); ++i) {
        const std::string p = s->path("cases") + "[" + std::to_string(i) + "]";
        const auto* pair = (*cases)[i].as_array();
        if (!pair || pair->size() != 2) fail(p, "expected [d, j]");
        const auto d = (*pair)[0].value_exact<std::int64_t>();
        const auto j = (*pair)[1].value_exact<std::int64_t>();
        if (!d || *d < 2) fail(p, "dimension must be an integer >= 2");
        if (!j || (*j != 0 && *j != 1)) fail(p, "weight index must be 0 or 1");
        c.palm.cases.emplace_back(static_cast<int>(*d), static_cast<int>(*j));
      }
    }
    s->positive("standard_errors", c.palm.standard_errors);
    s->positive("time_budget", c.palm.time_budget);
    s->finish();
  }
  if (auto s = r.table("window_segments")) {
    auto& p = c.window_segments;
    s->positive("horizon", p.horizon);
    s->integer("replications", p.replications, 1);
    s->integer("min_segments", p.min_segments, 1);
    s->integer("test_samples", p.test_samples, 1);
    s->positive("mean_tolerance", p.mean_tolerance);
    s->positive("time_budget", p.time_budget);
    s->positive("birth_time_budget", p.birth_time_budget);
    s->finish();
  }
  if (auto s = r.table("line_sections")) {
    auto& p = c.line_sections;
    s->positive("horizon", p.horizon);
    s->integer("probes", p.probes, 1);
    s->integer("probes_per_line", p.probes_per_line, 1);
    s->positive("tolerance", p.tolerance);
    s->positive("time_budget", p.time_budget);
    s->finish();
  }
  if (auto s = r.table("mecke")) {
    auto& p = c.mecke;
    s->positive("horizon", p.horizon);
    s->integer("replications", p.replications, 2);
    s->integer("grid_nodes", p.grid_nodes, 2);
    s->integer("inner_mc", p.inner_mc, 1);
    s->positive("time_budget", p.time_budget);
    s->finish();
  }
  if (auto s = r.table("stability")) {
    auto& p = c.stability;
    s->integer("replications", p.replications, 2);
    s->integer("intensity_replications", p.intensity_replications, 2);
    s->positive("intensity_tolerance", p.intensity_tolerance);
    s->positive("time_budget", p.time_budget);
    s->finish();
  }
  if (auto s = r.table("first_jump")) {
    s->integer("replications", c.first_jump.replications, 2);
    s->positive("time_budget", c.first_jump.time_budget);
    s->finish();
  }
  r.finish();
  return c;
}

AcceptanceConfig load_acceptance_config(const std::string& path, std::string* hash) {
  return parse_acceptance_config(read_file(path), hash);
}

SimulateConfig parse_simulate_config(std::string_view text) {
  const auto doc = parse_document(text);
  SimulateConfig c;
  c.config_hash = config_hash(canonical(doc));
  Reader r(doc, "");
  r.integer("seed", c.seed);
  r.positive("horizon", c.horizon);
  r.integer("max_cells", c.max_cells, 1);
  r.string("output", c.output);
  r.string("svg", c.svg);
  auto w = r.table("window");
  if (!w) fail("window", "required table is missing");
  const auto lo = w->numbers("lo");
  const auto hi = w->numbers("hi");
  if (lo.size() != 2 && lo.size() != 3) fail(w->path("lo"), "expected 2 or 3 coordinates");
  if (hi.size() != lo.size()) fail(w->path("hi"), "must have as many coordinates as lo");
  c.dim = static_cast<int>(lo.size());
  c.lo = c.hi = Vec::Zero();
  for (int k = 0; k < c.dim; ++k) {
    c.lo[k] = lo[k];
    c.hi[k] = hi[k];
    if (!(hi[k] > lo[k])) fail(w->path("hi") + "[" + std::to_string(k) + "]", "must exceed lo");
  }
  w->finish();
  if (auto m = r.table("measure")) c.measure = read_measure(*m, c.dim);
  r.finish();
  return c;
}

SimulateConfig load_simulate_config(const std::string& path) { return parse_simulate_config(read_file(path)); }

}  // namespace stitlab
