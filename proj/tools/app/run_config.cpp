#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include <pdmseries/mass_expansion.hpp>

namespace pdmapp {

namespace {

const std::map<std::string, std::set<std::string>>& potential_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"coulomb", {"z"}},
      {"oscillator", {"omega", "offset"}},
      {"linear", {"b", "offset"}},
      {"cornell", {"a", "b", "c"}},
      {"general", {"v1", "v2", "v3", "alpha", "beta"}},
  };
  return keys;
}

const std::map<std::string, std::set<std::string>>& required_potential_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"coulomb", {"z"}},
      {"oscillator", {"omega"}},
      {"linear", {"b"}},
      {"cornell", {"a", "b", "c"}},
      {"general", {"v1", "v2", "v3", "alpha", "beta"}},
  };
  return keys;
}

double param(const std::map<std::string, double>& p, const std::string& key, double fallback = 0.0) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int integral(double x, const std::string& key) {
  if (std::floor(x) != x) throw pdmseries::DomainError(key + " must be an integer");
  return static_cast<int>(x);
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& field, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    if (at.IsDefined() && at.Mark().line >= 0) os << ':' << at.Mark().line + 1 << ':' << at.Mark().column + 1;
    os << ": " << field << ": " << msg;
    throw ConfigError(os.str());
  }

  template <class T>
  T scalar(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected a scalar");
    try {
      return n.as<T>();
    } catch (const YAML::BadConversion&) {
      fail(n, field, "cannot read '" + n.Scalar() + "' as " + type_name<T>());
    }
  }

  template <class T>
  std::vector<T> list(const YAML::Node& n, const std::string& field) const {
    std::vector<T> out;
    if (n.IsScalar()) {
      out.push_back(scalar<T>(n, field));
    } else if (n.IsSequence()) {
      for (std::size_t i = 0; i < n.size(); ++i) out.push_back(scalar<T>(n[i], field + "[" + std::to_string(i) + "]"));
    } else {
      fail(n, field, "expected a scalar or a list");
    }
    if (out.empty()) fail(n, field, "list must not be empty");
    return out;
  }

  void only_keys(const YAML::Node& block, const std::string& field, const std::set<std::string>& allowed) const {
    if (!block.IsMap()) fail(block, field, "expected a mapping");
    for (const auto& kv : block) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, field + "." + key, "unknown field");
    }
  }

 private:
  template <class T>
  static std::string type_name() {
    if constexpr (std::is_same_v<T, int>) return "an integer";
    else if constexpr (std::is_same_v<T, double>) return "a number";
    else if constexpr (std::is_same_v<T, bool>) return "a boolean";
    else return "a string";
  }

  std::string source_;
};

PotentialConfig read_potential(const Reader& rd, const YAML::Node& n) {
  PotentialConfig p;
  if (!n.IsMap()) rd.fail(n, "potential", "expected a mapping");
  if (!n["kind"]) rd.fail(n, "potential.kind", "missing");
  p.kind = rd.scalar<std::string>(n["kind"], "potential.kind");
  const auto it = potential_keys().find(p.kind);
  if (it == potential_keys().end())
    rd.fail(n["kind"], "potential.kind", "unknown kind '" + p.kind + "' (coulomb, oscillator, linear, cornell, general)");
  std::set<std::string> allowed = it->second;
  allowed.insert("kind");
  rd.only_keys(n, "potential", allowed);
  p.params.clear();
  for (const std::string& key : it->second)
    if (n[key]) p.params[key] = rd.scalar<double>(n[key], "potential." + key);
  for (const std::string& key : required_potential_keys().at(p.kind))
    if (!p.params.count(key)) rd.fail(n, "potential." + key, "missing");
  try {
    (void)p.build();
  } catch (const pdmseries::Error& e) {
    rd.fail(n, "potential", e.what());
  }
  return p;
}

MassConfig read_mass(const Reader& rd, const YAML::Node& n, int order) {
  MassConfig m;
  rd.only_keys(n, "mass", {"kind", "m0", "lambda", "coefficients"});
  if (n["kind"]) m.kind = rd.scalar<std::string>(n["kind"], "mass.kind");
  if (m.kind != "constant" && m.kind != "exponential" && m.kind != "custom")
    rd.fail(n["kind"], "mass.kind", "unknown kind '" + m.kind + "' (constant, exponential, custom)");
  if (n["m0"]) m.m0 = rd.scalar<double>(n["m0"], "mass.m0");
  if (n["lambda"]) m.lambda = rd.scalar<double>(n["lambda"], "mass.lambda");
  if (n["coefficients"]) m.coefficients = rd.list<double>(n["coefficients"], "mass.coefficients");
  if (m.kind == "exponential" && !n["lambda"]) rd.fail(n, "mass.lambda", "required for the exponential mass");
  if (m.kind == "custom" && !n["coefficients"]) rd.fail(n, "mass.coefficients", "required for a custom mass");
  try {
    (void)m.build(order);
  } catch (const pdmseries::Error& e) {
    rd.fail(n, "mass", e.what());
  }
  return m;
}

QuantumConfig read_quantum(const Reader& rd, const YAML::Node& n) {
  QuantumConfig q;
  rd.only_keys(n, "quantum", {"dim", "ell", "n"});
  if (n["dim"]) q.dims = rd.list<int>(n["dim"], "quantum.dim");
  if (n["ell"]) q.ells = rd.list<int>(n["ell"], "quantum.ell");
  if (n["n"]) q.radial = rd.list<int>(n["n"], "quantum.n");
  for (int d : q.dims)
    if (d < 1) rd.fail(n["dim"], "quantum.dim", "dimension must be >= 1");
  for (int l : q.ells)
    if (l < 0) rd.fail(n["ell"], "quantum.ell", "ell must be >= 0");
  for (int r : q.radial)
    if (r < 0) rd.fail(n["n"], "quantum.n", "radial index must be >= 0");
  return q;
}

SolverBlock read_solver(const Reader& rd, const YAML::Node& n) {
  SolverBlock s;
  rd.only_keys(n, "solver",
               {"e_lo", "e_hi", "scan_steps", "match_radius", "truncation_order", "tol_e", "max_iter", "recurrence",
                "oracle"});
  if (n["e_lo"]) s.e_lo = rd.scalar<double>(n["e_lo"], "solver.e_lo");
  if (n["e_hi"]) s.e_hi = rd.scalar<double>(n["e_hi"], "solver.e_hi");
  if (n["scan_steps"]) s.scan_steps = rd.scalar<int>(n["scan_steps"], "solver.scan_steps");
  if (n["match_radius"]) s.match_radius = rd.scalar<double>(n["match_radius"], "solver.match_radius");
  if (n["truncation_order"]) s.truncation_order = rd.scalar<int>(n["truncation_order"], "solver.truncation_order");
  if (n["tol_e"]) s.tol_e = rd.scalar<double>(n["tol_e"], "solver.tol_e");
  if (n["max_iter"]) s.max_iter = rd.scalar<int>(n["max_iter"], "solver.max_iter");
  if (n["recurrence"]) s.recurrence = rd.scalar<std::string>(n["recurrence"], "solver.recurrence");
  if (n["oracle"]) s.oracle = rd.scalar<bool>(n["oracle"], "solver.oracle");
  if (!(s.e_lo < s.e_hi) || !(s.e_hi < 0.0)) rd.fail(n, "solver.e_lo/e_hi", "need e_lo < e_hi < 0");
  if (s.scan_steps < 10) rd.fail(n["scan_steps"], "solver.scan_steps", "must be >= 10");
  if (s.truncation_order < 1) rd.fail(n["truncation_order"], "solver.truncation_order", "must be >= 1");
  if (!(s.tol_e > 0.0)) rd.fail(n["tol_e"], "solver.tol_e", "must be > 0");
  if (s.max_iter < 1) rd.fail(n["max_iter"], "solver.max_iter", "must be >= 1");
  if (!(s.match_radius >= 0.0)) rd.fail(n["match_radius"], "solver.match_radius", "must be >= 0");
  if (s.recurrence != "auto" && s.recurrence != "general")
    rd.fail(n["recurrence"], "solver.recurrence", "must be 'auto' or 'general'");
  return s;
}

OutputConfig read_output(const Reader& rd, const YAML::Node& n) {
  OutputConfig o;
  rd.only_keys(n, "output", {"directory", "formats", "coefficients", "wavefunctions", "samples"});
  if (n["directory"]) o.directory = rd.scalar<std::string>(n["directory"], "output.directory");
  if (n["formats"]) o.formats = rd.list<std::string>(n["formats"], "output.formats");
  for (std::size_t i = 0; i < o.formats.size(); ++i)
    if (o.formats[i] != "csv" && o.formats[i] != "json")
      rd.fail(n["formats"], "output.formats", "unknown format '" + o.formats[i] + "' (csv, json)");
  if (n["coefficients"]) o.coefficients = rd.scalar<bool>(n["coefficients"], "output.coefficients");
  if (n["wavefunctions"]) o.wavefunctions = rd.scalar<bool>(n["wavefunctions"], "output.wavefunctions");
  if (const YAML::Node s = n["samples"]) {
    rd.only_keys(s, "output.samples", {"r_min", "r_max", "count"});
    if (s["r_min"]) o.samples.r_min = rd.scalar<double>(s["r_min"], "output.samples.r_min");
    if (s["r_max"]) o.samples.r_max = rd.scalar<double>(s["r_max"], "output.samples.r_max");
    if (s["count"]) o.samples.count = rd.scalar<int>(s["count"], "output.samples.count");
    if (!(o.samples.r_min >= 0.0) || !(o.samples.r_max > o.samples.r_min))
      rd.fail(s, "output.samples", "need 0 <= r_min < r_max");
    if (o.samples.count < 2) rd.fail(s["count"], "output.samples.count", "must be >= 2");
  }
  return o;
}

}  // namespace

pdmseries::PotentialSpec PotentialConfig::build() const {
  using pdmseries::PotentialSpec;
  if (kind == "coulomb") return pdmseries::make_coulomb(param(params, "z"));
  if (kind == "cornell") return pdmseries::make_cornell(param(params, "a"), param(params, "b"), param(params, "c"));
  if (kind == "oscillator") {
    const double omega = param(params, "omega");
    if (!(omega > 0.0)) throw pdmseries::DomainError("oscillator frequency must be > 0");
    return PotentialSpec(0.0, omega * omega, param(params, "offset"), 0, 2);
  }
  if (kind == "linear") {
    const double b = param(params, "b");
    if (!(b > 0.0)) throw pdmseries::DomainError("linear coupling must be > 0");
    return PotentialSpec(0.0, b, param(params, "offset"), 0, 1);
  }
  if (kind == "general")
    return PotentialSpec(param(params, "v1"), param(params, "v2"), param(params, "v3"),
                         integral(param(params, "alpha"), "alpha"), integral(param(params, "beta"), "beta"));
  throw pdmseries::DomainError("unknown potential kind '" + kind + "'");
}

pdmseries::MassProfile MassConfig::build(int order) const {
  if (kind == "constant") return pdmseries::constant_mass(m0, order);
  if (kind == "exponential") return pdmseries::expand_exponential(m0, lambda, order);
  if (kind == "custom") return pdmseries::custom_mass(coefficients, order);
  throw pdmseries::DomainError("unknown mass kind '" + kind + "'");
}

pdmseries::RecurrenceKind RunConfig::recurrence_kind() const {
  using pdmseries::RecurrenceKind;
  if (solver.recurrence == "general") return RecurrenceKind::general();
  const double offset = param(potential.params, "offset");
  if (potential.kind == "coulomb") return RecurrenceKind::coulomb();
  if (potential.kind == "oscillator" && offset == 0.0) return RecurrenceKind::oscillator();
  if (potential.kind == "linear" && offset == 0.0) return RecurrenceKind::linear();
  if (potential.kind == "cornell")
    return mass.kind == "exponential" ? RecurrenceKind::exp_mass_cornell(mass.lambda) : RecurrenceKind::cornell();
  return RecurrenceKind::general();
}

pdmseries::SolverConfig RunConfig::solver_config() const {
  pdmseries::SolverConfig c;
  c.e_lo = solver.e_lo;
  c.e_hi = solver.e_hi;
  c.match_radius = solver.match_radius;
  c.truncation_order = solver.truncation_order;
  c.tol_e = solver.tol_e;
  c.max_iter = solver.max_iter;
  c.run_oracle = solver.oracle;
  c.kind = recurrence_kind();
  return c;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  const Reader rd(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": " << e.msg;
    throw ConfigError(os.str());
  }
  if (!root.IsMap()) rd.fail(root, "<root>", "expected a mapping with potential/mass/quantum/solver/output blocks");
  rd.only_keys(root, "<root>", {"potential", "mass", "quantum", "solver", "output"});
  if (!root["potential"]) rd.fail(root, "potential", "missing block");

  RunConfig cfg;
  cfg.potential = read_potential(rd, root["potential"]);
  if (root["solver"]) cfg.solver = read_solver(rd, root["solver"]);
  if (root["mass"]) cfg.mass = read_mass(rd, root["mass"], cfg.solver.truncation_order);
  if (root["quantum"]) cfg.quantum = read_quantum(rd, root["quantum"]);
  if (root["output"]) cfg.output = read_output(rd, root["output"]);
  try {
    (void)cfg.mass.build(cfg.solver.truncation_order);
  } catch (const pdmseries::Error& e) {
    rd.fail(root["mass"], "mass", e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string serialize_config(const RunConfig& cfg) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;

  out << YAML::Key << "potential" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << cfg.potential.kind;
  for (const auto& [key, value] : cfg.potential.params) out << YAML::Key << key << YAML::Value << value;
  out << YAML::EndMap;

  out << YAML::Key << "mass" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << cfg.mass.kind;
  out << YAML::Key << "m0" << YAML::Value << cfg.mass.m0;
  out << YAML::Key << "lambda" << YAML::Value << cfg.mass.lambda;
  if (!cfg.mass.coefficients.empty())
    out << YAML::Key << "coefficients" << YAML::Value << YAML::Flow << cfg.mass.coefficients;
  out << YAML::EndMap;

  out << YAML::Key << "quantum" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dim" << YAML::Value << YAML::Flow << cfg.quantum.dims;
  out << YAML::Key << "ell" << YAML::Value << YAML::Flow << cfg.quantum.ells;
  out << YAML::Key << "n" << YAML::Value << YAML::Flow << cfg.quantum.radial;
  out << YAML::EndMap;

  const SolverBlock& s = cfg.solver;
  out << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "e_lo" << YAML::Value << s.e_lo;
  out << YAML::Key << "e_hi" << YAML::Value << s.e_hi;
  out << YAML::Key << "scan_steps" << YAML::Value << s.scan_steps;
  out << YAML::Key << "match_radius" << YAML::Value << s.match_radius;
  out << YAML::Key << "truncation_order" << YAML::Value << s.truncation_order;
  out << YAML::Key << "tol_e" << YAML::Value << s.tol_e;
  out << YAML::Key << "max_iter" << YAML::Value << s.max_iter;
  out << YAML::Key << "recurrence" << YAML::Value << s.recurrence;
  out << YAML::Key << "oracle" << YAML::Value << s.oracle;
  out << YAML::EndMap;

  const OutputConfig& o = cfg.output;
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "directory" << YAML::Value << o.directory;
  out << YAML::Key << "formats" << YAML::Value << YAML::Flow << o.formats;
  out << YAML::Key << "coefficients" << YAML::Value << o.coefficients;
  out << YAML::Key << "wavefunctions" << YAML::Value << o.wavefunctions;
  out << YAML::Key << "samples" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "r_min" << YAML::Value << o.samples.r_min;
  out << YAML::Key << "r_max" << YAML::Value << o.samples.r_max;
  out << YAML::Key << "count" << YAML::Value << o.samples.count;
  out << YAML::EndMap;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace pdmapp
