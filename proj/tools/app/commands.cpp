#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include <pdmseries/eigensolver.hpp>
#include <pdmseries/errors.hpp>

namespace pdmapp {

namespace {

constexpr int kCsvDigits = 12;
constexpr int kJsonDigits = 17;

std::string num(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string csv_num(double x) { return std::isfinite(x) ? num(x, kCsvDigits) : std::string(); }
std::string json_num(double x) { return std::isfinite(x) ? num(x, kJsonDigits) : std::string("null"); }

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::vector<double> sample_radii(const SampleGrid& g) {
  std::vector<double> r(static_cast<std::size_t>(g.count));
  for (int j = 0; j < g.count; ++j) r[static_cast<std::size_t>(j)] = g.r_min + (g.r_max - g.r_min) * j / (g.count - 1);
  return r;
}

std::vector<StateRow> solve_channel(const RunConfig& cfg, int dim, int ell) {
  std::vector<StateRow> rows;
  for (int n : cfg.quantum.radial) rows.push_back({dim, ell, n, {}, {}});
  try {
    const pdmseries::PotentialSpec pot = cfg.potential.build();
    const pdmseries::MassProfile mass = cfg.mass.build(cfg.solver.truncation_order);
    const pdmseries::SolverConfig scfg = cfg.solver_config();
    const pdmseries::QuantumNumbers channel(dim, ell, 0);
    const auto brackets =
        pdmseries::scan_spectrum(pot, mass, channel, scfg.e_lo, scfg.e_hi, cfg.solver.scan_steps, scfg);
    for (StateRow& row : rows) {
      try {
        const auto it = std::find_if(brackets.begin(), brackets.end(),
                                     [&](const pdmseries::SpectrumBracket& b) { return b.approx_nodes == row.n; });
        if (it == brackets.end())
          throw pdmseries::BracketError("no eigenvalue with " + std::to_string(row.n) + " nodes in the energy range");
        pdmseries::SolverConfig local = scfg;
        local.e_lo = it->e_lo;
        local.e_hi = it->e_hi;
        row.result = pdmseries::find_eigenvalue(pot, mass, pdmseries::QuantumNumbers(dim, ell, row.n), local);
      } catch (const pdmseries::Error& e) {
        row.error = e.what();
      }
    }
  } catch (const pdmseries::Error& e) {
    for (StateRow& row : rows) row.error = e.what();
  }
  return rows;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string state_label(const StateRow& row) {
  return "N=" + std::to_string(row.dim) + " l=" + std::to_string(row.ell) + " n=" + std::to_string(row.n);
}

int run_tables(const std::string& config_path, const std::optional<std::string>& out_dir, unsigned tables,
               std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  if (out_dir) cfg.output.directory = *out_dir;
  if (tables == 0u) {
    // solve: energies plus whatever the output block asks for.
    tables = static_cast<unsigned>(Tables::energies);
    if (cfg.output.coefficients) tables |= static_cast<unsigned>(Tables::coefficients);
    if (cfg.output.wavefunctions) tables |= static_cast<unsigned>(Tables::wavefunctions);
  }

  const std::vector<StateRow> rows = solve_states(cfg);
  int status = kExitOk;
  for (const StateRow& row : rows) {
    if (row.error.empty()) continue;
    err << "solver failure at " << state_label(row) << ": " << row.error << '\n';
    status = kExitSolverFailure;
  }
  try {
    for (const std::string& path : write_tables(cfg, rows, tables)) out << "wrote " << path << '\n';
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitSolverFailure;
  }
  return status;
}

}  // namespace

std::vector<StateRow> solve_states(const RunConfig& cfg) {
  std::vector<std::future<std::vector<StateRow>>> jobs;
  for (int dim : cfg.quantum.dims)
    for (int ell : cfg.quantum.ells)
      jobs.push_back(std::async(std::launch::async, [&cfg, dim, ell] { return solve_channel(cfg, dim, ell); }));
  std::vector<StateRow> rows;
  for (auto& job : jobs) {
    std::vector<StateRow> part = job.get();
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::string energies_csv(const std::vector<StateRow>& rows) {
  std::ostringstream os;
  os << "dim,ell,n,energy,nodes,tail_residual,oracle_gap,status\n";
  for (const StateRow& r : rows) {
    os << r.dim << ',' << r.ell << ',' << r.n << ',';
    if (r.error.empty()) {
      os << csv_num(r.result.energy) << ',' << r.result.nodes << ',' << csv_num(r.result.tail_residual) << ','
         << csv_num(r.result.oracle_gap) << ",ok\n";
    } else {
      os << ",,,," << csv_quote("error: " + r.error) << '\n';
    }
  }
  return os.str();
}

std::string energies_json(const std::vector<StateRow>& rows) {
  std::ostringstream os;
  os << "{\"states\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const StateRow& r = rows[i];
    os << (i ? ",\n  " : "\n  ") << "{\"dim\": " << r.dim << ", \"ell\": " << r.ell << ", \"n\": " << r.n;
    if (r.error.empty()) {
      os << ", \"energy\": " << json_num(r.result.energy) << ", \"nodes\": " << r.result.nodes
         << ", \"tail_residual\": " << json_num(r.result.tail_residual)
         << ", \"oracle_gap\": " << json_num(r.result.oracle_gap) << ", \"status\": \"ok\"}";
    } else {
      os << ", \"energy\": null, \"nodes\": null, \"tail_residual\": null, \"oracle_gap\": null, \"status\": "
         << json_string("error: " + r.error) << '}';
    }
  }
  os << "\n]}\n";
  return os.str();
}

std::string coefficients_csv(const std::vector<StateRow>& rows) {
  std::ostringstream os;
  os << "dim,ell,n,index,coefficient\n";
  for (const StateRow& r : rows) {
    if (!r.error.empty()) continue;
    const auto& s = r.result.series;
    for (int i = 0; i <= s.truncation_order; ++i)
      os << r.dim << ',' << r.ell << ',' << r.n << ',' << i << ',' << csv_num(s.coefficient(i)) << '\n';
  }
  return os.str();
}

std::string coefficients_json(const std::vector<StateRow>& rows) {
  std::ostringstream os;
  os << "{\"coefficients\": [";
  bool first = true;
  for (const StateRow& r : rows) {
    if (!r.error.empty()) continue;
    const auto& s = r.result.series;
    os << (first ? "\n  " : ",\n  ") << "{\"dim\": " << r.dim << ", \"ell\": " << r.ell << ", \"n\": " << r.n
       << ", \"energy\": " << json_num(s.energy) << ", \"b\": " << json_num(s.b) << ", \"a\": [";
    for (int i = 0; i <= s.truncation_order; ++i) os << (i ? ", " : "") << json_num(s.coefficient(i));
    os << "]}";
    first = false;
  }
  os << "\n]}\n";
  return os.str();
}

namespace {

std::vector<std::vector<double>> sampled_values(const RunConfig& cfg, const std::vector<StateRow>& rows,
                                                const std::vector<double>& radii) {
  const pdmseries::PotentialSpec pot = cfg.potential.build();
  const pdmseries::MassProfile mass = cfg.mass.build(cfg.solver.truncation_order);
  std::vector<std::vector<double>> out;
  for (const StateRow& r : rows)
    out.push_back(r.error.empty() ? pdmseries::sample_state(pot, mass, r.result, radii) : std::vector<double>{});
  return out;
}

}  // namespace

std::string wavefunctions_csv(const RunConfig& cfg, const std::vector<StateRow>& rows) {
  const std::vector<double> radii = sample_radii(cfg.output.samples);
  const auto values = sampled_values(cfg, rows, radii);
  std::ostringstream os;
  os << "dim,ell,n,r,R\n";
  for (std::size_t s = 0; s < rows.size(); ++s) {
    if (values[s].empty()) continue;
    for (std::size_t j = 0; j < radii.size(); ++j)
      os << rows[s].dim << ',' << rows[s].ell << ',' << rows[s].n << ',' << csv_num(radii[j]) << ','
         << csv_num(values[s][j]) << '\n';
  }
  return os.str();
}

std::string wavefunctions_json(const RunConfig& cfg, const std::vector<StateRow>& rows) {
  const std::vector<double> radii = sample_radii(cfg.output.samples);
  const auto values = sampled_values(cfg, rows, radii);
  std::ostringstream os;
  os << "{\"r\": [";
  for (std::size_t j = 0; j < radii.size(); ++j) os << (j ? ", " : "") << json_num(radii[j]);
  os << "],\n\"states\": [";
  bool first = true;
  for (std::size_t s = 0; s < rows.size(); ++s) {
    if (values[s].empty()) continue;
    os << (first ? "\n  " : ",\n  ") << "{\"dim\": " << rows[s].dim << ", \"ell\": " << rows[s].ell
       << ", \"n\": " << rows[s].n << ", \"R\": [";
    for (std::size_t j = 0; j < radii.size(); ++j) os << (j ? ", " : "") << json_num(values[s][j]);
    os << "]}";
    first = false;
  }
  os << "\n]}\n";
  return os.str();
}

std::vector<std::string> write_tables(const RunConfig& cfg, const std::vector<StateRow>& rows, unsigned tables) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output.directory);
  fs::create_directories(dir);
  std::vector<std::string> written;
  const auto emit = [&](const std::string& stem, const std::string& format, const std::string& text) {
    const fs::path p = dir / (stem + "." + format);
    write_file(p, text);
    written.push_back(p.string());
  };
  for (const std::string& format : cfg.output.formats) {
    const bool json = format == "json";
    if (tables & static_cast<unsigned>(Tables::energies))
      emit("energies", format, json ? energies_json(rows) : energies_csv(rows));
    if (tables & static_cast<unsigned>(Tables::coefficients))
      emit("coefficients", format, json ? coefficients_json(rows) : coefficients_csv(rows));
    if (tables & static_cast<unsigned>(Tables::wavefunctions))
      emit("wavefunctions", format, json ? wavefunctions_json(cfg, rows) : wavefunctions_csv(cfg, rows));
  }
  return written;
}

int run_solve(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& out,
              std::ostream& err) {
  return run_tables(config_path, out_dir, 0u, out, err);
}

int run_coefficients(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& out,
                     std::ostream& err) {
  return run_tables(config_path, out_dir, static_cast<unsigned>(Tables::coefficients), out, err);
}

int run_sample(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& out,
               std::ostream& err) {
  return run_tables(config_path, out_dir, static_cast<unsigned>(Tables::wavefunctions), out, err);
}

}  // namespace pdmapp
