#include "spinstar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinstar/entanglement.hpp"
#include "spinstar/errors.hpp"
#include "spinstar/operators.hpp"
#include "spinstar/spectra.hpp"
#include "spinstar/sweep.hpp"
#include "spinstar/thermal.hpp"

namespace spinstar::cli {

namespace {

using nlohmann::ordered_json;

struct Common {
  int m = 3;
  double omega = 1.0;
  double epsilon = 0.0;  // units of omega
  double eta = 0.0;      // units of omega
  double t = 0.01;
  std::string format = "csv";
  std::string output;
  int threads = 0;

  SpinStarParams params() const { return {m, omega, epsilon * omega, eta * omega}; }
};

void add_common(CLI::App* cmd, Common& c, bool with_temperature) {
  cmd->add_option("--m", c.m, "Number of peripheral spins")->capture_default_str();
  cmd->add_option("--omega", c.omega, "Natural frequency (energy unit)")->capture_default_str();
  cmd->add_option("--epsilon", c.epsilon, "Central coupling in units of omega")
      ->capture_default_str();
  cmd->add_option("--eta", c.eta, "Ring coupling in units of omega")->capture_default_str();
  if (with_temperature)
    cmd->add_option("--t", c.t, "Temperature k_B T / (hbar omega); 0 selects the ground manifold")
        ->capture_default_str();
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", c.output, "Write to PATH instead of stdout");
  cmd->add_option("--threads", c.threads, "Worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
}

// Resolves --output; the returned stream is either `fallback` or an owned file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw std::invalid_argument("cannot open output path '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw std::invalid_argument("failed writing output");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

int cmd_spectrum(const Common& c, std::ostream& out) {
  const SpinStarParams p = c.params();
  p.validate();
  const HermitianOperator h = build_hamiltonian(p);
  const SpectralDecomposition spec = spectrum_blocked(h, sector_map(p.n_qubits()));
  const auto& labels = *spec.sector_labels;

  std::optional<std::array<double, 16>> analytic;
  double deviation = 0.0;
  if (p.m == 3) {
    analytic = analytic_spectrum_m3(p.omega, p.epsilon, p.eta);
    for (std::size_t i = 0; i < 16; ++i)
      deviation = std::max(deviation,
                           std::abs(spec.eigenvalues(static_cast<Eigen::Index>(i)) - (*analytic)[i]));
  }
  const double trace_sum = spec.eigenvalues.sum();

  Sink sink(c.output, out);
  std::ostream& os = sink.get();
  if (c.format == "json") {
    ordered_json j;
    j["m"] = p.m;
    j["omega"] = p.omega;
    j["epsilon"] = c.epsilon;
    j["eta"] = c.eta;
    j["eigenvalues"] = std::vector<double>(spec.eigenvalues.begin(), spec.eigenvalues.end());
    j["sectors"] = labels;
    if (analytic) {
      j["analytic"] = std::vector<double>(analytic->begin(), analytic->end());
      j["max_abs_deviation"] = deviation;
    }
    j["eigenvalue_sum"] = trace_sum;
    os << j.dump(2) << '\n';
  } else {
    os << "index,eigenvalue,sector" << (analytic ? ",analytic" : "") << '\n';
    for (std::size_t i = 0; i < spec.size(); ++i) {
      os << i << ',' << format_number(spec.eigenvalues(static_cast<Eigen::Index>(i))) << ','
         << labels[i];
      if (analytic) os << ',' << format_number((*analytic)[i]);
      os << '\n';
    }
    os << "# eigenvalue_sum=" << format_number(trace_sum) << '\n';
    if (analytic) os << "# max_abs_deviation=" << format_number(deviation) << '\n';
  }
  sink.finish();
  return kSuccess;
}

int cmd_negativity(const Common& c, std::ostream& out) {
  c.params().validate();
  const SweepRecord r = evaluate_cell(c.m, c.omega, c.epsilon, c.eta, c.t);
  Sink sink(c.output, out);
  if (c.format == "json") {
    sink.get() << json_object(r) << '\n';
  } else {
    write_csv(sink.get(), {r}, c.m);
  }
  sink.finish();
  return kSuccess;
}

int cmd_ground(const Common& c, std::ostream& out) {
  const SpinStarParams p = c.params();
  p.validate();
  const SpectralDecomposition spec =
      spectrum_blocked(build_hamiltonian(p), sector_map(p.n_qubits()));
  const GroundManifold g = ground_manifold(spec);

  std::optional<double> overlap;
  if (p.m == 3 && g.degeneracy == 1 && (p.epsilon != 0.0 || p.eta != 0.0)) {
    const Vector psi1 = analytic_psi1_m3(p.epsilon, p.eta);
    overlap = std::norm(psi1.dot(g.basis.col(0)));
  }
  std::vector<int> sectors = g.sector_labels;
  std::sort(sectors.begin(), sectors.end());
  sectors.erase(std::unique(sectors.begin(), sectors.end()), sectors.end());

  Sink sink(c.output, out);
  std::ostream& os = sink.get();
  if (c.format == "json") {
    ordered_json j;
    j["m"] = p.m;
    j["omega"] = p.omega;
    j["epsilon"] = c.epsilon;
    j["eta"] = c.eta;
    j["ground_energy"] = g.energy;
    j["ground_degeneracy"] = g.degeneracy;
    j["ground_sectors"] = sectors;
    j["tolerance"] = g.tolerance;
    j["psi1_overlap"] = overlap ? ordered_json(*overlap) : ordered_json(nullptr);
    os << j.dump(2) << '\n';
  } else {
    os << "ground_energy,ground_degeneracy,ground_sectors,psi1_overlap\n";
    os << format_number(g.energy) << ',' << g.degeneracy << ',';
    for (std::size_t i = 0; i < sectors.size(); ++i) os << (i ? ";" : "") << sectors[i];
    os << ',' << (overlap ? format_number(*overlap) : std::string()) << '\n';
  }
  sink.finish();
  return kSuccess;
}

int cmd_sweep(const Common& c, const std::string& eps_range, const std::string& eta_range,
              const std::string& temps, std::ostream& out) {
  SweepGrid grid;
  grid.m = c.m;
  grid.omega = c.omega;
  grid.epsilon_axis = parse_axis(eps_range);
  grid.eta_axis = parse_axis(eta_range);
  grid.temperatures = parse_temperatures(temps);
  grid.validate();
  const std::vector<SweepRecord> records = run_sweep(grid, c.threads);
  Sink sink(c.output, out);
  if (c.format == "json") {
    write_json_lines(sink.get(), records);
  } else {
    write_csv(sink.get(), records, grid.m);
  }
  sink.finish();
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal entanglement of spin-star networks"};
  app.name("spinstar");
  app.require_subcommand(1);

  Common spectrum_opts, negativity_opts, ground_opts, sweep_opts;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues with excitation-sector labels");
  add_common(spectrum, spectrum_opts, false);
  auto* neg = app.add_subcommand("negativity", "Negativities of the reduced thermal state");
  add_common(neg, negativity_opts, true);
  auto* ground = app.add_subcommand("ground", "Ground energy and degeneracy");
  add_common(ground, ground_opts, false);
  auto* sweep = app.add_subcommand("sweep", "Negativity over an (epsilon, eta, t) grid");
  add_common(sweep, sweep_opts, false);
  std::string eps_range = "0:10:41", eta_range = "0:10:41", temps = "0.01";
  sweep->add_option("--epsilon-range", eps_range, "MIN:MAX:COUNT in units of omega")
      ->capture_default_str();
  sweep->add_option("--eta-range", eta_range, "MIN:MAX:COUNT in units of omega")
      ->capture_default_str();
  sweep->add_option("--temps", temps, "Comma-separated temperatures")->capture_default_str();

  // CLI11 wants argv order reversed when given a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }

  try {
    if (*spectrum) return cmd_spectrum(spectrum_opts, out);
    if (*neg) return cmd_negativity(negativity_opts, out);
    if (*ground) return cmd_ground(ground_opts, out);
    return cmd_sweep(sweep_opts, eps_range, eta_range, temps, out);
  } catch (const NumericalError& e) {
    err << "numerical invariant violated: " << e.what() << '\n';
    return kNumericalViolation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }
}

}  // namespace spinstar::cli
