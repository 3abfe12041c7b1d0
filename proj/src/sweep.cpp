#include "spinstar/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "spinstar/thermal.hpp"

namespace spinstar {

namespace {

double parse_double(std::string_view s, const char* what) {
  std::string buf(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(buf, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("cannot parse ") + what + " '" + buf + "'");
  }
  if (used != buf.size() || !std::isfinite(v))
    throw std::invalid_argument(std::string("cannot parse ") + what + " '" + buf + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

double Axis::at(int i) const {
  if (count == 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::vector<double> Axis::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = at(i);
  return v;
}

Axis parse_axis(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3)
    throw std::invalid_argument("axis must look like MIN:MAX:COUNT, got '" + std::string(text) +
                                "'");
  Axis a;
  a.min = parse_double(parts[0], "axis minimum");
  a.max = parse_double(parts[1], "axis maximum");
  int count = 0;
  const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
  if (ec != std::errc{} || ptr != parts[2].data() + parts[2].size())
    throw std::invalid_argument("axis count must be an integer, got '" + std::string(parts[2]) +
                                "'");
  a.count = count;
  if (a.count < 1) throw std::invalid_argument("axis count must be at least 1");
  if (a.min > a.max) throw std::invalid_argument("axis minimum exceeds maximum");
  return a;
}

std::vector<double> parse_temperatures(std::string_view text) {
  std::vector<double> out;
  for (std::string_view p : split(text, ',')) {
    const double t = parse_double(p, "temperature");
    if (t < 0) throw std::invalid_argument("temperatures must be non-negative");
    out.push_back(t);
  }
  return out;
}

void SweepGrid::validate() const {
  if (m < 2 || m > kMaxSweepM)
    throw std::invalid_argument("sweep supports 2 <= m <= " + std::to_string(kMaxSweepM));
  if (!(omega > 0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be positive");
  for (const Axis* a : {&epsilon_axis, &eta_axis}) {
    if (a->count < 1) throw std::invalid_argument("axis count must be at least 1");
    if (!(a->min <= a->max)) throw std::invalid_argument("axis minimum exceeds maximum");
  }
  if (temperatures.empty()) throw std::invalid_argument("no temperatures given");
  for (double t : temperatures)
    if (!std::isfinite(t) || t < 0) throw std::invalid_argument("temperatures must be >= 0");
}

std::size_t SweepGrid::cell_count() const {
  return static_cast<std::size_t>(epsilon_axis.count) * static_cast<std::size_t>(eta_axis.count) *
         temperatures.size();
}

SweepRecord evaluate_cell(int m, double omega, double epsilon, double eta, double t) {
  const SpinStarParams params{m, omega, epsilon * omega, eta * omega};
  const ThermalSolution sol = solve_thermal(params, Temperature(t));
  const NegativityReport report = multipartite_negativity(sol.reduced, m);
  SweepRecord r;
  r.epsilon = epsilon;
  r.eta = eta;
  r.t = t;
  r.neg_multi = report.multipartite;
  for (const auto& c : report.per_cut) r.neg_cuts.push_back(c.value);
  r.ground_energy = sol.ground_energy;
  r.ground_degeneracy = sol.ground_degeneracy;
  r.degenerate_cell = sol.ground_degeneracy > 1;
  return r;
}

std::vector<SweepRecord> run_sweep(const SweepGrid& grid, int threads) {
  grid.validate();
  const std::size_t n_eps = static_cast<std::size_t>(grid.epsilon_axis.count);
  const std::size_t n_eta = static_cast<std::size_t>(grid.eta_axis.count);
  const std::size_t total = grid.cell_count();
  std::vector<SweepRecord> records(total);

  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const std::size_t ie = idx % n_eps;
      const std::size_t ih = (idx / n_eps) % n_eta;
      const std::size_t it = idx / (n_eps * n_eta);
      try {
        records[idx] = evaluate_cell(grid.m, grid.omega, grid.epsilon_axis.at(static_cast<int>(ie)),
                                     grid.eta_axis.at(static_cast<int>(ih)), grid.temperatures[it]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_header(int m) {
  std::string h = "epsilon,eta,t,neg_multi";
  for (int k = 1; k <= m; ++k) h += ",neg_cut_" + std::to_string(k);
  h += ",ground_energy,ground_degeneracy,degenerate_cell";
  return h;
}

std::string csv_row(const SweepRecord& r) {
  std::string s = format_number(r.epsilon) + "," + format_number(r.eta) + "," +
                  format_number(r.t) + "," + format_number(r.neg_multi);
  for (double v : r.neg_cuts) s += "," + format_number(v);
  s += "," + format_number(r.ground_energy) + "," + std::to_string(r.ground_degeneracy) + "," +
       (r.degenerate_cell ? "1" : "0");
  return s;
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records, int m) {
  out << csv_header(m) << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
}

std::string json_object(const SweepRecord& r) {
  // Numbers are spliced in pre-formatted so JSON and CSV agree digit for digit.
  std::ostringstream os;
  os << "{\"epsilon\":" << format_number(r.epsilon) << ",\"eta\":" << format_number(r.eta)
     << ",\"t\":" << format_number(r.t) << ",\"neg_multi\":" << format_number(r.neg_multi)
     << ",\"neg_cuts\":[";
  for (std::size_t k = 0; k < r.neg_cuts.size(); ++k)
    os << (k ? "," : "") << format_number(r.neg_cuts[k]);
  os << "],\"ground_energy\":" << format_number(r.ground_energy)
     << ",\"ground_degeneracy\":" << r.ground_degeneracy
     << ",\"degenerate_cell\":" << (r.degenerate_cell ? "true" : "false") << "}";
  return os.str();
}

void write_json_lines(std::ostream& out, const std::vector<SweepRecord>& records) {
  for (const auto& r : records) out << json_object(r) << '\n';
}

bool has_drop(const std::vector<double>& seq, double delta) {
  double best = -INFINITY;
  for (double v : seq) {
    if (best - v >= delta) return true;
    best = std::max(best, v);
  }
  return false;
}

bool has_dip(const std::vector<double>& seq, double delta) {
  double best = -INFINITY;
  for (std::size_t b = 0; b < seq.size(); ++b) {
    if (best - seq[b] >= delta) {
      const std::vector<double> tail(seq.begin() + static_cast<std::ptrdiff_t>(b), seq.end());
      std::vector<double> negated(tail.size());
      std::transform(tail.begin(), tail.end(), negated.begin(), [](double x) { return -x; });
      if (has_drop(negated, delta)) return true;
    }
    best = std::max(best, seq[b]);
  }
  return false;
}

}  // namespace spinstar
