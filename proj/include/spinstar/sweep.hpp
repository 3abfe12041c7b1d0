#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spinstar/entanglement.hpp"
#include "spinstar/operators.hpp"

namespace spinstar {

// Inclusive, evenly spaced axis; count == 1 yields {min}.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  double at(int i) const;
  std::vector<double> values() const;
};

// Parses "MIN:MAX:COUNT".
Axis parse_axis(std::string_view text);
// Parses "T1,T2,...". Entries must be finite and >= 0 (0 is the ground-manifold limit).
std::vector<double> parse_temperatures(std::string_view text);

inline constexpr int kMaxSweepM = 8;

struct SweepGrid {
  int m = 3;
  double omega = 1.0;
  Axis epsilon_axis{0.0, 10.0, 41};  // in units of omega
  Axis eta_axis{0.0, 10.0, 41};      // in units of omega
  std::vector<double> temperatures{0.01};

  void validate() const;
  std::size_t cell_count() const;
};

struct SweepRecord {
  double epsilon = 0.0;  // in units of omega
  double eta = 0.0;      // in units of omega
  double t = 0.0;
  double neg_multi = 0.0;
  std::vector<double> neg_cuts;
  double ground_energy = 0.0;
  int ground_degeneracy = 1;
  bool degenerate_cell = false;
};

// One (epsilon, eta, t) cell. epsilon and eta are ratios to omega.
SweepRecord evaluate_cell(int m, double omega, double epsilon, double eta, double t);

// Records ordered lexicographically by (t, eta, epsilon). Output does not
// depend on `threads`; threads <= 0 means hardware concurrency.
std::vector<SweepRecord> run_sweep(const SweepGrid& grid, int threads = 0);

// "%.12g", with negative zero printed as 0.
std::string format_number(double x);

std::string csv_header(int m);
std::string csv_row(const SweepRecord& r);
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records, int m);
// One JSON object per line, same fields as the CSV.
void write_json_lines(std::ostream& out, const std::vector<SweepRecord>& records);
std::string json_object(const SweepRecord& r);

// True if the sequence first drops by at least `delta` (from some earlier
// value) and afterwards rises by at least `delta` (to some later value).
bool has_dip(const std::vector<double>& seq, double delta);
// True if some value drops by at least `delta` below an earlier one.
bool has_drop(const std::vector<double>& seq, double delta);

}  // namespace spinstar
