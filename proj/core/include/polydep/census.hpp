#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polydep/depend.hpp"
#include "polydep/intpoly.hpp"

namespace polydep {

enum class Family { Monic, General };

const char* to_string(Family f);
Family parse_family(std::string_view s);

struct ClassLabel {
  enum class Kind { M, I, R, Mstar, Istar, Rstar, P, Pstar, Q, Qstar, F, DegIrr, L };
  Kind kind = Kind::M;
  int k = 0;  // F(k) only

  std::string to_string() const;
  // Accepts M, I, R, Mstar, Istar, Rstar, P, Pstar, Q, Qstar, F(k), DegIrr, L.
  static ClassLabel parse(std::string_view s);
  friend bool operator==(const ClassLabel& a, const ClassLabel& b) {
    return a.kind == b.kind && a.k == b.k;
  }
  friend bool operator<(const ClassLabel& a, const ClassLabel& b) {
    return a.kind != b.kind ? a.kind < b.kind : a.k < b.k;
  }
};

struct CensusSpec {
  int degree = 2;
  long height = 1;
  Family family = Family::Monic;
  std::vector<ClassLabel> classes;
  SearchParameters params;
  std::optional<std::pair<int, int>> shard;  // (index, total)
  std::optional<std::string> checkpoint_path;
  // Heights reported; empty means {height}. Every entry must be <= height.
  std::vector<long> report_heights;
  int threads = 1;
  // Count polynomials with a zero root in L (off by default).
  bool zero_root_in_L = false;
  // Integer fast paths for degrees 2-4 and exact product generation for
  // monic quartic F(2); disabling routes everything through the library.
  bool fast_paths = true;
  // Test hook: stop after this many slabs, leaving a checkpoint behind.
  std::optional<long> stop_after_slabs;

  void validate() const;
};

struct CensusInterrupted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CensusRecord {
  int degree = 0;
  long height = 0;
  Family family = Family::Monic;
  ClassLabel label;
  std::uint64_t count_certain = 0;
  std::uint64_t count_unknown = 0;
  double elapsed_ms = 0;
  std::string version;

  static std::string csv_header();
  std::string to_csv(bool timing = true) const;
};

struct LabelSet {
  std::vector<ClassLabel> labels;
  bool had_unknown = false;

  bool contains(const ClassLabel& l) const;
};

// Visits the family in lexicographic order of (a_n, ..., a_0), restricted to
// the requested shard. Returns the number of polynomials visited.
std::uint64_t enumerate(const CensusSpec& spec, const std::function<void(const IntPolynomial&)>& visit);

// All labels for f within its family (F(k) for 1 <= k <= deg/2).
LabelSet classify_labels(const IntPolynomial& f, const SearchParameters& params = {},
                         Family family = Family::Monic, bool zero_root_in_L = false);

std::vector<CensusRecord> run_census(const CensusSpec& spec);

// Exact per-height counts of monic quartics with a monic quadratic divisor,
// by generating products; entry h counts polynomials of height exactly h.
std::vector<std::uint64_t> monic_quartic_f2_counts(long height);

struct AsymptoticModel {
  Rational leading_constant = 1;
  int power = 1;
  int log_power = 0;
};

struct FitRow {
  long height = 0;
  std::uint64_t count = 0;
  std::uint64_t unknown = 0;
  double ratio = 0;
  double bracket_ratio = 0;
  std::optional<double> growth;
};

struct FitReport {
  ClassLabel label;
  AsymptoticModel model;
  std::vector<FitRow> rows;

  std::string to_json() const;
};

FitReport compare(const std::vector<CensusRecord>& records, const AsymptoticModel& model);

// Multivariate integer polynomial: exponent vector -> coefficient.
using MultiPolynomial = std::map<std::vector<int>, Integer>;

// Counts integer zeros of g in [-H, H]^m and checks count <= d m (2H+1)^(m-1).
bool zero_count_bound_check(const MultiPolynomial& g, int m, long H, std::uint64_t* zeros = nullptr);

}  // namespace polydep
