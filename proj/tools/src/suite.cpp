#include "suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace polydep::cli {

namespace {

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// counts[label][height]
using Table = std::map<std::string, std::map<long, CensusRecord>>;

Table census(int degree, Family family, const std::vector<long>& heights, const std::vector<std::string>& classes,
             int threads) {
  CensusSpec spec;
  spec.degree = degree;
  spec.family = family;
  spec.height = *std::max_element(heights.begin(), heights.end());
  spec.report_heights = heights;
  spec.threads = threads;
  for (const auto& c : classes) spec.classes.push_back(ClassLabel::parse(c));
  Table t;
  for (auto& r : run_census(spec)) t[r.label.to_string()][r.height] = r;
  return t;
}

void band(std::vector<Clause>& out, const Table& t, const std::string& label, long H, double c, int pow,
          double tol, bool sqrt_band = false) {
  const CensusRecord& r = t.at(label).at(H);
  double model = c * std::pow(static_cast<double>(H), pow);
  double ratio = static_cast<double>(r.count_certain) / model;
  bool ok = std::fabs(ratio - 1) <= tol && r.count_unknown == 0;
  std::string detail = fmt("count %.0f ratio %.4f unknown %.0f", static_cast<double>(r.count_certain), ratio,
                           static_cast<double>(r.count_unknown));
  if (sqrt_band) {
    double dev = std::fabs(static_cast<double>(r.count_certain) - model);
    ok = ok && dev <= 15 * std::sqrt(static_cast<double>(H));
    detail += fmt(" |count-cH| %.0f <= %.1f", dev, 15 * std::sqrt(static_cast<double>(H)));
  }
  out.push_back({label + "(" + std::to_string(H) + ") ~ " + fmt("%g", c) + "H^" + std::to_string(pow), ok, detail});
}

void invariants(std::vector<Clause>& out, const Table& t, int n, Family family) {
  bool monic = family == Family::Monic;
  std::string M = monic ? "M" : "Mstar", I = monic ? "I" : "Istar", R = monic ? "R" : "Rstar";
  if (!t.count(M)) return;
  for (const auto& [H, rec] : t.at(M)) {
    double lower = (monic ? 2.0 : 4.0 * H) * std::pow(2.0 * H + 1, n - 1);
    out.push_back({M + "(" + std::to_string(H) + ") lower bound", static_cast<double>(rec.count_certain) >= lower,
                   fmt("count %.0f >= %.0f", static_cast<double>(rec.count_certain), lower)});
    if (t.count(I) && t.count(R)) {
      std::uint64_t i = t.at(I).at(H).count_certain, r = t.at(R).at(H).count_certain;
      out.push_back({M + "(" + std::to_string(H) + ") = " + I + " + " + R, rec.count_certain == i + r,
                     fmt("%.0f = %.0f + %.0f", static_cast<double>(rec.count_certain), static_cast<double>(i),
                         static_cast<double>(r))});
    }
  }
}

}  // namespace

std::vector<Clause> paper_suite(int degree, Family family, int threads) {
  std::vector<Clause> out;
  bool monic = family == Family::Monic;
  if (monic && degree == 2) {
    std::vector<long> hs = {100, 400, 1600};
    Table t = census(2, family, hs, {"M", "I", "R"}, threads);
    for (long H : hs) {
      band(out, t, "M", H, 10, 1, 0.15, true);
      band(out, t, "R", H, 4, 1, 0.15, true);
      band(out, t, "I", H, 6, 1, 0.15, true);
    }
    invariants(out, t, 2, family);
  } else if (monic && degree == 3) {
    Table t = census(3, family, {20, 40}, {"M", "I", "R", "P"}, threads);
    for (long H : {20L, 40L}) {
      band(out, t, "I", H, 8, 2, 0.2);
      band(out, t, "R", H, 6, 2, 0.2);
      band(out, t, "M", H, 14, 2, 0.2);
    }
    band(out, t, "P", 40, 8, 2, 0.15);
    invariants(out, t, 3, family);
    Table q = census(3, family, {100}, {"Q"}, threads);
    band(out, q, "Q", 100, 6, 2, 0.1);
  } else if (monic && degree == 4) {
    std::vector<long> hs = {15, 25, 30, 35};
    Table t = census(4, family, hs, {"M", "I", "R"}, threads);
    const auto& m = t.at("M");
    double g = std::log(static_cast<double>(m.at(30).count_certain) / static_cast<double>(m.at(15).count_certain)) /
               std::log(2.0);
    out.push_back({"M(H) growth exponent 15..30 in [2.5, 3.5]", g >= 2.5 && g <= 3.5, fmt("exponent %.4f", g)});
    double lo = 1e300, hi = 0;
    for (long H : {15L, 25L, 35L}) {
      double r = static_cast<double>(m.at(H).count_certain) / std::pow(static_cast<double>(H), 3);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    out.push_back({"M(H)/H^3 within factor 2 over {15,25,35}", hi <= 2 * lo, fmt("min %.4f max %.4f", lo, hi)});
    invariants(out, t, 4, family);
    Table f = census(4, family, {50, 100, 200}, {"F(2)"}, threads);
    lo = 1e300, hi = 0;
    for (long H : {50L, 100L, 200L}) {
      double h = static_cast<double>(H);
      double r = static_cast<double>(f.at("F(2)").at(H).count_certain) / (h * h * std::log(h));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    out.push_back({"F(2)(H)/(H^2 log H) within factor 2 over {50,100,200}", hi <= 2 * lo,
                   fmt("min %.4f max %.4f", lo, hi)});
  } else if (!monic && degree == 2) {
    Table t = census(2, family, {50, 100}, {"Mstar", "Istar", "Rstar"}, threads);
    for (long H : {50L, 100L}) {
      band(out, t, "Mstar", H, 18, 2, 0.2);
      band(out, t, "Istar", H, 12, 2, 0.2);
      band(out, t, "Rstar", H, 6, 2, 0.2);
    }
    invariants(out, t, 2, family);
  } else {
    // No leading-constant band; census invariants at a small height.
    long H = degree <= 4 ? 4 : (degree == 5 ? 2 : 1);
    std::vector<std::string> cls = monic ? std::vector<std::string>{"M", "I", "R"}
                                         : std::vector<std::string>{"Mstar", "Istar", "Rstar"};
    Table t = census(degree, family, {H}, cls, threads);
    invariants(out, t, degree, family);
  }
  return out;
}

}  // namespace polydep::cli
