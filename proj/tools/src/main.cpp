#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polydep/census.hpp"
#include "polydep/depend.hpp"
#include "polydep/error.hpp"
#include "polydep/intpoly.hpp"
#include "polydep/roots.hpp"
#include "polydep/volume.hpp"
#include "suite.hpp"

namespace {

using namespace polydep;
using json = nlohmann::ordered_json;

constexpr int kExitInvalid = 2;
constexpr int kExitVerify = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long parse_long(const std::string& s, const char* what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size()) throw InvalidInput(std::string("invalid ") + what + " '" + s + "'");
  return v;
}

int default_threads() {
  if (const char* env = std::getenv("POLYDEP_THREADS")) {
    long t = parse_long(env, "POLYDEP_THREADS");
    if (t < 1) throw InvalidInput("POLYDEP_THREADS must be positive");
    return static_cast<int>(t);
  }
  return 1;
}

struct Common {
  std::optional<long> exponent_bound;
  std::optional<long> precision;

  SearchParameters params() const {
    SearchParameters p;
    if (exponent_bound) {
      if (*exponent_bound < 1) throw InvalidInput("exponent bound must be positive");
      p.exponent_bound = *exponent_bound;
    }
    if (precision) {
      if (*precision < 16) throw InvalidInput("precision must be at least 16 bits");
      p.precision_start = *precision;
    }
    return p;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--exponent-bound", c.exponent_bound, "Override the exponent search bound");
  app->add_option("--precision", c.precision, "Starting working precision in bits");
}

int cmd_classify(const std::string& text, const std::string& mode, const std::string& family, const Common& c) {
  IntPolynomial f = IntPolynomial::parse(text);
  SearchParameters p = c.params();
  if (mode == "multiplicative") {
    std::cout << multiplicative_dependence(f, p).to_json() << '\n';
  } else if (mode == "linear") {
    std::cout << linear_dependence(f, p).to_json() << '\n';
  } else if (mode == "gamma") {
    std::cout << gamma_structure(f, p).to_json() << '\n';
  } else {
    LabelSet ls = classify_labels(f, p, parse_family(family));
    json j;
    j["labels"] = json::array();
    for (const auto& l : ls.labels) j["labels"].push_back(l.to_string());
    j["had_unknown"] = ls.had_unknown;
    std::cout << j.dump() << '\n';
  }
  return 0;
}

int cmd_roots(const std::string& text, int digits) {
  IntPolynomial f = IntPolynomial::parse(text);
  long bits = static_cast<long>(std::ceil(digits * 3.33)) + 8;
  RootProfile prof = root_profile(f, bits);
  if (prof.zero_multiplicity > 0) std::cout << "0 (multiplicity " << prof.zero_multiplicity << ")\n";
  for (const auto& r : prof.nonzero_roots) {
    std::cout << r.to_string(digits);
    if (r.multiplicity > 1) std::cout << " (multiplicity " << r.multiplicity << ")";
    std::cout << '\n';
  }
  RealEnclosure m = mahler_measure(f, bits);
  std::cout << "mahler_measure in [" << m.low.to_string(digits) << ", " << m.high.to_string(digits) << "]\n";
  return 0;
}

struct CensusArgs {
  int degree = 0;
  std::string heights;
  std::string family = "monic";
  std::string classes;
  std::optional<int> threads;
  std::string shard;
  std::string checkpoint;
  std::string output;
  std::string format = "csv";
  std::string model;
  bool no_timing = false;
  bool no_fast_paths = false;
  bool zero_root_in_L = false;
};

int cmd_census(const CensusArgs& a, const Common& c) {
  CensusSpec spec;
  spec.degree = a.degree;
  spec.family = parse_family(a.family);
  for (const auto& h : split(a.heights, ',')) spec.report_heights.push_back(parse_long(h, "height"));
  if (spec.report_heights.empty()) throw InvalidInput("census: --height requires at least one value");
  std::sort(spec.report_heights.begin(), spec.report_heights.end());
  spec.report_heights.erase(std::unique(spec.report_heights.begin(), spec.report_heights.end()),
                            spec.report_heights.end());
  spec.height = spec.report_heights.back();
  for (const auto& l : split(a.classes, ',')) spec.classes.push_back(ClassLabel::parse(l));
  spec.params = c.params();
  spec.threads = a.threads ? *a.threads : default_threads();
  spec.fast_paths = !a.no_fast_paths;
  spec.zero_root_in_L = a.zero_root_in_L;
  if (!a.shard.empty()) {
    auto parts = split(a.shard, '/');
    if (parts.size() != 2) throw InvalidInput("census: --shard expects index/total");
    spec.shard = std::make_pair(static_cast<int>(parse_long(parts[0], "shard index")),
                                static_cast<int>(parse_long(parts[1], "shard total")));
  }
  if (!a.checkpoint.empty()) spec.checkpoint_path = a.checkpoint;
  if (a.format != "csv" && a.format != "json") throw InvalidInput("census: --format must be csv or json");
  std::optional<AsymptoticModel> model;
  if (!a.model.empty()) {
    auto parts = split(a.model, ',');
    if (parts.size() != 3) throw InvalidInput("census: --model expects c,pow,logpow");
    AsymptoticModel m;
    try {
      m.leading_constant = Rational(parts[0]);
      m.leading_constant.canonicalize();
    } catch (const std::exception&) {
      throw InvalidInput("census: invalid model constant '" + parts[0] + "'");
    }
    if (m.leading_constant <= 0) throw InvalidInput("census: model constant must be positive");
    m.power = static_cast<int>(parse_long(parts[1], "model power"));
    m.log_power = static_cast<int>(parse_long(parts[2], "model log power"));
    model = m;
  }
  if (a.format == "json" && !model) throw InvalidInput("census: --format json requires --model");

  std::vector<CensusRecord> records = run_census(spec);
  std::ofstream file;
  if (!a.output.empty()) {
    file.open(a.output, std::ios::trunc);
    if (!file) throw InvalidInput("census: cannot open output '" + a.output + "'");
  }
  std::ostream& out = a.output.empty() ? std::cout : file;
  if (a.format == "csv") {
    out << CensusRecord::csv_header() << '\n';
    for (const auto& r : records) out << r.to_csv(!a.no_timing) << '\n';
  } else {
    for (const auto& label : spec.classes) {
      std::vector<CensusRecord> series;
      for (const auto& r : records) {
        if (r.label == label) series.push_back(r);
      }
      out << compare(series, *model).to_json() << '\n';
    }
  }
  return 0;
}

int cmd_nu(int n) {
  Rational v = nu(n);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v.get_d());
  std::cout << v.get_str() << '\n' << buf << '\n';
  return 0;
}

int cmd_verify(const std::string& suite, int degree, const std::string& family, std::optional<int> threads) {
  if (suite != "paper") throw InvalidInput("verify: unknown suite '" + suite + "'");
  if (degree < 2) throw InvalidInput("verify: degree must be at least 2");
  auto clauses = cli::paper_suite(degree, parse_family(family), threads ? *threads : default_threads());
  bool all = true;
  for (const auto& c : clauses) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    all = all && c.pass;
  }
  return all ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicative dependence of polynomial roots and height censuses"};
  app.require_subcommand(1);
  Common common;

  std::string poly, mode = "multiplicative", family = "monic";
  auto* classify = app.add_subcommand("classify", "Decide dependence of the roots of one polynomial");
  classify->add_option("--poly", poly, "Coefficients low to high, e.g. \"[-1,-1,1]\"")->required();
  classify->add_option("--mode", mode, "multiplicative, linear, gamma or labels")
      ->check(CLI::IsMember({"multiplicative", "linear", "gamma", "labels"}));
  classify->add_option("--family", family, "Family used for labels")->check(CLI::IsMember({"monic", "general"}));
  add_common(classify, common);

  int digits = 20;
  auto* roots = app.add_subcommand("roots", "Print certified root enclosures and the Mahler measure");
  roots->add_option("--poly", poly, "Coefficients low to high")->required();
  roots->add_option("--digits", digits, "Decimal digits")->check(CLI::Range(1, 2000));

  CensusArgs ca;
  auto* census = app.add_subcommand("census", "Count polynomials of bounded height per class");
  census->add_option("--degree", ca.degree, "Degree n")->required();
  census->add_option("--height", ca.heights, "Heights, comma separated")->required();
  census->add_option("--family", ca.family, "monic or general")->check(CLI::IsMember({"monic", "general"}));
  census->add_option("--classes", ca.classes, "Classes, comma separated (M,I,R,Mstar,...,F(k),DegIrr,L)")
      ->required();
  census->add_option("--threads", ca.threads, "Worker threads (default POLYDEP_THREADS or 1)");
  census->add_option("--shard", ca.shard, "Shard index/total");
  census->add_option("--checkpoint", ca.checkpoint, "Checkpoint file for resumable runs");
  census->add_option("--output", ca.output, "Write to a file instead of stdout");
  census->add_option("--format", ca.format, "csv or json");
  census->add_option("--model", ca.model, "Asymptotic model c,pow,logpow for json output");
  census->add_flag("--no-timing", ca.no_timing, "Write 0 in the elapsed_ms column");
  census->add_flag("--no-fast-paths", ca.no_fast_paths, "Classify every polynomial with the full cascade");
  census->add_flag("--zero-root-in-L", ca.zero_root_in_L, "Count polynomials with a zero root in L");
  add_common(census, common);

  int n = 0;
  auto* nu_cmd = app.add_subcommand("nu", "Exact volume of the monic stable region");
  nu_cmd->add_option("--n", n, "Degree")->required();

  std::string suite = "paper";
  int vdegree = 0;
  std::string vfamily = "monic";
  std::optional<int> vthreads;
  auto* verify = app.add_subcommand("verify", "Run the asymptotic acceptance bands for one family");
  verify->add_option("--suite", suite, "Suite name")->required();
  verify->add_option("--degree", vdegree, "Degree")->required();
  verify->add_option("--family", vfamily, "monic or general")->check(CLI::IsMember({"monic", "general"}));
  verify->add_option("--threads", vthreads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (*classify) return cmd_classify(poly, mode, family, common);
    if (*roots) return cmd_roots(poly, digits);
    if (*census) return cmd_census(ca, common);
    if (*nu_cmd) return cmd_nu(n);
    if (*verify) return cmd_verify(suite, vdegree, vfamily, vthreads);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const RefusalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
