#include "polydep/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "polydep/error.hpp"
#include "polydep/factorize.hpp"
#include "polydep/fastball.hpp"

namespace polydep {

using json = nlohmann::ordered_json;

const char* to_string(Family f) { return f == Family::Monic ? "monic" : "general"; }

Family parse_family(std::string_view s) {
  if (s == "monic") return Family::Monic;
  if (s == "general") return Family::General;
  throw InvalidInput("unknown family '" + std::string(s) + "'");
}

std::string ClassLabel::to_string() const {
  switch (kind) {
    case Kind::M: return "M";
    case Kind::I: return "I";
    case Kind::R: return "R";
    case Kind::Mstar: return "Mstar";
    case Kind::Istar: return "Istar";
    case Kind::Rstar: return "Rstar";
    case Kind::P: return "P";
    case Kind::Pstar: return "Pstar";
    case Kind::Q: return "Q";
    case Kind::Qstar: return "Qstar";
    case Kind::F: return "F(" + std::to_string(k) + ")";
    case Kind::DegIrr: return "DegIrr";
    case Kind::L: return "L";
  }
  return "?";
}

ClassLabel ClassLabel::parse(std::string_view s) {
  static const std::pair<const char*, Kind> names[] = {
      {"M", Kind::M},         {"I", Kind::I},         {"R", Kind::R},         {"Mstar", Kind::Mstar},
      {"Istar", Kind::Istar}, {"Rstar", Kind::Rstar}, {"P", Kind::P},         {"Pstar", Kind::Pstar},
      {"Q", Kind::Q},         {"Qstar", Kind::Qstar}, {"DegIrr", Kind::DegIrr}, {"L", Kind::L}};
  for (const auto& [name, kind] : names) {
    if (s == name) return ClassLabel{kind, 0};
  }
  if (!s.empty() && s[0] == 'F') {
    std::string_view rest = s.substr(1);
    if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
        rest.size() < 6) {
      return ClassLabel{Kind::F, std::stoi(std::string(rest))};
    }
  }
  throw InvalidInput("unknown class label '" + std::string(s) + "'");
}

void CensusSpec::validate() const {
  if (degree < 2) throw InvalidInput("census: degree must be at least 2");
  if (height < 1) throw InvalidInput("census: height must be at least 1");
  if (classes.empty()) throw InvalidInput("census: no classes requested");
  for (const auto& c : classes) {
    if (c.kind == ClassLabel::Kind::F && (c.k < 1 || 2 * c.k > degree)) {
      throw InvalidInput("census: F(k) requires 1 <= k <= n/2");
    }
  }
  if (shard && (shard->second < 1 || shard->first < 0 || shard->first >= shard->second)) {
    throw InvalidInput("census: shard index must be below the shard total");
  }
  for (long h : report_heights) {
    if (h < 1 || h > height) throw InvalidInput("census: report heights must lie in [1, height]");
  }
  if (threads < 1) throw InvalidInput("census: thread count must be positive");
  if (degree > 12 || height > (1L << 20)) throw RefusalError("census: family too large");
}

std::string CensusRecord::csv_header() {
  return "degree,height,family,class,count_certain,count_unknown,elapsed_ms,version";
}

std::string CensusRecord::to_csv(bool timing) const {
  std::ostringstream os;
  os << degree << ',' << height << ',' << polydep::to_string(family) << ',' << label.to_string() << ','
     << count_certain << ',' << count_unknown << ',';
  if (timing) {
    os << static_cast<long long>(std::llround(elapsed_ms));
  } else {
    os << 0;
  }
  os << ',' << version;
  return os.str();
}

bool LabelSet::contains(const ClassLabel& l) const {
  return std::find(labels.begin(), labels.end(), l) != labels.end();
}

namespace {

// ---------------------------------------------------------------------------
// Per-polynomial outcomes

struct Needs {
  bool dep = false;
  bool irr = false;
  bool degen = false;
  bool lin = false;
  bool div = false;
};

struct Outcome {
  bool dep = false;
  bool dep_unknown = false;
  bool irreducible = false;
  bool degenerate = false;
  bool lin = false;
  bool lin_unknown = false;
  unsigned divisors = 0;  // bit k: a divisor of degree k exists
};

Needs needs_for(const std::vector<ClassLabel>& classes) {
  Needs n;
  using K = ClassLabel::Kind;
  for (const auto& c : classes) {
    switch (c.kind) {
      case K::M: case K::Mstar: n.dep = true; break;
      case K::I: case K::R: case K::Istar: case K::Rstar: n.dep = n.irr = true; break;
      case K::P: case K::Pstar: n.irr = true; break;
      case K::Q: case K::Qstar: break;
      case K::F: n.div = true; break;
      case K::DegIrr: n.irr = n.degen = true; break;
      case K::L: n.lin = true; break;
    }
  }
  return n;
}

Outcome library_outcome(const IntPolynomial& f, const Needs& needs, const SearchParameters& params,
                        bool zero_root_in_L) {
  Outcome o;
  if (needs.irr || needs.div || needs.degen) {
    Factorization fac = factor(f);
    o.irreducible = fac.factors.size() == 1 && fac.factors[0].second == 1;
    for (int k : divisor_degrees(fac)) o.divisors |= 1U << k;
  }
  if (needs.dep) {
    try {
      DependenceVerdict v = multiplicative_dependence(f, params);
      o.dep = v.is_dependent();
      o.dep_unknown = v.is_unknown();
    } catch (const PrecisionError&) {
      o.dep_unknown = true;
    }
  }
  if (needs.degen && o.irreducible && f.degree() >= 2) o.degenerate = is_degenerate(f);
  if (needs.lin) {
    if (f[0] == 0) {
      o.lin = zero_root_in_L;
    } else {
      try {
        DependenceVerdict v = linear_dependence(f, params);
        o.lin = v.is_dependent();
        o.lin_unknown = v.is_unknown();
      } catch (const PrecisionError&) {
        o.lin_unknown = true;
      }
      // Irrational quadratic roots z1, z2 with a z1 + b z2 = 0 force z1 = -z2.
      if (o.lin_unknown && f.degree() == 2 && !mpz_perfect_square_p(discriminant(f).get_mpz_t())) {
        o.lin = f[1] == 0;
        o.lin_unknown = false;
      }
    }
  }
  return o;
}

long iabs(long x) { return x < 0 ? -x : x; }

long isqrt_exact(long d) {
  if (d < 0) return -1;
  long s = static_cast<long>(std::sqrt(static_cast<double>(d)));
  while (s * s > d) --s;
  while ((s + 1) * (s + 1) <= d) ++s;
  return s * s == d ? s : -1;
}

long iroot_exact(long x, int e) {
  long r = std::lround(std::pow(static_cast<double>(x), 1.0 / e));
  for (long c = std::max(1L, r - 1); c <= r + 1; ++c) {
    long p = 1;
    bool over = false;
    for (int i = 0; i < e && !over; ++i) {
      if (p > x / c) over = true;
      else p *= c;
    }
    if (!over && p == x) return c;
  }
  return -1;
}

// Minimal base of p/q > 0 among its perfect-power representations.
std::pair<long, long> power_base(long p, long q) {
  for (int e = 62; e >= 2; --e) {
    if ((p > 1 && (1L << std::min(e, 62)) > p && q == 1) || (p == 1 && (1L << std::min(e, 62)) > q)) continue;
    long rp = iroot_exact(p, e), rq = iroot_exact(q, e);
    if (rp > 0 && rq > 0) return {rp, rq};
  }
  return {p, q};
}

struct Divisors {
  long v[512];
  int n = 0;
  const long* begin() const { return v; }
  const long* end() const { return v + n; }
};

// Positive divisors; coefficients are bounded by the census height limit.
Divisors divisors(long x) {
  Divisors out;
  x = iabs(x);
  for (long i = 1; i * i <= x && out.n < 510; ++i) {
    if (x % i == 0) {
      out.v[out.n++] = i;
      if (i != x / i) out.v[out.n++] = x / i;
    }
  }
  return out;
}

bool irreducible_quadratic_dependent(long A, long b, long c) {
  long p = A * c, sq = b * b;
  return iabs(c) == iabs(A) || b == 0 || sq == p || sq == 2 * p || sq == 3 * p;
}

bool quadratic_fast(const long* a, const Needs& needs, Outcome& o) {
  if (needs.lin) return false;
  long c = a[0], b = a[1], A = a[2];
  if (c == 0) {
    o.irreducible = false;
    o.divisors = 1U << 1;
    o.dep = b != 0 && iabs(b) == iabs(A);
    return true;
  }
  long D = b * b - 4 * A * c;
  long s = isqrt_exact(D);
  if (s >= 0) {
    o.irreducible = false;
    o.divisors = 1U << 1;
    if (D == 0) {
      o.dep = iabs(b) == iabs(2 * A);
      return true;
    }
    if (iabs(c) == iabs(A)) {
      o.dep = true;
      return true;
    }
    long p1 = iabs(-b + s), p2 = iabs(-b - s), q = iabs(2 * A);
    long g1 = std::gcd(p1, q), g2 = std::gcd(p2, q);
    long n1 = p1 / g1, d1 = q / g1, n2 = p2 / g2, d2 = q / g2;
    if ((n1 == d1) || (n2 == d2)) {
      o.dep = true;
      return true;
    }
    auto r1 = power_base(n1, d1), r2 = power_base(n2, d2);
    o.dep = r1 == r2 || (r1.first == r2.second && r1.second == r2.first);
    return true;
  }
  o.irreducible = true;
  long p = A * c, sq = b * b;
  o.degenerate = b == 0 || sq == p || sq == 2 * p || sq == 3 * p;
  o.dep = irreducible_quadratic_dependent(A, b, c);
  return true;
}

// sum a_i p^i q^(n-i) == 0
bool is_root(const long* a, int n, long p, long q) {
  __int128 acc = a[n], qp = 1;
  for (int i = n - 1; i >= 0; --i) {
    qp *= q;
    acc = acc * p + static_cast<__int128>(a[i]) * qp;
  }
  return acc == 0;
}

bool has_rational_root(const long* a, int n) {
  Divisors ps = divisors(a[0]), qs = divisors(a[n]);
  for (long q : qs) {
    for (long p : ps) {
      if (std::gcd(p, q) != 1) continue;
      if (is_root(a, n, p, q) || is_root(a, n, -p, q)) return true;
    }
  }
  return false;
}

bool cubic_fast(const long* a, const Needs& needs, Outcome& o) {
  if (needs.lin || a[0] == 0) return false;
  if (has_rational_root(a, 3)) return false;
  o.irreducible = true;
  o.degenerate = a[1] == 0 && a[2] == 0;
  o.dep = iabs(a[0]) == iabs(a[3]) || o.degenerate;
  return true;
}

// Finds X^4 + a3 X^3 + ... = (X^2 + bX + c)(X^2 + dX + e).
bool monic_quartic_quadratic_factor(const long* a, long& b, long& c, long& d, long& e) {
  long a0 = a[0], a1 = a[1], a2 = a[2], a3 = a[3];
  for (long cp : divisors(a0)) {
    for (long cc : {cp, -cp}) {
      long ee = a0 / cc;
      if (ee != cc) {
        long num = a1 - cc * a3, den = ee - cc;
        if (num % den != 0) continue;
        long bb = num / den, dd = a3 - bb;
        if (cc + ee + bb * dd == a2) {
          b = bb, c = cc, d = dd, e = ee;
          return true;
        }
      } else {
        if (a1 != cc * a3) continue;
        long s = isqrt_exact(a3 * a3 - 4 * (a2 - 2 * cc));
        if (s >= 0 && (a3 + s) % 2 == 0) {
          b = (a3 + s) / 2, c = cc, d = (a3 - s) / 2, e = cc;
          return true;
        }
      }
    }
  }
  return false;
}

bool same_power_base(long x, long y) { return power_base(iabs(x), 1) == power_base(iabs(y), 1); }

const std::vector<unsigned>& admissible_orders_quartic() {
  // m >= 2 with phi(m) <= 12
  static const std::vector<unsigned> orders = [] {
    std::vector<unsigned> v;
    for (unsigned m = 2; m <= 288; ++m) {
      unsigned r = m, x = m;
      for (unsigned p = 2; p * p <= x; ++p) {
        if (x % p == 0) {
          while (x % p == 0) x /= p;
          r -= r / p;
        }
      }
      if (x > 1) r -= r / x;
      if (r <= 12) v.push_back(m);
    }
    return v;
  }();
  return orders;
}

DComplexBall fast_disk(const FastRoot& r) { return DComplexBall::disk(r.re, r.im, r.radius); }

// Certified by double balls: w^m != 1 for every admissible m.
bool excludes_unity(const DComplexBall& w, const std::vector<unsigned>& orders) {
  DBall mod2 = w.re * w.re + w.im * w.im;
  if (!(mod2 - DBall::exact(1.0)).contains_zero()) return true;
  for (unsigned m : orders) {
    DComplexBall t = pow(w, m) - DComplexBall::exact(1.0, 0.0);
    if (t.contains_zero()) return false;
  }
  return true;
}

bool quartic_fast(const long* a, const Needs& needs, Outcome& o) {
  if (needs.lin || a[4] != 1 || a[0] == 0) return false;
  for (long rp : divisors(a[0])) {
    for (long r : {rp, -rp}) {
      if (!is_root(a, 4, r, 1)) continue;
      // (X - r) g with g monic cubic
      long g[4];
      g[3] = 1;
      g[2] = a[3] + r;
      g[1] = a[2] + r * g[2];
      g[0] = a[1] + r * g[1];
      if (has_rational_root(g, 3)) return false;
      o.irreducible = false;
      o.divisors = 1U << 1;
      o.dep = iabs(g[0]) == 1 || (g[1] == 0 && g[2] == 0) || iabs(r) == 1 || same_power_base(r, g[0]);
      return true;
    }
  }
  long b, c, d, e;
  if (monic_quartic_quadratic_factor(a, b, c, d, e)) {
    if (b == d && c == e) return false;
    o.irreducible = false;
    o.divisors = 1U << 2;
    if (irreducible_quadratic_dependent(1, b, c) || irreducible_quadratic_dependent(1, d, e) ||
        same_power_base(c, e)) {
      o.dep = true;
      return true;
    }
    __int128 disc = static_cast<__int128>(b * b - 4 * c) * (d * d - 4 * e);
    if (disc > 0 && disc < (static_cast<__int128>(1) << 62) && isqrt_exact(static_cast<long>(disc)) < 0) {
      o.dep = false;
      return true;
    }
    return false;
  }
  o.irreducible = true;
  if (a[1] == 0 && a[3] == 0) {
    // Roots come in pairs z, -z.
    o.degenerate = true;
    o.dep = true;
    return true;
  }
  bool unit = iabs(a[0]) == 1;
  bool need_roots = needs.degen || (needs.dep && !unit);
  if (!need_roots) {
    o.dep = unit;
    return true;
  }
  double ad[5] = {static_cast<double>(a[0]), static_cast<double>(a[1]), static_cast<double>(a[2]),
                  static_cast<double>(a[3]), 1.0};
  thread_local std::vector<FastRoot> roots;
  if (!fast_isolate(ad, 4, roots) || roots.size() != 4) return false;
  DComplexBall z[4];
  for (int i = 0; i < 4; ++i) z[i] = fast_disk(roots[i]);
  const auto& orders = admissible_orders_quartic();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (!excludes_unity(z[i] / z[j], orders)) return false;
    }
  }
  o.degenerate = false;
  if (unit) {
    o.dep = true;
    return true;
  }
  if (needs.dep) {
    static const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    static const std::vector<unsigned> twelve = {12};
    for (const auto& p : pairings) {
      DComplexBall w = (z[p[0]] * z[p[1]]) / (z[p[2]] * z[p[3]]);
      if (!excludes_unity(w, twelve)) return false;
    }
    o.dep = false;
  }
  return true;
}

bool fast_outcome(const long* a, int n, const Needs& needs, Outcome& o) {
  if (a[0] == 0) {
    // Zero roots do not take part in multiplicative relations.
    if (needs.div || needs.lin) return false;
    int z = 0;
    while (z < n && a[z] == 0) ++z;
    int m = n - z;
    if (m == 0) {
      o = Outcome{};
    } else if (m == 1) {
      o = Outcome{};
      o.dep = iabs(a[z]) == iabs(a[z + 1]);
    } else {
      Needs sub = needs;
      sub.irr = sub.degen = false;
      if (!fast_outcome(a + z, m, sub, o)) return false;
    }
    o.irreducible = false;
    o.degenerate = false;
    return true;
  }
  switch (n) {
    case 2: return quadratic_fast(a, needs, o);
    case 3: return cubic_fast(a, needs, o);
    case 4: return quartic_fast(a, needs, o);
    default: return false;
  }
}

// 0: not in class, 1: certainly in class, 2: undecided
int label_state(const ClassLabel& l, const Outcome& o, const long* a, int n, bool zero_root_in_L) {
  using K = ClassLabel::Kind;
  auto dep_state = [&]() { return o.dep ? 1 : (o.dep_unknown ? 2 : 0); };
  switch (l.kind) {
    case K::M: case K::Mstar: return dep_state();
    case K::I: case K::Istar: return o.irreducible ? dep_state() : 0;
    case K::R: case K::Rstar: return o.irreducible ? 0 : dep_state();
    case K::P: return o.irreducible && iabs(a[0]) == 1 ? 1 : 0;
    case K::Pstar: return o.irreducible && iabs(a[0]) == iabs(a[n]) ? 1 : 0;
    case K::Q: case K::Qstar: {
      long s1 = 0, s2 = 0, sg = 1;
      for (int i = 0; i <= n; ++i) {
        s1 += a[i];
        s2 += sg * a[i];
        sg = -sg;
      }
      return s1 == 0 || s2 == 0 ? 1 : 0;
    }
    case K::F: return (o.divisors >> l.k) & 1U ? 1 : 0;
    case K::DegIrr: return o.irreducible && o.degenerate ? 1 : 0;
    case K::L:
      if (a[0] == 0) return zero_root_in_L ? 1 : 0;
      return o.lin ? 1 : (o.lin_unknown ? 2 : 0);
  }
  return 0;
}

IntPolynomial to_poly(const long* a, int n) {
  std::vector<Integer> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[i] = a[i];
  return IntPolynomial(c);
}

// ---------------------------------------------------------------------------
// Slabs

struct Layout {
  int n;
  long H;
  bool monic;
  long slabs;
  int top_free;  // highest coefficient index not fixed by the slab prefix
};

Layout layout_of(const CensusSpec& s) {
  Layout l{s.degree, s.height, s.family == Family::Monic, 0, 0};
  long B = 2 * s.height + 1;
  if (l.monic) {
    if (l.n == 2) {
      l.slabs = B;
      l.top_free = 0;
    } else {
      l.slabs = B * B;
      l.top_free = l.n - 3;
    }
  } else {
    l.slabs = 2 * s.height * B;
    l.top_free = l.n - 2;
  }
  return l;
}

void slab_prefix(const Layout& l, long s, long* a) {
  long B = 2 * l.H + 1;
  if (l.monic) {
    a[l.n] = 1;
    if (l.n == 2) {
      a[1] = -l.H + s;
    } else {
      a[l.n - 1] = -l.H + s / B;
      a[l.n - 2] = -l.H + s % B;
    }
  } else {
    long li = s / B;
    a[l.n] = li < l.H ? -l.H + li : li - l.H + 1;
    a[l.n - 1] = -l.H + s % B;
  }
}

template <class Visit>
void for_each_in_slab(const Layout& l, long s, Visit&& visit) {
  long a[16];
  slab_prefix(l, s, a);
  for (int i = 0; i <= l.top_free; ++i) a[i] = -l.H;
  while (true) {
    visit(static_cast<const long*>(a));
    int i = 0;
    while (i <= l.top_free && a[i] == l.H) {
      a[i] = -l.H;
      ++i;
    }
    if (i > l.top_free) break;
    ++a[i];
  }
}

bool slab_in_shard(const CensusSpec& spec, long s) {
  if (!spec.shard) return true;
  return s % spec.shard->second == spec.shard->first;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string spec_fingerprint(const CensusSpec& spec) {
  std::ostringstream os;
  os << "v1|" << spec.degree << '|' << spec.height << '|' << to_string(spec.family) << '|';
  for (const auto& c : spec.classes) os << c.to_string() << ',';
  os << '|';
  if (spec.shard) os << spec.shard->first << '/' << spec.shard->second;
  os << '|' << (spec.params.exponent_bound ? *spec.params.exponent_bound : 0) << '|'
     << spec.params.precision_start << '|' << spec.params.max_precision << '|' << spec.params.lll_delta.get_str()
     << '|' << spec.zero_root_in_L << '|' << spec.fast_paths;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

// counts[(c * 2 + unknown) * (H + 1) + h]
using Counts = std::vector<std::uint64_t>;

struct Checkpoint {
  long watermark = 0;
  Counts counts;
};

std::optional<Checkpoint> load_checkpoint(const std::string& path, const std::string& hash, std::size_t size) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw ResumeError("checkpoint '" + path + "' cannot be read");
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception&) {
    throw ResumeError("checkpoint '" + path + "' is corrupt");
  }
  try {
    if (j.at("spec_hash").get<std::string>() != hash) {
      throw ResumeError("checkpoint '" + path + "' belongs to a different census");
    }
    Checkpoint cp;
    cp.watermark = j.at("watermark").get<long>();
    cp.counts = j.at("counts").get<Counts>();
    if (cp.counts.size() != size || cp.watermark < 0) throw ResumeError("checkpoint '" + path + "' is corrupt");
    return cp;
  } catch (const ResumeError&) {
    throw;
  } catch (const std::exception&) {
    throw ResumeError("checkpoint '" + path + "' is corrupt");
  }
}

void write_checkpoint(const std::string& path, const std::string& hash, const Checkpoint& cp, long total) {
  json j;
  j["spec_hash"] = hash;
  j["watermark"] = cp.watermark;
  j["slabs"] = total;
  j["counts"] = cp.counts;
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ResumeError("checkpoint '" + path + "' cannot be written");
    out << j.dump() << '\n';
    if (!out) throw ResumeError("checkpoint '" + path + "' cannot be written");
  }
  std::filesystem::rename(tmp, path);
}

// Every label is invariant under f(X) -> f(-X), and in the general family
// also under f -> -f. Returns the orbit size if a is the lexicographically
// smallest member of its orbit, else 0.
int orbit_weight(const long* a, int n, bool monic) {
  auto cmp = [&](int sign_all, bool mirror) {
    for (int i = n; i >= 0; --i) {
      long v = sign_all * ((mirror && ((n - i) & 1)) ? -a[i] : a[i]);
      if (v != a[i]) return v < a[i] ? -1 : 1;
    }
    return 0;
  };
  int distinct = 1;
  for (int t = 1; t < (monic ? 2 : 4); ++t) {
    int r = cmp((t & 2) ? -1 : 1, t & 1);
    if (r < 0) return 0;
    if (r > 0) ++distinct;
  }
  return monic ? distinct : (distinct == 4 ? 4 : (distinct == 3 ? 2 : 1));
}

long poly_height(const long* a, int n) {
  long h = 0;
  for (int i = 0; i <= n; ++i) h = std::max(h, iabs(a[i]));
  return h;
}

std::vector<CensusRecord> make_records(const CensusSpec& spec, const Counts& counts, double ms) {
  std::vector<long> heights = spec.report_heights.empty() ? std::vector<long>{spec.height} : spec.report_heights;
  long H = spec.height;
  std::vector<CensusRecord> out;
  for (long h : heights) {
    for (std::size_t c = 0; c < spec.classes.size(); ++c) {
      CensusRecord r;
      r.degree = spec.degree;
      r.height = h;
      r.family = spec.family;
      r.label = spec.classes[c];
      for (long t = 0; t <= h; ++t) {
        r.count_certain += counts[(c * 2) * (H + 1) + t];
        r.count_unknown += counts[(c * 2 + 1) * (H + 1) + t];
      }
      r.elapsed_ms = ms;
      r.version = POLYDEP_VERSION;
      out.push_back(r);
    }
  }
  return out;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

// Intersects [lo, hi] with {d : |k d + c0| <= H}.
bool clamp_linear(long k, long c0, long H, long& lo, long& hi) {
  if (k == 0) return iabs(c0) <= H;
  long l, h;
  if (k > 0) {
    l = ceil_div(-H - c0, k);
    h = floor_div(H - c0, k);
  } else {
    l = ceil_div(H - c0, k);
    h = floor_div(-H - c0, k);
  }
  lo = std::max(lo, l);
  hi = std::min(hi, h);
  return lo <= hi;
}

}  // namespace

std::uint64_t enumerate(const CensusSpec& spec, const std::function<void(const IntPolynomial&)>& visit) {
  spec.validate();
  Layout l = layout_of(spec);
  std::uint64_t count = 0;
  for (long s = 0; s < l.slabs; ++s) {
    if (!slab_in_shard(spec, s)) continue;
    for_each_in_slab(l, s, [&](const long* a) {
      visit(to_poly(a, l.n));
      ++count;
    });
  }
  return count;
}

LabelSet classify_labels(const IntPolynomial& f, const SearchParameters& params, Family family,
                         bool zero_root_in_L) {
  int n = f.degree();
  if (n < 1) throw InvalidInput("classify_labels: degree must be at least 1");
  for (const auto& c : f.coeffs()) {
    if (!c.fits_slong_p()) throw InvalidInput("classify_labels: coefficient out of range");
  }
  std::vector<ClassLabel> all;
  using K = ClassLabel::Kind;
  bool monic = family == Family::Monic;
  for (K k : monic ? std::vector<K>{K::M, K::I, K::R, K::P, K::Q} : std::vector<K>{K::Mstar, K::Istar, K::Rstar, K::Pstar, K::Qstar}) {
    all.push_back(ClassLabel{k, 0});
  }
  for (int k = 1; 2 * k <= n; ++k) all.push_back(ClassLabel{K::F, k});
  all.push_back(ClassLabel{K::DegIrr, 0});
  all.push_back(ClassLabel{K::L, 0});
  std::vector<long> a(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) a[i] = f[i].get_si();
  Outcome o = library_outcome(f, needs_for(all), params, zero_root_in_L);
  LabelSet out;
  for (const auto& l : all) {
    int st = label_state(l, o, a.data(), n, zero_root_in_L);
    if (st == 1) out.labels.push_back(l);
    if (st == 2) out.had_unknown = true;
  }
  return out;
}

std::vector<std::uint64_t> monic_quartic_f2_counts(long H) {
  if (H < 1) throw InvalidInput("height must be positive");
  if (H > 30000) throw RefusalError("height too large for product generation");
  // Any monic quadratic divisor g of f satisfies |g_i| <= binom(2, i) M(f)
  // and M(f) <= ||f||_2 <= sqrt(1 + 4 H^2).
  long M = static_cast<long>(std::floor(std::sqrt(1.0 + 4.0 * static_cast<double>(H) * H))) + 1;
  std::vector<std::uint64_t> keys;
  auto pack = [&](long a3, long a2, long a1, long a0) {
    std::uint64_t o = static_cast<std::uint64_t>(H);
    return ((static_cast<std::uint64_t>(a3) + o) << 48) | ((static_cast<std::uint64_t>(a2) + o) << 32) |
           ((static_cast<std::uint64_t>(a1) + o) << 16) | (static_cast<std::uint64_t>(a0) + o);
  };
  for (long c = -M; c <= M; ++c) {
    for (long e = -M; e <= M; ++e) {
      if (c != 0 && e != 0 && iabs(c * e) > H) continue;
      if (c != 0 && e != 0 && e > 0 && iabs(e) > H) continue;
      for (long b = -2 * M; b <= 2 * M; ++b) {
        long lo = std::max(-H - b, -2 * M), hi = std::min(H - b, 2 * M);
        if (!clamp_linear(b, c + e, H, lo, hi)) continue;
        if (!clamp_linear(c, b * e, H, lo, hi)) continue;
        if (iabs(c * e) > H) continue;
        for (long d = lo; d <= hi; ++d) {
          // g = X^2 + bX + c, h = X^2 + dX + e; count each product once.
          if (std::make_pair(b, c) > std::make_pair(d, e)) continue;
          keys.push_back(pack(b + d, c + e + b * d, b * e + c * d, c * e));
        }
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(H) + 1, 0);
  for (std::uint64_t k : keys) {
    long h = 1;
    for (int s = 0; s < 64; s += 16) h = std::max(h, iabs(static_cast<long>((k >> s) & 0xffff) - H));
    ++counts[h];
  }
  return counts;
}

std::vector<CensusRecord> run_census(const CensusSpec& spec) {
  spec.validate();
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&]() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };
  long H = spec.height;
  std::size_t nc = spec.classes.size();
  std::size_t size = nc * 2 * static_cast<std::size_t>(H + 1);

  bool generate_f2 = spec.fast_paths && spec.family == Family::Monic && spec.degree == 4 &&
                     std::all_of(spec.classes.begin(), spec.classes.end(), [](const ClassLabel& c) {
                       return c.kind == ClassLabel::Kind::F && c.k == 2;
                     });
  if (generate_f2) {
    Counts counts(size, 0);
    // The whole family is one slab, owned by shard 0.
    if (!spec.shard || spec.shard->first == 0) {
      std::vector<std::uint64_t> f2 = monic_quartic_f2_counts(H);
      for (std::size_t c = 0; c < nc; ++c) {
        for (long h = 0; h <= H; ++h) counts[(c * 2) * (H + 1) + h] = f2[h];
      }
    }
    return make_records(spec, counts, elapsed());
  }

  Layout l = layout_of(spec);
  Needs needs = needs_for(spec.classes);
  std::string hash = spec_fingerprint(spec);
  Checkpoint committed;
  committed.counts.assign(size, 0);
  if (spec.checkpoint_path) {
    if (auto cp = load_checkpoint(*spec.checkpoint_path, hash, size)) {
      if (cp->watermark > l.slabs) throw ResumeError("checkpoint watermark beyond the slab range");
      committed = std::move(*cp);
    }
  }

  std::mutex mu;
  std::map<long, Counts> pending;
  std::atomic<long> next{committed.watermark};
  std::atomic<long> processed{0};
  std::atomic<bool> stop{false};
  auto last_write = std::chrono::steady_clock::now();
  std::exception_ptr failure;

  auto advance = [&]() {
    // Caller holds mu.
    bool moved = false;
    while (true) {
      auto it = pending.find(committed.watermark);
      if (it == pending.end()) break;
      for (std::size_t i = 0; i < size; ++i) committed.counts[i] += it->second[i];
      pending.erase(it);
      ++committed.watermark;
      moved = true;
    }
    return moved;
  };

  auto worker = [&]() {
    Counts local(size, 0);
    while (!stop.load()) {
      long s = next.fetch_add(1);
      if (s >= l.slabs) break;
      std::fill(local.begin(), local.end(), 0);
      if (slab_in_shard(spec, s)) {
        try {
          for_each_in_slab(l, s, [&](const long* a) {
            long w = spec.fast_paths ? orbit_weight(a, l.n, l.monic) : 1;
            if (w == 0) return;
            long h = poly_height(a, l.n);
            Outcome o;
            if (!(spec.fast_paths && fast_outcome(a, l.n, needs, o))) {
              o = library_outcome(to_poly(a, l.n), needs, spec.params, spec.zero_root_in_L);
            }
            for (std::size_t c = 0; c < nc; ++c) {
              int st = label_state(spec.classes[c], o, a, l.n, spec.zero_root_in_L);
              if (st == 1) local[(c * 2) * (H + 1) + h] += w;
              if (st == 2) local[(c * 2 + 1) * (H + 1) + h] += w;
            }
          });
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
          stop = true;
          break;
        }
      }
      std::lock_guard<std::mutex> lock(mu);
      pending.emplace(s, local);
      bool moved = advance();
      long done = ++processed;
      auto now = std::chrono::steady_clock::now();
      if (spec.checkpoint_path && moved && now - last_write > std::chrono::seconds(2)) {
        write_checkpoint(*spec.checkpoint_path, hash, committed, l.slabs);
        last_write = now;
      }
      if (spec.stop_after_slabs && done >= *spec.stop_after_slabs) stop = true;
    }
  };

  int nt = std::max(1, std::min<int>(spec.threads, 256));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  if (committed.watermark < l.slabs) {
    if (spec.checkpoint_path) write_checkpoint(*spec.checkpoint_path, hash, committed, l.slabs);
    throw CensusInterrupted("census interrupted at slab " + std::to_string(committed.watermark));
  }
  if (spec.checkpoint_path) write_checkpoint(*spec.checkpoint_path, hash, committed, l.slabs);
  return make_records(spec, committed.counts, elapsed());
}

FitReport compare(const std::vector<CensusRecord>& records, const AsymptoticModel& model) {
  if (records.size() < 2) throw InvalidInput("compare: at least two records are required");
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (!(records[i].label == records[0].label) || records[i].degree != records[0].degree ||
        records[i].family != records[0].family) {
      throw InvalidInput("compare: records must share degree, family and class");
    }
    if (records[i].height <= records[i - 1].height) {
      throw InvalidInput("compare: heights must be strictly increasing");
    }
  }
  if (model.power < 0 || model.log_power < 0) throw InvalidInput("compare: model exponents must be non-negative");
  FitReport rep;
  rep.label = records[0].label;
  rep.model = model;
  double c = model.leading_constant.get_d();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    double H = static_cast<double>(r.height);
    double denom = c * std::pow(H, model.power) * std::pow(std::log(H), model.log_power);
    FitRow row;
    row.height = r.height;
    row.count = r.count_certain;
    row.unknown = r.count_unknown;
    row.ratio = static_cast<double>(r.count_certain) / denom;
    row.bracket_ratio = static_cast<double>(r.count_certain + r.count_unknown) / denom;
    if (i > 0 && r.count_certain > 0 && records[i - 1].count_certain > 0) {
      row.growth = std::log(static_cast<double>(r.count_certain) / static_cast<double>(records[i - 1].count_certain)) /
                   std::log(H / static_cast<double>(records[i - 1].height));
    }
    rep.rows.push_back(row);
  }
  return rep;
}

std::string FitReport::to_json() const {
  json j;
  j["class"] = label.to_string();
  j["model"] = {{"c", model.leading_constant.get_str()}, {"pow", model.power}, {"logpow", model.log_power}};
  json rows = json::array();
  for (const auto& r : this->rows) {
    json o;
    o["H"] = r.height;
    o["count"] = r.count;
    o["unknown"] = r.unknown;
    o["ratio"] = r.ratio;
    o["bracket_ratio"] = r.bracket_ratio;
    if (r.growth) o["growth"] = *r.growth;
    else o["growth"] = nullptr;
    rows.push_back(o);
  }
  j["rows"] = rows;
  return j.dump();
}

bool zero_count_bound_check(const MultiPolynomial& g, int m, long H, std::uint64_t* zeros) {
  if (m < 1) throw InvalidInput("zero_count_bound_check: at least one variable is required");
  if (H < 0) throw InvalidInput("zero_count_bound_check: height must be non-negative");
  int d = 0;
  bool nonzero = false;
  for (const auto& [e, c] : g) {
    if (static_cast<int>(e.size()) != m) throw InvalidInput("zero_count_bound_check: exponent length mismatch");
    if (c == 0) continue;
    nonzero = true;
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  }
  if (!nonzero) throw InvalidInput("zero_count_bound_check: zero polynomial");
  if (d < 1) throw InvalidInput("zero_count_bound_check: total degree must be at least 1");
  double box = std::pow(2.0 * H + 1, m);
  if (box > 1e8) throw RefusalError("zero_count_bound_check: box exceeds 1e8 points");
  std::vector<long> x(m, -H);
  std::uint64_t count = 0;
  while (true) {
    Integer v = 0;
    for (const auto& [e, c] : g) {
      Integer t = c;
      for (int i = 0; i < m; ++i) {
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      }
      v += t;
    }
    if (v == 0) ++count;
    int i = 0;
    while (i < m && x[i] == H) {
      x[i] = -H;
      ++i;
    }
    if (i == m) break;
    ++x[i];
  }
  if (zeros) *zeros = count;
  double bound = static_cast<double>(d) * m * std::pow(2.0 * H + 1, m - 1);
  return static_cast<double>(count) <= bound;
}

}  // namespace polydep
