#include "polydep/depend.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include <json.hpp>

#include "polydep/error.hpp"
#include "polydep/factorize.hpp"
#include "polydep/fastball.hpp"
#include "polydep/lattice.hpp"

namespace polydep {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Dependent: return "dependent";
    case Verdict::Independent: return "independent";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(Certificate c) {
  return c == Certificate::ClosedForm ? "closed_form" : "norm_gap";
}

const char* to_string(Reason r) {
  switch (r) {
    case Reason::EmptyRootSet: return "empty_root_set";
    case Reason::ConstantTermUnit: return "constant_term_unit";
    case Reason::SingleRootOfUnity: return "single_root_of_unity";
    case Reason::Degenerate: return "degenerate";
    case Reason::RationalExponentMatrix: return "rational_exponent_matrix";
    case Reason::PrimeDegreeLemma: return "prime_degree_lemma";
    case Reason::QuadraticCaseAnalysis: return "quadratic_case_analysis";
    case Reason::QuarticCaseAnalysis: return "quartic_case_analysis";
    case Reason::ReducibleNormReduction: return "reducible_norm_reduction";
    case Reason::QuadraticPairAnalysis: return "quadratic_pair_analysis";
    case Reason::LatticeCertified: return "lattice_certified";
    case Reason::SumOfRootsZero: return "sum_of_roots_zero";
    case Reason::ZeroRoot: return "zero_root";
  }
  return "unknown";
}

DependenceVerdict DependenceVerdict::dependent(std::vector<Integer> k, Certificate c, Reason r) {
  DependenceVerdict v;
  v.tag = Verdict::Dependent;
  v.relation = std::move(k);
  v.certificate = c;
  v.reason = r;
  return v;
}

DependenceVerdict DependenceVerdict::independent(Reason r) {
  DependenceVerdict v;
  v.tag = Verdict::Independent;
  v.reason = r;
  return v;
}

DependenceVerdict DependenceVerdict::unknown(const Integer& bound) {
  DependenceVerdict v;
  v.tag = Verdict::Unknown;
  v.searched_bound = bound;
  return v;
}

namespace {

nlohmann::ordered_json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

}  // namespace

std::string DependenceVerdict::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = polydep::to_string(tag);
  if (tag == Verdict::Dependent) {
    nlohmann::ordered_json rel = nlohmann::ordered_json::array();
    for (const auto& k : relation) rel.push_back(integer_json(k));
    j["relation"] = rel;
    if (certificate) j["certificate"] = polydep::to_string(*certificate);
  }
  if (reason) j["reason"] = polydep::to_string(*reason);
  if (tag == Verdict::Unknown && searched_bound) j["bound"] = integer_json(*searched_bound);
  return j.dump();
}

long SearchParameters::effective_bound(const IntPolynomial& f) const {
  if (exponent_bound) {
    if (*exponent_bound < 1) throw InvalidInput("exponent bound must be positive");
    return *exponent_bound;
  }
  int n = std::max(1, f.degree());
  double h = height(f).get_d();
  double lg = std::log(static_cast<double>(n) * std::max(1.0, h));
  double k = std::ceil(8.0 * std::pow(lg, n - 1));
  if (!(k < 1e15)) k = 1e15;
  return std::max(12L, static_cast<long>(k));
}

std::string RationalGroupStructure::to_json() const {
  nlohmann::ordered_json j;
  switch (tag) {
    case Tag::Trivial: j["tag"] = "trivial"; break;
    case Tag::PlusMinusOne: j["tag"] = "plus_minus_one"; break;
    case Tag::CyclicNoMinusOne: j["tag"] = "cyclic_no_minus_one"; break;
    case Tag::CyclicWithMinusOne: j["tag"] = "cyclic_with_minus_one"; break;
    case Tag::Undetermined: j["tag"] = "undetermined"; break;
  }
  if (tag == Tag::CyclicNoMinusOne || tag == Tag::CyclicWithMinusOne) j["g"] = g.get_str();
  if (tag == Tag::Undetermined) {
    j["g0"] = g.get_str();
    j["bound"] = searched_bound;
  }
  return j.dump();
}

namespace {

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

long euler_phi(long m) {
  long r = m;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  }
  if (m > 1) r -= r / m;
  return r;
}

IntPolynomial cyclotomic(long m) {
  static std::recursive_mutex mu;
  static std::map<long, IntPolynomial> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  IntPolynomial p = IntPolynomial::monomial(1, static_cast<int>(m)) - IntPolynomial{1};
  for (long d = 1; d < m; ++d) {
    if (m % d == 0) p = exact_quotient(p, cyclotomic(d));
  }
  cache.emplace(m, p);
  return p;
}

bool is_cyclotomic_irreducible(const IntPolynomial& g) {
  // g irreducible with positive leading coefficient.
  int n = g.degree();
  if (n < 1 || g.leading() != 1) return false;
  for (long m = 1; m <= 2L * n * n + 2; ++m) {
    if (euler_phi(m) == n && cyclotomic(m) == g) return true;
  }
  return false;
}

IntPolynomial normalized(const IntPolynomial& f) {
  IntPolynomial p = primitive_part(f);
  if (p.leading() < 0) p = -p;
  return p;
}

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

std::vector<Integer> scaled(const std::vector<Integer>& k, long c) {
  std::vector<Integer> r(k);
  for (auto& x : r) x *= c;
  return r;
}

void sign_normalize(std::vector<Integer>& k) {
  for (const auto& x : k) {
    if (x != 0) {
      if (x < 0) for (auto& y : k) y = -y;
      return;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Degeneracy

IntPolynomial ratio_polynomial(const IntPolynomial& f) {
  if (f.degree() < 1) throw InvalidInput("ratio_polynomial: degree must be at least 1");
  if (f[0] == 0) throw InvalidInput("ratio_polynomial: zero root present");
  if (!is_squarefree(f)) throw InvalidInput("ratio_polynomial: polynomial is not squarefree");
  int n = f.degree();
  int pts = n * n + 1;
  // Res_y(f(y), f(c y)) at c = 0..n^2, then Newton interpolation.
  std::vector<Rational> xs(pts), dd(pts);
  for (int c = 0; c < pts; ++c) {
    xs[c] = c;
    if (c == 0) {
      Integer v;
      mpz_pow_ui(v.get_mpz_t(), Integer(f.leading() * f[0]).get_mpz_t(), static_cast<unsigned long>(n));
      dd[c] = v;
    } else {
      dd[c] = resultant(f, f.scale_variable(Integer(c)));
    }
  }
  for (int j = 1; j < pts; ++j) {
    for (int i = pts - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  }
  std::vector<Rational> poly(1, dd[pts - 1]);
  for (int i = pts - 2; i >= 0; --i) {
    // poly = poly * (x - xs[i]) + dd[i]
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * xs[i];
    }
    next[0] += dd[i];
    poly = std::move(next);
  }
  std::vector<Integer> out;
  for (auto& q : poly) {
    q.canonicalize();
    if (q.get_den() != 1) throw InvalidInput("ratio_polynomial: interpolation failed");
    out.push_back(q.get_num());
  }
  return IntPolynomial(out);
}

namespace {

DComplexBall to_dball(const RootEnclosure& e);

// Certifies that no quotient of two distinct roots is a root of unity of an
// admissible order; false means the exact test is needed.
bool nondegenerate_screen(const RootProfile& prof) {
  long n = static_cast<long>(prof.nonzero_roots.size());
  long d = n * n - n;
  std::vector<DComplexBall> z;
  for (const auto& e : prof.nonzero_roots) z.push_back(to_dball(e));
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) {
      DComplexBall q = z[i] / z[j];
      DBall mod2 = q.re * q.re + q.im * q.im;
      DBall diff = mod2 - DBall::exact(1.0);
      if (!diff.contains_zero()) continue;
      for (long m = 2; m <= 2 * d * d; ++m) {
        if (euler_phi(m) > d) continue;
        DComplexBall w = pow(q, static_cast<unsigned>(m)) - DComplexBall::exact(1.0, 0.0);
        if (w.contains_zero()) return false;
      }
    }
  }
  return true;
}

std::vector<int> degenerate_orders_exact(const IntPolynomial& s);

}  // namespace

std::vector<int> degenerate_orders(const IntPolynomial& f) {
  if (f.degree() < 2) throw InvalidInput("is_degenerate: degree must be at least 2");
  IntPolynomial s = normalized(squarefree_part(strip_zero_roots(f)));
  if (s.degree() < 2) return {};
  if (nondegenerate_screen(root_profile(s, 53))) return {};
  return degenerate_orders_exact(s);
}

namespace {

std::vector<int> degenerate_orders_exact(const IntPolynomial& s) {
  int n = s.degree();
  std::vector<int> orders;
  IntPolynomial r = ratio_polynomial(s);
  IntPolynomial xm1{-1, 1};
  for (int i = 0; i < n; ++i) r = exact_quotient(r, xm1);
  long d = r.degree();
  for (long m = 2; m <= 2 * d * d; ++m) {
    if (euler_phi(m) > d) continue;
    if (divides(cyclotomic(m), r)) orders.push_back(static_cast<int>(m));
  }
  return orders;
}

}  // namespace

bool is_degenerate(const IntPolynomial& f) { return !degenerate_orders(f).empty(); }

// ---------------------------------------------------------------------------
// Rational values

namespace {

// Pairwise coprime integers > 1 such that every input is a product of their
// powers.
std::vector<Integer> coprime_basis(std::vector<Integer> xs) {
  std::vector<Integer> basis;
  for (auto& x : xs) {
    x = abs(x);
    if (x > 1) basis.push_back(x);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        Integer g = gcd(basis[i], basis[j]);
        if (g == 1) continue;
        Integer a = basis[i] / g, b = basis[j] / g;
        basis.erase(basis.begin() + static_cast<long>(j));
        basis.erase(basis.begin() + static_cast<long>(i));
        for (const Integer* v : {&a, &b, &g}) {
          if (*v > 1) basis.push_back(*v);
        }
        changed = true;
      }
    }
  }
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  return basis;
}

long valuation(Integer x, const Integer& b) {
  long e = 0;
  x = abs(x);
  while (x != 0 && mpz_divisible_p(x.get_mpz_t(), b.get_mpz_t())) {
    x /= b;
    ++e;
  }
  return e;
}

// Integer kernel basis of the rows x cols matrix a (a * k = 0).
std::vector<std::vector<Integer>> integer_kernel(std::vector<std::vector<Rational>> a, int cols) {
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(a.size()); ++c) {
    int p = -1;
    for (int i = r; i < static_cast<int>(a.size()); ++i) {
      if (a[i][c] != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational t = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] -= t * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<std::vector<Integer>> out;
  for (int free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (int i = 0; i < r; ++i) v[pivot_col[i]] = -a[i][free];
    Integer den = 1;
    for (auto& q : v) {
      q.canonicalize();
      den = lcm(den, q.get_den());
    }
    std::vector<Integer> k(cols);
    Integer g = 0;
    for (int i = 0; i < cols; ++i) {
      Rational t = v[i] * den;
      t.canonicalize();
      k[i] = t.get_num();
      g = gcd(g, k[i]);
    }
    for (auto& x : k) x /= g;
    out.push_back(k);
  }
  return out;
}

}  // namespace

DependenceVerdict rational_dependence(const std::vector<Rational>& values) {
  if (values.empty()) throw InvalidInput("rational_dependence: empty list");
  std::vector<Integer> parts;
  for (auto v : values) {
    v.canonicalize();
    if (v == 0) throw InvalidInput("rational_dependence: zero entry");
    parts.push_back(v.get_num());
    parts.push_back(v.get_den());
  }
  std::vector<Integer> basis = coprime_basis(parts);
  int m = static_cast<int>(values.size());
  std::vector<std::vector<Rational>> mat;
  for (const auto& b : basis) {
    std::vector<Rational> row(m);
    for (int i = 0; i < m; ++i) {
      Rational v = values[i];
      v.canonicalize();
      row[i] = valuation(v.get_num(), b) - valuation(v.get_den(), b);
    }
    mat.push_back(row);
  }
  auto ker = integer_kernel(mat, m);
  if (ker.empty()) return DependenceVerdict::independent(Reason::RationalExponentMatrix);
  std::vector<Integer> k;
  if (ker.size() == 1) {
    k = ker[0];
  } else {
    IntegerMatrix red = lll_reduce(IntegerMatrix{ker});
    k = red.rows[0];
  }
  Integer odd = 0;
  for (int i = 0; i < m; ++i) {
    if (values[i] < 0) odd += k[i];
  }
  if (mpz_odd_p(odd.get_mpz_t())) k = scaled(k, 2);
  sign_normalize(k);
  return DependenceVerdict::dependent(k, Certificate::ClosedForm, Reason::RationalExponentMatrix);
}

NormConstraint norm_sum_constraint(const IntPolynomial& f) {
  if (f.degree() < 2) throw InvalidInput("norm_sum_constraint: degree must be at least 2");
  if (!is_irreducible(f)) throw InvalidInput("norm_sum_constraint: polynomial is reducible");
  Rational n = abs(root_product(f));
  return n == 1 ? NormConstraint::NoConstraint : NormConstraint::SumZero;
}

bool prime_degree_independent(const IntPolynomial& f) {
  int p = f.degree();
  bool prime = p >= 3 && (p % 2 == 1);
  for (int d = 3; prime && d * d <= p; d += 2) prime = p % d != 0;
  if (!prime) throw InvalidInput("prime_degree_independent: degree is not an odd prime");
  if (!is_irreducible(f)) throw InvalidInput("prime_degree_independent: polynomial is reducible");
  if (abs(f[0]) == abs(f.leading())) return false;
  for (int j = 1; j < p; ++j) {
    if (f[j] != 0) return true;
  }
  return false;
}

DependenceVerdict quadratic_classify(const IntPolynomial& f) {
  if (f.degree() != 2) throw InvalidInput("quadratic_classify: degree must be 2");
  if (!is_irreducible(f)) throw InvalidInput("quadratic_classify: polynomial is reducible");
  const Integer &a0 = f[0], &a1 = f[1], &a2 = f[2];
  if (abs(a0) == abs(a2)) {
    long e = (a0 == a2) ? 1 : 2;
    return DependenceVerdict::dependent({Integer(e), Integer(e)}, Certificate::ClosedForm,
                                        Reason::ConstantTermUnit);
  }
  Integer sq = a1 * a1, p = a0 * a2;
  long m = 0;
  if (a1 == 0) m = 2;
  else if (sq == p) m = 3;
  else if (sq == 2 * p) m = 4;
  else if (sq == 3 * p) m = 6;
  if (m != 0) {
    return DependenceVerdict::dependent({Integer(m), Integer(-m)}, Certificate::ClosedForm,
                                        Reason::Degenerate);
  }
  return DependenceVerdict::independent(Reason::QuadraticCaseAnalysis);
}

// ---------------------------------------------------------------------------
// Certified evaluation on a fixed root set

namespace {

double factorial_double(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// One root's enclosure as a double disk, widened to cover the rounding of the
// centre.
DComplexBall to_dball(const RootEnclosure& e) {
  double re = e.re.to_double(), im = e.im.to_double();
  double rad = e.radius.to_double(MPFR_RNDU);
  rad = DBall::up(rad + (std::fabs(re) + std::fabs(im)) * 0x1p-52);
  return DComplexBall::disk(re, im, rad);
}

DBall integer_dball(const Integer& x) {
  double d = x.get_d();
  if (mpz_sizeinbase(x.get_mpz_t(), 2) <= 53) return DBall::exact(d);
  return DBall::make(d, std::fabs(d) * 0x1p-51);
}

bool disk_inside(const RootEnclosure& inner, const RootEnclosure& outer) {
  mpfr_prec_t p = std::max(inner.re.precision(), outer.re.precision()) + 8;
  ComplexBall a = ComplexBall::from_disk(inner.re, inner.im, BigFloat(0.0, 32), p);
  ComplexBall b = ComplexBall::from_disk(outer.re, outer.im, BigFloat(0.0, 32), p);
  BigFloat d = (a - b).abs_upper();
  BigFloat s(64);
  mpfr_add(s.get(), d.get(), inner.radius.get(), MPFR_RNDU);
  return s <= outer.radius;
}

// The distinct non-zero roots of a polynomial, with their irreducible
// factor assignment, refined on demand.
class RootSet {
 public:
  RootSet(const IntPolynomial& f, std::vector<IntPolynomial> factors, RootProfile prof, long bits)
      : f_(f), factors_(std::move(factors)), prof_(std::move(prof)), bits_(bits) {
    IntPolynomial s = normalized(squarefree_part(strip_zero_roots(f)));
    lead_ = s.leading();
    height_ = height(s);
  }
  RootSet(const IntPolynomial& f, std::vector<IntPolynomial> factors, long bits)
      : RootSet(f, std::move(factors), root_profile(f, bits), bits) {}

  int size() const { return static_cast<int>(prof_.nonzero_roots.size()); }
  const IntPolynomial& poly() const { return f_; }
  const Integer& lead() const { return lead_; }
  const Integer& poly_height() const { return height_; }
  long bits() const { return bits_; }
  const std::vector<IntPolynomial>& factors() const { return factors_; }

  const RootProfile& profile(long bits) {
    if (bits <= bits_) return prof_;
    RootProfile next = root_profile(f_, bits);
    if (next.nonzero_roots.size() != prof_.nonzero_roots.size()) {
      throw PrecisionError("root set changed under refinement");
    }
    for (std::size_t i = 0; i < next.nonzero_roots.size(); ++i) {
      if (!disk_inside(next.nonzero_roots[i], prof_.nonzero_roots[i])) {
        next.nonzero_roots[i] = refine(prof_.nonzero_roots[i], f_, bits);
      }
    }
    next.conjugate = prof_.conjugate;
    prof_ = std::move(next);
    bits_ = bits;
    return prof_;
  }
  const RootProfile& profile() const { return prof_; }

  const std::vector<int>& owners() {
    if (!owners_.empty() || size() == 0) return owners_;
    if (factors_.size() <= 1) {
      owners_.assign(size(), 0);
      return owners_;
    }
    long bits = std::max(bits_, 64L);
    for (int attempt = 0; attempt < 12; ++attempt) {
      const RootProfile& p = profile(bits);
      std::vector<int> own(size(), -1);
      bool ok = true;
      for (int i = 0; i < size() && ok; ++i) {
        ComplexBall z = p.nonzero_roots[i].ball(bits + 32);
        int hit = -1, count = 0;
        for (std::size_t j = 0; j < factors_.size(); ++j) {
          const auto& c = factors_[j].coeffs();
          ComplexBall acc(Ball(c.back(), bits + 32), Ball(bits + 32));
          for (std::size_t t = c.size() - 1; t-- > 0;) {
            acc = acc * z;
            acc.re = acc.re + Ball(c[t], bits + 32);
          }
          if (acc.contains_zero()) {
            hit = static_cast<int>(j);
            ++count;
          }
        }
        if (count != 1) ok = false;
        own[i] = hit;
      }
      if (ok) {
        owners_ = own;
        return owners_;
      }
      bits *= 2;
    }
    throw PrecisionError("could not assign roots to factors");
  }

  std::vector<int> roots_of(int factor) {
    std::vector<int> r;
    const auto& own = owners();
    for (int i = 0; i < size(); ++i) {
      if (own[i] == factor) r.push_back(i);
    }
    return r;
  }

  // Degree bound for the field generated by the roots carrying exponents.
  double field_degree(const std::vector<Integer>& k) {
    if (factors_.empty()) return factorial_double(size());
    const auto& own = owners();
    std::vector<bool> used(factors_.size(), false);
    for (int i = 0; i < size(); ++i) {
      if (k[i] != 0) used[own[i]] = true;
    }
    double d = 1;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      if (used[j]) d *= factorial_double(factors_[j].degree());
    }
    return d;
  }

 private:
  IntPolynomial f_;
  std::vector<IntPolynomial> factors_;
  RootProfile prof_;
  long bits_;
  Integer lead_;
  Integer height_;
  std::vector<int> owners_;
};

double log2_upper(const BigFloat& x) {
  if (x.sign() <= 0) return -1e300;
  long e;
  double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDU);
  return std::log2(m) * (1 - 1e-12) + 1e-12 + static_cast<double>(e);
}

double log2_integer(const Integer& x) {
  if (x == 0) return 0;
  long e;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log2(std::fabs(m)) + static_cast<double>(e) + 1e-9;
}

// log2 of an upper bound on max(1, |lead|, |lead * root|) over all roots.
double log2_root_scale(const RootProfile& prof, const Integer& lead) {
  double c = std::max(0.0, log2_integer(lead));
  for (const auto& e : prof.nonzero_roots) {
    ComplexBall z = e.ball(64);
    c = std::max(c, log2_integer(lead) + log2_upper(z.abs_upper()));
  }
  return c + 1e-9;
}

// Decides prod z_i^k_i == target exactly.
bool certify_product(RootSet& rs, const std::vector<Integer>& k, const Rational& target,
                     const SearchParameters& params) {
  if (static_cast<int>(k.size()) != rs.size()) {
    throw InvalidInput("certify_relation: exponent vector length does not match the root set");
  }
  Rational t = target;
  t.canonicalize();
  Integer u = t.get_num(), v = t.get_den();
  if (u == 0) return false;
  Integer sp = 0, sm = 0;
  for (const auto& x : k) {
    if (x > 0) sp += x;
    else sm -= x;
  }
  if (sp == 0 && sm == 0) return t == 1;
  if (!sp.fits_ulong_p() || !sm.fits_ulong_p()) throw PrecisionError("exponents too large");
  unsigned long s_plus = sp.get_ui(), s_minus = sm.get_ui();
  const Integer& a = rs.lead();

  // Double-precision screen: most false candidates are rejected here.
  {
    const RootProfile& prof = rs.profile();
    DBall da = integer_dball(a);
    DComplexBall p = DComplexBall::exact(1, 0), q = DComplexBall::exact(1, 0);
    for (int i = 0; i < rs.size(); ++i) {
      if (k[i] == 0) continue;
      DComplexBall z = to_dball(prof.nonzero_roots[i]);
      DComplexBall g{z.re * da, z.im * da};
      unsigned long e = Integer(abs(k[i])).get_ui();
      if (k[i] > 0) p = p * pow(g, static_cast<unsigned>(e));
      else q = q * pow(g, static_cast<unsigned>(e));
    }
    DComplexBall ap = pow(DComplexBall{da, DBall::exact(0)}, static_cast<unsigned>(s_minus));
    DComplexBall aq = pow(DComplexBall{da, DBall::exact(0)}, static_cast<unsigned>(s_plus));
    DComplexBall dv{integer_dball(v), DBall::exact(0)}, du{integer_dball(u), DBall::exact(0)};
    DComplexBall delta = p * ap * dv - q * aq * du;
    if (!delta.contains_zero() && std::isfinite(delta.re.rad) && std::isfinite(delta.im.rad)) {
      return false;
    }
  }

  double S = static_cast<double>(s_plus + s_minus);
  double log2c = log2_root_scale(rs.profile(), a);
  double log2b = S * log2c + std::max(log2_integer(u), log2_integer(v)) + 1.0;
  double d = rs.field_degree(k);
  double gap_bits = std::ceil((d - 1) * log2b) + 1;
  double root_bits_d =
      gap_bits + log2b + std::log2(S + 1) + log2_integer(rs.poly_height() + 1) + 16;
  root_bits_d *= params.verification_scale;
  long bits = std::max<long>(params.precision_start, rs.bits());
  bool jumped = false;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (bits > params.max_precision) throw PrecisionError("certification needs more precision");
    const RootProfile& prof = rs.profile(bits);
    mpfr_prec_t wp = bits + 64 + static_cast<long>(std::log2(S + 2));
    ComplexBall p{Ball(Integer(1), wp), Ball(wp)}, q{Ball(Integer(1), wp), Ball(wp)};
    Ball ab(a, wp);
    for (int i = 0; i < rs.size(); ++i) {
      if (k[i] == 0) continue;
      ComplexBall z = prof.nonzero_roots[i].ball(wp);
      ComplexBall g{z.re * ab, z.im * ab};
      unsigned long e = Integer(abs(k[i])).get_ui();
      if (k[i] > 0) p = p * pow(g, e);
      else q = q * pow(g, e);
    }
    Ball pa(Integer(ipow(a, s_minus) * v), wp), qa(Integer(ipow(a, s_plus) * u), wp);
    ComplexBall lhs{p.re * pa, p.im * pa}, rhs{q.re * qa, q.im * qa};
    ComplexBall delta = lhs - rhs;
    if (!delta.contains_zero()) return false;
    BigFloat up = delta.abs_upper();
    if (log2_upper(up) < -gap_bits) return true;
    if (!jumped) {
      bits = std::max(bits * 2, static_cast<long>(std::ceil(root_bits_d)));
      jumped = true;
    } else {
      bits *= 2;
    }
  }
  throw PrecisionError("certification did not converge");
}

// Decides sum k_i z_i == 0 exactly; index 0 is the zero root when present.
bool certify_sum(RootSet& rs, bool zero_root, const std::vector<Integer>& k,
                 const SearchParameters& params) {
  int off = zero_root ? 1 : 0;
  if (static_cast<int>(k.size()) != rs.size() + off) {
    throw InvalidInput("linear relation length does not match the root set");
  }
  std::vector<Integer> kn(k.begin() + off, k.end());
  bool any = std::any_of(kn.begin(), kn.end(), [](const Integer& x) { return x != 0; });
  if (!any) return true;
  {
    const RootProfile& prof = rs.profile();
    DComplexBall acc = DComplexBall::exact(0, 0);
    for (int i = 0; i < rs.size(); ++i) {
      if (kn[i] == 0) continue;
      DComplexBall z = to_dball(prof.nonzero_roots[i]);
      DBall c = integer_dball(kn[i]);
      acc = acc + DComplexBall{z.re * c, z.im * c};
    }
    if (!acc.contains_zero() && std::isfinite(acc.re.rad) && std::isfinite(acc.im.rad)) {
      return false;
    }
  }
  Integer mass = 0;
  for (const auto& x : kn) mass += abs(x);
  double log2c = log2_root_scale(rs.profile(), rs.lead());
  double log2b = std::max(0.0, log2c + log2_integer(mass)) + 1.0;
  double d = rs.field_degree(kn);
  double gap_bits = std::ceil((d - 1) * log2b) + 1;
  double root_bits_d = gap_bits + log2b + 16;
  root_bits_d *= params.verification_scale;
  long bits = std::max<long>(params.precision_start, rs.bits());
  bool jumped = false;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (bits > params.max_precision) throw PrecisionError("certification needs more precision");
    const RootProfile& prof = rs.profile(bits);
    mpfr_prec_t wp = bits + 64;
    ComplexBall acc{Ball(wp), Ball(wp)};
    Ball ab(rs.lead(), wp);
    for (int i = 0; i < rs.size(); ++i) {
      if (kn[i] == 0) continue;
      ComplexBall z = prof.nonzero_roots[i].ball(wp);
      Ball c = Ball(kn[i], wp) * ab;
      acc = acc + ComplexBall{z.re * c, z.im * c};
    }
    if (!acc.contains_zero()) return false;
    if (log2_upper(acc.abs_upper()) < -gap_bits) return true;
    if (!jumped) {
      bits = std::max(bits * 2, static_cast<long>(std::ceil(root_bits_d)));
      jumped = true;
    } else {
      bits *= 2;
    }
  }
  throw PrecisionError("certification did not converge");
}

bool try_certify(RootSet& rs, const std::vector<Integer>& k, const Rational& target,
                 const SearchParameters& params) {
  try {
    return certify_product(rs, k, target, params);
  } catch (const PrecisionError&) {
    return false;
  }
}

std::vector<Integer> lift(const std::vector<int>& idx, const std::vector<Integer>& local, int n) {
  std::vector<Integer> k(n, Integer(0));
  for (std::size_t i = 0; i < idx.size(); ++i) k[idx[i]] = local[i];
  return k;
}

// A pair relation z_i^m z_j^-m = 1 among the given roots.
std::optional<std::vector<Integer>> degenerate_relation(RootSet& rs, const std::vector<int>& idx,
                                                        const std::vector<int>& orders,
                                                        const SearchParameters& params) {
  for (int m : orders) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        std::vector<Integer> k(rs.size(), Integer(0));
        k[idx[a]] = m;
        k[idx[b]] = -m;
        if (try_certify(rs, k, 1, params)) return k;
      }
    }
  }
  return std::nullopt;
}

RootProfile restrict_profile(const RootProfile& prof, const std::vector<int>& idx) {
  RootProfile r;
  for (int i : idx) r.nonzero_roots.push_back(prof.nonzero_roots[i]);
  return r;
}

// Exactly decided verdicts for one irreducible factor, relation on the full
// root set; nullopt when no exact rule applies.
std::optional<DependenceVerdict> irreducible_exact(RootSet& rs, int factor,
                                                   const SearchParameters& params) {
  const IntPolynomial& h = rs.factors()[factor];
  int n = h.degree();
  std::vector<int> idx = rs.roots_of(factor);
  auto all_equal = [&](long e) {
    return lift(idx, std::vector<Integer>(idx.size(), Integer(e)), rs.size());
  };
  if (n == 1) {
    if (abs(h[0]) == abs(h[1])) {
      return DependenceVerdict::dependent(all_equal(h[0] == -h[1] ? 1 : 2), Certificate::ClosedForm,
                                          Reason::SingleRootOfUnity);
    }
    return DependenceVerdict::independent(Reason::SingleRootOfUnity);
  }
  if (abs(h[0]) == abs(h.leading())) {
    Rational nrm = root_product(h);
    return DependenceVerdict::dependent(all_equal(nrm == 1 ? 1 : 2), Certificate::ClosedForm,
                                        Reason::ConstantTermUnit);
  }
  if (n == 2) {
    DependenceVerdict v = quadratic_classify(h);
    if (v.is_dependent()) v.relation = lift(idx, v.relation, rs.size());
    return v;
  }
  std::vector<int> orders;
  if (!nondegenerate_screen(restrict_profile(rs.profile(), idx))) orders = degenerate_orders_exact(h);
  if (!orders.empty()) {
    auto k = degenerate_relation(rs, idx, orders, params);
    if (k) return DependenceVerdict::dependent(*k, Certificate::NormGapCertified, Reason::Degenerate);
    return std::nullopt;
  }
  bool prime = n >= 3 && n % 2 == 1;
  for (int d = 3; prime && d * d <= n; d += 2) prime = n % d != 0;
  if (prime && prime_degree_independent(h)) return DependenceVerdict::independent(Reason::PrimeDegreeLemma);
  if (n == 4) {
    static const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (const auto& pr : pairings) {
      std::vector<Integer> k(rs.size(), Integer(0));
      k[idx[pr[0]]] = 12;
      k[idx[pr[1]]] = 12;
      k[idx[pr[2]]] = -12;
      k[idx[pr[3]]] = -12;
      sign_normalize(k);
      if (certify_product(rs, k, 1, params)) {
        return DependenceVerdict::dependent(k, Certificate::NormGapCertified,
                                            Reason::QuarticCaseAnalysis);
      }
    }
    return DependenceVerdict::independent(Reason::QuarticCaseAnalysis);
  }
  return std::nullopt;
}

Rational rational_root(const IntPolynomial& p) { return Rational(-p[0], p[1]); }

// Natural-log upper bound of the Mahler measure.
double log_mahler_upper(const IntPolynomial& p) {
  RealEnclosure m = mahler_measure(p, 40);
  return std::log(m.high.to_double(MPFR_RNDU)) + 1e-9;
}

bool perfect_square(const Integer& x) { return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()); }

// Two independent irreducible quadratics sharing a splitting field: search
// u^x w^y torsion for u, w the quotients of conjugates.
DependenceVerdict same_field_quadratics(RootSet& rs, const std::vector<int>& bi,
                                        const std::vector<int>& gi, double xmax, double ymax,
                                        const SearchParameters& params) {
  long bits = std::max(rs.bits(), 128L);
  const RootProfile& prof = rs.profile(bits);
  mpfr_prec_t wp = bits;
  auto quotient = [&](int i, int j) {
    return prof.nonzero_roots[i].ball(wp) / prof.nonzero_roots[j].ball(wp);
  };
  ComplexBall u = quotient(bi[0], bi[1]), w = quotient(gi[0], gi[1]);
  Ball lu = log_abs(u), lw = log_abs(w), au = arg(u), aw = arg(w);
  Ball twopi = Ball::pi(wp) * Ball(Integer(2), wp);
  long X = static_cast<long>(std::floor(xmax)), Y = static_cast<long>(std::floor(ymax));
  for (long x = 0; x <= X; ++x) {
    for (long y = -Y; y <= Y; ++y) {
      if (x == 0 && y <= 0) continue;
      Ball l = Ball(Integer(x), wp) * lu + Ball(Integer(y), wp) * lw;
      if (!l.contains_zero()) continue;
      Ball turns = (Ball(Integer(12 * x), wp) * au + Ball(Integer(12 * y), wp) * aw) / twopi;
      BigFloat nearest(wp);
      mpfr_rint(nearest.get(), turns.mid().get(), MPFR_RNDN);
      Ball frac = turns - Ball(nearest, BigFloat(0.0, 32), wp);
      if (!frac.contains_zero()) continue;
      std::vector<Integer> k(rs.size(), Integer(0));
      k[bi[0]] = 12 * x;
      k[bi[1]] = -12 * x;
      k[gi[0]] = 12 * y;
      k[gi[1]] = -12 * y;
      sign_normalize(k);
      if (certify_product(rs, k, 1, params)) {
        return DependenceVerdict::dependent(k, Certificate::NormGapCertified,
                                            Reason::QuadraticPairAnalysis);
      }
    }
  }
  return DependenceVerdict::independent(Reason::QuadraticPairAnalysis);
}

DependenceVerdict lattice_search(RootSet& rs, bool sum_zero, long bound,
                                 const SearchParameters& params) {
  int m = rs.size();
  for (long scale = std::max(64L, params.precision_start); scale <= 1024; scale *= 2) {
    long bits = scale + 16 + static_cast<long>(log2_integer(rs.poly_height() + 1));
    const RootProfile& prof = rs.profile(bits);
    mpfr_prec_t wp = bits + 32;
    std::vector<std::vector<Ball>> forms(sum_zero ? 3 : 2);
    for (int i = 0; i < m; ++i) {
      ComplexBall z = prof.nonzero_roots[i].ball(wp);
      forms[0].push_back(log_abs(z));
      forms[1].push_back(arg(z));
      if (sum_zero) forms[2].push_back(Ball(Integer(1), wp));
    }
    forms[0].push_back(Ball(wp));
    forms[1].push_back(Ball::pi(wp) * Ball(Integer(2), wp));
    if (sum_zero) forms[2].push_back(Ball(wp));
    std::vector<RelationCandidate> cands;
    try {
      cands = find_relations(forms, m, Integer(bound), scale);
    } catch (const PrecisionError&) {
      continue;
    }
    for (const auto& c : cands) {
      std::vector<Integer> k(c.coefficients.begin(), c.coefficients.begin() + m);
      if (std::all_of(k.begin(), k.end(), [](const Integer& x) { return x == 0; })) continue;
      sign_normalize(k);
      if (try_certify(rs, k, 1, params)) {
        return DependenceVerdict::dependent(k, Certificate::NormGapCertified,
                                            Reason::LatticeCertified);
      }
    }
  }
  return DependenceVerdict::unknown(Integer(bound));
}

std::vector<IntPolynomial> distinct_factors(const IntPolynomial& s) {
  std::vector<IntPolynomial> fs;
  for (const auto& p : factor_squarefree(s)) fs.push_back(normalized(p));
  std::sort(fs.begin(), fs.end());
  return fs;
}

}  // namespace

DependenceVerdict quartic_classify(const IntPolynomial& f, const SearchParameters& params) {
  if (f.degree() != 4) throw InvalidInput("quartic_classify: degree must be 4");
  if (!is_irreducible(f)) throw InvalidInput("quartic_classify: polynomial is reducible");
  IntPolynomial h = normalized(f);
  RootSet rs(f, {h}, params.precision_start);
  auto v = irreducible_exact(rs, 0, params);
  if (!v) throw PrecisionError("quartic_classify: degenerate pair could not be certified");
  if (v->is_independent() && v->reason != Reason::QuarticCaseAnalysis) {
    v->reason = Reason::QuarticCaseAnalysis;
  }
  return *v;
}

bool certify_relation(const RootProfile& profile, const IntPolynomial& f, const std::vector<Integer>& k,
                      const SearchParameters& params) {
  if (f.degree() < 1) throw InvalidInput("certify_relation: degree must be at least 1");
  if (k.size() != profile.nonzero_roots.size()) {
    throw InvalidInput("certify_relation: exponent vector length does not match the profile");
  }
  if (profile.nonzero_roots.empty()) return false;
  IntPolynomial s = normalized(squarefree_part(strip_zero_roots(f)));
  long bits = params.max_precision + 1;
  for (const auto& e : profile.nonzero_roots) {
    if (!e.radius.is_zero()) bits = std::min(bits, -e.radius_log2());
  }
  bits = std::clamp(bits - 1, 1L, params.max_precision);
  RootSet rs(f, distinct_factors(s), profile, bits);
  return certify_product(rs, k, 1, params);
}

DependenceVerdict multiplicative_dependence(const IntPolynomial& f, const SearchParameters& params) {
  if (f.is_zero()) throw InvalidInput("multiplicative_dependence: zero polynomial");
  if (f.degree() < 1) throw InvalidInput("multiplicative_dependence: degree must be at least 1");
  IntPolynomial g = strip_zero_roots(f);
  if (g.degree() < 1) return DependenceVerdict::independent(Reason::EmptyRootSet);
  IntPolynomial s = normalized(squarefree_part(g));
  int m = s.degree();
  if (m == 1) {
    Rational z = rational_root(s);
    if (z == 1) {
      return DependenceVerdict::dependent({Integer(1)}, Certificate::ClosedForm, Reason::SingleRootOfUnity);
    }
    if (z == -1) {
      return DependenceVerdict::dependent({Integer(2)}, Certificate::ClosedForm, Reason::SingleRootOfUnity);
    }
    return DependenceVerdict::independent(Reason::SingleRootOfUnity);
  }
  Rational nrm = root_product(s);
  if (abs(nrm) == 1) {
    long e = nrm == 1 ? 1 : 2;
    return DependenceVerdict::dependent(std::vector<Integer>(m, Integer(e)), Certificate::ClosedForm,
                                        Reason::ConstantTermUnit);
  }
  std::vector<IntPolynomial> fs = distinct_factors(s);
  bool all_linear = std::all_of(fs.begin(), fs.end(), [](const IntPolynomial& p) { return p.degree() == 1; });
  if (all_linear) {
    std::vector<Rational> vals;
    for (const auto& p : fs) vals.push_back(rational_root(p));
    std::sort(vals.begin(), vals.end());
    return rational_dependence(vals);
  }
  RootSet rs(g, fs, params.precision_start);
  if (fs.size() == 1 && m == 2) return quadratic_classify(s);
  std::vector<int> orders;
  if (!nondegenerate_screen(rs.profile())) orders = degenerate_orders_exact(s);
  if (!orders.empty()) {
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    auto k = degenerate_relation(rs, all, orders, params);
    if (k) return DependenceVerdict::dependent(*k, Certificate::NormGapCertified, Reason::Degenerate);
  }
  if (fs.size() == 1) {
    if (auto v = irreducible_exact(rs, 0, params)) return *v;
  } else {
    std::vector<int> nonlinear;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (fs[j].degree() > 1) nonlinear.push_back(static_cast<int>(j));
    }
    if (nonlinear.size() == 1) {
      auto v = irreducible_exact(rs, nonlinear[0], params);
      if (v && v->is_dependent()) return *v;
      if (v && v->is_independent()) {
        // Independent conjugates: any relation is constant on them and
        // reduces to one among the rational roots and the factor's norm.
        std::vector<Rational> vals;
        std::vector<int> lin_idx;
        const auto& own = rs.owners();
        for (int i = 0; i < m; ++i) {
          if (fs[own[i]].degree() == 1) {
            lin_idx.push_back(i);
            vals.push_back(rational_root(fs[own[i]]));
          }
        }
        vals.push_back(root_product(fs[nonlinear[0]]));
        DependenceVerdict r = rational_dependence(vals);
        if (r.is_independent()) return DependenceVerdict::independent(Reason::ReducibleNormReduction);
        std::vector<Integer> k(m, Integer(0));
        for (std::size_t t = 0; t < lin_idx.size(); ++t) k[lin_idx[t]] = r.relation[t];
        for (int i : rs.roots_of(nonlinear[0])) k[i] = r.relation.back();
        sign_normalize(k);
        return DependenceVerdict::dependent(k, Certificate::ClosedForm, Reason::ReducibleNormReduction);
      }
    } else if (nonlinear.size() == 2 && fs.size() == 2 && fs[0].degree() == 2 && fs[1].degree() == 2) {
      auto v1 = irreducible_exact(rs, 0, params);
      if (v1 && v1->is_dependent()) return *v1;
      auto v2 = irreducible_exact(rs, 1, params);
      if (v2 && v2->is_dependent()) return *v2;
      std::vector<int> bi = rs.roots_of(0), gi = rs.roots_of(1);
      Rational n1 = root_product(fs[0]), n2 = root_product(fs[1]);
      DependenceVerdict r = rational_dependence({n1, n2});
      if (r.is_dependent()) {
        std::vector<Integer> k(m, Integer(0));
        for (int i : bi) k[i] = r.relation[0];
        for (int i : gi) k[i] = r.relation[1];
        sign_normalize(k);
        return DependenceVerdict::dependent(k, Certificate::ClosedForm, Reason::QuadraticPairAnalysis);
      }
      Integer d1 = discriminant(fs[0]), d2 = discriminant(fs[1]);
      if (!perfect_square(d1 * d2)) return DependenceVerdict::independent(Reason::QuadraticPairAnalysis);
      const double h_min = std::log((1 + std::sqrt(5.0)) / 2) / 2 * (1 - 1e-9);
      double xmax = log_mahler_upper(fs[1]) / h_min, ymax = log_mahler_upper(fs[0]) / h_min;
      return same_field_quadratics(rs, bi, gi, xmax, ymax, params);
    }
  }
  long bound = params.effective_bound(f);
  bool sum_zero = fs.size() == 1;
  return lattice_search(rs, sum_zero, bound, params);
}

// ---------------------------------------------------------------------------
// Rational subgroup

namespace {

// Largest a with x = y^a for a positive rational y; sets root to y.
long perfect_power(const Rational& x, Rational& root) {
  Integer num = x.get_num(), den = x.get_den();
  long maxe = static_cast<long>(std::max(mpz_sizeinbase(num.get_mpz_t(), 2),
                                         mpz_sizeinbase(den.get_mpz_t(), 2)));
  for (long a = maxe; a >= 2; --a) {
    Integer rn, rd;
    bool en = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), a) != 0;
    bool ed = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), a) != 0;
    if (en && ed) {
      root = Rational(rn, rd);
      return a;
    }
  }
  root = x;
  return 1;
}

// Searches prod a_i^k_i = target^e with odd e (for target = -1) or e = +-1.
std::optional<Rational> search_membership(RootSet& rs, const Rational& value, bool minus_one,
                                          long bound, const SearchParameters& params) {
  int m = rs.size();
  for (long scale = std::max(64L, params.precision_start); scale <= 512; scale *= 2) {
    long bits = scale + 16 + static_cast<long>(log2_integer(rs.poly_height() + 1));
    const RootProfile& prof = rs.profile(bits);
    mpfr_prec_t wp = bits + 32;
    std::vector<std::vector<Ball>> forms(2);
    for (int i = 0; i < m; ++i) {
      ComplexBall z = prof.nonzero_roots[i].ball(wp);
      forms[0].push_back(log_abs(z));
      forms[1].push_back(arg(z));
    }
    Ball pi = Ball::pi(wp);
    if (minus_one) {
      forms[0].push_back(Ball(wp));
      forms[1].push_back(pi);
    } else {
      forms[0].push_back(Ball::log(Ball(value, wp)));
      forms[1].push_back(Ball(wp));
    }
    forms[0].push_back(Ball(wp));
    forms[1].push_back(pi * Ball(Integer(2), wp));
    std::vector<RelationCandidate> cands;
    try {
      cands = find_relations(forms, m, Integer(bound), scale);
    } catch (const PrecisionError&) {
      continue;
    }
    for (const auto& c : cands) {
      const Integer& e = c.coefficients[m];
      std::vector<Integer> k(c.coefficients.begin(), c.coefficients.begin() + m);
      if (minus_one) {
        if (mpz_even_p(e.get_mpz_t())) continue;
        if (try_certify(rs, k, -1, params)) return Rational(-1);
      } else {
        if (abs(e) != 1) continue;
        // sum k log|a| + e log value = 0: prod a^k = +-value^-e.
        for (int sgn : {1, -1}) {
          Rational t = e == 1 ? 1 / value : value;
          t *= sgn;
          if (try_certify(rs, k, t, params)) return t;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

RationalGroupStructure gamma_structure(const IntPolynomial& f, const SearchParameters& params) {
  if (f.degree() < 2) throw InvalidInput("gamma_structure: degree must be at least 2");
  if (!is_irreducible(f)) throw InvalidInput("gamma_structure: polynomial is reducible");
  IntPolynomial h = normalized(f);
  int n = h.degree();
  Rational nrm = root_product(h);
  long bound = std::min(params.effective_bound(f), 1000L);
  RationalGroupStructure out;
  out.searched_bound = bound;
  using Tag = RationalGroupStructure::Tag;
  if (nrm == -1) {
    out.tag = Tag::PlusMinusOne;
    return out;
  }
  RootSet rs(h, {h}, params.precision_start);
  auto minus_one_in_group = [&]() -> std::optional<bool> {
    if (n == 2) {
      // Gamma is generated by one root up to the norm; -1 lies in it only
      // through torsion, i.e. a cyclotomic minimal polynomial of even order.
      if (h.leading() == 1 && nrm == 1 && is_cyclotomic_irreducible(h)) {
        return h == IntPolynomial{1, 0, 1} || h == IntPolynomial{1, -1, 1};
      }
      if (nrm == 1) return false;
    }
    if (search_membership(rs, -1, true, bound, params)) return true;
    return std::nullopt;
  };
  if (nrm == 1) {
    auto mo = minus_one_in_group();
    if (!mo) {
      out.tag = Tag::Undetermined;
      out.g = 1;
      return out;
    }
    out.tag = *mo ? Tag::PlusMinusOne : Tag::Trivial;
    return out;
  }
  Rational absn = abs(nrm), g0;
  long a = perfect_power(absn, g0);
  // |g|^n = |N|^j forces the exponent of g over g0 to be a multiple of
  // a / gcd(a, n) that divides a.
  long step = a / std::gcd(a, static_cast<long>(n));
  std::vector<long> cands;
  for (long b = step; b <= a; b += step) {
    if (a % b == 0) cands.push_back(b);
  }
  if (n == 2) {
    // a1^x a2^y = +-g0^b forces x + y = 2b/a, and x = y unless the quotient
    // of the roots is a root of unity of order m0, so the search is finite.
    DependenceVerdict qv = quadratic_classify(h);
    long m0 = qv.is_dependent() && qv.reason == Reason::Degenerate ? qv.relation[0].get_si() : 0;
    for (long b : cands) {
      if ((2 * b) % a != 0) continue;
      long t = 2 * b / a;
      Rational c = 1;
      for (long i = 0; i < b; ++i) c *= g0;
      std::optional<Rational> hit;
      for (long j = -std::max(m0, 0L); j <= std::max(m0, 0L) && !hit; ++j) {
        if ((t + j) % 2 != 0) continue;
        std::vector<Integer> k = {Integer((t + j) / 2), Integer((t - j) / 2)};
        for (int sgn : {1, -1}) {
          if (!hit && try_certify(rs, k, c * sgn, params)) hit = c * sgn;
        }
      }
      if (hit) {
        bool minus = m0 % 2 == 0 && m0 != 0;
        out.tag = minus ? Tag::CyclicWithMinusOne : Tag::CyclicNoMinusOne;
        out.g = minus ? abs(*hit) : *hit;
        return out;
      }
    }
    throw PrecisionError("gamma_structure: norm not recovered");
  }
  std::optional<Rational> gen;
  bool smallest = true;
  for (long b : cands) {
    if (b == a) {
      gen = nrm;
    } else {
      Rational c = 1;
      for (long i = 0; i < b; ++i) c *= g0;
      if (auto found = search_membership(rs, c, false, bound, params)) gen = *found < 0 ? -c : c;
    }
    if (gen) break;
    smallest = false;
  }
  if (!smallest) {
    out.tag = Tag::Undetermined;
    out.g = g0;
    return out;
  }
  if (search_membership(rs, -1, true, bound, params)) {
    out.tag = Tag::CyclicWithMinusOne;
    out.g = abs(*gen);
  } else {
    out.tag = Tag::CyclicNoMinusOne;
    out.g = *gen;
  }
  return out;
}

bool norm_integer_filter(const IntPolynomial& f) {
  if (f.degree() < 1) throw InvalidInput("norm_integer_filter: degree must be at least 1");
  if (!is_irreducible(f)) throw InvalidInput("norm_integer_filter: polynomial is reducible");
  Rational nrm = root_product(f);
  if (nrm.get_den() == 1 && abs(nrm) != 1) return true;
  Rational inv = 1 / nrm;
  return inv.get_den() == 1 && abs(inv) != 1;
}

// ---------------------------------------------------------------------------
// Linear relations

bool certify_linear_relation(const IntPolynomial& f, const std::vector<Integer>& k,
                             const SearchParameters& params) {
  if (f.degree() < 1) throw InvalidInput("certify_linear_relation: degree must be at least 1");
  bool zero = f[0] == 0;
  IntPolynomial g = strip_zero_roots(f);
  if (g.degree() < 1) {
    if (k.size() != 1) throw InvalidInput("linear relation length does not match the root set");
    return true;
  }
  IntPolynomial s = normalized(squarefree_part(g));
  RootSet rs(g, distinct_factors(s), params.precision_start);
  return certify_sum(rs, zero, k, params);
}

DependenceVerdict linear_dependence(const IntPolynomial& f, const SearchParameters& params) {
  if (f.degree() < 2) throw InvalidInput("linear_dependence: degree must be at least 2");
  IntPolynomial g = strip_zero_roots(f);
  IntPolynomial s = g.degree() >= 1 ? normalized(squarefree_part(g)) : IntPolynomial{1};
  int m = s.degree();
  if (f[0] == 0) {
    std::vector<Integer> k(m + 1, Integer(0));
    k[0] = 1;
    return DependenceVerdict::dependent(k, Certificate::ClosedForm, Reason::ZeroRoot);
  }
  if (s[m - 1] == 0) {
    return DependenceVerdict::dependent(std::vector<Integer>(m, Integer(1)), Certificate::ClosedForm,
                                        Reason::SumOfRootsZero);
  }
  long bound = params.effective_bound(f);
  RootSet rs(g, distinct_factors(s), params.precision_start);
  for (long scale = std::max(64L, params.precision_start); scale <= 1024; scale *= 2) {
    long bits = scale + 16;
    const RootProfile& prof = rs.profile(bits);
    mpfr_prec_t wp = bits + 32;
    std::vector<std::vector<Ball>> forms(2);
    for (int i = 0; i < m; ++i) {
      ComplexBall z = prof.nonzero_roots[i].ball(wp);
      forms[0].push_back(z.re);
      forms[1].push_back(z.im);
    }
    std::vector<RelationCandidate> cands;
    try {
      cands = find_relations(forms, m, Integer(bound), scale);
    } catch (const PrecisionError&) {
      continue;
    }
    for (const auto& c : cands) {
      std::vector<Integer> k(c.coefficients.begin(), c.coefficients.begin() + m);
      sign_normalize(k);
      bool ok = false;
      try {
        ok = certify_sum(rs, false, k, params);
      } catch (const PrecisionError&) {
        ok = false;
      }
      if (ok) return DependenceVerdict::dependent(k, Certificate::NormGapCertified, Reason::LatticeCertified);
    }
  }
  return DependenceVerdict::unknown(Integer(bound));
}

}  // namespace polydep
