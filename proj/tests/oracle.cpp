#include "oracle.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_complex.hpp>

#include "polydep/depend.hpp"
#include "polydep/roots.hpp"

namespace oracle {

namespace {

using ld = long double;
using cld = std::complex<ld>;
using mp_complex = boost::multiprecision::cpp_complex_100;
using mp_real = boost::multiprecision::cpp_bin_float_100;

constexpr ld kTwoPi = 6.283185307179586476925286766559L;

cld horner(const std::vector<ld>& a, cld z) {
  cld p = a.back();
  for (int i = static_cast<int>(a.size()) - 2; i >= 0; --i) p = p * z + a[i];
  return p;
}

IntPolynomial reduced(const IntPolynomial& f) { return polydep::squarefree_part(polydep::strip_zero_roots(f)); }

std::vector<cld> durand_kerner(const IntPolynomial& g) {
  int n = g.degree();
  std::vector<ld> a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = static_cast<ld>(g[i].get_d()) / static_cast<ld>(g.leading().get_d());
  std::vector<cld> z(n);
  ld bound = 0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::fabs(a[i]));
  bound += 1;
  for (int i = 0; i < n; ++i) z[i] = std::pow(cld(0.4L, 0.9L), i) * bound;
  for (int iter = 0; iter < 2000; ++iter) {
    ld change = 0;
    for (int i = 0; i < n; ++i) {
      cld den = 1;
      for (int j = 0; j < n; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      cld step = horner(a, z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step) / std::max<ld>(1, std::abs(z[i])));
    }
    if (change < 1e-19L) break;
  }
  return z;
}

std::vector<mp_complex> polish(const IntPolynomial& g, const std::vector<cld>& z0) {
  int n = g.degree();
  std::vector<mp_real> a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = mp_real(g[i].get_str());
  std::vector<mp_complex> z;
  for (const auto& w : z0) {
    mp_complex x(mp_real(static_cast<double>(w.real())), mp_real(static_cast<double>(w.imag())));
    // Newton from a double-accurate start converges quadratically on simple roots.
    for (int it = 0; it < 12; ++it) {
      mp_complex p = a[n], dp = 0;
      for (int i = n - 1; i >= 0; --i) {
        dp = dp * x + p;
        p = p * x + a[i];
      }
      x -= p / dp;
    }
    z.push_back(x);
  }
  return z;
}

struct Half {
  ld log_mod;
  ld angle;
  std::vector<int> k;
};

std::vector<Half> half_table(const std::vector<cld>& z, std::size_t lo, std::size_t hi, int bound) {
  std::vector<Half> out{{0, 0, {}}};
  for (std::size_t i = lo; i < hi; ++i) {
    ld lm = std::log(std::abs(z[i])), an = std::arg(z[i]);
    std::vector<Half> next;
    next.reserve(out.size() * (2 * bound + 1));
    for (const auto& h : out) {
      for (int k = -bound; k <= bound; ++k) {
        Half e = h;
        e.log_mod += k * lm;
        e.angle += k * an;
        e.k.push_back(k);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

ld angle_distance(ld t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return std::min(t, kTwoPi - t);
}

bool confirms(const std::vector<mp_complex>& z, const std::vector<int>& k) {
  mp_complex p = 1;
  for (std::size_t i = 0; i < z.size(); ++i) {
    mp_complex zi = k[i] >= 0 ? z[i] : mp_complex(1) / z[i];
    for (int e = 0; e < std::abs(k[i]); ++e) p *= zi;
  }
  return abs(p - mp_complex(1)) < mp_real("1e-40");
}

}  // namespace

std::vector<std::complex<long double>> distinct_nonzero_roots(const IntPolynomial& f) {
  IntPolynomial g = reduced(f);
  if (g.degree() < 1) return {};
  return durand_kerner(g);
}

std::optional<std::vector<int>> exponent_search(const IntPolynomial& f, int bound) {
  IntPolynomial g = reduced(f);
  if (g.degree() < 1) return std::nullopt;
  std::vector<cld> z = durand_kerner(g);
  std::size_t m = z.size(), h = m / 2;
  std::vector<Half> A = half_table(z, 0, h, bound), B = half_table(z, h, m, bound);
  std::sort(A.begin(), A.end(), [](const Half& x, const Half& y) { return x.log_mod < y.log_mod; });
  const ld tol = 1e-9L;
  std::optional<std::vector<mp_complex>> fine;
  for (const auto& b : B) {
    auto it = std::lower_bound(A.begin(), A.end(), -b.log_mod - tol,
                               [](const Half& x, ld v) { return x.log_mod < v; });
    for (; it != A.end() && it->log_mod <= -b.log_mod + tol; ++it) {
      if (angle_distance(it->angle + b.angle) > tol) continue;
      std::vector<int> k = it->k;
      k.insert(k.end(), b.k.begin(), b.k.end());
      if (std::all_of(k.begin(), k.end(), [](int x) { return x == 0; })) continue;
      if (!fine) fine = polish(g, z);
      if (confirms(*fine, k)) return k;
    }
  }
  return std::nullopt;
}

std::vector<int> match_library_order(const IntPolynomial& f, const std::vector<std::complex<long double>>& roots) {
  polydep::RootProfile prof = polydep::root_profile(f, 60);
  std::vector<int> where(roots.size(), -1);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    ld best = 1e300L;
    for (std::size_t j = 0; j < prof.nonzero_roots.size(); ++j) {
      ld dr = roots[i].real() - static_cast<ld>(prof.nonzero_roots[j].re.to_double());
      ld di = roots[i].imag() - static_cast<ld>(prof.nonzero_roots[j].im.to_double());
      ld d = std::hypot(dr, di);
      if (d < best) {
        best = d;
        where[i] = static_cast<int>(j);
      }
    }
  }
  return where;
}

Decision certified_exponent_search(const IntPolynomial& f, int bound) {
  Decision d;
  auto hit = exponent_search(f, bound);
  if (!hit) return d;
  std::vector<cld> z = distinct_nonzero_roots(f);
  std::vector<int> where = match_library_order(f, z);
  polydep::RootProfile prof = polydep::root_profile(f, 60);
  std::vector<polydep::Integer> k(prof.nonzero_roots.size(), 0);
  for (std::size_t i = 0; i < where.size(); ++i) k[where[i]] = (*hit)[i];
  d.relation.assign(k.size(), 0);
  for (std::size_t i = 0; i < k.size(); ++i) d.relation[i] = static_cast<int>(k[i].get_si());
  d.dependent = polydep::certify_relation(prof, f, k);
  return d;
}

namespace {

// Exact division test of f by g over the integers.
bool divides_exactly(std::vector<polydep::Integer> f, const std::vector<polydep::Integer>& g) {
  int n = static_cast<int>(f.size()) - 1, k = static_cast<int>(g.size()) - 1;
  for (int i = n; i >= k; --i) {
    if (f[i] == 0) continue;
    if (f[i] % g[k] != 0) return false;
    polydep::Integer q = f[i] / g[k];
    for (int j = 0; j <= k; ++j) f[i - k + j] -= q * g[j];
  }
  for (int i = 0; i < k; ++i) {
    if (f[i] != 0) return false;
  }
  return true;
}

std::vector<long> positive_divisors(long x) {
  std::vector<long> d;
  x = std::labs(x);
  for (long i = 1; i <= x; ++i) {
    if (x % i == 0) d.push_back(i);
  }
  return d;
}

}  // namespace

bool has_divisor_of_degree(const IntPolynomial& f, int k) {
  int n = f.degree();
  if (k < 1 || k >= n) return false;
  std::vector<polydep::Integer> c = f.coeffs();
  double norm = 0;
  for (const auto& x : c) norm += x.get_d() * x.get_d();
  norm = std::sqrt(norm);
  long a0 = c[0].get_si(), an = c[n].get_si();
  std::vector<long> lead = positive_divisors(an);
  std::vector<long> tail = a0 == 0 ? std::vector<long>{0} : positive_divisors(a0);
  std::vector<polydep::Integer> g(k + 1);
  std::vector<long> bounds(k + 1);
  for (int i = 0; i <= k; ++i) {
    double b = 1;
    for (int j = 0; j < i; ++j) b = b * (k - j) / (j + 1);
    bounds[i] = static_cast<long>(std::floor(b * norm)) + 1;
  }
  for (long l : lead) {
    for (long t : tail) {
      for (long sgn : {1L, -1L}) {
        if (t == 0 && sgn < 0) continue;
        g[k] = l;
        g[0] = sgn * t;
        // odometer over the middle coefficients
        std::vector<long> mid(std::max(0, k - 1));
        for (auto& v : mid) v = 0;
        for (int i = 1; i < k; ++i) mid[i - 1] = -bounds[i];
        while (true) {
          for (int i = 1; i < k; ++i) g[i] = mid[i - 1];
          if (divides_exactly(c, g)) return true;
          int i = 0;
          while (i < k - 1 && mid[i] == bounds[i + 1]) {
            mid[i] = -bounds[i + 1];
            ++i;
          }
          if (i >= k - 1) break;
          ++mid[i];
        }
      }
    }
  }
  return false;
}

bool irreducible_by_search(const IntPolynomial& f) {
  for (int k = 1; 2 * k <= f.degree(); ++k) {
    if (has_divisor_of_degree(f, k)) return false;
  }
  return true;
}

bool small_linear_relation(const IntPolynomial& f, int bound) {
  IntPolynomial g = polydep::squarefree_part(f);
  std::vector<cld> z = durand_kerner(g);
  if (polydep::zero_multiplicity(f) > 0) return true;
  std::size_t m = z.size();
  std::vector<int> k(m, -bound);
  while (true) {
    if (std::any_of(k.begin(), k.end(), [](int x) { return x != 0; })) {
      cld s = 0;
      ld scale = 0;
      for (std::size_t i = 0; i < m; ++i) {
        s += static_cast<ld>(k[i]) * z[i];
        scale += std::abs(static_cast<ld>(k[i]) * z[i]);
      }
      if (std::abs(s) <= 1e-12L * std::max<ld>(1, scale)) return true;
    }
    std::size_t i = 0;
    while (i < m && k[i] == bound) {
      k[i] = -bound;
      ++i;
    }
    if (i == m) break;
    ++k[i];
  }
  return false;
}

}  // namespace oracle
