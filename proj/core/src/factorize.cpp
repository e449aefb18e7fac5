#include "polydep/factorize.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include <json.hpp>

#include "polydep/error.hpp"

namespace polydep {

namespace {

using u64 = std::uint64_t;
using ZpPoly = std::vector<u64>;  // low-to-high, trimmed

void zp_trim(ZpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 zp_pow(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

u64 zp_inv(u64 a, u64 p) { return zp_pow(a, p - 2, p); }

ZpPoly zp_from(const IntPolynomial& f, u64 p) {
  ZpPoly a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) a[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
  zp_trim(a);
  return a;
}

ZpPoly zp_sub(const ZpPoly& a, const ZpPoly& b, u64 p) {
  ZpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  zp_trim(r);
  return r;
}

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ZpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  zp_trim(r);
  return r;
}

void zp_divmod(const ZpPoly& a, const ZpPoly& b, ZpPoly& q, ZpPoly& r, u64 p) {
  r = a;
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  u64 inv = zp_inv(b.back(), p);
  for (std::size_t k = r.size(); k-- >= b.size();) {
    u64 c = r[k] * inv % p;
    q[k - (b.size() - 1)] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::size_t idx = k - (b.size() - 1) + i;
      r[idx] = (r[idx] + p - c * b[i] % p) % p;
    }
    if (k == 0) break;
  }
  zp_trim(r);
  zp_trim(q);
}

ZpPoly zp_mod(const ZpPoly& a, const ZpPoly& b, u64 p) {
  ZpPoly q, r;
  zp_divmod(a, b, q, r, p);
  return r;
}

ZpPoly zp_monic(ZpPoly a, u64 p) {
  if (a.empty()) return a;
  u64 inv = zp_inv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, u64 p) {
  while (!b.empty()) {
    ZpPoly r = zp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return zp_monic(a, p);
}

// Extended Euclid: s a + t b = 1 for coprime a, b.
void zp_xgcd(const ZpPoly& a, const ZpPoly& b, ZpPoly& s, ZpPoly& t, u64 p) {
  ZpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    ZpPoly q, r;
    zp_divmod(r0, r1, q, r, p);
    ZpPoly s2 = zp_sub(s0, zp_mul(q, s1, p), p);
    ZpPoly t2 = zp_sub(t0, zp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 inv = zp_inv(r0.back(), p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  s = s0;
  t = t0;
}

ZpPoly zp_powmod(ZpPoly base, u64 e, const ZpPoly& mod, u64 p) {
  ZpPoly r{1};
  base = zp_mod(base, mod, p);
  while (e) {
    if (e & 1) r = zp_mod(zp_mul(r, base, p), mod, p);
    e >>= 1;
    if (e) base = zp_mod(zp_mul(base, base, p), mod, p);
  }
  return r;
}

ZpPoly zp_derivative(const ZpPoly& a, u64 p) {
  if (a.size() <= 1) return {};
  ZpPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * (i % p) % p;
  zp_trim(d);
  return d;
}

// Distinct-degree then equal-degree factorization of a monic squarefree
// polynomial over F_p, p odd.
std::vector<ZpPoly> zp_factor(const ZpPoly& f0, u64 p, std::mt19937_64& rng) {
  std::vector<std::pair<ZpPoly, int>> ddf;
  ZpPoly f = f0;
  ZpPoly x{0, 1};
  ZpPoly h = x;
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    h = zp_powmod(h, p, f, p);
    ZpPoly g = zp_gcd(f, zp_sub(h, x, p), p);
    if (g.size() > 1) {
      ddf.emplace_back(g, d);
      ZpPoly q, r;
      zp_divmod(f, g, q, r, p);
      f = q;
      h = zp_mod(h, f, p);
    }
  }
  if (f.size() > 1) ddf.emplace_back(f, static_cast<int>(f.size()) - 1);
  std::vector<ZpPoly> out;
  for (auto& [g, d] : ddf) {
    std::vector<ZpPoly> stack{g};
    while (!stack.empty()) {
      ZpPoly a = stack.back();
      stack.pop_back();
      if (static_cast<int>(a.size()) - 1 == d) {
        out.push_back(a);
        continue;
      }
      // (p^d - 1) / 2 may overflow for large d; exponentiate in stages.
      while (true) {
        ZpPoly rnd(a.size() - 1);
        for (auto& c : rnd) c = rng() % p;
        zp_trim(rnd);
        if (rnd.size() <= 1) continue;
        ZpPoly w = rnd;
        // w^((p^d-1)/2) = prod_{i<d} (w^(p^i))^((p-1)/2) ... computed as
        // w^(1 + p + ... + p^(d-1)) raised to (p-1)/2.
        ZpPoly acc{1}, cur = zp_mod(w, a, p);
        for (int i = 0; i < d; ++i) {
          acc = zp_mod(zp_mul(acc, cur, p), a, p);
          cur = zp_powmod(cur, p, a, p);
        }
        acc = zp_powmod(acc, (p - 1) / 2, a, p);
        ZpPoly g2 = zp_gcd(a, zp_sub(acc, ZpPoly{1}, p), p);
        if (g2.size() > 1 && g2.size() < a.size()) {
          ZpPoly q, r;
          zp_divmod(a, g2, q, r, p);
          stack.push_back(g2);
          stack.push_back(zp_monic(q, p));
          break;
        }
      }
    }
  }
  return out;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Arithmetic modulo an integer m, coefficients kept in [0, m).

using ZmPoly = std::vector<Integer>;

void zm_trim(ZmPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void zm_reduce(ZmPoly& a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  zm_trim(a);
}

ZmPoly zm_from_zp(const ZpPoly& a) {
  ZmPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

ZmPoly zm_add(const ZmPoly& a, const ZmPoly& b, const Integer& m) {
  ZmPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  zm_reduce(r, m);
  return r;
}

ZmPoly zm_sub(const ZmPoly& a, const ZmPoly& b, const Integer& m) {
  ZmPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zm_reduce(r, m);
  return r;
}

ZmPoly zm_mul(const ZmPoly& a, const ZmPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZmPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  zm_reduce(r, m);
  return r;
}

// Division by a monic polynomial modulo m.
void zm_divmod_monic(const ZmPoly& a, const ZmPoly& b, ZmPoly& q, ZmPoly& r, const Integer& m) {
  r = a;
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  for (std::size_t k = r.size(); k-- >= b.size();) {
    Integer c = r[k];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    q[k - (b.size() - 1)] = c;
    if (c != 0) {
      for (std::size_t i = 0; i < b.size(); ++i) r[k - (b.size() - 1) + i] -= c * b[i];
    }
    if (k == 0) break;
  }
  zm_reduce(r, m);
  zm_reduce(q, m);
}

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic.
void hensel_step(const ZmPoly& f, ZmPoly& g, ZmPoly& h, ZmPoly& s, ZmPoly& t, const Integer& m) {
  Integer m2 = m * m;
  ZmPoly e = zm_sub(f, zm_mul(g, h, m2), m2);
  ZmPoly q, r;
  zm_divmod_monic(zm_mul(s, e, m2), h, q, r, m2);
  ZmPoly g2 = zm_add(g, zm_add(zm_mul(t, e, m2), zm_mul(q, g, m2), m2), m2);
  ZmPoly h2 = zm_add(h, r, m2);
  ZmPoly b = zm_sub(zm_add(zm_mul(s, g2, m2), zm_mul(t, h2, m2), m2), ZmPoly{1}, m2);
  ZmPoly c, d;
  zm_divmod_monic(zm_mul(s, b, m2), h2, c, d, m2);
  ZmPoly s2 = zm_sub(s, d, m2);
  ZmPoly t2 = zm_sub(t, zm_add(zm_mul(t, b, m2), zm_mul(c, g2, m2), m2), m2);
  g = g2;
  h = h2;
  s = s2;
  t = t2;
}

// Lifts f = lc * prod(factors) mod p to the same identity mod p^(2^k) = M.
void multifactor_lift(const ZmPoly& f, const std::vector<ZpPoly>& factors, u64 p, int steps,
                      std::vector<ZmPoly>& out) {
  if (factors.size() == 1) {
    // The lone factor is f made monic modulo M.
    Integer M = 1;
    Integer pp = static_cast<unsigned long>(p);
    mpz_pow_ui(M.get_mpz_t(), pp.get_mpz_t(), 1UL << steps);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), M.get_mpz_t());
    ZmPoly g = f;
    for (auto& c : g) c *= inv;
    zm_reduce(g, M);
    out.push_back(g);
    return;
  }
  std::size_t half = factors.size() / 2;
  std::vector<ZpPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<ZpPoly> right(factors.begin() + static_cast<long>(half), factors.end());
  Integer pz = static_cast<unsigned long>(p);
  ZpPoly gl{mpz_fdiv_ui(f.back().get_mpz_t(), p)};
  for (const auto& a : left) gl = zp_mul(gl, a, p);
  ZpPoly hr{1};
  for (const auto& a : right) hr = zp_mul(hr, a, p);
  ZpPoly s0, t0;
  zp_xgcd(gl, hr, s0, t0, p);
  ZmPoly g = zm_from_zp(gl), h = zm_from_zp(hr), s = zm_from_zp(s0), t = zm_from_zp(t0);
  Integer m = pz;
  for (int i = 0; i < steps; ++i) {
    Integer m2 = m * m;
    ZmPoly fr = f;
    zm_reduce(fr, m2);
    hensel_step(fr, g, h, s, t, m);
    m = m2;
  }
  multifactor_lift(g, left, p, steps, out);
  multifactor_lift(h, right, p, steps, out);
}

ZmPoly symmetric(const ZmPoly& a, const Integer& M) {
  Integer half = M / 2;
  ZmPoly r = a;
  for (auto& c : r) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
    if (c > half) c -= M;
  }
  return r;
}

std::vector<IntPolynomial> zassenhaus(const IntPolynomial& f) {
  int n = f.degree();
  const Integer& lc = f.leading();
  // Choose the smallest prime >= 3 not dividing lc with squarefree reduction.
  u64 p = 3;
  ZpPoly fp;
  for (;; p += 2) {
    if (!is_prime_u64(p)) continue;
    if (mpz_fdiv_ui(lc.get_mpz_t(), p) == 0) continue;
    fp = zp_from(f, p);
    ZpPoly g = zp_gcd(fp, zp_derivative(fp, p), p);
    if (g.size() == 1) break;
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::vector<ZpPoly> mod_factors = zp_factor(zp_monic(fp, p), p, rng);
  if (mod_factors.size() == 1) return {f};
  std::sort(mod_factors.begin(), mod_factors.end());
  // Coefficient bound for lc-scaled factors: |lc| 2^n ||f||_2.
  Integer norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  Integer bound = abs(lc) * root;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  Integer need = 2 * bound + 1;
  int steps = 0;
  Integer M = static_cast<unsigned long>(p);
  while (M <= need) {
    M = M * M;
    ++steps;
  }
  std::vector<ZmPoly> lifted;
  multifactor_lift(ZmPoly(f.coeffs().begin(), f.coeffs().end()), mod_factors, p, steps, lifted);
  // Recombination by subset search.
  std::vector<IntPolynomial> result;
  IntPolynomial rest = f;
  std::vector<ZmPoly> pool = lifted;
  for (std::size_t size = 1; 2 * size <= pool.size();) {
    bool found = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      ZmPoly cand{rest.leading()};
      zm_reduce(cand, M);
      for (std::size_t i : idx) cand = zm_mul(cand, pool[i], M);
      IntPolynomial g = primitive_part(IntPolynomial(symmetric(cand, M)));
      IntPolynomial q;
      if (g.degree() >= 1 && divides(g, rest, &q)) {
        result.push_back(g);
        rest = q;
        std::vector<ZmPoly> remaining;
        for (std::size_t i = 0; i < pool.size(); ++i) {
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(pool[i]);
        }
        pool = remaining;
        found = true;
        break;
      }
      // Next combination.
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == pool.size() - size + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t i = k; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++size;
  }
  if (rest.degree() >= 1) result.push_back(primitive_part(rest));
  return result;
}

bool small_enough_for_divisors(const Integer& a) { return mpz_sizeinbase(a.get_mpz_t(), 2) <= 40; }

std::vector<Integer> positive_divisors(const Integer& a) {
  Integer n = abs(a);
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

}  // namespace

std::vector<IntPolynomial> factor_squarefree(const IntPolynomial& f0) {
  std::vector<IntPolynomial> out;
  IntPolynomial f = primitive_part(f0);
  if (f.degree() < 1) return out;
  if (f[0] == 0) {
    out.push_back(IntPolynomial{0, 1});
    f = strip_zero_roots(f);
    if (f.degree() < 1) return out;
  }
  bool complete_rational_search = false;
  if (f.degree() >= 2 && small_enough_for_divisors(f[0]) && small_enough_for_divisors(f.leading())) {
    complete_rational_search = true;
    std::vector<Integer> num = positive_divisors(f[0]);
    std::vector<Integer> den = positive_divisors(f.leading());
    bool again = true;
    while (again && f.degree() >= 2) {
      again = false;
      for (const auto& q : den) {
        if (!mpz_divisible_p(f.leading().get_mpz_t(), q.get_mpz_t())) continue;
        for (const auto& pn : num) {
          if (!mpz_divisible_p(f[0].get_mpz_t(), pn.get_mpz_t())) continue;
          Integer g;
          mpz_gcd(g.get_mpz_t(), pn.get_mpz_t(), q.get_mpz_t());
          if (g != 1) continue;
          for (int s : {1, -1}) {
            IntPolynomial lin({-s * pn, q});
            IntPolynomial quo;
            if (f.degree() >= 2 && divides(lin, f, &quo)) {
              out.push_back(lin);
              f = quo;
              again = true;
            }
          }
        }
      }
    }
  }
  if (f.degree() < 1) return out;
  if (f.degree() == 1 || (complete_rational_search && f.degree() <= 3)) {
    out.push_back(primitive_part(f));
    return out;
  }
  if (f.degree() == 2) {
    Integer disc = f[1] * f[1] - 4 * f[0] * f[2];
    if (!is_square(disc)) {
      out.push_back(f);
      return out;
    }
  }
  for (auto& g : zassenhaus(f)) out.push_back(primitive_part(g));
  return out;
}

Factorization factor(const IntPolynomial& f) {
  if (f.is_zero() || f.degree() < 1) throw InvalidInput("factor: polynomial must have degree >= 1");
  ContentPrimitive cp = content_primitive(f);
  Factorization out;
  out.sign = cp.sign;
  out.content = cp.content;
  for (auto& [g, m] : squarefree_decomposition(cp.primitive)) {
    for (auto& h : factor_squarefree(g)) out.factors.emplace_back(h, m);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool is_irreducible(const IntPolynomial& f) {
  if (f.is_zero() || f.degree() < 1) throw InvalidInput("is_irreducible: polynomial must have degree >= 1");
  IntPolynomial p = primitive_part(f);
  if (p.degree() == 1) return true;
  if (!is_squarefree(p)) return false;
  return factor_squarefree(p).size() == 1;
}

IntPolynomial Factorization::expand() const {
  IntPolynomial r = IntPolynomial::constant(content * sign);
  for (const auto& [g, m] : factors) {
    for (int i = 0; i < m; ++i) r = r * g;
  }
  return r;
}

std::string Factorization::to_json() const {
  nlohmann::ordered_json j;
  j["sign"] = sign;
  j["content"] = content.get_str();
  j["factors"] = nlohmann::ordered_json::array();
  for (const auto& [g, m] : factors) {
    nlohmann::ordered_json e;
    e["poly"] = g.to_string();
    e["mult"] = m;
    j["factors"].push_back(e);
  }
  return j.dump();
}

std::vector<int> divisor_degrees(const Factorization& fac) {
  int total = 0;
  for (const auto& [g, m] : fac.factors) total += g.degree() * m;
  std::vector<char> reach(static_cast<std::size_t>(total) + 1, 0);
  reach[0] = 1;
  for (const auto& [g, m] : fac.factors) {
    for (int i = 0; i < m; ++i) {
      for (int s = total; s >= g.degree(); --s) {
        if (reach[static_cast<std::size_t>(s - g.degree())]) reach[static_cast<std::size_t>(s)] = 1;
      }
    }
  }
  std::vector<int> out;
  for (int k = 1; k < total; ++k) {
    if (reach[static_cast<std::size_t>(k)]) out.push_back(k);
  }
  return out;
}

}  // namespace polydep
