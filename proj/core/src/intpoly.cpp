#include "polydep/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "polydep/error.hpp"

namespace polydep {

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw InvalidInput("polynomial text must be a bracketed list, got '" + std::string(text) + "'");
  }
  std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) throw InvalidInput("empty coefficient list '[]'");
  std::vector<Integer> coeffs;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = body.find(',', start);
    std::string token = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t digits = (!token.empty() && (token[0] == '-' || token[0] == '+')) ? 1 : 0;
    bool ok = token.size() > digits;
    for (std::size_t i = digits; ok && i < token.size(); ++i) {
      ok = std::isdigit(static_cast<unsigned char>(token[i])) != 0;
    }
    if (!ok) throw InvalidInput("invalid coefficient token '" + token + "'");
    Integer c(token[0] == '+' ? token.substr(1) : token, 10);
    coeffs.push_back(c);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (coeffs.back() == 0) {
    throw InvalidInput("last coefficient must be non-zero, got token '" +
                       body.substr(body.rfind(',') == std::string::npos ? 0 : body.rfind(',') + 1) +
                       "'");
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial IntPolynomial::monomial(const Integer& c, int k) {
  std::vector<Integer> v(static_cast<std::size_t>(k) + 1);
  v[static_cast<std::size_t>(k)] = c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }

std::string IntPolynomial::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out << ',';
    out << coeffs_[i].get_str();
  }
  out << ']';
  return out.str();
}

Integer IntPolynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Integer IntPolynomial::evaluate(const Integer& x) const {
  Integer acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Rational IntPolynomial::evaluate(const Rational& x) const {
  // Homogenised Horner to stay in integers: sum a_i p^i q^(n-i) / q^n.
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  Integer acc = 0, qpow = 1;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * p + coeffs_[i] * qpow;
    qpow *= q;
  }
  Integer den = 1;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) den *= q;
  Rational r(acc, den);
  r.canonicalize();
  return r;
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return IntPolynomial();
  std::vector<Integer> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::scale_variable(const Integer& c) const {
  std::vector<Integer> v(coeffs_);
  Integer p = 1;
  for (auto& a : v) {
    a *= p;
    p *= c;
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::negate_variable() const {
  std::vector<Integer> v(coeffs_);
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Integer> v(coeffs_);
  for (auto& a : v) a = -a;
  return IntPolynomial(std::move(v));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> v(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) v[i] += b[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> v(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) v[i] -= b[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<Integer> v(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) v[i + j] += a[i] * b[j];
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const Integer& c, const IntPolynomial& a) {
  std::vector<Integer> v(a.coeffs());
  for (auto& x : v) x *= c;
  return IntPolynomial(std::move(v));
}

bool operator<(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(),
                                      b.coeffs_.end());
}

namespace {

void require_nonzero(const IntPolynomial& f, const char* what) {
  if (f.is_zero()) throw InvalidInput(std::string(what) + ": zero polynomial");
}

}  // namespace

Integer height(const IntPolynomial& f) {
  require_nonzero(f, "height");
  Integer h = 0;
  for (const auto& c : f.coeffs()) {
    Integer a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

Integer content(const IntPolynomial& f) {
  Integer g = 0;
  for (const auto& c : f.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ContentPrimitive content_primitive(const IntPolynomial& f) {
  require_nonzero(f, "content_primitive");
  ContentPrimitive out;
  out.content = content(f);
  out.sign = f.leading() < 0 ? -1 : 1;
  std::vector<Integer> v(f.coeffs());
  for (auto& c : v) {
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), out.content.get_mpz_t());
    if (out.sign < 0) c = -c;
  }
  out.primitive = IntPolynomial(std::move(v));
  return out;
}

IntPolynomial primitive_part(const IntPolynomial& f) {
  if (f.is_zero()) return f;
  return content_primitive(f).primitive;
}

IntPolynomial reciprocal(const IntPolynomial& f) {
  require_nonzero(f, "reciprocal");
  if (f[0] == 0) throw InvalidInput("reciprocal: f(0) = 0, strip the X^v factor first");
  std::vector<Integer> v(f.coeffs().rbegin(), f.coeffs().rend());
  return IntPolynomial(std::move(v));
}

void pseudo_divide(const IntPolynomial& f, const IntPolynomial& g, IntPolynomial& q,
                   IntPolynomial& r) {
  if (g.is_zero()) throw InvalidInput("pseudo_divide: division by zero polynomial");
  int n = f.degree(), m = g.degree();
  if (n < m) {
    q = IntPolynomial();
    r = f;
    return;
  }
  std::vector<Integer> rem(f.coeffs());
  std::vector<Integer> quo(static_cast<std::size_t>(n - m + 1));
  const Integer& lc = g.leading();
  for (int k = n; k >= m; --k) {
    Integer t = rem[static_cast<std::size_t>(k)];
    for (auto& c : quo) c *= lc;
    quo[static_cast<std::size_t>(k - m)] += t;
    for (int i = 0; i < k; ++i) rem[static_cast<std::size_t>(i)] *= lc;
    rem[static_cast<std::size_t>(k)] = 0;
    for (int i = 0; i < m; ++i) rem[static_cast<std::size_t>(k - m + i)] -= t * g[static_cast<std::size_t>(i)];
  }
  q = IntPolynomial(std::move(quo));
  r = IntPolynomial(std::move(rem));
}

bool divides(const IntPolynomial& g, const IntPolynomial& f, IntPolynomial* q) {
  if (g.is_zero()) return f.is_zero();
  if (f.is_zero()) {
    if (q) *q = IntPolynomial();
    return true;
  }
  int n = f.degree(), m = g.degree();
  if (n < m) return false;
  std::vector<Integer> rem(f.coeffs());
  std::vector<Integer> quo(static_cast<std::size_t>(n - m + 1));
  const Integer& lc = g.leading();
  for (int k = n; k >= m; --k) {
    Integer& t = rem[static_cast<std::size_t>(k)];
    if (t == 0) continue;
    if (!mpz_divisible_p(t.get_mpz_t(), lc.get_mpz_t())) return false;
    Integer c;
    mpz_divexact(c.get_mpz_t(), t.get_mpz_t(), lc.get_mpz_t());
    quo[static_cast<std::size_t>(k - m)] = c;
    for (int i = 0; i <= m; ++i) rem[static_cast<std::size_t>(k - m + i)] -= c * g[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < m; ++i) {
    if (rem[static_cast<std::size_t>(i)] != 0) return false;
  }
  if (q) *q = IntPolynomial(std::move(quo));
  return true;
}

IntPolynomial exact_quotient(const IntPolynomial& f, const IntPolynomial& g) {
  IntPolynomial q;
  if (!divides(g, f, &q)) {
    throw InvalidInput("exact_quotient: " + g.to_string() + " does not divide " + f.to_string());
  }
  return q;
}

IntPolynomial gcd(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() && g.is_zero()) return IntPolynomial();
  if (f.is_zero()) return primitive_part(g);
  if (g.is_zero()) return primitive_part(f);
  IntPolynomial a = primitive_part(f), b = primitive_part(g);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return IntPolynomial{1};
    IntPolynomial q, r;
    pseudo_divide(a, b, q, r);
    a = std::move(b);
    b = primitive_part(r);
  }
  return primitive_part(a);
}

Integer resultant(const IntPolynomial& f, const IntPolynomial& g) {
  require_nonzero(f, "resultant");
  require_nonzero(g, "resultant");
  if (g.degree() == 0) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), static_cast<unsigned long>(f.degree()));
    return r;
  }
  if (f.degree() == 0) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), f[0].get_mpz_t(), static_cast<unsigned long>(g.degree()));
    return r;
  }
  // Subresultant pseudo-remainder sequence.
  IntPolynomial A = f, B = g;
  Integer a = content(A), b = content(B);
  A = exact_quotient(A, IntPolynomial::constant(a));
  B = exact_quotient(B, IntPolynomial::constant(b));
  Integer t, tb;
  mpz_pow_ui(t.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(B.degree()));
  mpz_pow_ui(tb.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(A.degree()));
  t *= tb;
  int s = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if ((A.degree() & 1) && (B.degree() & 1)) s = -1;
  }
  Integer gg = 1, h = 1;
  while (true) {
    int delta = A.degree() - B.degree();
    if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
    IntPolynomial q, r;
    pseudo_divide(A, B, q, r);
    if (r.is_zero()) return 0;
    A = B;
    Integer hd;
    mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
    B = exact_quotient(r, IntPolynomial::constant(gg * hd));
    gg = A.leading();
    if (delta == 0) {
      // h unchanged
    } else {
      Integer num, den;
      mpz_pow_ui(num.get_mpz_t(), gg.get_mpz_t(), static_cast<unsigned long>(delta));
      mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (B.degree() <= 0) break;
  }
  int da = A.degree();
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), B.leading().get_mpz_t(), static_cast<unsigned long>(da));
  mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(da - 1));
  mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return s * t * h;
}

Integer discriminant(const IntPolynomial& f) {
  int n = f.degree();
  if (n < 1) throw InvalidInput("discriminant: constant polynomial");
  Integer r = resultant(f, f.derivative());
  Integer d;
  mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

bool is_squarefree(const IntPolynomial& f) {
  if (f.degree() < 1) throw InvalidInput("is_squarefree: constant polynomial");
  if (f.degree() == 1) return true;
  return resultant(f, f.derivative()) != 0;
}

int zero_multiplicity(const IntPolynomial& f) {
  require_nonzero(f, "zero_multiplicity");
  int v = 0;
  while (f[static_cast<std::size_t>(v)] == 0) ++v;
  return v;
}

IntPolynomial strip_zero_roots(const IntPolynomial& f) {
  int v = zero_multiplicity(f);
  if (v == 0) return f;
  return IntPolynomial(std::vector<Integer>(f.coeffs().begin() + v, f.coeffs().end()));
}

std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& f) {
  require_nonzero(f, "squarefree_decomposition");
  std::vector<std::pair<IntPolynomial, int>> out;
  IntPolynomial p = primitive_part(f);
  if (p.degree() < 1) return out;
  IntPolynomial dp = p.derivative();
  IntPolynomial a0 = gcd(p, dp);
  IntPolynomial b = exact_quotient(p, a0);
  IntPolynomial c = exact_quotient(dp, a0);
  IntPolynomial d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    IntPolynomial a = gcd(b, d);
    if (a.degree() >= 1) out.emplace_back(a, i);
    IntPolynomial nb = exact_quotient(b, a);
    c = exact_quotient(d, a);
    b = nb;
    d = c - b.derivative();
  }
  for (auto& [g, m] : out) g = primitive_part(g);
  return out;
}

IntPolynomial squarefree_part(const IntPolynomial& f) {
  IntPolynomial r{1};
  for (const auto& [g, m] : squarefree_decomposition(f)) r = r * g;
  return r;
}

Rational root_product(const IntPolynomial& f) {
  require_nonzero(f, "root_product");
  Rational r(f[0], f.leading());
  r.canonicalize();
  if (f.degree() % 2 == 1) r = -r;
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace polydep
