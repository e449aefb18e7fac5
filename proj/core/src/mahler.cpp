#include <cmath>

#include "polydep/error.hpp"
#include "polydep/intpoly.hpp"
#include "polydep/roots.hpp"

namespace polydep {

RealEnclosure mahler_measure(const IntPolynomial& f, long precision) {
  if (f.is_zero()) throw InvalidInput("mahler_measure: zero polynomial");
  if (precision < 16) throw InvalidInput("mahler_measure: precision must be at least 16 bits");
  mpfr_prec_t wp = precision + 64;
  Integer lead = abs(f.leading());
  if (f.degree() == 0) return RealEnclosure{BigFloat(lead, wp), BigFloat(lead, wp)};
  long bits = precision + static_cast<long>(std::ceil(std::log2(f.degree() + 1.0))) + 4;
  for (int attempt = 0; attempt < 32; ++attempt, bits += 32) {
    std::vector<RootEnclosure> roots = isolate_roots(f, bits);
    BigFloat lo(lead, wp, MPFR_RNDD), hi(lead, wp, MPFR_RNDU);
    BigFloat a(wp), b(wp);
    for (const auto& r : roots) {
      mpfr_hypot(a.get(), r.re.get(), r.im.get(), MPFR_RNDD);
      mpfr_sub(a.get(), a.get(), r.radius.get(), MPFR_RNDD);
      if (mpfr_cmp_ui(a.get(), 1) < 0) mpfr_set_ui(a.get(), 1, MPFR_RNDD);
      mpfr_hypot(b.get(), r.re.get(), r.im.get(), MPFR_RNDU);
      mpfr_add(b.get(), b.get(), r.radius.get(), MPFR_RNDU);
      if (mpfr_cmp_ui(b.get(), 1) < 0) mpfr_set_ui(b.get(), 1, MPFR_RNDU);
      for (int m = 0; m < r.multiplicity; ++m) {
        mpfr_mul(lo.get(), lo.get(), a.get(), MPFR_RNDD);
        mpfr_mul(hi.get(), hi.get(), b.get(), MPFR_RNDU);
      }
    }
    BigFloat w(wp), tol(wp);
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    mpfr_mul_2si(tol.get(), lo.get(), -precision, MPFR_RNDD);
    if (mpfr_cmp(w.get(), tol.get()) <= 0) return RealEnclosure{std::move(lo), std::move(hi)};
  }
  throw PrecisionError("mahler_measure: enclosure did not reach the requested width");
}

}  // namespace polydep
