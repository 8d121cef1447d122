#include "finperiod/padic.hpp"

#include <climits>
#include <vector>

namespace fp {

namespace {
constexpr long kExact = LONG_MAX / 4;  // precision sentinel for exact zero
}

PAdic::PAdic(const Z& p, long working_prec) : p_(p), prec_(working_prec) {
  if (working_prec <= 0)
    throw Error(ErrorKind::InvalidArgument, "working precision must be positive");
  mpz_pow_ui(modulus_.get_mpz_t(), p.get_mpz_t(), working_prec);
  zero_ = true;
  val_ = kExact;
}

PAdic PAdic::zero(const Z& p, long working_prec) { return PAdic(p, working_prec); }

PAdic PAdic::from_z(const Z& x, const Z& p, long working_prec) {
  PAdic r(p, working_prec);
  if (x == 0) return r;
  Z t = x;
  long v = 0;
  Z q, rem;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    if (rem != 0) break;
    t = q;
    ++v;
  }
  r.zero_ = false;
  r.val_ = v;
  mpz_fdiv_r(r.unit_.get_mpz_t(), t.get_mpz_t(), r.modulus_.get_mpz_t());
  return r;
}

PAdic PAdic::from_q(const Q& x, const Z& p, long working_prec) {
  PAdic num = from_z(x.get_num(), p, working_prec);
  PAdic den = from_z(x.get_den(), p, working_prec);
  if (num.is_zero()) return num;
  return num * den.inverse();
}

long PAdic::valuation() const {
  if (zero_) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  return val_;
}

long PAdic::known_mod() const { return zero_ ? val_ : val_ + prec_; }

PAdic PAdic::operator*(const PAdic& o) const {
  PAdic r(p_, std::min(prec_, o.prec_));
  if (zero_ || o.zero_) {
    // |x| <= p^{-a} and |y| <= p^{-b} give |xy| <= p^{-(a+b)}; for a zero
    // operand val_ already stores its knownness exponent.
    r.val_ = std::min(val_ + o.val_, kExact);
    return r;
  }
  r.zero_ = false;
  r.val_ = val_ + o.val_;
  r.unit_ = unit_ * o.unit_;
  mpz_fdiv_r(r.unit_.get_mpz_t(), r.unit_.get_mpz_t(), r.modulus_.get_mpz_t());
  return r;
}

PAdic PAdic::operator+(const PAdic& o) const {
  long known = std::min(known_mod(), o.known_mod());
  if (zero_ && o.zero_) {
    PAdic r(p_, std::max(prec_, o.prec_));
    r.val_ = known;
    return r;
  }
  if (zero_) {
    PAdic r = o;
    if (known < r.known_mod()) {
      r.prec_ = known - r.val_;
      if (r.prec_ <= 0) {
        PAdic z(p_, std::max(prec_, o.prec_));
        z.val_ = known;
        return z;
      }
    }
    return r;
  }
  if (o.zero_) return o + *this;

  long base = std::min(val_, o.val_);
  long prec_digits = known - base;
  if (prec_digits <= 0) {
    PAdic z(p_, std::max(prec_, o.prec_));
    z.val_ = known;
    return z;
  }
  Z mod;
  mpz_pow_ui(mod.get_mpz_t(), p_.get_mpz_t(), prec_digits);
  Z a = unit_, b = o.unit_;
  Z scale;
  mpz_pow_ui(scale.get_mpz_t(), p_.get_mpz_t(), val_ - base);
  a *= scale;
  mpz_pow_ui(scale.get_mpz_t(), p_.get_mpz_t(), o.val_ - base);
  b *= scale;
  Z sum = a + b;
  mpz_fdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), mod.get_mpz_t());
  if (sum == 0) {
    PAdic z(p_, std::max(prec_, o.prec_));
    z.val_ = known;
    return z;
  }
  long v = 0;
  Z q, rem, t = sum;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), p_.get_mpz_t());
    if (rem != 0) break;
    t = q;
    ++v;
  }
  if (prec_digits - v <= 0) {
    PAdic z(p_, std::max(prec_, o.prec_));
    z.val_ = known;
    return z;
  }
  PAdic r(p_, prec_digits - v);
  r.zero_ = false;
  r.val_ = base + v;
  mpz_fdiv_r(r.unit_.get_mpz_t(), t.get_mpz_t(), r.modulus_.get_mpz_t());
  return r;
}

PAdic PAdic::operator-(const PAdic& o) const {
  PAdic neg = o;
  if (!neg.zero_) {
    neg.unit_ = neg.modulus_ - neg.unit_;
    mpz_fdiv_r(neg.unit_.get_mpz_t(), neg.unit_.get_mpz_t(), neg.modulus_.get_mpz_t());
  }
  return *this + neg;
}

PAdic PAdic::inverse() const {
  if (zero_) throw Error(ErrorKind::NotAUnit, "inverse of (approximate) zero");
  PAdic r(p_, prec_);
  r.zero_ = false;
  r.val_ = -val_;
  if (mpz_invert(r.unit_.get_mpz_t(), unit_.get_mpz_t(), modulus_.get_mpz_t()) == 0)
    throw Error(ErrorKind::NotAUnit, "unit not invertible");
  return r;
}

PAdic PAdic::pow(long e) const {
  if (e == 0) return from_z(1, p_, prec_);
  PAdic base = e < 0 ? inverse() : *this;
  long n = e < 0 ? -e : e;
  PAdic acc = from_z(1, p_, base.prec_);
  for (long i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

bool PAdic::vanishes_mod(long n) const {
  if (zero_) {
    if (val_ >= n) return true;
    throw Error(ErrorKind::InvalidArgument,
                "insufficient p-adic precision to decide congruence");
  }
  // The unit part is exact and coprime to p, so the valuation decides.
  return val_ >= n;
}

PAdic mhs_padic(const Z& N, const Composition& s, const Z& p, long prec,
                bool p_restricted) {
  if (N < 0) return PAdic::zero(p, prec);
  if (!N.fits_slong_p())
    throw Error(ErrorKind::InvalidArgument, "harmonic-sum limit too large");
  long n = N.get_si();
  long pl = p.get_si();
  int k = depth(s);
  // level j holds H_m(suffix starting at j), for all m at once
  std::vector<std::vector<PAdic>> levels(
      k + 1, std::vector<PAdic>(n + 1, PAdic::zero(p, prec)));
  for (long m = 0; m <= n; ++m) levels[k][m] = PAdic::from_z(1, p, prec);
  for (int j = k - 1; j >= 0; --j) {
    for (long m = 1; m <= n; ++m) {
      PAdic acc = levels[j][m - 1];
      if (!(p_restricted && m % pl == 0)) {
        PAdic term = PAdic::from_z(m, p, prec).pow(-static_cast<long>(s[j]));
        acc = acc + term * levels[j + 1][m - 1];
      }
      levels[j][m] = acc;
    }
  }
  return levels[0][n];
}

}  // namespace fp
