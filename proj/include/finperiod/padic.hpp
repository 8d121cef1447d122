#ifndef FINPERIOD_PADIC_HPP
#define FINPERIOD_PADIC_HPP

#include "finperiod/basics.hpp"
#include "finperiod/composition.hpp"

namespace fp {

// Truncated p-adic number v_p-valuation + unit, used by the numeric
// verification paths.  A value is p^val * unit with unit known modulo
// p^prec (so the number is known modulo p^{val+prec}).  prec <= 0 means the
// value is entirely unknown at the working precision.
class PAdic {
 public:
  PAdic(const Z& p, long working_prec);

  static PAdic zero(const Z& p, long working_prec);
  static PAdic from_z(const Z& x, const Z& p, long working_prec);
  static PAdic from_q(const Q& x, const Z& p, long working_prec);

  const Z& prime() const { return p_; }
  bool is_zero() const { return zero_; }
  long valuation() const;    // throws on zero
  long known_mod() const;    // value is known modulo p^{known_mod()}

  PAdic operator+(const PAdic& o) const;
  PAdic operator-(const PAdic& o) const;
  PAdic operator*(const PAdic& o) const;
  PAdic inverse() const;     // throws NotAUnit on zero input
  PAdic pow(long e) const;

  // Is this value congruent to 0 modulo p^n (to the known precision)?
  // Throws if precision is insufficient to decide.
  bool vanishes_mod(long n) const;

 private:
  Z p_;
  long prec_;      // digits of unit kept
  bool zero_ = true;
  long val_ = 0;
  Z unit_;         // in [0, p^prec), coprime to p unless zero_
  Z modulus_;      // p^prec

  void normalize();
};

// Direct modular evaluation of multiple harmonic sums.  Computes
// H_N(s) (restricted: indices divisible by p skipped) as a PAdic with the
// given working precision.  Unrestricted sums may have negative valuation.
PAdic mhs_padic(const Z& N, const Composition& s, const Z& p, long prec,
                bool p_restricted);

}  // namespace fp

#endif
