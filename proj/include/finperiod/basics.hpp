#ifndef FINPERIOD_BASICS_HPP
#define FINPERIOD_BASICS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fp {

using Z = mpz_class;
using Q = mpq_class;

// Error kinds surfaced across the library. Each carries a stable name so the
// CLI can map them to diagnostics and exit codes.
enum class ErrorKind {
  DenominatorDivisibleByP,
  NotAUnit,
  WeightCapExceeded,
  MissingReduction,
  ParseError,
  HomogeneityViolation,
  IncompleteTable,
  UnsupportedFactor,
  ResidualAlternatingSign,
  UnbalancedSpec,
  UnsupportedPolynomial,
  NotDepth1,
  SolveFailed,
  TableInsufficient,
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

const char* error_kind_name(ErrorKind k);

inline Z z_pow(const Z& base, unsigned long e) {
  Z r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Z factorial(unsigned long n) {
  Z r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// Integer power of a rational; e may be negative (base must be nonzero then).
Q q_pow(const Q& base, long e);

// Generalized binomial coefficient binom(a, k) = a(a-1)...(a-k+1)/k! for any
// integer a and k >= 0.
Q gen_binomial(long a, unsigned long k);

// Ordinary binomial for integer arguments, 0 when k > n or n < 0.
Z binomial(const Z& n, unsigned long k);

// p-adic valuation; x must be nonzero.
long z_valuation(const Z& x, const Z& p);
long q_valuation(const Q& x, const Z& p);

// True iff v_p(x - y) >= n.  Throws DenominatorDivisibleByP when either
// denominator is divisible by p.
bool congruent_mod_p_power(const Q& x, const Q& y, const Z& p, long n);

// Primes in [lo, hi], ascending.
std::vector<long> primes_in_range(long lo, long hi);

// Parses "num" or "num/den"; throws ParseError on malformed input.
Q parse_rational(const std::string& text);
std::string format_rational(const Q& x);

}  // namespace fp

#endif
