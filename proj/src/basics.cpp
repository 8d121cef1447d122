#include "finperiod/basics.hpp"

namespace fp {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DenominatorDivisibleByP: return "DenominatorDivisibleByP";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::WeightCapExceeded: return "WeightCapExceeded";
    case ErrorKind::MissingReduction: return "MissingReduction";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::HomogeneityViolation: return "HomogeneityViolation";
    case ErrorKind::IncompleteTable: return "IncompleteTable";
    case ErrorKind::UnsupportedFactor: return "UnsupportedFactor";
    case ErrorKind::ResidualAlternatingSign: return "ResidualAlternatingSign";
    case ErrorKind::UnbalancedSpec: return "UnbalancedSpec";
    case ErrorKind::UnsupportedPolynomial: return "UnsupportedPolynomial";
    case ErrorKind::NotDepth1: return "NotDepth1";
    case ErrorKind::SolveFailed: return "SolveFailed";
    case ErrorKind::TableInsufficient: return "TableInsufficient";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Q q_pow(const Q& base, long e) {
  if (e == 0) return Q(1);
  if (e < 0) {
    if (base == 0) throw Error(ErrorKind::InvalidArgument, "0 has no negative power");
    Q inv(base.get_den(), base.get_num());
    inv.canonicalize();
    return q_pow(inv, -e);
  }
  Q num, den;
  mpz_pow_ui(num.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(num.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
  num.canonicalize();
  return num;
}

Q gen_binomial(long a, unsigned long k) {
  Q r(1);
  for (unsigned long i = 0; i < k; ++i) {
    r *= Q(Z(a) - Z(i));
    r /= Q(Z(i) + 1);
  }
  return r;
}

Z binomial(const Z& n, unsigned long k) {
  if (n < 0) return 0;
  Z r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

long z_valuation(const Z& x, const Z& p) {
  if (x == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  Z t = x;
  long v = 0;
  Z q, r;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    t = q;
    ++v;
  }
  return v;
}

long q_valuation(const Q& x, const Z& p) {
  if (x == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  return z_valuation(x.get_num(), p) - z_valuation(x.get_den(), p);
}

bool congruent_mod_p_power(const Q& x, const Q& y, const Z& p, long n) {
  if (x.get_den() % p == 0 || y.get_den() % p == 0)
    throw Error(ErrorKind::DenominatorDivisibleByP,
                "denominator divisible by " + p.get_str());
  Q d = x - y;
  if (d == 0) return true;
  if (d.get_den() % p == 0)
    throw Error(ErrorKind::DenominatorDivisibleByP,
                "denominator divisible by " + p.get_str());
  return q_valuation(d, p) >= n;
}

std::vector<long> primes_in_range(long lo, long hi) {
  std::vector<long> out;
  for (long n = std::max(lo, 2L); n <= hi; ++n) {
    bool prime = n >= 2;
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) { prime = false; break; }
    if (prime) out.push_back(n);
  }
  return out;
}

Q parse_rational(const std::string& text) {
  if (text.empty())
    throw Error(ErrorKind::ParseError, "empty rational literal");
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw Error(ErrorKind::ParseError, "bad rational literal: " + text);
  }
  try {
    Q r(text);
    if (r.get_den() == 0)
      throw Error(ErrorKind::ParseError, "zero denominator: " + text);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::ParseError, "bad rational literal: " + text);
  }
}

std::string format_rational(const Q& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace fp
