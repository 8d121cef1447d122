#include "finperiod/mhs_eval.hpp"

#include <map>
#include <mutex>

namespace fp {

namespace {

Q term_power(long n, int part) {
  // n^{-part} as a rational
  if (part >= 0) return q_pow(Q(Z(n)), -static_cast<long>(part));
  return q_pow(Q(Z(n)), static_cast<long>(-part));
}

struct EvalKey {
  long N;
  long p;  // 0 for unrestricted
  Composition s;
  bool operator<(const EvalKey& o) const {
    if (N != o.N) return N < o.N;
    if (p != o.p) return p < o.p;
    return s < o.s;
  }
};

Q eval_impl(long N, const Composition& s, long p);

Q eval_cached(long N, const Composition& s, long p) {
  static std::map<EvalKey, Q> cache;
  static std::mutex mu;
  EvalKey key{N, p, s};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Q r = eval_impl(N, s, p);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::move(key), r);
  return r;
}

Q eval_impl(long N, const Composition& s, long p) {
  if (s.empty()) return Q(1);
  if (N < depth(s)) return Q(0);
  Composition t = tail(s);
  Q acc = eval_cached(N - 1, s, p);
  if (!(p != 0 && N % p == 0))
    acc += term_power(N, s[0]) * eval_cached(N - 1, t, p);
  return acc;
}

}  // namespace

Q mhs_eval(long N, const Composition& s) { return eval_cached(N, s, 0); }

Q mhs_eval_p_restricted(long N, const Composition& s, long p) {
  if (p <= 1) throw Error(ErrorKind::InvalidArgument, "p must be a prime");
  return eval_cached(N, s, p);
}

std::vector<Q> faulhaber(int e) {
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "faulhaber exponent < 0");
  // Solve for coefficients from the e+1 interpolation conditions
  // P(N) - P(N-1) = N^e with P(0) = 0, by building P degree-by-degree from
  // P(k) values at k = 0..e+1 (Newton forward differences would also do; the
  // direct Vandermonde solve is tiny and exact).
  int deg = e + 1;
  std::vector<Q> values(deg + 1);
  values[0] = 0;
  for (int k = 1; k <= deg; ++k) values[k] = values[k - 1] + q_pow(Q(k), e);
  // Solve V c = values with V_{k,j} = k^{j}  (j = 0..deg), then drop c_0 = 0.
  std::vector<std::vector<Q>> m(deg + 1, std::vector<Q>(deg + 2));
  for (int k = 0; k <= deg; ++k) {
    for (int j = 0; j <= deg; ++j) m[k][j] = q_pow(Q(k), j);
    m[k][deg + 1] = values[k];
  }
  for (int col = 0; col <= deg; ++col) {
    int piv = col;
    while (piv <= deg && m[piv][col] == 0) ++piv;
    std::swap(m[col], m[piv]);
    Q inv = Q(1) / m[col][col];
    for (int j = col; j <= deg + 1; ++j) m[col][j] *= inv;
    for (int r = 0; r <= deg; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Q f = m[r][col];
      for (int j = col; j <= deg + 1; ++j) m[r][j] -= f * m[col][j];
    }
  }
  std::vector<Q> coeffs(deg);
  for (int j = 1; j <= deg; ++j) coeffs[j - 1] = m[j][deg + 1];
  return coeffs;
}

Q faulhaber_eval(int e, const Z& N) {
  std::vector<Q> c = faulhaber(e);
  Q acc = 0;
  Q power(N);
  for (size_t i = 0; i < c.size(); ++i) {
    acc += c[i] * power;
    power *= Q(N);
  }
  return acc;
}

}  // namespace fp
