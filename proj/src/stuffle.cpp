#include "finperiod/stuffle.hpp"

#include <mutex>

namespace fp {

namespace {

CompositionSum prepend_all(int part, const CompositionSum& s) {
  CompositionSum out;
  for (const auto& [comp, c] : s.terms()) out.add(prepend(part, comp), c);
  return out;
}

CompositionSum stuffle_uncached(const Composition& a, const Composition& b);

CompositionSum stuffle_cached(const Composition& a, const Composition& b) {
  static std::map<std::pair<Composition, Composition>, CompositionSum> cache;
  static std::mutex mu;
  std::pair<Composition, Composition> key = a <= b ? std::make_pair(a, b)
                                                   : std::make_pair(b, a);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  CompositionSum r = stuffle_uncached(key.first, key.second);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::move(key), r);
  return r;
}

CompositionSum stuffle_uncached(const Composition& a, const Composition& b) {
  if (a.empty()) return CompositionSum(b);
  if (b.empty()) return CompositionSum(a);
  Composition ta = tail(a), tb = tail(b);
  CompositionSum out = prepend_all(a[0], stuffle_cached(ta, b));
  out += prepend_all(b[0], stuffle_cached(a, tb));
  out += prepend_all(a[0] + b[0], stuffle_cached(ta, tb));
  return out;
}

}  // namespace

CompositionSum stuffle(const Composition& a, const Composition& b) {
  return stuffle_cached(a, b);
}

CompositionSum stuffle(const CompositionSum& a, const CompositionSum& b) {
  CompositionSum out;
  for (const auto& [ca, qa] : a.terms())
    for (const auto& [cb, qb] : b.terms()) {
      CompositionSum prod = stuffle(ca, cb);
      prod *= qa * qb;
      out += prod;
    }
  return out;
}

}  // namespace fp
