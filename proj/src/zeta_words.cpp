#include "finperiod/zeta_words.hpp"

#include <mutex>

namespace fp {

AElement zeta_word(const Composition& s) {
  if (!all_parts_positive(s))
    throw Error(ErrorKind::InvalidArgument,
                "zeta word needs parts >= 1: " + format_composition(s));
  if (!is_admissible(s))
    throw Error(ErrorKind::InvalidArgument,
                "non-admissible zeta word: " + format_composition(s));
  return AElement(s);
}

namespace {

int leading_ones(const Composition& w) {
  int n = 0;
  for (int part : w) {
    if (part != 1) break;
    ++n;
  }
  return n;
}

AElement regularize_impl(const Composition& w);

AElement regularize_cached(const Composition& w) {
  static std::map<Composition, AElement> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
  }
  AElement r = regularize_impl(w);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(w, r);
  return r;
}

// In the quasi-shuffle product (1) * u, the word (1,u) appears with
// multiplicity 1 + leading_ones(u), and every other term has strictly fewer
// leading ones, so the rewrite below terminates.
AElement regularize_impl(const Composition& w) {
  if (is_admissible(w)) return AElement(w);
  Composition u = tail(w);
  CompositionSum prod = stuffle(Composition{1}, u);
  Q cw = prod.coefficient(w);
  AElement out;
  for (const auto& [v, c] : prod.terms()) {
    if (v == w) continue;
    out += regularize_cached(v) * (-c / cw);
  }
  return out;
}

}  // namespace

AElement regularize(const Composition& w) {
  if (!all_parts_positive(w))
    throw Error(ErrorKind::InvalidArgument,
                "regularize needs parts >= 1: " + format_composition(w));
  return regularize_cached(w);
}

AElement a_mul(const AElement& x, const AElement& y) {
  AElement out;
  for (const auto& [wx, cx] : x.terms())
    for (const auto& [wy, cy] : y.terms()) {
      CompositionSum prod = stuffle(wx, wy);
      for (const auto& [w, c] : prod.terms()) out.add(w, c * cx * cy);
    }
  return out;
}

AElement a_pow(const AElement& x, int e) {
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "a_pow exponent < 0");
  AElement acc = a_one();
  for (int i = 0; i < e; ++i) acc = a_mul(acc, x);
  return acc;
}

std::map<int, AElement> weight_components(const AElement& x) {
  std::map<int, AElement> out;
  for (const auto& [w, c] : x.terms()) out[weight(w)].add(w, c);
  return out;
}

int max_weight(const AElement& x) {
  int m = 0;
  for (const auto& [w, c] : x.terms()) m = std::max(m, weight(w));
  return m;
}

}  // namespace fp
