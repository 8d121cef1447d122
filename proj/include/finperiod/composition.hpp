#ifndef FINPERIOD_COMPOSITION_HPP
#define FINPERIOD_COMPOSITION_HPP

#include <numeric>
#include <string>
#include <vector>

#include "finperiod/basics.hpp"

namespace fp {

// A composition is an ordered list of integer exponents.  The public surface
// (zeta words, harmonic-sum arguments) requires every part >= 1; reduction
// code may hold nonpositive parts while rewriting.
using Composition = std::vector<int>;

inline int weight(const Composition& s) {
  return std::accumulate(s.begin(), s.end(), 0);
}

inline int depth(const Composition& s) { return static_cast<int>(s.size()); }

inline bool all_parts_positive(const Composition& s) {
  for (int part : s)
    if (part < 1) return false;
  return true;
}

// Admissible words index multiple zeta values: empty, or first part >= 2.
inline bool is_admissible(const Composition& s) {
  return s.empty() || s.front() >= 2;
}

inline Composition tail(const Composition& s) {
  return Composition(s.begin() + 1, s.end());
}

inline Composition prepend(int part, const Composition& s) {
  Composition r;
  r.reserve(s.size() + 1);
  r.push_back(part);
  r.insert(r.end(), s.begin(), s.end());
  return r;
}

std::string format_composition(const Composition& s);

// Parses "(1,3,2)" or "()"; throws ParseError.
Composition parse_composition(const std::string& text);

// All compositions of the given weight (2^{w-1} of them for w >= 1).
std::vector<Composition> compositions_of_weight(int w);

// All compositions of weight w whose first part is >= 2 (plus the empty
// composition at w = 0).
std::vector<Composition> admissible_words_of_weight(int w);

}  // namespace fp

#endif
