#ifndef FINPERIOD_STUFFLE_HPP
#define FINPERIOD_STUFFLE_HPP

#include "finperiod/composition.hpp"
#include "finperiod/lincomb.hpp"

namespace fp {

using CompositionSum = LinComb<Composition>;

// Quasi-shuffle product of compositions: interleave the two part lists,
// optionally merging one part of each side by addition.  This is the product
// rule satisfied by equal-limit truncated harmonic sums,
//   H_n(a) * H_n(b) = sum over stuffle(a, b).
// Parts may be arbitrary integers; the identity holds termwise.
CompositionSum stuffle(const Composition& a, const Composition& b);

// Bilinear extension.
CompositionSum stuffle(const CompositionSum& a, const CompositionSum& b);

}  // namespace fp

#endif
