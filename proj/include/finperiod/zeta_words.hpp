#ifndef FINPERIOD_ZETA_WORDS_HPP
#define FINPERIOD_ZETA_WORDS_HPP

#include <map>

#include "finperiod/composition.hpp"
#include "finperiod/lincomb.hpp"
#include "finperiod/stuffle.hpp"

namespace fp {

// Elements of the algebra of motivic multiple zeta values modulo zeta(2), in
// word form: a linear combination of admissible zeta words.  The empty word
// is the unit.  Multiplication is the quasi-shuffle product on words; shuffle
// relations enter only through a relation table (see relation_table.hpp).
using AElement = LinComb<Composition>;

// The word zeta(s); requires an admissible composition.
AElement zeta_word(const Composition& s);

inline AElement a_one() { return AElement(Composition{}); }
inline AElement a_const(const Q& c) { return AElement(Composition{}, c); }

// Quasi-shuffle regularization of a word with parts >= 1.  Admissible words
// map to themselves; words with leading ones are rewritten into admissible
// words using the regularization parameter zeta*(1) = 0.
AElement regularize(const Composition& w);

// Product in the algebra (bilinear quasi-shuffle on admissible words).
AElement a_mul(const AElement& x, const AElement& y);

AElement a_pow(const AElement& x, int e);

// Direct-sum decomposition by word weight.
std::map<int, AElement> weight_components(const AElement& x);

int max_weight(const AElement& x);

}  // namespace fp

#endif
