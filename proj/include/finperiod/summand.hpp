#ifndef FINPERIOD_SUMMAND_HPP
#define FINPERIOD_SUMMAND_HPP

#include <memory>
#include <string>
#include <vector>

#include "finperiod/mhs_series.hpp"

namespace fp {

struct SumNode;

// One factor of a nested-sum body.  The binomial catalog is deliberately
// closed: binom(p,v), binom(p-1,v), binom(p+v,v), binom(p+v-1,v), inverse
// shifts 1/(v+c) with c >= 0, integer powers of the variable, nonnegative
// powers of p, rational constants, nested sums, and closed-form leaves that
// are constant in every summation variable.
struct SummandFactor {
  enum class Kind {
    BinomPOverVar,   // binom(p + shift, v), shift in {0, -1}
    BinomPPlusVar,   // binom(p + v + shift, v), shift in {0, -1}
    InvShift,        // 1/(v + shift), shift >= 0
    PowVar,          // v^power, power in Z
    PowP,            // p^power, power >= 0
    Constant,
    SubSum,
    Leaf,
  };
  Kind kind;
  int shift = 0;
  int power = 1;  // binomial/monomial exponent
  Q value;
  std::shared_ptr<SumNode> sub;
  std::shared_ptr<MHSSeries> leaf;

  static SummandFactor binom_p(int shift, int power = 1);
  static SummandFactor binom_pn(int shift, int power = 1);
  static SummandFactor inv_shift(int c);
  static SummandFactor pow_var(int j);
  static SummandFactor pow_p(int j);
  static SummandFactor constant(const Q& c);
  static SummandFactor subsum(SumNode node);
  static SummandFactor leaf_series(MHSSeries m);
};

// Upper bound of a sum: p + shift at the outermost level, or the enclosing
// variable + shift for nested sums.
struct SumBound {
  bool relative_to_p = true;
  int shift = 0;
};

struct SumNode {
  std::string var = "n";
  int lower = 1;  // >= 1
  SumBound upper;
  std::vector<SummandFactor> body;
};

// Expands the nested sum into the canonical form sum c_i p^{b_i} H_{p-1}(s_i),
// exact below p^order for all sufficiently large p.
//
// Pipeline, innermost variable first: binomial factors expand into p-power
// series of equal-limit all-ones harmonic sums; products of harmonic sums at
// one variable are merged by the quasi-shuffle rule after aligning their
// limits; rational prefactors are split by partial fractions until each term
// carries a single pole offset, whose harmonic limit is aligned to it; the
// variable is then summed, sending v^{-k} H_{v-1}(s) to H_{bound}(k,s),
// nonnegative powers through the closed-form power-sum polynomials, and
// finitely many boundary indices to explicit rationals.  At the level of p
// itself, limits are aligned to p-1 and residual factors (p+c)^{-k} are
// expanded p-adically.
MHSSeries expand_summand(const SumNode& e, int order);

// H_{p-1} of a composition with arbitrary integer parts (nonpositive parts
// denote positive powers of the index), reduced to canonical form through
// the same pipeline.
MHSSeries reduce_integer_composition(const std::vector<int>& parts, int order);

}  // namespace fp

#endif
