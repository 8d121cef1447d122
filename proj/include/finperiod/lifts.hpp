#ifndef FINPERIOD_LIFTS_HPP
#define FINPERIOD_LIFTS_HPP

#include "finperiod/aseries.hpp"
#include "finperiod/mhs_series.hpp"

namespace fp {

// Lift of the multiple harmonic sum H_{p-1}(s) to a zeta-word Laurent
// series: the p-adically convergent expansion of H_{p-1}(s) into p-power
// multiples of zeta values, with T standing for p.  Coefficients are exact
// through T^{order-1}.
ASeries motivic_mhs(const Composition& s, int order);

// Termwise lift sum_i c_i T^{b_i} motivic_mhs(s_i), truncated at order.
ASeries mhs_series_lift(const MHSSeries& m, int order);

// The binomial coefficient binom(kp, rp) as a zeta-word series via the
// product formula over lifted all-ones harmonic sums (k >= r >= 0).
ASeries motivic_binomial(int k, int r, int order);

// c_n = binom(np, p) lifted: n * sum_j (n-1)^j T^j motivic_mhs(1^j).
ASeries motivic_c(int n, int order);

struct FactorialSpec {
  // pairs (b_i, n_i): the product of (b_i p)!^{n_i}
  std::vector<std::pair<int, int>> factors;
};

// Membership requires sum n_i b_i = 0 (else UnbalancedSpec); the lift is the
// corresponding product of c_j series with constant term prod b_i!^{n_i}.
ASeries motivic_factorial_product(const FactorialSpec& f, int order);

// Equal-limit expansions of the same quantities inside the harmonic-sum
// algebra, used by the prover and the command surface.
MHSSeries mhs_all_ones_product_series(int n, int order);      // sum_i n^i p^i H(1^i)
MHSSeries mhs_binomial_pp(int k, int r, int order);           // binom(kp, rp)
MHSSeries mhs_c(int n, int order);                            // binom(np, p)
MHSSeries mhs_factorial_product(const FactorialSpec& f, int order);

// Weight-diagonal embedding: each weight-w component is placed at T^w.
ASeries diagonal_embed(const AElement& x, int order);
ASeries diagonal_embed(const BasisForm& x, int order);

Q factorial_spec_constant(const FactorialSpec& f);
void check_balanced(const FactorialSpec& f);

}  // namespace fp

#endif
