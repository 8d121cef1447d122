#ifndef FINPERIOD_MHS_EVAL_HPP
#define FINPERIOD_MHS_EVAL_HPP

#include <vector>

#include "finperiod/composition.hpp"

namespace fp {

// Exact value of the multiple harmonic sum
//   H_N(s) = sum over N >= n_1 > ... > n_k >= 1 of prod n_i^{-s_i}.
// Parts may be any integers; a part s <= 0 contributes the positive power
// n^{-s}.  Returns 0 when N < depth(s) and 1 for the empty composition.
//
// Evaluation runs the one-index recursion H_n = H_{n-1} + n^{-s_1} H_{n-1}(tail)
// with a process-wide cache keyed on (N, s), so repeated evaluation at nearby
// limits is linear rather than exponential in depth.
Q mhs_eval(long N, const Composition& s);

// Same sum with indices divisible by p omitted.
Q mhs_eval_p_restricted(long N, const Composition& s, long p);

// Coefficients q_1..q_{e+1} of the polynomial P_e with P_e(N) = sum_{n<=N} n^e
// for all N >= 0 (P_e(0) = 0, so there is no constant coefficient).  Index i
// of the returned vector holds the coefficient of N^{i+1}.
std::vector<Q> faulhaber(int e);

// Convenience: evaluate P_e at an integer point.
Q faulhaber_eval(int e, const Z& N);

}  // namespace fp

#endif
