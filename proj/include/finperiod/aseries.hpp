#ifndef FINPERIOD_ASERIES_HPP
#define FINPERIOD_ASERIES_HPP

#include <optional>

#include "finperiod/relation_table.hpp"
#include "finperiod/zeta_words.hpp"

namespace fp {

// Truncated Laurent series over the zeta-word algebra.  Coefficients are
// exact for every degree below truncation_order; nothing is stored at or
// above it.  Arithmetic propagates truncation pessimistically: a product is
// certified only below min(o1 + v2, o2 + v1) where v is the operand's lowest
// stored degree.
class ASeries {
 public:
  static constexpr int kMaxOrder = 1 << 24;  // order used for exact values

  explicit ASeries(int truncation_order = kMaxOrder);
  static ASeries constant(const Q& c, int order = kMaxOrder);
  static ASeries monomial(const AElement& z, int degree, int order = kMaxOrder);

  int truncation_order() const { return order_; }
  const std::map<int, AElement>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // Lowest stored degree; empty optional for the zero series.
  std::optional<int> min_degree() const;

  AElement coefficient(int degree) const;
  void set_coefficient(int degree, const AElement& z);

  ASeries truncated(int order) const;
  ASeries shifted(int degrees) const;  // multiply by T^degrees

  friend ASeries operator+(const ASeries& a, const ASeries& b);
  friend ASeries operator-(const ASeries& a, const ASeries& b);
  friend ASeries operator*(const ASeries& a, const ASeries& b);
  ASeries operator*(const Q& c) const;
  ASeries operator-() const;

  ASeries pow(int e) const;

 private:
  int order_;
  std::map<int, AElement> coeffs_;
};

ASeries ser_add(const ASeries& a, const ASeries& b);
ASeries ser_mul(const ASeries& a, const ASeries& b);

// Multiplicative inverse up to the truncation order.  The lowest-degree
// coefficient must be a nonzero rational (weight-0 word); otherwise NotAUnit.
ASeries ser_inv(const ASeries& x);

// Least degree whose reduced coefficient is nonzero, or empty if every known
// coefficient reduces to zero (report alongside the truncation order).
std::optional<int> filtration_degree(const ASeries& x, const RelationTable& t);

// Coefficient-wise reduction; degrees whose coefficient vanishes are dropped.
std::map<int, BasisForm> reduce_series(const ASeries& x, const RelationTable& t);

bool equal_mod_table(const ASeries& a, const ASeries& b, const RelationTable& t,
                     int through_order);

}  // namespace fp

#endif
