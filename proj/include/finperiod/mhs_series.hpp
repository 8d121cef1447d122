#ifndef FINPERIOD_MHS_SERIES_HPP
#define FINPERIOD_MHS_SERIES_HPP

#include <optional>
#include <vector>

#include "finperiod/composition.hpp"
#include "finperiod/mhs_eval.hpp"
#include "finperiod/stuffle.hpp"

namespace fp {

struct MHSTerm {
  Q c;
  int b;          // power of p
  Composition s;  // all parts >= 1; H is taken at limit p-1
};

// Canonical truncated expansion  sum_i c_i p^{b_i} H_{p-1}(s_i), the normal
// form produced by the expansion pipeline.  Terms are sorted by (b, s) and
// coalesced; terms with b >= truncation_order are dropped.  The p-exponent
// ordering is bookkeeping for the formal expansion: it does not claim the
// p-adic valuation of H values themselves.
class MHSSeries {
 public:
  static constexpr int kMaxOrder = 1 << 24;

  explicit MHSSeries(int truncation_order = kMaxOrder);

  static MHSSeries constant(const Q& c, int order = kMaxOrder);
  static MHSSeries harmonic(const Composition& s, int order = kMaxOrder);
  static MHSSeries term(const Q& c, int b, const Composition& s,
                        int order = kMaxOrder);

  int truncation_order() const { return order_; }
  const std::vector<MHSTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<int> min_exponent() const;

  void add_term(const Q& c, int b, const Composition& s);

  MHSSeries truncated(int order) const;
  MHSSeries shifted(int b) const;  // multiply by p^b

  friend MHSSeries operator+(const MHSSeries& a, const MHSSeries& b);
  friend MHSSeries operator-(const MHSSeries& a, const MHSSeries& b);
  // Stuffle product: equal-limit harmonic sums multiply termwise through the
  // quasi-shuffle rule.
  friend MHSSeries operator*(const MHSSeries& a, const MHSSeries& b);
  MHSSeries operator*(const Q& c) const;
  MHSSeries operator-() const;
  MHSSeries pow(int e) const;

  bool operator==(const MHSSeries& o) const {
    return order_ == o.order_ && terms_ == o.terms_;
  }

  // Inverse within the algebra; requires the minimal-exponent term to be a
  // nonzero rational multiple of p^b (empty composition) standing alone at
  // its exponent.
  MHSSeries inverse() const;

  // Exact rational value at a specific prime: sum of c p^b H_{p-1}(s) over
  // all stored terms.
  Q eval_at(long p) const;

 private:
  int order_;
  std::vector<MHSTerm> terms_;

  void normalize();
};

inline bool operator==(const MHSTerm& a, const MHSTerm& b) {
  return a.c == b.c && a.b == b.b && a.s == b.s;
}

}  // namespace fp

#endif
