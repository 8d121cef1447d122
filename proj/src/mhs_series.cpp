#include "finperiod/mhs_series.hpp"

#include <algorithm>
#include <map>

namespace fp {

MHSSeries::MHSSeries(int truncation_order) : order_(truncation_order) {}

MHSSeries MHSSeries::constant(const Q& c, int order) {
  MHSSeries s(order);
  s.add_term(c, 0, {});
  return s;
}

MHSSeries MHSSeries::harmonic(const Composition& comp, int order) {
  MHSSeries s(order);
  s.add_term(1, 0, comp);
  return s;
}

MHSSeries MHSSeries::term(const Q& c, int b, const Composition& comp, int order) {
  MHSSeries s(order);
  s.add_term(c, b, comp);
  return s;
}

std::optional<int> MHSSeries::min_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().b;
}

void MHSSeries::add_term(const Q& c, int b, const Composition& s) {
  if (c == 0 || b >= order_) return;
  if (!all_parts_positive(s))
    throw Error(ErrorKind::InvalidArgument,
                "harmonic term needs parts >= 1: " + format_composition(s));
  auto key = std::make_pair(b, s);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const MHSTerm& t, const std::pair<int, Composition>& k) {
                               return std::make_pair(t.b, t.s) < k;
                             });
  if (it != terms_.end() && it->b == b && it->s == s) {
    it->c += c;
    if (it->c == 0) terms_.erase(it);
  } else {
    terms_.insert(it, MHSTerm{c, b, s});
  }
}

MHSSeries MHSSeries::truncated(int order) const {
  MHSSeries s(std::min(order, order_));
  for (const MHSTerm& t : terms_) {
    if (t.b >= s.order_) break;
    s.terms_.push_back(t);
  }
  return s;
}

MHSSeries MHSSeries::shifted(int b) const {
  MHSSeries s(order_ >= kMaxOrder ? kMaxOrder : order_ + b);
  for (const MHSTerm& t : terms_) s.terms_.push_back(MHSTerm{t.c, t.b + b, t.s});
  return s;
}

MHSSeries operator+(const MHSSeries& a, const MHSSeries& b) {
  MHSSeries s(std::min(a.order_, b.order_));
  for (const MHSTerm& t : a.terms_)
    if (t.b < s.order_) s.add_term(t.c, t.b, t.s);
  for (const MHSTerm& t : b.terms_)
    if (t.b < s.order_) s.add_term(t.c, t.b, t.s);
  return s;
}

MHSSeries operator-(const MHSSeries& a, const MHSSeries& b) { return a + (-b); }

MHSSeries MHSSeries::operator-() const {
  MHSSeries s(order_);
  for (const MHSTerm& t : terms_) s.terms_.push_back(MHSTerm{-t.c, t.b, t.s});
  return s;
}

MHSSeries MHSSeries::operator*(const Q& c) const {
  MHSSeries s(order_);
  if (c == 0) return s;
  for (const MHSTerm& t : terms_) s.terms_.push_back(MHSTerm{t.c * c, t.b, t.s});
  return s;
}

MHSSeries operator*(const MHSSeries& a, const MHSSeries& b) {
  long order;
  if (a.terms_.empty() || b.terms_.empty()) {
    long oa = a.order_, ob = b.order_;
    if (!a.terms_.empty()) ob += a.terms_.front().b;
    if (!b.terms_.empty()) oa += b.terms_.front().b;
    order = std::min(oa, ob);
  } else {
    order = std::min<long>(static_cast<long>(a.order_) + b.terms_.front().b,
                           static_cast<long>(b.order_) + a.terms_.front().b);
  }
  order = std::min<long>(order, MHSSeries::kMaxOrder);
  MHSSeries s(static_cast<int>(order));
  for (const MHSTerm& ta : a.terms_)
    for (const MHSTerm& tb : b.terms_) {
      int bb = ta.b + tb.b;
      if (bb >= s.order_) continue;
      CompositionSum prod = stuffle(ta.s, tb.s);
      for (const auto& [comp, coeff] : prod.terms())
        s.add_term(ta.c * tb.c * coeff, bb, comp);
    }
  return s;
}

MHSSeries MHSSeries::pow(int e) const {
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "MHSSeries::pow exponent < 0");
  if (e == 0) return MHSSeries::constant(1);
  MHSSeries acc = *this;
  for (int i = 1; i < e; ++i) acc = acc * *this;
  return acc;
}

MHSSeries MHSSeries::inverse() const {
  if (terms_.empty())
    throw Error(ErrorKind::NotAUnit, "inverse of (truncated) zero expansion");
  const MHSTerm& lead = terms_.front();
  if (!lead.s.empty())
    throw Error(ErrorKind::NotAUnit, "leading term is not a rational p-power");
  for (size_t i = 1; i < terms_.size(); ++i)
    if (terms_[i].b == lead.b)
      throw Error(ErrorKind::NotAUnit, "leading p-power is not isolated");
  if (order_ >= kMaxOrder && terms_.size() > 1)
    throw Error(ErrorKind::InvalidArgument, "inverse needs a truncation order");
  // x = c p^B (1 + z) with min exponent of z at least 1
  Q c = lead.c;
  int B = lead.b;
  int order = order_ >= kMaxOrder ? kMaxOrder : order_ - B;
  MHSSeries z = shifted(-B) * Q(1 / c);
  z.add_term(-1, 0, {});
  z = z.truncated(order);
  if (!z.is_zero() && z.min_exponent().value_or(order) < 1)
    throw Error(ErrorKind::NotAUnit, "leading p-power is not isolated");
  // geometric series 1 - z + z^2 - ...; z^j sits above p^j, so this stops
  MHSSeries acc = MHSSeries::constant(1, order);
  MHSSeries zpow = MHSSeries::constant(1, order);
  for (int j = 1; j < order; ++j) {
    zpow = (zpow * z).truncated(order);
    if (zpow.is_zero()) break;
    acc = acc + (j % 2 ? -zpow : zpow);
  }
  return acc.shifted(-B) * Q(1 / c);
}

Q MHSSeries::eval_at(long p) const {
  Q acc = 0;
  for (const MHSTerm& t : terms_)
    acc += t.c * q_pow(Q(Z(p)), t.b) * mhs_eval(p - 1, t.s);
  return acc;
}

void MHSSeries::normalize() {
  std::vector<MHSTerm> old;
  old.swap(terms_);
  for (const MHSTerm& t : old) add_term(t.c, t.b, t.s);
}

}  // namespace fp
