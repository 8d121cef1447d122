#include "finperiod/aseries.hpp"

namespace fp {

ASeries::ASeries(int truncation_order) : order_(truncation_order) {}

ASeries ASeries::constant(const Q& c, int order) {
  ASeries s(order);
  s.set_coefficient(0, a_const(c));
  return s;
}

ASeries ASeries::monomial(const AElement& z, int degree, int order) {
  ASeries s(order);
  s.set_coefficient(degree, z);
  return s;
}

std::optional<int> ASeries::min_degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.begin()->first;
}

AElement ASeries::coefficient(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? AElement() : it->second;
}

void ASeries::set_coefficient(int degree, const AElement& z) {
  if (z.is_zero() || degree >= order_) {
    coeffs_.erase(degree);
    return;
  }
  coeffs_[degree] = z;
}

ASeries ASeries::truncated(int order) const {
  ASeries s(std::min(order, order_));
  for (const auto& [d, z] : coeffs_) {
    if (d >= s.order_) break;
    s.coeffs_.emplace(d, z);
  }
  return s;
}

ASeries ASeries::shifted(int degrees) const {
  int order = order_ >= kMaxOrder ? kMaxOrder : order_ + degrees;
  ASeries s(order);
  for (const auto& [d, z] : coeffs_) s.coeffs_.emplace(d + degrees, z);
  return s;
}

ASeries operator+(const ASeries& a, const ASeries& b) {
  ASeries s(std::min(a.order_, b.order_));
  for (const auto& [d, z] : a.coeffs_) {
    if (d >= s.order_) break;
    s.coeffs_[d] = z;
  }
  for (const auto& [d, z] : b.coeffs_) {
    if (d >= s.order_) break;
    auto it = s.coeffs_.find(d);
    if (it == s.coeffs_.end()) {
      s.coeffs_.emplace(d, z);
    } else {
      it->second += z;
      if (it->second.is_zero()) s.coeffs_.erase(it);
    }
  }
  return s;
}

ASeries operator-(const ASeries& a, const ASeries& b) { return a + (-b); }

ASeries ASeries::operator-() const {
  ASeries s(order_);
  for (const auto& [d, z] : coeffs_) s.coeffs_.emplace(d, -z);
  return s;
}

ASeries ASeries::operator*(const Q& c) const {
  ASeries s(order_);
  if (c == 0) return s;
  for (const auto& [d, z] : coeffs_) s.coeffs_.emplace(d, z * c);
  return s;
}

ASeries operator*(const ASeries& a, const ASeries& b) {
  long order;
  if (a.coeffs_.empty() || b.coeffs_.empty()) {
    // A zero series with truncation o is known to vanish below o; the
    // product is certified below o + (other operand's min degree).
    long oa = a.order_, ob = b.order_;
    if (!a.coeffs_.empty()) ob += a.coeffs_.begin()->first;
    if (!b.coeffs_.empty()) oa += b.coeffs_.begin()->first;
    order = std::min(oa, ob);
  } else {
    order = std::min<long>(static_cast<long>(a.order_) + b.coeffs_.begin()->first,
                           static_cast<long>(b.order_) + a.coeffs_.begin()->first);
  }
  order = std::min<long>(order, ASeries::kMaxOrder);
  ASeries s(static_cast<int>(order));
  for (const auto& [da, za] : a.coeffs_)
    for (const auto& [db, zb] : b.coeffs_) {
      if (da + db >= s.order_) continue;
      AElement prod = a_mul(za, zb);
      auto it = s.coeffs_.find(da + db);
      if (it == s.coeffs_.end()) {
        if (!prod.is_zero()) s.coeffs_.emplace(da + db, std::move(prod));
      } else {
        it->second += prod;
        if (it->second.is_zero()) s.coeffs_.erase(it);
      }
    }
  return s;
}

ASeries ser_add(const ASeries& a, const ASeries& b) { return a + b; }
ASeries ser_mul(const ASeries& a, const ASeries& b) { return a * b; }

ASeries ASeries::pow(int e) const {
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "ASeries::pow exponent < 0");
  ASeries acc = ASeries::constant(1, order_ >= kMaxOrder ? kMaxOrder : order_);
  for (int i = 0; i < e; ++i) acc = acc * *this;
  // empty powers keep the base's truncation semantics
  if (e == 0) acc = ASeries::constant(1);
  return acc;
}

ASeries ser_inv(const ASeries& x) {
  auto lead = x.min_degree();
  if (!lead)
    throw Error(ErrorKind::NotAUnit, "inverse of (truncated) zero series");
  AElement lc = x.coefficient(*lead);
  Q c0 = lc.coefficient(Composition{});
  if (c0 == 0 || lc.size() != 1)
    throw Error(ErrorKind::NotAUnit,
                "lowest coefficient is not a nonzero rational");
  int k = *lead;
  // x = c0 T^k (1 + u), invert the unit by the convolution recurrence.
  int order = x.truncation_order() >= ASeries::kMaxOrder
                  ? ASeries::kMaxOrder
                  : x.truncation_order() - k;
  ASeries u = x.shifted(-k) * Q(Q(1) / c0);  // constant term 1
  ASeries inv(order);
  inv.set_coefficient(0, a_one());
  if (order >= ASeries::kMaxOrder && u.coefficients().size() > 1)
    throw Error(ErrorKind::NotAUnit, "untruncated series with higher terms");
  for (int d = 1; d < order && order < ASeries::kMaxOrder; ++d) {
    AElement acc;
    for (const auto& [j, uj] : u.coefficients()) {
      if (j < 1 || j > d) continue;
      acc += a_mul(uj, inv.coefficient(d - j));
    }
    inv.set_coefficient(d, -acc);
  }
  return inv.shifted(-k) * Q(Q(1) / c0);
}

std::map<int, BasisForm> reduce_series(const ASeries& x, const RelationTable& t) {
  std::map<int, BasisForm> out;
  for (const auto& [d, z] : x.coefficients()) {
    BasisForm f = to_basis(z, t);
    if (!f.is_zero()) out.emplace(d, std::move(f));
  }
  return out;
}

std::optional<int> filtration_degree(const ASeries& x, const RelationTable& t) {
  for (const auto& [d, z] : x.coefficients())
    if (!to_basis(z, t).is_zero()) return d;
  return std::nullopt;
}

bool equal_mod_table(const ASeries& a, const ASeries& b, const RelationTable& t,
                     int through_order) {
  if (std::min(a.truncation_order(), b.truncation_order()) < through_order)
    throw Error(ErrorKind::InvalidArgument,
                "series not certified through requested order");
  ASeries d = a - b;
  for (const auto& [deg, z] : d.coefficients()) {
    if (deg >= through_order) break;
    if (!to_basis(z, t).is_zero()) return false;
  }
  return true;
}

}  // namespace fp
