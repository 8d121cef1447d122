#ifndef FINPERIOD_LINCOMB_HPP
#define FINPERIOD_LINCOMB_HPP

#include <map>

#include "finperiod/basics.hpp"

namespace fp {

// Finite formal linear combination over Q.  Zero coefficients are never
// stored, and iteration order is the key type's ordering, so serialization is
// deterministic.
template <typename X>
class LinComb {
 public:
  using Terms = std::map<X, Q>;

  LinComb() = default;
  explicit LinComb(const X& x) { terms_[x] = 1; }
  LinComb(const X& x, const Q& c) { add(x, c); }

  static LinComb zero() { return LinComb(); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  Q coefficient(const X& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Q(0) : it->second;
  }

  void add(const X& x, const Q& c) {
    if (c == 0) return;
    auto it = terms_.find(x);
    if (it == terms_.end()) {
      terms_.emplace(x, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LinComb& operator+=(const LinComb& other) {
    for (const auto& [x, c] : other.terms_) add(x, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& other) {
    for (const auto& [x, c] : other.terms_) add(x, -c);
    return *this;
  }
  LinComb& operator*=(const Q& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [x, v] : terms_) v *= c;
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(LinComb a, const Q& c) { return a *= c; }
  friend LinComb operator*(const Q& c, LinComb a) { return a *= c; }
  friend LinComb operator-(LinComb a) { return a *= Q(-1); }

  bool operator==(const LinComb& other) const { return terms_ == other.terms_; }
  bool operator!=(const LinComb& other) const { return !(*this == other); }
  bool operator<(const LinComb& other) const { return terms_ < other.terms_; }

 private:
  Terms terms_;
};

}  // namespace fp

#endif
