#include "finperiod/lifts.hpp"

#include <mutex>

namespace fp {

namespace {

// Enumerate (l_1..l_i) with all l_j >= 0 and sum <= budget.
void for_each_tuple(int i, int budget, std::vector<int>& cur,
                    const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(cur.size()) == i) {
    fn(cur);
    return;
  }
  for (int l = 0; l <= budget; ++l) {
    cur.push_back(l);
    for_each_tuple(i, budget - l, cur, fn);
    cur.pop_back();
  }
}

ASeries motivic_mhs_impl(const Composition& s, int order) {
  ASeries out(order);
  int k = depth(s);
  for (int i = 0; i <= k; ++i) {
    int sign_exp = 0;
    for (int j = 0; j < i; ++j) sign_exp += s[j];
    Q sign = (sign_exp % 2 == 0) ? 1 : -1;
    Composition suffix(s.begin() + i, s.end());
    AElement suffix_reg = regularize(suffix);
    if (suffix_reg.is_zero()) continue;
    std::vector<int> cur;
    for_each_tuple(i, order - 1, cur, [&](const std::vector<int>& ls) {
      int total = 0;
      Q coeff = sign;
      for (int j = 0; j < i; ++j) {
        total += ls[j];
        coeff *= gen_binomial(s[j] + ls[j] - 1, ls[j]);  // Pochhammer / factorial
      }
      if (coeff == 0) return;
      Composition prefix_rev(i);
      for (int j = 0; j < i; ++j) prefix_rev[j] = s[i - 1 - j] + ls[i - 1 - j];
      AElement word = a_mul(regularize(prefix_rev), suffix_reg);
      if (word.is_zero()) return;
      out.set_coefficient(total, out.coefficient(total) + word * coeff);
    });
  }
  return out;
}

}  // namespace

ASeries motivic_mhs(const Composition& s, int order) {
  if (!all_parts_positive(s))
    throw Error(ErrorKind::InvalidArgument,
                "motivic_mhs needs parts >= 1: " + format_composition(s));
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "order must be >= 1");
  static std::map<std::pair<Composition, int>, ASeries> cache;
  static std::mutex mu;
  auto key = std::make_pair(s, order);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  ASeries r = motivic_mhs_impl(s, order);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::move(key), r);
  return r;
}

ASeries mhs_series_lift(const MHSSeries& m, int order) {
  int cert = std::min(order, m.truncation_order());
  ASeries out(cert);
  for (const MHSTerm& t : m.terms()) {
    if (t.b >= cert) continue;
    ASeries lift = motivic_mhs(t.s, cert - t.b);
    out = out + lift.shifted(t.b) * t.c;
  }
  return out.truncated(cert);
}

ASeries motivic_c(int n, int order) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "c_n needs n >= 1");
  ASeries out(order);
  Q scale = 1;
  for (int j = 0; j < order; ++j) {
    if (j > 0) scale *= n - 1;
    if (scale == 0 && j > 0) break;
    out = out + motivic_mhs(Composition(j, 1), order - j).shifted(j) * (scale * n);
  }
  return out.truncated(order);
}

namespace {

ASeries all_ones_product_lift(int n, int order) {
  // sum_i n^i T^i motivic_mhs(1^i); the n = 0 factor is 1.
  ASeries out(order);
  Q scale = 1;
  for (int i = 0; i < order; ++i) {
    if (i > 0) scale *= n;
    if (scale == 0 && i > 0) break;
    out = out + motivic_mhs(Composition(i, 1), order - i).shifted(i) * scale;
  }
  return out.truncated(order);
}

}  // namespace

ASeries motivic_binomial(int k, int r, int order) {
  if (!(k >= r && r >= 0))
    throw Error(ErrorKind::InvalidArgument, "binomial needs k >= r >= 0");
  ASeries out = ASeries::constant(gen_binomial(k, r), order);
  for (int n = k - r; n <= k - 1; ++n) out = out * all_ones_product_lift(n, order);
  for (int n = 1; n <= r - 1; ++n) out = out * ser_inv(all_ones_product_lift(n, order));
  return out.truncated(order);
}

void check_balanced(const FactorialSpec& f) {
  long acc = 0;
  for (const auto& [b, n] : f.factors) {
    if (b < 1)
      throw Error(ErrorKind::InvalidArgument, "factorial spec needs b >= 1");
    acc += static_cast<long>(b) * n;
  }
  if (acc != 0)
    throw Error(ErrorKind::UnbalancedSpec,
                "factorial spec is unbalanced: sum n_i b_i = " + std::to_string(acc));
}

Q factorial_spec_constant(const FactorialSpec& f) {
  Q acc = 1;
  for (const auto& [b, n] : f.factors)
    acc *= q_pow(Q(factorial(b)), n);
  return acc;
}

ASeries motivic_factorial_product(const FactorialSpec& f, int order) {
  check_balanced(f);
  ASeries out = ASeries::constant(1, order);
  for (const auto& [b, n] : f.factors) {
    ASeries block = ASeries::constant(1, order);
    for (int j = 1; j <= b; ++j) block = block * motivic_c(j, order);
    if (n >= 0) {
      for (int i = 0; i < n; ++i) out = out * block;
    } else {
      ASeries inv = ser_inv(block);
      for (int i = 0; i < -n; ++i) out = out * inv;
    }
  }
  return out.truncated(order);
}

MHSSeries mhs_all_ones_product_series(int n, int order) {
  MHSSeries out(order);
  Q scale = 1;
  for (int i = 0; i < order; ++i) {
    if (i > 0) scale *= n;
    if (scale == 0 && i > 0) break;
    out.add_term(scale, i, Composition(i, 1));
  }
  return out;
}

MHSSeries mhs_c(int n, int order) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "c_n needs n >= 1");
  MHSSeries out(order);
  Q scale = n;
  for (int j = 0; j < order; ++j) {
    if (j > 0) scale *= n - 1;
    if (scale == 0 && j > 0) break;
    out.add_term(scale, j, Composition(j, 1));
  }
  return out;
}

MHSSeries mhs_binomial_pp(int k, int r, int order) {
  if (!(k >= r && r >= 0))
    throw Error(ErrorKind::InvalidArgument, "binomial needs k >= r >= 0");
  MHSSeries out = MHSSeries::constant(gen_binomial(k, r), order);
  for (int n = k - r; n <= k - 1; ++n)
    out = out * mhs_all_ones_product_series(n, order);
  for (int n = 1; n <= r - 1; ++n)
    out = out * mhs_all_ones_product_series(n, order).inverse();
  return out.truncated(order);
}

MHSSeries mhs_factorial_product(const FactorialSpec& f, int order) {
  check_balanced(f);
  MHSSeries out = MHSSeries::constant(1, order);
  for (const auto& [b, n] : f.factors) {
    MHSSeries block = MHSSeries::constant(1, order);
    for (int j = 1; j <= b; ++j) block = block * mhs_c(j, order);
    if (n >= 0) {
      for (int i = 0; i < n; ++i) out = out * block;
    } else {
      MHSSeries inv = block.inverse();
      for (int i = 0; i < -n; ++i) out = out * inv;
    }
  }
  return out.truncated(order);
}

ASeries diagonal_embed(const AElement& x, int order) {
  ASeries out(order);
  std::map<int, AElement> parts = weight_components(x);
  for (const auto& [w, z] : parts)
    if (w < order) out.set_coefficient(w, z);
  return out;
}

ASeries diagonal_embed(const BasisForm& x, int order) {
  return diagonal_embed(basis_form_to_words(x), order);
}

}  // namespace fp
