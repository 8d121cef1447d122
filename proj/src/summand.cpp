#include "finperiod/summand.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace fp {

SummandFactor SummandFactor::binom_p(int shift, int power) {
  if (shift != 0 && shift != -1)
    throw Error(ErrorKind::UnsupportedFactor, "binom(p+shift, v) needs shift 0 or -1");
  if (power < 1) throw Error(ErrorKind::UnsupportedFactor, "binomial power must be >= 1");
  SummandFactor f;
  f.kind = Kind::BinomPOverVar;
  f.shift = shift;
  f.power = power;
  return f;
}

SummandFactor SummandFactor::binom_pn(int shift, int power) {
  if (shift != 0 && shift != -1)
    throw Error(ErrorKind::UnsupportedFactor, "binom(p+v+shift, v) needs shift 0 or -1");
  if (power < 1) throw Error(ErrorKind::UnsupportedFactor, "binomial power must be >= 1");
  SummandFactor f;
  f.kind = Kind::BinomPPlusVar;
  f.shift = shift;
  f.power = power;
  return f;
}

SummandFactor SummandFactor::inv_shift(int c) {
  if (c < 0) throw Error(ErrorKind::UnsupportedFactor, "inverse shift needs c >= 0");
  SummandFactor f;
  f.kind = Kind::InvShift;
  f.shift = c;
  return f;
}

SummandFactor SummandFactor::pow_var(int j) {
  SummandFactor f;
  f.kind = Kind::PowVar;
  f.power = j;
  return f;
}

SummandFactor SummandFactor::pow_p(int j) {
  if (j < 0) throw Error(ErrorKind::UnsupportedFactor, "pow(p, j) needs j >= 0");
  SummandFactor f;
  f.kind = Kind::PowP;
  f.power = j;
  return f;
}

SummandFactor SummandFactor::constant(const Q& c) {
  SummandFactor f;
  f.kind = Kind::Constant;
  f.value = c;
  return f;
}

SummandFactor SummandFactor::subsum(SumNode node) {
  SummandFactor f;
  f.kind = Kind::SubSum;
  f.sub = std::make_shared<SumNode>(std::move(node));
  return f;
}

SummandFactor SummandFactor::leaf_series(MHSSeries m) {
  SummandFactor f;
  f.kind = Kind::Leaf;
  f.leaf = std::make_shared<MHSSeries>(std::move(m));
  return f;
}

namespace {

constexpr long kBig = 1L << 40;

// H_{X + off - 1}(s) attached to the level variable X (or to p at the top).
struct HFac {
  int off;
  Composition s;
  bool operator<(const HFac& o) const {
    return std::tie(off, s) < std::tie(o.off, o.s);
  }
  bool operator==(const HFac& o) const { return off == o.off && s == o.s; }
};

struct VTerm {
  Q c;
  int pexp = 0;
  int parity = 0;               // carries a factor (-1)^{parity * X}
  std::map<int, int> fac;       // (X + key)^{value}, value != 0
  std::vector<HFac> hs;

  void clean() {
    for (auto it = fac.begin(); it != fac.end();)
      it = it->second == 0 ? fac.erase(it) : std::next(it);
    hs.erase(std::remove_if(hs.begin(), hs.end(),
                            [](const HFac& h) { return h.s.empty(); }),
             hs.end());
    std::sort(hs.begin(), hs.end());
  }
};

struct LevelExpr {
  std::vector<VTerm> terms;
  long trunc = kBig;      // coefficients exact below p^trunc
  long valid_from = 1;    // emitted identities hold for the variable >= this
};

// Residual downward p-shift still reachable by a term.  Only boundary
// indices at p itself lower the p-power: a harmonic factor whose limit can
// still cross p loses at most its largest part there, and a negative power
// of the bare variable can end up inverted at p after summation.  Factors
// (p+c)^{-k} with c != 0 expand as units and never shift.  The discount is
// applied when terms at or above the working order are dropped, and the
// certified order is cross-checked against the modular oracle in the tests.
int term_slack(const VTerm& t, bool p_level) {
  int s = 0;
  for (const HFac& h : t.hs) {
    if (p_level && h.off <= 0) continue;
    int mx = 0;
    for (int part : h.s) mx = std::max(mx, part);
    s += std::max(mx, 0);
  }
  for (const auto& [key, e] : t.fac) {
    if (e >= 0) continue;
    if (p_level ? key == 0 : key >= 0) s += -e;
  }
  return s;
}

struct EngineState {
  int work_order;
  bool at_p_level = false;
  long honest = kBig;

  void drop(const VTerm& t) {
    honest = std::min(honest,
                      static_cast<long>(t.pexp) - term_slack(t, at_p_level));
  }
  void add_term(LevelExpr& e, VTerm t) {
    t.clean();
    if (t.c == 0) return;
    if (t.pexp >= work_order) {
      drop(t);
      return;
    }
    e.terms.push_back(std::move(t));
  }
};

long min_pexp(const LevelExpr& e) {
  long m = kBig;
  for (const VTerm& t : e.terms) m = std::min<long>(m, t.pexp);
  return m;
}

LevelExpr level_one() {
  LevelExpr e;
  e.terms.push_back(VTerm{Q(1), 0, 0, {}, {}});
  return e;
}

LevelExpr level_mul(const LevelExpr& a, const LevelExpr& b, EngineState& st) {
  LevelExpr out;
  long va = min_pexp(a), vb = min_pexp(b);
  out.trunc = std::min(std::min(a.trunc + vb, b.trunc + va), kBig);
  out.valid_from = std::max(a.valid_from, b.valid_from);
  for (const VTerm& ta : a.terms)
    for (const VTerm& tb : b.terms) {
      VTerm t;
      t.c = ta.c * tb.c;
      t.pexp = ta.pexp + tb.pexp;
      t.parity = ta.parity ^ tb.parity;
      t.fac = ta.fac;
      for (const auto& [k, e] : tb.fac) t.fac[k] += e;
      t.hs = ta.hs;
      t.hs.insert(t.hs.end(), tb.hs.begin(), tb.hs.end());
      st.add_term(out, std::move(t));
    }
  return out;
}

void level_add(LevelExpr& a, const LevelExpr& b) {
  a.trunc = std::min(a.trunc, b.trunc);
  a.valid_from = std::max(a.valid_from, b.valid_from);
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
}

void coalesce(LevelExpr& e) {
  std::map<std::tuple<int, int, std::map<int, int>, std::vector<HFac>>, Q> acc;
  for (VTerm& t : e.terms) {
    t.clean();
    acc[std::make_tuple(t.pexp, t.parity, t.fac, t.hs)] += t.c;
  }
  e.terms.clear();
  for (auto& [key, c] : acc) {
    if (c == 0) continue;
    VTerm t;
    t.c = c;
    std::tie(t.pexp, t.parity, t.fac, t.hs) = key;
    e.terms.push_back(std::move(t));
  }
}

// --- single-step rewrites -------------------------------------------------

// H_{X+off-1}(s) = H_{X+off-2}(s) + (X+off-1)^{-s1} H_{X+off-2}(tail)
void peel_down(const VTerm& t, size_t hi, std::vector<VTerm>& out, long& vf) {
  const HFac& h = t.hs[hi];
  vf = std::max(vf, static_cast<long>(2 - h.off));
  VTerm main = t;
  main.hs[hi].off -= 1;
  out.push_back(std::move(main));
  VTerm carry = t;
  carry.fac[h.off - 1] -= h.s[0];
  carry.hs[hi] = HFac{h.off - 1, tail(h.s)};
  out.push_back(std::move(carry));
}

// H_{X+off-1}(s) = H_{X+off}(s) - (X+off)^{-s1} H_{X+off-1}(tail)
void peel_up(const VTerm& t, size_t hi, std::vector<VTerm>& out, long& vf) {
  const HFac& h = t.hs[hi];
  vf = std::max(vf, static_cast<long>(1 - h.off));
  VTerm main = t;
  main.hs[hi].off += 1;
  out.push_back(std::move(main));
  VTerm carry = t;
  carry.c = -carry.c;
  carry.fac[h.off] -= h.s[0];
  carry.hs[hi] = HFac{h.off, tail(h.s)};
  out.push_back(std::move(carry));
}

// Rewrites one term into equivalent terms; returns false when already in
// normal form.  p_level switches the alignment target to p-1 and disables
// the summation-oriented factor normal form.
bool rewrite_term(const VTerm& term, bool p_level, std::vector<VTerm>& out,
                  long& vf, EngineState& st) {
  VTerm t = term;
  t.clean();

  // merge or align multiple harmonic factors
  if (t.hs.size() >= 2) {
    int lo = t.hs.front().off, hi = t.hs.back().off;
    if (lo != hi) {
      size_t idx = 0;
      for (size_t i = 0; i < t.hs.size(); ++i)
        if (t.hs[i].off == hi) idx = i;
      peel_down(t, idx, out, vf);
      return true;
    }
    CompositionSum merged = stuffle(t.hs[0].s, t.hs[1].s);
    for (const auto& [comp, coeff] : merged.terms()) {
      VTerm r = t;
      r.c *= coeff;
      r.hs.erase(r.hs.begin(), r.hs.begin() + 2);
      r.hs.push_back(HFac{hi, comp});
      out.push_back(std::move(r));
    }
    return true;
  }

  if (p_level) {
    // align the harmonic limit to p-1, then expand residual factors
    if (t.hs.size() == 1 && t.hs[0].off != 0) {
      if (t.hs[0].off > 0)
        peel_down(t, 0, out, vf);
      else
        peel_up(t, 0, out, vf);
      return true;
    }
    if (!t.fac.empty()) {
      auto [key, e] = *t.fac.begin();
      t.fac.erase(t.fac.begin());
      if (key == 0) {
        t.pexp += e;
        out.push_back(std::move(t));
      } else if (e > 0) {
        for (int i = 0; i <= e; ++i) {
          VTerm r = t;
          r.c *= gen_binomial(e, i) * q_pow(Q(key), e - i);
          r.pexp += i;
          out.push_back(std::move(r));
        }
      } else {
        // (p+key)^{e} = key^e sum_j binom(e,j) (p/key)^j, truncated
        int budget = st.work_order - t.pexp;
        for (int j = 0; j < budget; ++j) {
          VTerm r = t;
          r.c *= q_pow(Q(key), e - j) * gen_binomial(e, j);
          r.pexp += j;
          out.push_back(std::move(r));
        }
        VTerm dropped = t;
        dropped.pexp = st.work_order;
        st.drop(dropped);
      }
      return true;
    }
    return false;
  }

  // --- variable level -----------------------------------------------------
  std::vector<int> negs, others;
  for (const auto& [key, e] : t.fac)
    (e < 0 ? negs : others).push_back(key);

  if (negs.size() >= 2) {
    // 1/((X+a)(X+b)) = (1/(b-a)) (1/(X+a) - 1/(X+b))
    int a = negs[0], b = negs[1];
    vf = std::max({vf, static_cast<long>(1 - a), static_cast<long>(1 - b)});
    Q f = Q(1) / Q(b - a);
    VTerm r1 = t;
    r1.c *= f;
    r1.fac[b] += 1;
    out.push_back(std::move(r1));
    VTerm r2 = t;
    r2.c *= -f;
    r2.fac[a] += 1;
    out.push_back(std::move(r2));
    return true;
  }
  if (negs.size() == 1 && !others.empty()) {
    // rebase (X+d)^e at the pole offset c
    int c = negs[0], d = others[0];
    int e = t.fac[d];
    t.fac.erase(d);
    for (int i = 0; i <= e; ++i) {
      VTerm r = t;
      r.c *= gen_binomial(e, i) * q_pow(Q(d - c), e - i);
      r.fac[c] += i;
      out.push_back(std::move(r));
    }
    return true;
  }
  if (negs.empty()) {
    for (int d : others) {
      if (d == 0) continue;
      int e = t.fac[d];
      t.fac.erase(d);
      for (int i = 0; i <= e; ++i) {
        VTerm r = t;
        r.c *= gen_binomial(e, i) * q_pow(Q(d), e - i);
        r.fac[0] += i;
        out.push_back(std::move(r));
      }
      return true;
    }
  }

  // align the harmonic limit with the term's pole offset
  int target = negs.empty() ? 0 : negs[0];
  if (t.hs.size() == 1 && t.hs[0].off != target) {
    if (t.hs[0].off > target)
      peel_down(t, 0, out, vf);
    else
      peel_up(t, 0, out, vf);
    return true;
  }
  return false;
}

void normalize_level(LevelExpr& e, bool p_level, EngineState& st) {
  // Every rewrite decreases the measure (total harmonic depth, factor
  // multiplicities, limit-alignment gaps) lexicographically; the guard is a
  // backstop against rule regressions.
  long budget = 200'000'000;
  std::vector<VTerm> work;
  work.swap(e.terms);
  std::vector<VTerm> done;
  while (!work.empty()) {
    if (--budget < 0)
      throw Error(ErrorKind::UnsupportedFactor, "normalization did not converge");
    VTerm t = std::move(work.back());
    work.pop_back();
    t.clean();
    if (t.c == 0) continue;
    if (t.pexp >= st.work_order) {
      st.drop(t);
      continue;
    }
    std::vector<VTerm> out;
    if (rewrite_term(t, p_level, out, e.valid_from, st)) {
      for (VTerm& r : out) work.push_back(std::move(r));
    } else {
      done.push_back(std::move(t));
    }
  }
  e.terms.swap(done);
  coalesce(e);
}

// --- literal boundary evaluation -----------------------------------------

// Product over j in [lo, hi] of (p + j), as p-power terms.
std::vector<Q> linear_product(int lo, int hi) {
  std::vector<Q> coeffs{Q(1)};
  for (int j = lo; j <= hi; ++j) {
    std::vector<Q> next(coeffs.size() + 1, Q(0));
    for (size_t i = 0; i < coeffs.size(); ++i) {
      next[i] += coeffs[i] * j;
      next[i + 1] += coeffs[i];
    }
    coeffs.swap(next);
  }
  return coeffs;
}

void emit_poly(const std::vector<Q>& coeffs, const Q& scale, LevelExpr& out,
               EngineState& st) {
  for (size_t i = 0; i < coeffs.size(); ++i)
    st.add_term(out, VTerm{coeffs[i] * scale, static_cast<int>(i), 0, {}, {}});
}

LevelExpr eval_body_literal(const SumNode& node, long v, EngineState& st);

// Sum of the node's body over an explicit integer range of its variable.
LevelExpr eval_node_literal_range(const SumNode& node, long lo, long hi,
                                  EngineState& st) {
  LevelExpr acc;
  acc.trunc = kBig;
  for (long v = lo; v <= hi; ++v) level_add(acc, eval_body_literal(node, v, st));
  return acc;
}

LevelExpr eval_body_literal(const SumNode& node, long v, EngineState& st) {
  LevelExpr acc = level_one();
  for (const SummandFactor& f : node.body) {
    LevelExpr fe;
    switch (f.kind) {
      case SummandFactor::Kind::BinomPOverVar: {
        // binom(p + shift, v) at a literal v is a polynomial in p
        std::vector<Q> poly;
        if (f.shift == 0)
          poly = linear_product(-static_cast<int>(v) + 1, 0);
        else
          poly = linear_product(-static_cast<int>(v), -1);
        Q scale = Q(1) / Q(factorial(v));
        for (int rep = 0; rep < f.power; ++rep) {
          LevelExpr one_factor;
          emit_poly(poly, scale, one_factor, st);
          fe = rep == 0 ? one_factor : level_mul(fe, one_factor, st);
        }
        break;
      }
      case SummandFactor::Kind::BinomPPlusVar: {
        std::vector<Q> poly;
        if (f.shift == 0)
          poly = linear_product(1, static_cast<int>(v));
        else
          poly = linear_product(0, static_cast<int>(v) - 1);
        Q scale = Q(1) / Q(factorial(v));
        for (int rep = 0; rep < f.power; ++rep) {
          LevelExpr one_factor;
          emit_poly(poly, scale, one_factor, st);
          fe = rep == 0 ? one_factor : level_mul(fe, one_factor, st);
        }
        break;
      }
      case SummandFactor::Kind::InvShift:
        fe = level_one();
        fe.terms[0].c = Q(1) / Q(v + f.shift);
        break;
      case SummandFactor::Kind::PowVar:
        fe = level_one();
        fe.terms[0].c = q_pow(Q(Z(v)), f.power);
        break;
      case SummandFactor::Kind::PowP:
        fe = level_one();
        fe.terms[0].pexp = f.power;
        break;
      case SummandFactor::Kind::Constant:
        fe = level_one();
        fe.terms[0].c = f.value;
        break;
      case SummandFactor::Kind::SubSum: {
        if (f.sub->upper.relative_to_p)
          throw Error(ErrorKind::UnsupportedFactor,
                      "p-bounded nested sums must be pre-expanded");
        long hi = v + f.sub->upper.shift;
        fe = eval_node_literal_range(*f.sub, f.sub->lower, hi, st);
        break;
      }
      case SummandFactor::Kind::Leaf:
        throw Error(ErrorKind::UnsupportedFactor,
                    "leaf factors must be pre-extracted");
    }
    acc = level_mul(acc, fe, st);
  }
  return acc;
}

// --- summation ------------------------------------------------------------

// Emits sum_{v=1}^{parent + bshift} v^e H_{v-1}(s) times the base term.
void emit_faulhaber(const VTerm& base, int e, const Composition& s, int bshift,
                    LevelExpr& out, EngineState& st) {
  std::vector<Q> q = faulhaber(e);
  if (s.empty()) {
    for (size_t d = 1; d <= q.size(); ++d) {
      if (q[d - 1] == 0) continue;
      VTerm t = base;
      t.c *= q[d - 1];
      t.fac[bshift] += static_cast<int>(d);
      st.add_term(out, std::move(t));
    }
    return;
  }
  // P_e(B) H_{B-1}(s) - sum_d q_d sum_{n<B} n^{d - s1} H_{n-1}(tail)
  for (size_t d = 1; d <= q.size(); ++d) {
    if (q[d - 1] == 0) continue;
    VTerm t = base;
    t.c *= q[d - 1];
    t.fac[bshift] += static_cast<int>(d);
    t.hs.push_back(HFac{bshift, s});
    st.add_term(out, std::move(t));
  }
  int s1 = s[0];
  Composition rest = tail(s);
  for (size_t d = 1; d <= q.size(); ++d) {
    if (q[d - 1] == 0) continue;
    VTerm t = base;
    t.c *= -q[d - 1];
    int expo = static_cast<int>(d) - s1;
    if (expo < 0) {
      t.hs.push_back(HFac{bshift, prepend(-expo, rest)});
      st.add_term(out, std::move(t));
    } else {
      emit_faulhaber(t, expo, rest, bshift - 1, out, st);
    }
  }
}

LevelExpr expand_node(const SumNode& node, EngineState& st);

// Sums a normalized level over [node.lower, upper] and returns the result
// expressed at the enclosing level.
LevelExpr sum_level(LevelExpr e, const SumNode& node, EngineState& st) {
  normalize_level(e, /*p_level=*/false, st);
  int shift = node.upper.shift;
  long v0l = std::max<long>(node.lower, e.valid_from);
  if (v0l > node.lower + 64)
    throw Error(ErrorKind::UnsupportedFactor, "boundary peel range too large");
  int v0 = static_cast<int>(v0l);

  LevelExpr out;
  out.trunc = e.trunc;
  out.valid_from = std::max<long>(1, v0 - shift);

  for (const VTerm& t : e.terms) {
    if (t.parity)
      throw Error(ErrorKind::ResidualAlternatingSign,
                  "alternating sign (-1)^" + node.var + " does not cancel");
    int c_off = 0, e_pow = 0;
    if (!t.fac.empty()) {
      c_off = t.fac.begin()->first;
      e_pow = t.fac.begin()->second;
    }
    Composition s = t.hs.empty() ? Composition{} : t.hs[0].s;
    VTerm base;
    base.c = t.c;
    base.pexp = t.pexp;

    if (e_pow >= 0) {
      // polynomial part: sum_{v=1}^{B} minus the explicit prefix below v0
      emit_faulhaber(base, e_pow, s, shift, out, st);
      for (int v = 1; v < v0; ++v) {
        VTerm lit = base;
        lit.c *= -q_pow(Q(v), e_pow) * mhs_eval(v - 1, s);
        st.add_term(out, std::move(lit));
      }
    } else {
      // single pole: shift the index so the pole sits at the variable itself
      int k = -e_pow;
      VTerm main = base;
      main.hs.push_back(HFac{shift + c_off + 1, prepend(k, s)});
      st.add_term(out, std::move(main));
      for (int m = 1; m <= v0 + c_off - 1; ++m) {
        VTerm lit = base;
        lit.c *= -q_pow(Q(m), -k) * mhs_eval(m - 1, s);
        st.add_term(out, std::move(lit));
      }
    }
  }

  // below the validity threshold the original body is summed directly
  if (v0 > node.lower) {
    LevelExpr boundary = eval_node_literal_range(node, node.lower, v0 - 1, st);
    level_add(out, boundary);
  }
  coalesce(out);
  return out;
}

LevelExpr factor_level(const SummandFactor& f, EngineState& st) {
  LevelExpr e;
  switch (f.kind) {
    case SummandFactor::Kind::BinomPOverVar: {
      LevelExpr single;
      if (f.shift == 0) {
        // binom(p,v) = (-1)^{v-1} (p/v) sum_m (-p)^m H_{v-1}(1^m)
        for (int m = 0; m + 1 < st.work_order; ++m) {
          VTerm t;
          t.c = (m % 2 == 0) ? -1 : 1;
          t.pexp = m + 1;
          t.parity = 1;
          t.fac[0] = -1;
          if (m > 0) t.hs.push_back(HFac{0, Composition(m, 1)});
          st.add_term(single, std::move(t));
        }
      } else {
        // binom(p-1,v) = (-1)^v sum_m (-p)^m H_v(1^m)
        for (int m = 0; m < st.work_order; ++m) {
          VTerm t;
          t.c = (m % 2 == 0) ? 1 : -1;
          t.pexp = m;
          t.parity = 1;
          if (m > 0) t.hs.push_back(HFac{1, Composition(m, 1)});
          st.add_term(single, std::move(t));
        }
      }
      single.trunc = st.work_order;
      {
        VTerm cut;
        cut.pexp = st.work_order;
        cut.hs.push_back(HFac{0, Composition(std::max(st.work_order - 1, 1), 1)});
        cut.fac[0] = -1;
        st.drop(cut);
      }
      e = single;
      for (int rep = 1; rep < f.power; ++rep) e = level_mul(e, single, st);
      break;
    }
    case SummandFactor::Kind::BinomPPlusVar: {
      LevelExpr single;
      if (f.shift == 0) {
        // binom(p+v,v) = sum_m p^m H_v(1^m)
        for (int m = 0; m < st.work_order; ++m) {
          VTerm t;
          t.c = 1;
          t.pexp = m;
          if (m > 0) t.hs.push_back(HFac{1, Composition(m, 1)});
          st.add_term(single, std::move(t));
        }
      } else {
        // binom(p+v-1,v) = (p/v) sum_m p^m H_{v-1}(1^m)
        for (int m = 0; m + 1 < st.work_order; ++m) {
          VTerm t;
          t.c = 1;
          t.pexp = m + 1;
          t.fac[0] = -1;
          if (m > 0) t.hs.push_back(HFac{0, Composition(m, 1)});
          st.add_term(single, std::move(t));
        }
      }
      single.trunc = st.work_order;
      {
        VTerm cut;
        cut.pexp = st.work_order;
        cut.hs.push_back(HFac{1, Composition(std::max(st.work_order - 1, 1), 1)});
        st.drop(cut);
      }
      e = single;
      for (int rep = 1; rep < f.power; ++rep) e = level_mul(e, single, st);
      break;
    }
    case SummandFactor::Kind::InvShift: {
      e = level_one();
      e.terms[0].fac[f.shift] = -1;
      break;
    }
    case SummandFactor::Kind::PowVar: {
      e = level_one();
      if (f.power != 0) e.terms[0].fac[0] = f.power;
      break;
    }
    case SummandFactor::Kind::PowP: {
      e = level_one();
      e.terms[0].pexp = f.power;
      break;
    }
    case SummandFactor::Kind::Constant: {
      e = level_one();
      e.terms[0].c = f.value;
      break;
    }
    case SummandFactor::Kind::SubSum:
      e = expand_node(*f.sub, st);
      break;
    case SummandFactor::Kind::Leaf:
      throw Error(ErrorKind::UnsupportedFactor, "leaf factors must be pre-extracted");
  }
  return e;
}

// Expands one sum node; the result lives at the enclosing level (the parent
// variable, or p for the outermost node).
LevelExpr expand_node(const SumNode& node, EngineState& st) {
  if (node.lower < 1)
    throw Error(ErrorKind::UnsupportedFactor, "sum lower bound must be >= 1");
  LevelExpr body = level_one();
  for (const SummandFactor& f : node.body)
    body = level_mul(body, factor_level(f, st), st);
  return sum_level(std::move(body), node, st);
}

MHSSeries finalize_p_level(LevelExpr e, EngineState& st) {
  st.at_p_level = true;
  normalize_level(e, /*p_level=*/true, st);
  long order = std::min<long>(std::min(e.trunc, st.honest), st.work_order);
  order = std::max<long>(order, -(1L << 20));
  MHSSeries out(static_cast<int>(order));
  for (const VTerm& t : e.terms) {
    if (t.parity)
      throw Error(ErrorKind::ResidualAlternatingSign, "alternating sign in p");
    Composition s = t.hs.empty() ? Composition{} : t.hs[0].s;
    out.add_term(t.c, t.pexp, s);
  }
  return out;
}

void collect_leaves(SumNode& node, std::vector<SummandFactor>& leaves) {
  for (auto it = node.body.begin(); it != node.body.end();) {
    if (it->kind == SummandFactor::Kind::Leaf ||
        (it->kind == SummandFactor::Kind::SubSum && it->sub->upper.relative_to_p)) {
      leaves.push_back(*it);
      it = node.body.erase(it);
    } else {
      if (it->kind == SummandFactor::Kind::SubSum) {
        it->sub = std::make_shared<SumNode>(*it->sub);
        collect_leaves(*it->sub, leaves);
      }
      ++it;
    }
  }
}

}  // namespace

MHSSeries expand_summand(const SumNode& node, int order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "order must be >= 1");
  SumNode stripped = node;
  std::vector<SummandFactor> leaves;
  {
    // deep copy before mutation
    stripped.body.clear();
    for (const SummandFactor& f : node.body) {
      SummandFactor g = f;
      if (g.kind == SummandFactor::Kind::SubSum)
        g.sub = std::make_shared<SumNode>(*g.sub);
      stripped.body.push_back(std::move(g));
    }
    collect_leaves(stripped, leaves);
  }

  for (int work = order, attempt = 0; attempt < 8; ++attempt) {
    EngineState st{work};
    LevelExpr top = expand_node(stripped, st);
    MHSSeries result = finalize_p_level(std::move(top), st);
    for (const SummandFactor& f : leaves) {
      MHSSeries leaf_series = f.kind == SummandFactor::Kind::Leaf
                                  ? f.leaf->truncated(work)
                                  : expand_summand(*f.sub, work);
      result = result * leaf_series;
    }
    if (result.truncation_order() >= order) return result.truncated(order);
    work += std::max(1, order - result.truncation_order());
  }
  throw Error(ErrorKind::UnsupportedFactor,
              "expansion failed to certify the requested order");
}

MHSSeries reduce_integer_composition(const std::vector<int>& parts, int order) {
  if (parts.empty()) return MHSSeries::constant(1, order);
  bool positive = true;
  for (int part : parts) positive = positive && part >= 1;
  if (positive) return MHSSeries::harmonic(parts, order);
  // Build the defining nested sum and run it through the pipeline.
  std::shared_ptr<SumNode> inner;
  for (size_t i = parts.size(); i-- > 0;) {
    SumNode n;
    n.var = "n" + std::to_string(i + 1);
    n.lower = 1;
    n.upper = i == 0 ? SumBound{true, -1} : SumBound{false, -1};
    n.body.push_back(SummandFactor::pow_var(-parts[i]));
    if (inner) {
      SummandFactor f;
      f.kind = SummandFactor::Kind::SubSum;
      f.sub = inner;
      n.body.push_back(f);
    }
    inner = std::make_shared<SumNode>(std::move(n));
  }
  return expand_summand(*inner, order);
}

}  // namespace fp
