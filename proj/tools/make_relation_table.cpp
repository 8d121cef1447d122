// Offline generator for the shipped zeta-word reduction table.
//
// For each weight w <= cap it assembles the linear relations satisfied by
// motivic zeta words (quasi-shuffle vs. shuffle products of admissible words,
// plus the regularized product with zeta(1)), row-reduces them, and expresses
// every admissible word in the monomial basis built from the generators
//   zeta(2), zeta(3), zeta(5), zeta(7), zeta(5,3).
// The quotient dimension is checked against the expected dimension sequence
// 1,1,1,2,2,3,4 for w = 2..8, so a deficient relation set aborts instead of
// emitting a wrong table.
//
// Two files are written: the reduction table with zeta(2) set to zero
// (consumed by the library), and the full reductions including zeta(2)
// monomials (consumed by tools/certify_table.py for numeric certification).

#include <fstream>
#include <iostream>
#include <map>
#include <vector>

#include "finperiod/composition.hpp"
#include "finperiod/relation_table.hpp"
#include "finperiod/stuffle.hpp"

using namespace fp;

namespace {

using BitWord = std::vector<int>;
using WordSum = LinComb<BitWord>;

BitWord to_bits(const Composition& s) {
  BitWord w;
  for (int part : s) {
    for (int i = 0; i < part - 1; ++i) w.push_back(0);
    w.push_back(1);
  }
  return w;
}

Composition from_bits(const BitWord& w) {
  Composition s;
  int run = 0;
  for (int b : w) {
    ++run;
    if (b == 1) {
      s.push_back(run);
      run = 0;
    }
  }
  if (run != 0) throw Error(ErrorKind::InvalidArgument, "bit word not ending in 1");
  return s;
}

WordSum shuffle_bits(const BitWord& a, const BitWord& b) {
  static std::map<std::pair<BitWord, BitWord>, WordSum> cache;
  auto key = std::make_pair(a, b);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  WordSum out;
  if (a.empty()) {
    out.add(b, 1);
  } else if (b.empty()) {
    out.add(a, 1);
  } else {
    BitWord ta(a.begin() + 1, a.end());
    BitWord tb(b.begin() + 1, b.end());
    WordSum left = shuffle_bits(ta, b);
    for (const auto& [w, c] : left.terms()) {
      BitWord r;
      r.push_back(a[0]);
      r.insert(r.end(), w.begin(), w.end());
      out.add(r, c);
    }
    WordSum right = shuffle_bits(a, tb);
    for (const auto& [w, c] : right.terms()) {
      BitWord r;
      r.push_back(b[0]);
      r.insert(r.end(), w.begin(), w.end());
      out.add(r, c);
    }
  }
  cache.emplace(std::move(key), out);
  return out;
}

CompositionSum shuffle_words(const Composition& a, const Composition& b) {
  CompositionSum out;
  WordSum bits = shuffle_bits(to_bits(a), to_bits(b));
  for (const auto& [w, c] : bits.terms()) out.add(from_bits(w), c);
  return out;
}

using Vec = std::vector<Q>;

struct WeightSpace {
  std::vector<Composition> words;
  std::map<Composition, int> index;
};

Vec to_vec(const CompositionSum& s, const WeightSpace& ws) {
  Vec v(ws.words.size(), Q(0));
  for (const auto& [w, c] : s.terms()) {
    auto it = ws.index.find(w);
    if (it == ws.index.end())
      throw Error(ErrorKind::InvalidArgument,
                  "non-admissible term " + format_composition(w));
    v[it->second] += c;
  }
  return v;
}

// Row echelon form; returns pivot column per row.
std::vector<int> rref(std::vector<Vec>& rows) {
  std::vector<int> pivots;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Q inv = Q(1) / rows[r][c];
    for (size_t j = c; j < cols; ++j) rows[r][j] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Q f = rows[i][c];
      for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  rows.resize(r);
  return pivots;
}

void reduce_by(const std::vector<Vec>& rows, const std::vector<int>& pivots, Vec& v) {
  for (size_t i = 0; i < rows.size(); ++i) {
    Q f = v[pivots[i]];
    if (f == 0) continue;
    for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[i][j];
  }
}

std::vector<BasisMonomial> monomials_of_weight(const std::vector<Composition>& gens,
                                               int w, size_t from = 0) {
  std::vector<BasisMonomial> out;
  if (w == 0) {
    out.push_back({});
    return out;
  }
  for (size_t i = from; i < gens.size(); ++i) {
    int gw = weight(gens[i]);
    if (gw > w) continue;
    for (BasisMonomial m : monomials_of_weight(gens, w - gw, i)) {
      m[gens[i]] += 1;
      out.push_back(m);
    }
  }
  return out;
}

AElement monomial_words(const BasisMonomial& m) {
  AElement prod = a_one();
  for (const auto& [gen, e] : m)
    for (int i = 0; i < e; ++i) prod = a_mul(prod, AElement(gen));
  return prod;
}

CompositionSum as_comp_sum(const AElement& x) {
  CompositionSum s;
  for (const auto& [w, c] : x.terms()) s.add(w, c);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  int cap = 8;
  std::string out_path = "data/mzv_relations_w8.txt";
  std::string certify_path = "data/mzv_relations_w8_certify.txt";
  if (argc >= 2) out_path = argv[1];
  if (argc >= 3) certify_path = argv[2];

  const std::vector<Composition> gens_full = {{2}, {3}, {5}, {7}, {5, 3}};
  const std::map<int, int> expected_dim = {{2, 1}, {3, 1}, {4, 1}, {5, 2},
                                           {6, 2}, {7, 3}, {8, 4}};

  std::ofstream out(out_path);
  std::ofstream cert(certify_path);
  out << "# reductions of admissible zeta words to the odd-generator basis,\n";
  out << "# zeta(2) = 0; produced by make_relation_table\n";
  out << "basis W=" << cap << "\n";
  out << "g 3 (3)\ng 5 (5)\ng 7 (7)\ng 8 (5,3)\n";
  cert << "# full reductions including zeta(2) monomials, for numeric certification\n";

  for (int w = 2; w <= cap; ++w) {
    WeightSpace ws;
    ws.words = admissible_words_of_weight(w);
    for (size_t i = 0; i < ws.words.size(); ++i) ws.index[ws.words[i]] = static_cast<int>(i);

    std::vector<Vec> rows;
    for (int w1 = 2; 2 * w1 <= w; ++w1) {
      int w2 = w - w1;
      if (w2 < 2) continue;
      for (const Composition& u : admissible_words_of_weight(w1))
        for (const Composition& v : admissible_words_of_weight(w2)) {
          if (w1 == w2 && v < u) continue;
          CompositionSum rel = stuffle(u, v);
          rel -= shuffle_words(u, v);
          if (!rel.is_zero()) rows.push_back(to_vec(rel, ws));
        }
    }
    for (const Composition& v : admissible_words_of_weight(w - 1)) {
      CompositionSum rel = stuffle(Composition{1}, v);
      rel -= shuffle_words(Composition{1}, v);
      CompositionSum cleaned;
      for (const auto& [word, c] : rel.terms()) {
        if (!is_admissible(word))
          throw Error(ErrorKind::InvalidArgument, "regularized relation not admissible");
        cleaned.add(word, c);
      }
      if (!cleaned.is_zero()) rows.push_back(to_vec(cleaned, ws));
    }

    std::vector<int> pivots = rref(rows);
    int qdim = static_cast<int>(ws.words.size() - rows.size());
    if (qdim != expected_dim.at(w)) {
      std::cerr << "weight " << w << ": quotient dimension " << qdim
                << ", expected " << expected_dim.at(w) << "\n";
      return 1;
    }

    std::vector<BasisMonomial> monos = monomials_of_weight(gens_full, w);
    if (static_cast<int>(monos.size()) != qdim) {
      std::cerr << "weight " << w << ": monomial count " << monos.size()
                << " != dimension " << qdim << "\n";
      return 1;
    }
    std::vector<Vec> mono_vecs;
    for (const BasisMonomial& m : monos) {
      Vec v = to_vec(as_comp_sum(monomial_words(m)), ws);
      reduce_by(rows, pivots, v);
      mono_vecs.push_back(v);
    }

    // Solve word = sum lambda_j * mono_j in the quotient, for every word.
    size_t n = ws.words.size();
    for (const Composition& word : ws.words) {
      Vec target(n, Q(0));
      target[ws.index.at(word)] = 1;
      reduce_by(rows, pivots, target);

      // Gaussian solve on the (n x qdim) system mono_vecs^T lambda = target.
      std::vector<Vec> m(n, Vec(monos.size() + 1, Q(0)));
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < monos.size(); ++j) m[i][j] = mono_vecs[j][i];
        m[i][monos.size()] = target[i];
      }
      std::vector<int> solved_pivots = rref(m);
      Vec lambda(monos.size(), Q(0));
      for (size_t r = 0; r < m.size(); ++r) {
        int pc = solved_pivots[r];
        if (pc == static_cast<int>(monos.size())) {
          std::cerr << "weight " << w << ": inconsistent system for "
                    << format_composition(word) << "\n";
          return 1;
        }
        lambda[pc] = m[r][monos.size()];
      }

      BasisForm full, reduced;
      for (size_t j = 0; j < monos.size(); ++j) {
        if (lambda[j] == 0) continue;
        full.add(monos[j], lambda[j]);
        if (!monos[j].count(Composition{2})) reduced.add(monos[j], lambda[j]);
      }
      out << format_composition(word) << " = " << format_basis_form(reduced) << "\n";
      cert << format_composition(word) << " = " << format_basis_form(full) << "\n";
    }
    std::cerr << "weight " << w << ": " << ws.words.size() << " words, rank "
              << rows.size() << ", dim " << qdim << "\n";
  }

  // Spot checks against classically known reductions.
  out.close();
  cert.close();
  RelationTable t = load_relation_table_file(out_path);
  BasisForm euler = t.reduction_for({2, 1});
  BasisForm z3;
  z3.add(BasisMonomial{{{3}, 1}}, 1);
  if (!(euler == z3)) {
    std::cerr << "sanity: (2,1) should reduce to (3)\n";
    return 1;
  }
  if (!t.reduction_for({4}).is_zero() || !t.reduction_for({3, 1}).is_zero()) {
    std::cerr << "sanity: weight-4 words should vanish\n";
    return 1;
  }
  std::cerr << "wrote " << out_path << " and " << certify_path << "\n";
  return 0;
}
