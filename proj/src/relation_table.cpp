#include "finperiod/relation_table.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

namespace fp {

int monomial_weight(const BasisMonomial& m) {
  int w = 0;
  for (const auto& [gen, e] : m) w += weight(gen) * e;
  return w;
}

int basis_form_max_weight(const BasisForm& f) {
  int w = 0;
  for (const auto& [m, c] : f.terms()) w = std::max(w, monomial_weight(m));
  return w;
}

BasisForm basis_mul(const BasisForm& a, const BasisForm& b) {
  BasisForm out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      BasisMonomial m = ma;
      for (const auto& [gen, e] : mb) m[gen] += e;
      out.add(m, ca * cb);
    }
  return out;
}

BasisForm basis_const(const Q& c) { return BasisForm(BasisMonomial{}, c); }

std::map<int, BasisForm> basis_weight_components(const BasisForm& f) {
  std::map<int, BasisForm> out;
  for (const auto& [m, c] : f.terms()) out[monomial_weight(m)].add(m, c);
  return out;
}

AElement basis_form_to_words(const BasisForm& f) {
  AElement out;
  for (const auto& [m, c] : f.terms()) {
    AElement prod = a_one();
    for (const auto& [gen, e] : m)
      for (int i = 0; i < e; ++i) prod = a_mul(prod, AElement(gen));
    out += prod * c;
  }
  return out;
}

namespace {

// Monomial rendering follows the table format: factors repeated by power,
// sorted by (weight, parts).
std::string format_monomial(const BasisMonomial& m) {
  std::vector<Composition> factors;
  for (const auto& [gen, e] : m)
    for (int i = 0; i < e; ++i) factors.push_back(gen);
  std::sort(factors.begin(), factors.end(), [](const Composition& a, const Composition& b) {
    if (weight(a) != weight(b)) return weight(a) < weight(b);
    return a < b;
  });
  std::string out;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "*";
    out += format_composition(factors[i]);
  }
  return out;
}

}  // namespace

std::string format_basis_form(const BasisForm& f) {
  if (f.is_zero()) return "0";
  // Order terms by (weight, monomial) for stable output.
  std::vector<std::pair<BasisMonomial, Q>> terms(f.terms().begin(), f.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return monomial_weight(a.first) < monomial_weight(b.first);
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    Q mag = c < 0 ? Q(-c) : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += format_rational(mag);
    if (!m.empty()) {
      out += " * ";
      out += format_monomial(m);
    }
  }
  return out;
}

const BasisForm& RelationTable::reduction_for(const Composition& word) const {
  auto it = reductions.find(word);
  if (it == reductions.end())
    throw Error(ErrorKind::MissingReduction,
                "no reduction for " + format_composition(word));
  return it->second;
}

namespace {

struct LineParser {
  std::string line;
  size_t pos = 0;
  int lineno = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError,
                "table line " + std::to_string(lineno) + ": " + why);
  }
  void skip_ws() {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= line.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos < line.size() && line[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  Composition parse_word() {
    skip_ws();
    if (pos >= line.size() || line[pos] != '(') fail("expected '('");
    size_t close = line.find(')', pos);
    if (close == std::string::npos) fail("unterminated composition");
    Composition w = parse_composition(line.substr(pos, close - pos + 1));
    pos = close + 1;
    return w;
  }
  Q parse_coeff() {
    skip_ws();
    size_t start = pos;
    if (pos < line.size() && (line[pos] == '-' || line[pos] == '+')) ++pos;
    while (pos < line.size() &&
           (std::isdigit(static_cast<unsigned char>(line[pos])) || line[pos] == '/'))
      ++pos;
    if (pos == start) fail("expected rational coefficient");
    return parse_rational(line.substr(start, pos - start));
  }
};

void validate_table(const RelationTable& t) {
  std::map<Composition, bool> is_gen;
  for (const Composition& g : t.generators) {
    if (!is_admissible(g) || !all_parts_positive(g))
      throw Error(ErrorKind::ParseError,
                  "bad generator " + format_composition(g));
    is_gen[g] = true;
  }
  for (const auto& [word, form] : t.reductions) {
    int w = weight(word);
    if (w > t.weight_cap)
      throw Error(ErrorKind::ParseError,
                  "entry above weight cap: " + format_composition(word));
    for (const auto& [m, c] : form.terms()) {
      for (const auto& [gen, e] : m) {
        if (!is_gen.count(gen))
          throw Error(ErrorKind::ParseError,
                      "undeclared generator " + format_composition(gen) +
                          " in entry " + format_composition(word));
        if (e <= 0)
          throw Error(ErrorKind::ParseError, "nonpositive exponent in monomial");
      }
      if (monomial_weight(m) != w)
        throw Error(ErrorKind::HomogeneityViolation,
                    "entry " + format_composition(word) + " has a weight-" +
                        std::to_string(monomial_weight(m)) + " monomial");
    }
    if (w % 2 == 0 && depth(word) == 1 && !form.is_zero())
      throw Error(ErrorKind::HomogeneityViolation,
                  "even zeta " + format_composition(word) + " must reduce to 0");
  }
  for (int w = 2; w <= t.weight_cap; ++w)
    for (const Composition& word : admissible_words_of_weight(w))
      if (!t.reductions.count(word))
        throw Error(ErrorKind::IncompleteTable,
                    "missing entry for " + format_composition(word));
}

}  // namespace

RelationTable load_relation_table(std::istream& in) {
  RelationTable t;
  std::string raw;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++lineno;
    LineParser lp{raw, 0, lineno};
    if (lp.at_end()) continue;
    if (raw[lp.pos] == '#') continue;
    if (!have_header) {
      if (raw.compare(lp.pos, 5, "basis") != 0)
        lp.fail("expected 'basis W=<cap>' header");
      lp.pos += 5;
      lp.skip_ws();
      if (raw.compare(lp.pos, 2, "W=") != 0) lp.fail("expected W=<cap>");
      lp.pos += 2;
      size_t start = lp.pos;
      while (lp.pos < raw.size() && std::isdigit(static_cast<unsigned char>(raw[lp.pos])))
        ++lp.pos;
      if (lp.pos == start) lp.fail("expected weight cap");
      t.weight_cap = std::stoi(raw.substr(start, lp.pos - start));
      if (!lp.at_end()) lp.fail("trailing characters after header");
      have_header = true;
      continue;
    }
    if (raw[lp.pos] == 'g') {
      ++lp.pos;
      lp.skip_ws();
      size_t start = lp.pos;
      while (lp.pos < raw.size() && std::isdigit(static_cast<unsigned char>(raw[lp.pos])))
        ++lp.pos;
      if (lp.pos == start) lp.fail("expected generator weight");
      int w = std::stoi(raw.substr(start, lp.pos - start));
      Composition gen = lp.parse_word();
      if (weight(gen) != w) lp.fail("generator weight mismatch");
      if (!lp.at_end()) lp.fail("trailing characters after generator");
      t.generators.push_back(gen);
      continue;
    }
    // entry: (word) = rhs
    Composition word = lp.parse_word();
    if (!all_parts_positive(word) || !is_admissible(word))
      lp.fail("entry word must be admissible");
    lp.expect('=');
    BasisForm form;
    lp.skip_ws();
    if (lp.pos < raw.size() && raw[lp.pos] == '0' &&
        (lp.pos + 1 == raw.size() ||
         std::isspace(static_cast<unsigned char>(raw[lp.pos + 1])))) {
      ++lp.pos;
      if (!lp.at_end()) lp.fail("trailing characters after 0");
    } else {
      bool first = true;
      while (!lp.at_end()) {
        int sign = 1;
        if (!first) {
          if (lp.accept('+')) sign = 1;
          else if (lp.accept('-')) sign = -1;
          else lp.fail("expected '+' or '-'");
        } else if (lp.accept('-')) {
          sign = -1;
        }
        first = false;
        Q c = lp.parse_coeff() * sign;
        BasisMonomial m;
        while (lp.accept('*')) {
          Composition gen = lp.parse_word();
          m[gen] += 1;
        }
        form.add(m, c);
      }
    }
    if (t.reductions.count(word)) lp.fail("duplicate entry");
    t.reductions.emplace(word, form);
  }
  if (!have_header)
    throw Error(ErrorKind::ParseError, "missing 'basis W=' header");
  validate_table(t);
  std::sort(t.generators.begin(), t.generators.end(),
            [](const Composition& a, const Composition& b) {
              if (weight(a) != weight(b)) return weight(a) < weight(b);
              return a < b;
            });
  return t;
}

RelationTable load_relation_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::ParseError, "cannot open table file: " + path);
  return load_relation_table(in);
}

std::string serialize_relation_table(const RelationTable& t) {
  std::ostringstream out;
  out << "basis W=" << t.weight_cap << "\n";
  for (const Composition& g : t.generators)
    out << "g " << weight(g) << " " << format_composition(g) << "\n";
  for (const auto& [word, form] : t.reductions)
    out << format_composition(word) << " = " << format_basis_form(form) << "\n";
  return out.str();
}

BasisForm to_basis(const AElement& x, const RelationTable& t) {
  BasisForm out;
  for (const auto& [word, c] : x.terms()) {
    if (word.empty()) {
      out.add(BasisMonomial{}, c);
      continue;
    }
    if (weight(word) > t.weight_cap)
      throw Error(ErrorKind::WeightCapExceeded,
                  "word " + format_composition(word) + " above weight cap " +
                      std::to_string(t.weight_cap));
    out += t.reduction_for(word) * c;
  }
  return out;
}

std::string default_table_path(const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* env = std::getenv("FP_TABLE"); env && *env) return env;
  return "data/mzv_relations_w8.txt";
}

const RelationTable& shared_table(const std::string& path) {
  static std::map<std::string, RelationTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(path);
  if (it == cache.end())
    it = cache.emplace(path, load_relation_table_file(path)).first;
  return it->second;
}

}  // namespace fp
