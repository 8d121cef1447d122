#include "finperiod/composition.hpp"

#include <sstream>

namespace fp {

std::string format_composition(const Composition& s) {
  std::string out = "(";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  out += ")";
  return out;
}

Composition parse_composition(const std::string& text) {
  size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, "bad composition '" + text + "': " + why);
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '(') fail("expected '('");
  ++i;
  Composition parts;
  skip_ws();
  if (i < text.size() && text[i] == ')') return parts;
  for (;;) {
    skip_ws();
    size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) fail("expected integer part");
    parts.push_back(std::stoi(text.substr(start, i - start)));
    skip_ws();
    if (i < text.size() && text[i] == ',') { ++i; continue; }
    if (i < text.size() && text[i] == ')') { ++i; break; }
    fail("expected ',' or ')'");
  }
  skip_ws();
  if (i != text.size()) fail("trailing characters");
  return parts;
}

std::vector<Composition> compositions_of_weight(int w) {
  std::vector<Composition> out;
  if (w == 0) {
    out.push_back({});
    return out;
  }
  if (w < 0) return out;
  for (int first = 1; first <= w; ++first)
    for (const Composition& rest : compositions_of_weight(w - first))
      out.push_back(prepend(first, rest));
  return out;
}

std::vector<Composition> admissible_words_of_weight(int w) {
  std::vector<Composition> out;
  if (w == 0) {
    out.push_back({});
    return out;
  }
  for (int first = 2; first <= w; ++first)
    for (const Composition& rest : compositions_of_weight(w - first))
      out.push_back(prepend(first, rest));
  return out;
}

}  // namespace fp
