#ifndef FINPERIOD_RELATION_TABLE_HPP
#define FINPERIOD_RELATION_TABLE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "finperiod/zeta_words.hpp"

namespace fp {

// A monomial in the designated basis generators, as generator word -> power.
using BasisMonomial = std::map<Composition, int>;

// Polynomial in the basis generators with rational coefficients.  The empty
// monomial is the constant 1.
using BasisForm = LinComb<BasisMonomial>;

int monomial_weight(const BasisMonomial& m);

// Weight of the top homogeneous component (0 for constants and zero).
int basis_form_max_weight(const BasisForm& f);

BasisForm basis_mul(const BasisForm& a, const BasisForm& b);

BasisForm basis_const(const Q& c);

std::map<int, BasisForm> basis_weight_components(const BasisForm& f);

// Word-form element whose reduction is the given basis form (generator
// monomials expanded by the quasi-shuffle product).
AElement basis_form_to_words(const BasisForm& f);

std::string format_basis_form(const BasisForm& f);

// Reduction table from admissible zeta words of weight <= weight_cap to
// polynomials in the declared generators.  Tables are plain data loaded from
// the line-based text format below and immutable afterwards:
//
//   # comment
//   basis W=8
//   g 3 (3)
//   g 8 (5,3)
//   (2,1) = 1 * (3)
//   (4) = 0
//   (6,2) = -4/3 * (3)*(3) + 3 * (5,3)
struct RelationTable {
  int weight_cap = 0;
  std::vector<Composition> generators;
  std::map<Composition, BasisForm> reductions;

  const BasisForm& reduction_for(const Composition& word) const;
};

RelationTable load_relation_table(std::istream& in);
RelationTable load_relation_table_file(const std::string& path);

// Canonical serialization; load followed by serialize reproduces a table
// file up to comments and whitespace.
std::string serialize_relation_table(const RelationTable& t);

// Reduce a word-form element to basis form.  Throws WeightCapExceeded for
// words above the cap and MissingReduction if the table lacks an entry.
BasisForm to_basis(const AElement& x, const RelationTable& t);

// Resolves, in order: explicit path argument, FP_TABLE environment variable,
// ./data/mzv_relations_w8.txt.
std::string default_table_path(const std::string& explicit_path = "");

const RelationTable& shared_table(const std::string& path);

}  // namespace fp

#endif
