#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ordtww/core.hpp"
#include "ordtww/patterns.hpp"

namespace ordtww {

enum class Sort { none, row, col };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    truth, falsity, less, equal, unary, binary,
    negation, conjunction, disjunction, implication, equivalence,
    exists, forall
  };

  Kind kind = Kind::truth;
  std::string relation;  // unary and binary atoms
  std::string a;         // first variable of an atom, or the bound variable
  std::string b;         // second variable of a binary atom
  Sort sort = Sort::none;
  FormulaPtr left;       // operand, quantifier body
  FormulaPtr right;
};

namespace fo {

FormulaPtr top();
FormulaPtr bottom();
FormulaPtr less(std::string x, std::string y);
FormulaPtr equal(std::string x, std::string y);
FormulaPtr unary(std::string rel, std::string x);
FormulaPtr binary(std::string rel, std::string x, std::string y);
FormulaPtr negation(FormulaPtr f);
FormulaPtr conjunction(FormulaPtr l, FormulaPtr r);
FormulaPtr disjunction(FormulaPtr l, FormulaPtr r);
FormulaPtr implication(FormulaPtr l, FormulaPtr r);
FormulaPtr equivalence(FormulaPtr l, FormulaPtr r);
FormulaPtr exists(std::string x, FormulaPtr body, Sort sort = Sort::none);
FormulaPtr forall(std::string x, FormulaPtr body, Sort sort = Sort::none);
/// Conjunction of order, unary and binary literals pinning the atomic type of (x,y).
FormulaPtr atomic_type_formula(const AtomicType& t, const std::string& x, const std::string& y);

}  // namespace fo

std::set<std::string> free_variables(const FormulaPtr& f);
std::size_t quantifier_depth(const FormulaPtr& f);
bool structurally_equal(const FormulaPtr& l, const FormulaPtr& r);
/// Fully parenthesized text accepted by parse_formula.
std::string to_string(const FormulaPtr& f);

/// Grammar: quantifiers "E x." / "A x." (optionally "E x:r." / "E x:c."), connectives
/// ~ & | -> <->, constants T and F, atoms x<y, x=y, U(x), E(x,y) and the atomic-type
/// macro tp[TOKEN](x,y). Variables start with a lower-case letter or '_', relation names
/// with an upper-case letter.
FormulaPtr parse_formula(std::string_view text, const Signature& signature);

using Valuation = std::map<std::string, std::size_t>;

inline constexpr std::uint64_t kDefaultAtomGuard = 10'000'000;

/// Naive recursive semantics. Quantified subformulas are memoized on the values of their
/// free variables; every atom evaluation counts against the guard.
class Evaluator {
 public:
  explicit Evaluator(const Structure& s, std::uint64_t guard = kDefaultAtomGuard);
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  bool evaluate(const FormulaPtr& f, const Valuation& v = {});
  std::uint64_t atoms_evaluated() const { return atoms_; }

 private:
  struct Compiled;
  struct Node;

  Compiled& compile(const FormulaPtr& f);
  bool eval(Node& node, std::vector<std::size_t>& slots);

  const Structure& structure_;
  std::uint64_t guard_;
  std::uint64_t atoms_ = 0;
  std::unordered_map<const Formula*, std::unique_ptr<Compiled>> cache_;
};

bool evaluate(const Structure& s, const FormulaPtr& f, const Valuation& v = {},
              std::uint64_t guard = kDefaultAtomGuard);

struct RelationDefinition {
  std::string name;
  std::vector<std::string> vars;  // one or two variables
  FormulaPtr formula;
};

struct Interpretation {
  std::string domain_var = "x";
  FormulaPtr domain;
  std::vector<RelationDefinition> relations;

  Signature output_signature() const;
};

/// Lines "domain x: F", "unary NAME x: F", "binary NAME x y: F".
Interpretation parse_interpretation(std::string_view text, const Signature& input);
std::string serialize_interpretation(const Interpretation& interp);

Structure apply_interpretation(const Structure& s, const Interpretation& interp,
                               std::uint64_t guard = kDefaultAtomGuard);
/// The interpretation applying `first` and then `second`.
Interpretation compose(const Interpretation& first, const Interpretation& second);

/// Edges u<v whose atomic type is tau (tau must have order x<y).
Graph i_tau(const Structure& s, const AtomicType& tau);
/// Directed variant: a single relation "E" holding (u,v) iff the atomic type of (u,v) is tau.
Structure i_tau_directed(const Structure& s, const AtomicType& tau);
Interpretation i_tau_interpretation(const AtomicType& tau);
/// 0/1 matrix of the single binary relation of s.
Matrix zero_one_adjacency(const Structure& s);

/// Rows then columns as one ordered domain, unary R and C, and E[symbol] from rows to columns.
Structure matrix_structure(const Matrix& m);
std::string matrix_relation_name(const std::string& symbol);

/// Splits every quantifier into guarded row and column copies.
FormulaPtr guard_normalize(const FormulaPtr& f);
/// Rewrites a guarded sentence about M(S) into an equivalent sentence about S.
FormulaPtr rewrite_matrix_sentence(const FormulaPtr& f, const Signature& structure_signature);

/// The formulas mu(x,y;z), rho(z) and phi(x,y) locating the middle of a regular matching.
std::string middle_point_mu(PatternSymbol s, const std::string& x = "x", const std::string& y = "y",
                            const std::string& z = "z");
std::string middle_point_rho(PatternSymbol s, const std::string& z = "z");
std::string middle_point_phi(PatternSymbol s, const std::string& x = "x", const std::string& y = "y");
/// Decodes through the evaluator: pairs satisfying phi(x,y) or phi(y,x).
std::optional<OrderedMatching> fo_decode_regular(PatternSymbol s, const Graph& g,
                                                 std::uint64_t guard = kDefaultAtomGuard);

/// Reconstructs G from its matching encoding through formulas over the matching graph.
Interpretation matching_decoder_interpretation();
std::optional<Graph> fo_decode_matching(const OrderedMatching& m, std::uint64_t guard = kDefaultAtomGuard);

}  // namespace ordtww
