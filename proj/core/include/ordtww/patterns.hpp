#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordtww/core.hpp"
#include "ordtww/divisions.hpp"

namespace ordtww {

/// Bijection on 1..n in one-line notation; arguments and values are 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> one_line);

  static Permutation identity(std::size_t n);
  static Permutation reversal(std::size_t n);
  /// One-line "3 4 5 2 1" or cycle notation "(135)(24)"; cycles may use spaces or commas
  /// between entries for values above 9. The size of a cycle-notation permutation is its
  /// largest mentioned value unless `size` is given.
  static Permutation parse(std::string_view text, std::size_t size = 0);

  std::size_t size() const { return values_.size(); }
  int operator()(int i) const { return values_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& one_line() const { return values_; }
  Permutation inverse() const;
  std::string to_string() const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> values_;
};

/// All permutations of 1..n in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

/// -1 if x > y, 0 if x = y, 1 if x < y.
constexpr int order_type(long long x, long long y) { return x > y ? -1 : x == y ? 0 : 1; }

enum class PatternSymbol { eq, neq, le_r, ge_r, le_c, ge_c };

inline constexpr std::array<PatternSymbol, 6> kPatternSymbols = {
    PatternSymbol::eq, PatternSymbol::neq, PatternSymbol::le_r,
    PatternSymbol::ge_r, PatternSymbol::le_c, PatternSymbol::ge_c};

/// Canonical names: eq, neq, leR, geR, leC, geC.
std::string symbol_name(PatternSymbol s);
/// Accepts canonical names, "=", "!=", and the graph aliases lel, gel, ler, ger.
PatternSymbol parse_symbol(std::string_view text);

/// Map {-1,1}^2 -> {0,1}.
class Eta {
 public:
  constexpr Eta() = default;
  constexpr Eta(int at_pp, int at_pm, int at_mp, int at_mm)
      : bits_(static_cast<unsigned>((at_pp ? 1 : 0) | (at_pm ? 2 : 0) | (at_mp ? 4 : 0) | (at_mm ? 8 : 0))) {}

  static Eta from_index(unsigned index);
  static Eta constant(int value) { return Eta(value, value, value, value); }

  int operator()(int x, int y) const { return (bits_ >> slot(x, y)) & 1u; }
  unsigned index() const { return bits_; }
  bool depends_only_on_x() const { return (*this)(1, 1) == (*this)(1, -1) && (*this)(-1, 1) == (*this)(-1, -1); }
  bool depends_only_on_y() const { return (*this)(1, 1) == (*this)(-1, 1) && (*this)(1, -1) == (*this)(-1, -1); }
  bool one_coordinate() const { return depends_only_on_x() || depends_only_on_y(); }
  /// Values at (1,1),(1,-1),(-1,1),(-1,-1), e.g. "0111".
  std::string to_string() const;

  bool operator==(const Eta&) const = default;

 private:
  static unsigned slot(int x, int y) { return (x == 1 ? 0u : 2u) + (y == 1 ? 0u : 1u); }
  unsigned bits_ = 0;
};

std::vector<Eta> all_etas();
std::vector<Eta> one_coordinate_etas();
/// The encoding whose off-diagonal entries agree with the Iverson rule of s.
Eta eta_for_symbol(PatternSymbol s);

Matrix f_matrix_s(PatternSymbol s, const Permutation& sigma);
Matrix f_matrix_eta(Eta eta, const Permutation& sigma);
std::optional<Permutation> decode_f(Eta eta, const Matrix& m);
std::optional<Permutation> decode_s(PatternSymbol s, const Matrix& m);

/// The four placements of the shuffle reduction, tagged by the inequality they need.
enum class ShuffleCase {
  none,            // already one-coordinate
  odd_rows_left,   // eta(1,1) != eta(-1,1): gamma(x,y) = eta(x,1)
  bottom_even,     // eta(1,1) != eta(1,-1): gamma(x,y) = eta(1,y)
  odd_rows_right,  // eta(-1,-1) != eta(1,-1): gamma(x,y) = eta(x,-1)
  top_even,        // eta(-1,-1) != eta(-1,1): gamma(x,y) = eta(-1,y)
};

std::string shuffle_case_name(ShuffleCase c);

struct Reduction {
  Eta gamma;
  ShuffleCase shuffle = ShuffleCase::none;
};

Reduction reduce_eta(Eta eta);
/// tau(i) = 2 sigma(i) - 1 and tau(k+i) = 2i.
Permutation shuffle_permutation(const Permutation& sigma);
Permutation shuffle_permutation(const Permutation& sigma, ShuffleCase c);
/// Rows and columns of F_eta(shuffle(sigma)) carrying F_gamma(sigma) (0-based).
Placement shuffle_placement(std::size_t k, ShuffleCase c);

Graph permutation_graph(const Permutation& pi);

/// Map {-1,1} -> {0,1}.
struct SignMap {
  int at_neg = 0;
  int at_pos = 0;
  int operator()(int x) const { return x < 0 ? at_neg : at_pos; }
  static SignMap constant(int v) { return {v, v}; }
  bool operator==(const SignMap&) const = default;
};

/// Ordered matching a_1<..<a_n<b_1<..<b_n with a_i matched to b_sigma(i).
struct OrderedMatching {
  Permutation sigma;

  std::size_t half() const { return sigma.size(); }
  Graph to_graph() const;
  bool operator==(const OrderedMatching&) const = default;
};

/// Recognizes an ordered matching graph (all edges between the halves, perfect).
std::optional<OrderedMatching> matching_from_graph(const Graph& g);

Graph s_sigma_matching(PatternSymbol s, const Permutation& sigma);
Graph regular_matching(PatternSymbol s, SignMap f, SignMap g, const Permutation& sigma);
Graph m_class_graph(const OrderedMatching& h, PatternSymbol s, int lambda, int rho);
std::optional<OrderedMatching> decode_regular(PatternSymbol s, const Graph& g);

OrderedMatching encode_graph_as_matching(const Graph& g);
std::optional<Graph> decode_matching_to_graph(const OrderedMatching& m);

struct ClassSpec {
  enum class Kind { permutation_graphs, m_class, regular };

  Kind kind = Kind::permutation_graphs;
  PatternSymbol s = PatternSymbol::eq;
  int lambda = 0;
  int rho = 0;
  SignMap f;
  SignMap g;

  /// "P", "M=00", "Mneq11", "Rler:f10:g01" (f and g given as f(-1)f(1)).
  static ClassSpec parse(std::string_view text);
  std::string to_string() const;
};

inline constexpr std::size_t kDefaultSliceGuard = 6;

/// n-vertex members of the hereditary closure of the class, deduplicated, sorted by key.
/// Matching generators have half-size `generator_half` (default n).
std::vector<Graph> enumerate_slice(const ClassSpec& spec, std::size_t n, std::size_t guard = kDefaultSliceGuard,
                                   std::size_t generator_half = 0);

/// Sum over k of C(n,2k) k!.
BigInt growth_formula(std::size_t n);

}  // namespace ordtww
