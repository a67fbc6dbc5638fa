#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordtww/errors.hpp"

namespace ordtww {

using Symbol = std::uint16_t;
using IndexList = std::vector<std::size_t>;

/// Ordered list of distinct whitespace-free tokens. "0" is the zero symbol when present.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  /// The alphabet {"0","1"}.
  static Alphabet binary();

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Symbol s) const { return symbols_.at(s); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::optional<Symbol> find(std::string_view token) const;
  /// Like find(), but throws InvalidArgument for unknown tokens.
  Symbol index_of(std::string_view token) const;
  std::optional<Symbol> zero() const { return find("0"); }

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
};

/// Matrix over a finite alphabet. Rows and columns are 0-based here; file formats are 1-based.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, Alphabet alphabet, std::vector<Symbol> entries);

  /// 0/1 matrix from nested integer rows.
  static Matrix from_bits(const std::vector<std::vector<int>>& rows);
  /// Matrix over the given alphabet from nested token rows.
  static Matrix from_tokens(const std::vector<std::vector<std::string>>& rows, Alphabet alphabet);
  static Matrix constant(std::size_t rows, std::size_t cols, Alphabet alphabet, Symbol value);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Alphabet& alphabet() const { return alphabet_; }
  Symbol at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::string& token(std::size_t i, std::size_t j) const { return alphabet_.symbol(at(i, j)); }
  const std::vector<Symbol>& entries() const { return entries_; }

  Matrix transpose() const;
  /// Reverses the row order.
  Matrix mirror_rows() const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Alphabet alphabet_;
  std::vector<Symbol> entries_;
};

/// Simple undirected graph on vertices 0..n-1 ordered numerically.
class Graph {
 public:
  explicit Graph(std::size_t n);
  Graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const { return n_; }
  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }
  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);

  /// Edges {u,v} with u<v in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t edge_count() const;
  Graph induced(const IndexList& vertices) const;
  Graph complement() const;
  /// Upper-triangle adjacency bits; equal keys mean equal ordered graphs.
  std::string key() const;

  bool operator==(const Graph& other) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> adj_;
};

struct UnaryRelation {
  std::string name;
  std::vector<std::uint8_t> members;  // indexed by element

  bool operator==(const UnaryRelation& other) const = default;
};

struct BinaryRelation {
  std::string name;
  std::vector<std::uint8_t> pairs;  // row-major n*n

  bool operator==(const BinaryRelation& other) const = default;
};

struct Signature {
  std::vector<std::string> unary;
  std::vector<std::string> binary;

  bool has_unary(std::string_view name) const;
  bool has_binary(std::string_view name) const;
  bool operator==(const Signature& other) const = default;
};

/// Finite domain 0..n-1 with its natural order and named unary/binary relations.
class Structure {
 public:
  explicit Structure(std::size_t n);
  Structure(std::size_t n, std::vector<UnaryRelation> unary, std::vector<BinaryRelation> binary);

  static Structure from_graph(const Graph& g, const std::string& relation = "E");

  std::size_t size() const { return n_; }
  const std::vector<UnaryRelation>& unary() const { return unary_; }
  const std::vector<BinaryRelation>& binary() const { return binary_; }
  Signature signature() const;

  const UnaryRelation* find_unary(std::string_view name) const;
  const BinaryRelation* find_binary(std::string_view name) const;
  bool holds(const BinaryRelation& rel, std::size_t a, std::size_t b) const {
    return rel.pairs[a * n_ + b] != 0;
  }

  bool operator==(const Structure& other) const = default;

 private:
  void validate() const;

  std::size_t n_;
  std::vector<UnaryRelation> unary_;
  std::vector<BinaryRelation> binary_;
};

/// Complete quantifier-free description of a pair (x,y).
struct AtomicType {
  struct UnaryField {
    std::string name;
    bool x = false;
    bool y = false;
    bool operator==(const UnaryField&) const = default;
  };
  struct BinaryField {
    std::string name;
    bool forward = false;   // E(x,y)
    bool backward = false;  // E(y,x)
    bool operator==(const BinaryField&) const = default;
  };

  int order = 1;  // order_type(x,y): 1 for x<y, 0 for x=y, -1 for x>y
  std::vector<UnaryField> unary;    // sorted by name
  std::vector<BinaryField> binary;  // sorted by name

  /// Canonical token, e.g. "<.E:10.U:01".
  std::string token() const;
  bool operator==(const AtomicType&) const = default;
};

AtomicType atomic_type(const Structure& s, std::size_t a, std::size_t b);
AtomicType parse_atomic_type(std::string_view token, const Signature& signature);

bool is_valid_relation_name(std::string_view name);

// Matrix operations

Matrix submatrix(const Matrix& m, const IndexList& rows, const IndexList& cols);
Matrix a_selection(const Matrix& m, std::string_view symbol);

struct Placement {
  IndexList rows;
  IndexList cols;
  bool operator==(const Placement&) const = default;
};

/// Lexicographically least placement of n inside m, if any.
std::optional<Placement> contains_submatrix(const Matrix& m, const Matrix& n);

Matrix adjacency_matrix(const Structure& s);
Matrix mixed_symmetric_encoding(const Structure& s);

/// Entry (i,j) is 1 iff i+j is odd.
Matrix checkerboard(std::size_t n);
Matrix identity_matrix(std::size_t n);

// Text formats (1-based indices in files)

Matrix parse_matrix(std::string_view text);
std::string serialize_matrix(const Matrix& m);
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);
Structure parse_structure(std::string_view text);
std::string serialize_structure(const Structure& s);

/// Rendering with the first row at the bottom.
std::string render_matrix(const Matrix& m, bool first_row_at_bottom = false);

}  // namespace ordtww
