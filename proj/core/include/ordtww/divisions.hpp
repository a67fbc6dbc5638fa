#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ordtww/contraction.hpp"
#include "ordtww/core.hpp"

namespace ordtww {

using BigInt = boost::multiprecision::cpp_int;

/// Interval partition of rows and columns. A cut c separates index c-1 from index c,
/// so cuts lie in 1..n-1; this matches the 1-based "cut after c" of division files.
class Division {
 public:
  Division(std::size_t rows, std::size_t cols, IndexList row_cuts, IndexList col_cuts);

  static Division singletons(std::size_t rows, std::size_t cols);
  static Division whole(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const IndexList& row_cuts() const { return row_cuts_; }
  const IndexList& col_cuts() const { return col_cuts_; }
  std::size_t row_parts() const { return row_cuts_.size() + 1; }
  std::size_t col_parts() const { return col_cuts_.size() + 1; }
  std::size_t parts(Side side) const { return side == Side::rows ? row_parts() : col_parts(); }
  Interval row_part(std::size_t a) const;
  Interval col_part(std::size_t b) const;
  Interval part(Side side, std::size_t i) const { return side == Side::rows ? row_part(i) : col_part(i); }

  Partition row_partition() const;
  Partition col_partition() const;
  Division transpose() const { return Division(cols_, rows_, col_cuts_, row_cuts_); }
  /// Merges part i with part i+1 on the given side.
  Division merged(Side side, std::size_t i) const;

  bool operator==(const Division&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  IndexList row_cuts_;
  IndexList col_cuts_;
};

struct Zone {
  Interval rows;
  Interval cols;
  bool operator==(const Zone&) const = default;
};

std::size_t count_distinct_rows(const Matrix& m, const Zone& zone);
std::size_t count_distinct_cols(const Matrix& m, const Zone& zone);

bool is_rank_division(const Matrix& m, const Division& d, std::size_t k);

/// Largest k <= max_k admitting a rank-k k-division; always >= 1.
std::size_t grid_rank(const Matrix& m, std::size_t max_k);
/// First rank-k k-division in enumeration order.
std::optional<Division> find_rank_division(const Matrix& m, std::size_t k);
/// First rank-k d-division in enumeration order.
std::optional<Division> find_rank_division(const Matrix& m, std::size_t k, std::size_t d);

enum class WitnessStrategy { pair_branching, exhaustive };

inline constexpr std::size_t kDefaultNodeCap = 1'000'000;

/// A set of opposite-side parts whose removal leaves part `part` of `side` with at most
/// `threshold` distinct vectors, using at most `budget` removals.
std::optional<IndexList> find_removal_witness(const Matrix& m, const Division& d, Side side, std::size_t part,
                                              std::size_t budget, std::size_t threshold,
                                              WitnessStrategy strategy = WitnessStrategy::pair_branching,
                                              std::size_t node_cap = kDefaultNodeCap);

struct RichReport {
  bool rich = true;
  Side side = Side::rows;  // side of the violating part
  std::size_t part = 0;
  IndexList removed;       // opposite-side parts removed by the witness
};

RichReport is_rich_division(const Matrix& m, const Division& d, std::size_t k,
                            WitnessStrategy strategy = WitnessStrategy::pair_branching,
                            std::size_t node_cap = kDefaultNodeCap);

/// ceil(8/3 (k+1)^2 2^(4k)).
BigInt mt_bound(std::size_t k);

/// First k-division with a non-zero entry in every zone.
std::optional<Division> find_mt_division(const Matrix& m, std::size_t k);

struct Coarsening {
  IndexList rows;
  IndexList cols;
  Symbol symbol = 0;
};

/// d row blocks and d column blocks of the label grid carrying one common symbol.
std::optional<Coarsening> monochromatic_coarsening(const Matrix& labels, std::size_t d);

struct SelectedDivision {
  std::string symbol;
  Division division;
};

/// (k-1)^(|A|-1) + 1.
std::size_t finite_to_binary_rank(std::size_t k, std::size_t alphabet_size);
std::optional<SelectedDivision> select_rank_division(const Matrix& m, std::size_t k, std::size_t d);

enum NkMember : int { nk_identity = 1, nk_co_identity, nk_upper, nk_lower,
                      nk_identity_mirror, nk_co_identity_mirror, nk_upper_mirror, nk_lower_mirror };

std::vector<Matrix> nk_matrices(std::size_t k);

struct NkMatch {
  int member = 0;  // 1..8
  Placement placement;
};

std::optional<NkMatch> find_nk_submatrix(const Matrix& m, std::size_t k);

struct LatinCell {
  std::size_t i = 0;  // cell row, 0-based
  std::size_t j = 0;  // cell column, 0-based
  int member = 1;     // 1..8
  std::size_t row = 0;  // top-left corner of the embedded member
  std::size_t col = 0;
};

struct LatinWitness {
  Division division;
  std::vector<LatinCell> cells;
};

struct LatinReport {
  bool ok = true;
  std::string reason;
  std::optional<std::pair<std::size_t, std::size_t>> cell;        // offending (i,j)
  std::optional<std::pair<std::size_t, std::size_t>> cross_with;  // second cell of a bad cross zone
};

LatinReport verify_rank_latin_division(const Matrix& m, const LatinWitness& w, std::size_t k);

Division parse_division(std::string_view text, std::size_t rows, std::size_t cols);
std::string serialize_division(const Division& d);
LatinWitness parse_latin_witness(std::string_view text, std::size_t rows, std::size_t cols);
std::string serialize_latin_witness(const LatinWitness& w);

}  // namespace ordtww
