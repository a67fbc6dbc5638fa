#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordtww/core.hpp"

namespace ordtww {

enum class Side { rows, cols };

/// Partition of 0..n-1; blocks are sorted internally and ordered by minimum element.
class Partition {
 public:
  Partition(Side side, std::size_t ground, std::vector<IndexList> blocks);

  static Partition singletons(Side side, std::size_t ground);
  static Partition whole(Side side, std::size_t ground);
  /// Block id per element.
  static Partition from_labels(Side side, const std::vector<std::size_t>& labels);

  Side side() const { return side_; }
  std::size_t ground() const { return ground_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<IndexList>& blocks() const { return blocks_; }
  const IndexList& block(std::size_t i) const { return blocks_[i]; }
  /// Index of the block containing element e.
  std::size_t block_of(std::size_t e) const;
  std::size_t block_with_min(std::size_t min_element) const;

  /// Merges two blocks given by position.
  Partition merged(std::size_t a, std::size_t b) const;
  /// Every block of this partition lies inside one block of coarser.
  bool refines(const Partition& coarser) const;

  bool operator==(const Partition& other) const = default;

 private:
  Side side_;
  std::size_t ground_;
  std::vector<IndexList> blocks_;
};

struct Interval {
  std::size_t first;
  std::size_t last;
  bool operator==(const Interval&) const = default;
};

Interval span(const IndexList& block);

struct DegreeReport {
  std::vector<std::size_t> per_block;
  std::size_t max = 0;
};

DegreeReport overlap_degree(const Partition& p);

struct ErrorReport {
  std::vector<std::size_t> row_parts;
  std::vector<std::size_t> col_parts;
  std::size_t max = 0;
};

ErrorReport error_value(const Matrix& m, const Partition& rows, const Partition& cols);

struct Merge {
  Side side;
  std::size_t a;  // minimum elements of the two merged blocks
  std::size_t b;
  bool operator==(const Merge&) const = default;
};

/// Contraction sequence stored as its n+m-2 merges starting from singletons.
struct ContractionSequence {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Merge> merges;

  /// Materializes all n+m-1 partition pairs. Throws CertificateInvalid on bad merges.
  std::vector<std::pair<Partition, Partition>> steps() const;
  static ContractionSequence from_steps(const std::vector<std::pair<Partition, Partition>>& steps);
  bool operator==(const ContractionSequence&) const = default;
};

struct SequenceProfile {
  std::size_t max_overlap = 0;
  std::size_t max_error = 0;
  bool operator==(const SequenceProfile&) const = default;
};

SequenceProfile verify_sequence(const Matrix& m, const ContractionSequence& s);
SequenceProfile verify_steps(const Matrix& m, const std::vector<std::pair<Partition, Partition>>& steps);

struct ExactResult {
  std::size_t value = 0;
  ContractionSequence witness;
  SequenceProfile profile;
};

inline constexpr std::size_t kDefaultExactGuard = 10;

/// Minimum of max_overlap + max_error over all contraction sequences.
ExactResult exact_twinwidth(const Matrix& m, std::size_t size_guard = kDefaultExactGuard);
/// Minimum of max(max_overlap, max_error) over all contraction sequences.
ExactResult min_kk_value(const Matrix& m, std::size_t size_guard = kDefaultExactGuard);
/// Whether a (k,e)-sequence exists; the first one found in merge order is written to witness.
bool has_ke_sequence(const Matrix& m, std::size_t k, std::size_t e, ContractionSequence* witness = nullptr,
                     std::size_t size_guard = kDefaultExactGuard);

ContractionSequence parse_sequence(std::string_view text, std::size_t rows, std::size_t cols);
std::string serialize_sequence(const ContractionSequence& s);

}  // namespace ordtww
