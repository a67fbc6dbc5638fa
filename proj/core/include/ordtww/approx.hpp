#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ordtww/contraction.hpp"
#include "ordtww/divisions.hpp"

namespace ordtww {

struct ApproxParams {
  std::size_t k = 0;
  std::size_t r = 1;              // 4k(k+1)+1
  std::size_t alphabet_size = 1;
  BigInt w;                       // r * (|A|^(r-1))^r

  static ApproxParams make(std::size_t k, std::size_t alphabet_size);
  std::size_t richness() const { return (r - 1) / 2; }  // 2k(k+1)
  BigInt error_bound() const { return BigInt(r + 2) * w; }
};

/// Witness for property P^R (side rows) or P^C (side cols) of one part at level r.
std::optional<IndexList> check_property(const Matrix& m, const Division& d, Side side, std::size_t part,
                                        std::size_t r, WitnessStrategy strategy = WitnessStrategy::pair_branching);
std::optional<IndexList> check_property_R(const Matrix& m, const Division& d, std::size_t part, std::size_t r);
std::optional<IndexList> check_property_C(const Matrix& m, const Division& d, std::size_t part, std::size_t r);

struct GreedyResult {
  bool complete = false;
  std::vector<Division> levels;  // D_1 (singletons) .. final division
  std::vector<Merge> log;        // Merge.a is the merged part's position before the merge
};

GreedyResult greedy_coarsen(const Matrix& m, std::size_t k);

enum class OddPart { keep_solo, absorb };

/// Merges parts {1,2},{3,4},... on both sides. An odd trailing part either stays alone or
/// joins the last pair.
Division pair_coarsen(const Division& d, OddPart policy = OddPart::keep_solo);

std::pair<Partition, Partition> refine_to_partition(const Matrix& m, const Division& d, std::size_t r);

struct ApproxOutcome {
  enum class Kind { rich, sequence };

  Kind kind = Kind::sequence;
  ApproxParams params;
  std::optional<Division> division;             // rich outcome
  std::size_t richness = 0;                     // 2k(k+1)
  std::optional<ContractionSequence> sequence;  // sequence outcome
  SequenceProfile profile;                      // actual profile of the sequence
  GreedyResult greedy;
};

ApproxOutcome approximate_twinwidth(const Matrix& m, std::size_t k);

/// Re-checks an outcome with the independent verifiers.
bool verify_outcome(const Matrix& m, const ApproxOutcome& outcome);

}  // namespace ordtww
