#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ordtww/contraction.hpp"

using namespace ordtww;

namespace {

ContractionSequence consecutive_sequence(std::size_t rows, std::size_t cols) {
  ContractionSequence s{rows, cols, {}};
  for (std::size_t i = 1; i < rows; ++i) s.merges.push_back({Side::rows, 0, i});
  for (std::size_t j = 1; j < cols; ++j) s.merges.push_back({Side::cols, 0, j});
  return s;
}

ContractionSequence random_sequence(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  ContractionSequence s{rows, cols, {}};
  std::vector<std::size_t> rmins(rows), cmins(cols);
  for (std::size_t i = 0; i < rows; ++i) rmins[i] = i;
  for (std::size_t j = 0; j < cols; ++j) cmins[j] = j;
  while (rmins.size() > 1 || cmins.size() > 1) {
    bool row = cmins.size() == 1 || (rmins.size() > 1 && rng() % 2);
    auto& mins = row ? rmins : cmins;
    std::size_t a = rng() % mins.size(), b = rng() % (mins.size() - 1);
    if (b >= a) ++b;
    std::size_t lo = std::min(mins[a], mins[b]), hi = std::max(mins[a], mins[b]);
    s.merges.push_back({row ? Side::rows : Side::cols, lo, hi});
    mins.erase(std::find(mins.begin(), mins.end(), hi));
  }
  return s;
}

}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("validation and canonical order") {
    Partition p(Side::rows, 4, {{3, 1}, {0, 2}});
    CHECK(p.block(0) == IndexList{0, 2});
    CHECK(p.block(1) == IndexList{1, 3});
    CHECK(p.block_of(3) == 1);
    CHECK(p.block_with_min(1) == 1);
    CHECK_THROWS_AS(Partition(Side::rows, 3, {{0, 1}}), InvalidArgument);
    CHECK_THROWS_AS(Partition(Side::rows, 3, {{0, 1}, {1, 2}}), InvalidArgument);
    CHECK_THROWS_AS(Partition(Side::rows, 2, {{0, 1}, {}}), InvalidArgument);
  }

  TEST_CASE("merge and refinement") {
    Partition s = Partition::singletons(Side::cols, 4);
    Partition m = s.merged(0, 2);
    CHECK(m.block(0) == IndexList{0, 2});
    CHECK(s.refines(m));
    CHECK_FALSE(m.refines(s));
    CHECK(m.refines(Partition::whole(Side::cols, 4)));
    CHECK(Partition::from_labels(Side::rows, {5, 5, 2, 5}) == Partition(Side::rows, 4, {{0, 1, 3}, {2}}));
  }

  TEST_CASE("span") {
    CHECK(span({2}) == Interval{2, 2});
    CHECK(span({0, 4}) == Interval{0, 4});
    CHECK(span({1, 2, 6}) == Interval{1, 6});
    CHECK_THROWS_AS(span({}), InvalidArgument);
  }

  TEST_CASE("overlap degree") {
    CHECK(overlap_degree(Partition(Side::rows, 5, {{0, 1}, {2}, {3, 4}})).max == 0);
    DegreeReport r = overlap_degree(Partition(Side::rows, 4, {{0, 2}, {1, 3}}));
    CHECK(r.per_block == std::vector<std::size_t>{1, 1});
    CHECK(r.max == 1);
    CHECK(overlap_degree(Partition::singletons(Side::rows, 6)).max == 0);
    CHECK(overlap_degree(Partition(Side::rows, 5, {{0, 4}, {1}, {2}, {3}})).max == 3);
  }
}

TEST_SUITE("error value") {
  TEST_CASE("examples") {
    Matrix c = Matrix::constant(3, 3, Alphabet::binary(), 1);
    CHECK(error_value(c, Partition::whole(Side::rows, 3), Partition(Side::cols, 3, {{0, 2}, {1}})).max == 0);
    Matrix anti = Matrix::from_bits({{0, 1}, {1, 0}});
    CHECK(error_value(anti, Partition::singletons(Side::rows, 2), Partition::singletons(Side::cols, 2)).max == 0);
    ErrorReport r = error_value(anti, Partition::whole(Side::rows, 2), Partition::whole(Side::cols, 2));
    CHECK(r.row_parts == std::vector<std::size_t>{1});
    CHECK(r.col_parts == std::vector<std::size_t>{1});
    CHECK_THROWS_AS(error_value(anti, Partition::whole(Side::rows, 3), Partition::whole(Side::cols, 2)),
                    InvalidArgument);
  }

  TEST_CASE("property: splitting a row block raises column errors by at most the new pieces") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 2 + rng() % 6, m = 1 + rng() % 6;
      Matrix mat = oracle::random_bits(rng, n, m);
      std::vector<std::size_t> labels(m);
      for (auto& l : labels) l = rng() % 3;
      Partition cols = Partition::from_labels(Side::cols, labels);
      Partition coarse = Partition::whole(Side::rows, n);
      std::vector<std::size_t> split(n);
      for (auto& l : split) l = rng() % 3;
      Partition fine = Partition::from_labels(Side::rows, split);
      ErrorReport before = error_value(mat, coarse, cols);
      ErrorReport after = error_value(mat, fine, cols);
      for (std::size_t b = 0; b < cols.size(); ++b) CHECK(after.col_parts[b] <= before.col_parts[b] + fine.size() - 1);
    }
  }
}

TEST_SUITE("sequence verification") {
  TEST_CASE("trivial sequences") {
    Matrix one = Matrix::from_bits({{1}});
    CHECK(verify_sequence(one, ContractionSequence{1, 1, {}}) == SequenceProfile{0, 0});
    Matrix c = Matrix::constant(2, 2, Alphabet::binary(), 0);
    CHECK(verify_sequence(c, consecutive_sequence(2, 2)) == SequenceProfile{0, 0});
  }

  TEST_CASE("consecutive merges never overlap") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
      Matrix m = oracle::random_bits(rng, 1 + rng() % 6, 1 + rng() % 6);
      CHECK(verify_sequence(m, consecutive_sequence(m.rows(), m.cols())).max_overlap == 0);
    }
  }

  TEST_CASE("structural violations name the step") {
    Matrix m = identity_matrix(2);
    ContractionSequence short_seq{2, 2, {{Side::rows, 0, 1}}};
    CHECK_THROWS_AS(verify_sequence(m, short_seq), CertificateInvalid);
    ContractionSequence bad{3, 1, {{Side::rows, 0, 1}, {Side::rows, 1, 2}}};
    try {
      verify_sequence(Matrix::constant(3, 1, Alphabet::binary(), 0), bad);
      FAIL("expected rejection");
    } catch (const CertificateInvalid& e) {
      CHECK(e.location() == "step 3");
    }
    ContractionSequence twice{2, 2, {{Side::rows, 0, 1}, {Side::rows, 0, 1}}};
    CHECK_THROWS_AS(verify_sequence(m, twice), CertificateInvalid);
    CHECK_THROWS_AS(verify_sequence(m, ContractionSequence{3, 2, {}}), CertificateInvalid);
  }

  TEST_CASE("steps start at singletons and end at the full blocks") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
      ContractionSequence s = random_sequence(rng, n, m);
      auto steps = s.steps();
      REQUIRE(steps.size() == n + m - 1);
      CHECK(steps.front().first == Partition::singletons(Side::rows, n));
      CHECK(steps.back().second == Partition::whole(Side::cols, m));
      CHECK(ContractionSequence::from_steps(steps) == s);
    }
  }

  TEST_CASE("sequence file round trip and parse errors") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
      ContractionSequence s = random_sequence(rng, 1 + rng() % 5, 1 + rng() % 5);
      CHECK(parse_sequence(serialize_sequence(s), s.rows, s.cols) == s);
    }
    ContractionSequence p = parse_sequence("R 1 2\nC 1 2\n", 2, 2);
    CHECK(p.merges[0] == Merge{Side::rows, 0, 1});
    CHECK_THROWS_AS(parse_sequence("X 1 2\n", 2, 2), ParseError);
    CHECK_THROWS_AS(parse_sequence("R 0 2\n", 2, 2), ParseError);
    CHECK_THROWS_AS(parse_sequence("R 1\n", 2, 2), ParseError);
  }
}

TEST_SUITE("exact twin-width") {
  TEST_CASE("small values") {
    CHECK(exact_twinwidth(Matrix::from_bits({{1}})).value == 0);
    CHECK(exact_twinwidth(Matrix::constant(3, 4, Alphabet::binary(), 1)).value == 0);
    CHECK(min_kk_value(Matrix::constant(2, 5, Alphabet::binary(), 0)).value == 0);
  }

  // Values from the plain enumeration oracle in oracles.hpp.
  TEST_CASE("frozen oracle values") {
    CHECK(exact_twinwidth(Matrix::from_bits({{0, 1}})).value == 1);
    CHECK(min_kk_value(Matrix::from_bits({{0, 1}})).value == 1);
    CHECK(exact_twinwidth(identity_matrix(3)).value == 2);
    CHECK(exact_twinwidth(identity_matrix(4)).value == 2);
    CHECK(exact_twinwidth(checkerboard(3)).value == 3);
    CHECK(min_kk_value(checkerboard(3)).value == 2);
    CHECK(exact_twinwidth(checkerboard(4)).value == 3);
    CHECK(exact_twinwidth(Matrix::from_bits({{0, 1}, {1, 0}})).value == 2);
    CHECK(exact_twinwidth(Matrix::from_bits({{0, 1, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 1, 0}})).value == 2);
  }

  TEST_CASE("guard") {
    CHECK_THROWS_AS(exact_twinwidth(identity_matrix(6)), ResourceLimit);
    CHECK(exact_twinwidth(Matrix::constant(7, 4, Alphabet::binary(), 1), 11).value == 0);
  }

  TEST_CASE("property: agreement with plain enumeration, witnesses verify, transpose symmetry") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
      Matrix m = oracle::random_bits(rng, 1 + rng() % 3, 1 + rng() % 4);
      auto want = oracle::enumerate_sequences(m);
      ExactResult r = exact_twinwidth(m);
      CHECK(r.value == want.best_sum);
      CHECK(verify_sequence(m, r.witness) == r.profile);
      CHECK(r.profile.max_overlap + r.profile.max_error == r.value);
      CHECK(exact_twinwidth(m.transpose()).value == r.value);
      ExactResult kk = min_kk_value(m);
      CHECK(kk.value == want.best_max);
      CHECK(std::max(kk.profile.max_overlap, kk.profile.max_error) == kk.value);
      CHECK(2 * kk.value >= r.value);
      CHECK(kk.value <= r.value);
    }
  }

  TEST_CASE("has_ke_sequence witnesses") {
    Matrix m = identity_matrix(3);
    ContractionSequence w;
    CHECK(has_ke_sequence(m, 0, 2, &w));
    SequenceProfile p = verify_sequence(m, w);
    CHECK(p.max_overlap == 0);
    CHECK(p.max_error <= 2);
    CHECK_FALSE(has_ke_sequence(m, 0, 1));
  }
}
