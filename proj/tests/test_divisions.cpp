#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ordtww/divisions.hpp"

using namespace ordtww;

namespace {

Division random_division(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  auto cuts = [&rng](std::size_t n) {
    IndexList c;
    for (std::size_t i = 1; i < n; ++i)
      if (rng() % 2) c.push_back(i);
    return c;
  };
  return Division(rows, cols, cuts(rows), cuts(cols));
}

std::optional<Coarsening> brute_mono(const Matrix& labels, std::size_t d) {
  auto subsets = [](std::size_t n, std::size_t k) {
    std::vector<IndexList> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      IndexList s;
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1u) s.push_back(i);
      out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  for (const auto& rs : subsets(labels.rows(), d))
    for (Symbol s = 0; s < labels.alphabet().size(); ++s)
      for (const auto& cs : subsets(labels.cols(), d)) {
        bool ok = true;
        for (auto i : rs)
          for (auto j : cs) ok = ok && labels.at(i, j) == s;
        if (ok) return Coarsening{rs, cs, s};
      }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("division") {
  TEST_CASE("parts and validation") {
    Division d(5, 4, {2, 3}, {1});
    CHECK(d.row_parts() == 3);
    CHECK(d.row_part(0) == Interval{0, 1});
    CHECK(d.row_part(2) == Interval{3, 4});
    CHECK(d.col_part(1) == Interval{1, 3});
    CHECK(d.merged(Side::rows, 0) == Division(5, 4, {3}, {1}));
    CHECK(d.transpose() == Division(4, 5, {1}, {2, 3}));
    CHECK(d.row_partition() == Partition(Side::rows, 5, {{0, 1}, {2}, {3, 4}}));
    CHECK_THROWS_AS(Division(3, 3, {0}, {}), InvalidArgument);
    CHECK_THROWS_AS(Division(3, 3, {3}, {}), InvalidArgument);
    CHECK_THROWS_AS(Division(3, 3, {2, 1}, {}), InvalidArgument);
  }

  TEST_CASE("division files") {
    Division d = parse_division("R 6 12\nC 6 12\n", 18, 18);
    CHECK(d == Division(18, 18, {6, 12}, {6, 12}));
    CHECK(parse_division(serialize_division(d), 18, 18) == d);
    Division whole = parse_division("R\nC\n", 3, 3);
    CHECK(whole == Division::whole(3, 3));
    CHECK_THROWS_AS(parse_division("R 4\nC\n", 3, 3), ParseError);
    CHECK_THROWS_AS(parse_division("Q 1\n", 3, 3), ParseError);
  }

  TEST_CASE("distinct counts") {
    Matrix c = Matrix::constant(3, 3, Alphabet::binary(), 1);
    Zone all{{0, 2}, {0, 2}};
    CHECK(count_distinct_rows(c, all) == 1);
    CHECK(count_distinct_cols(c, all) == 1);
    Matrix id = identity_matrix(4);
    CHECK(count_distinct_rows(id, {{0, 3}, {0, 3}}) == 4);
    CHECK(count_distinct_rows(checkerboard(8), {{1, 6}, {2, 7}}) == 2);
  }
}

TEST_SUITE("rank divisions") {
  TEST_CASE("examples") {
    Matrix id = identity_matrix(3);
    CHECK(is_rank_division(id, Division::whole(3, 3), 3));
    CHECK_THROWS_AS(is_rank_division(id, Division(3, 3, {1}, {}), 1), InvalidArgument);
    CHECK(grid_rank(Matrix::constant(4, 4, Alphabet::binary(), 0), 4) == 1);
    CHECK(grid_rank(checkerboard(16), 3) == 2);
    CHECK_FALSE(find_rank_division(checkerboard(12), 3));
  }

  TEST_CASE("every 3-division of checkerboard(12) fails at k=3") {
    Matrix cb = checkerboard(12);
    for (const auto& rc : oracle::all_cut_sets(12, 3))
      for (const auto& cc : oracle::all_cut_sets(12, 3)) REQUIRE_FALSE(is_rank_division(cb, Division(12, 12, rc, cc), 3));
  }

  TEST_CASE("grid rank of a permutation matrix containing the 4-grid pattern") {
    // 2413-like blocks: sigma = (2,4,1,3) has a 2x2 grid minor
    Matrix m = identity_matrix(1);
    m = Matrix::from_bits({{0, 1, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 1, 0}});
    CHECK(oracle::brute_has_rank_division(m, 2));
    CHECK(grid_rank(m, 4) >= 2);
  }

  TEST_CASE("tiny matrices have grid rank below k") {
    CHECK(grid_rank(Matrix::from_bits({{1}}), 3) == 1);
    CHECK(grid_rank(Matrix::from_bits({{0, 1}}), 3) == 1);
  }

  TEST_CASE("property: search agrees with enumeration of all divisions") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 120; ++t) {
      Matrix m = oracle::random_bits(rng, 1 + rng() % 8, 1 + rng() % 8, 0.2 + 0.15 * (t % 5));
      for (std::size_t k = 1; k <= 3; ++k) {
        auto d = find_rank_division(m, k);
        REQUIRE(d.has_value() == oracle::brute_has_rank_division(m, k));
        if (d) CHECK(is_rank_division(m, *d, k));
      }
      const std::size_t g = grid_rank(m, 3);
      CHECK(oracle::brute_has_rank_division(m, g));
      if (g < 3) CHECK_FALSE(oracle::brute_has_rank_division(m, g + 1));
    }
  }

  TEST_CASE("property: grid rank is monotone under submatrices") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 60; ++t) {
      Matrix m = oracle::random_bits(rng, 2 + rng() % 7, 2 + rng() % 7);
      IndexList rows, cols;
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (rng() % 3) rows.push_back(i);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (rng() % 3) cols.push_back(j);
      if (rows.empty() || cols.empty()) continue;
      CHECK(grid_rank(submatrix(m, rows, cols), 3) <= grid_rank(m, 3));
    }
  }
}

TEST_SUITE("removal witnesses and rich divisions") {
  TEST_CASE("examples") {
    Matrix id = identity_matrix(4);
    CHECK(is_rich_division(id, Division::singletons(4, 4), 0).rich);
    RichReport r = is_rich_division(id, Division::singletons(4, 4), 2);
    CHECK_FALSE(r.rich);
    CHECK(r.side == Side::rows);
    CHECK(r.part == 0);
    auto w = find_removal_witness(id, Division::singletons(4, 4), Side::rows, 0, 1, 1);
    REQUIRE(w);
    CHECK(w->empty());
  }

  TEST_CASE("property: both strategies agree with subset enumeration") {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 300; ++t) {
      Matrix m = oracle::random_bits(rng, 2 + rng() % 7, 2 + rng() % 7, 0.3 + 0.1 * (t % 4));
      Division d = random_division(rng, m.rows(), m.cols());
      const Side side = rng() % 2 ? Side::rows : Side::cols;
      const std::size_t part = rng() % d.parts(side);
      const std::size_t budget = rng() % 4;
      const std::size_t threshold = 1 + rng() % 3;
      const bool want = oracle::brute_removal(m, d, side, part, budget, threshold);
      for (auto strategy : {WitnessStrategy::pair_branching, WitnessStrategy::exhaustive}) {
        auto got = find_removal_witness(m, d, side, part, budget, threshold, strategy);
        REQUIRE(got.has_value() == want);
        if (!got) continue;
        CHECK(got->size() <= budget);
        // removing the witness parts really leaves at most `threshold` vectors
        const Side other = side == Side::rows ? Side::cols : Side::rows;
        IndexList keep;
        for (std::size_t q = 0; q < d.parts(other); ++q)
          if (std::find(got->begin(), got->end(), q) == got->end()) {
            auto iv = d.part(other, q);
            for (std::size_t x = iv.first; x <= iv.last; ++x) keep.push_back(x);
          }
        auto own = d.part(side, part);
        std::set<std::vector<Symbol>> seen;
        for (std::size_t l = own.first; l <= own.last; ++l) {
          std::vector<Symbol> v;
          for (auto x : keep) v.push_back(side == Side::rows ? m.at(l, x) : m.at(x, l));
          seen.insert(v);
        }
        CHECK(seen.size() <= threshold);
      }
    }
  }

  TEST_CASE("property: richness is monotone in k") {
    std::mt19937_64 rng(52);
    for (int t = 0; t < 100; ++t) {
      Matrix m = oracle::random_bits(rng, 4 + rng() % 6, 4 + rng() % 6);
      Division d = random_division(rng, m.rows(), m.cols());
      for (std::size_t k = 3; k > 0; --k)
        if (is_rich_division(m, d, k).rich) CHECK(is_rich_division(m, d, k - 1).rich);
    }
  }

  TEST_CASE("node cap") {
    Matrix id = identity_matrix(12);
    CHECK_THROWS_AS(find_removal_witness(id, Division(12, 12, {}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}), Side::rows, 0,
                                         6, 3, WitnessStrategy::pair_branching, 10),
                    ResourceLimit);
  }
}

TEST_SUITE("Marcus-Tardos") {
  TEST_CASE("bound values") {
    CHECK(mt_bound(1) == 171);
    CHECK(mt_bound(2) == 6144);
    for (std::size_t k = 1; k < 10; ++k) CHECK(mt_bound(k + 1) > mt_bound(k));
  }

  TEST_CASE("finder examples") {
    auto d = find_mt_division(Matrix::constant(4, 4, Alphabet::binary(), 1), 4);
    REQUIRE(d);
    CHECK(*d == Division(4, 4, {1, 2, 3}, {1, 2, 3}));
    CHECK_FALSE(find_mt_division(identity_matrix(4), 2));
    CHECK(find_mt_division(identity_matrix(4), 1) == Division::whole(4, 4));
    CHECK_FALSE(find_mt_division(Matrix::constant(3, 3, Alphabet::binary(), 0), 1));
    CHECK_THROWS_AS(find_mt_division(Matrix::from_tokens({{"a"}}, Alphabet({"a"})), 1), InvalidArgument);
  }

  TEST_CASE("property: finder agrees with enumeration up to 8x8") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 150; ++t) {
      Matrix m = oracle::random_bits(rng, 1 + rng() % 8, 1 + rng() % 8, 0.1 + 0.05 * (t % 8));
      const std::size_t k = 1 + rng() % 3;
      auto got = find_mt_division(m, k);
      auto want = oracle::brute_mt(m, k);
      REQUIRE(got.has_value() == want.has_value());
      if (got) {
        CHECK(got->row_cuts() == want->first);
        CHECK(got->col_cuts() == want->second);
      }
    }
  }
}

TEST_SUITE("coarsening and selection") {
  TEST_CASE("monochromatic examples") {
    Matrix c = Matrix::constant(4, 4, Alphabet({"a", "b"}), 1);
    auto got = monochromatic_coarsening(c, 2);
    REQUIRE(got);
    CHECK(got->rows == IndexList{0, 1});
    CHECK(got->cols == IndexList{0, 1});
    CHECK(got->symbol == 1);
    Matrix distinct = Matrix::from_tokens({{"a", "b"}, {"c", "d"}}, Alphabet({"a", "b", "c", "d"}));
    CHECK_FALSE(monochromatic_coarsening(distinct, 2));
  }

  TEST_CASE("property: monochromatic search agrees with enumeration") {
    std::mt19937_64 rng(71);
    std::size_t found = 0;
    for (int t = 0; t < 100; ++t) {
      Matrix labels = oracle::random_bits(rng, 5, 5);
      auto got = monochromatic_coarsening(labels, 2);
      auto want = brute_mono(labels, 2);
      REQUIRE(got.has_value() == want.has_value());
      if (got) {
        ++found;
        CHECK(got->rows == want->rows);
        CHECK(got->cols == want->cols);
        CHECK(got->symbol == want->symbol);
      }
    }
    CHECK(found > 0);
  }

  TEST_CASE("finite to binary rank") {
    CHECK(finite_to_binary_rank(3, 2) == 3);
    CHECK(finite_to_binary_rank(2, 3) == 2);
    CHECK(finite_to_binary_rank(3, 3) == 5);
  }

  TEST_CASE("binary selection keeps an existing rank division") {
    std::mt19937_64 rng(81);
    int seen = 0;
    for (int t = 0; t < 40; ++t) {
      Matrix m = oracle::random_bits(rng, 6, 6);
      auto d = find_rank_division(m, 2, 2);
      if (!d) continue;
      auto sel = select_rank_division(m, 2, 2);
      REQUIRE(sel);
      CHECK(sel->symbol == "1");
      CHECK(sel->division == *d);
      CHECK(is_rank_division(a_selection(m, "1"), sel->division, 2));
      ++seen;
    }
    CHECK(seen > 0);
  }

  TEST_CASE("three-letter selection") {
    Alphabet abc({"a", "b", "c"});
    std::mt19937_64 rng(82);
    int seen = 0;
    for (int t = 0; t < 40; ++t) {
      std::vector<std::vector<std::string>> rows(6, std::vector<std::string>(6));
      for (auto& r : rows)
        for (auto& x : r) x = abc.symbol(static_cast<Symbol>(rng() % 3));
      Matrix m = Matrix::from_tokens(rows, abc);
      auto sel = select_rank_division(m, 2, 2);
      if (!sel) continue;
      CHECK(is_rank_division(a_selection(m, sel->symbol), sel->division, 2));
      ++seen;
    }
    CHECK(seen > 0);
    CHECK_FALSE(select_rank_division(Matrix::constant(4, 4, abc, 0), 2, 2));
  }
}

TEST_SUITE("N_k matrices") {
  TEST_CASE("k = 1 values") {
    auto nk = nk_matrices(1);
    REQUIRE(nk.size() == 8);
    const char* want[] = {"1", "0", "1", "1", "1", "0", "1", "1"};
    for (std::size_t i = 0; i < 8; ++i) CHECK(nk[i].token(0, 0) == want[i]);
  }

  TEST_CASE("k = 2 shapes") {
    auto nk = nk_matrices(2);
    CHECK(nk[nk_upper - 1] == Matrix::from_bits({{1, 1}, {0, 1}}));
    CHECK(nk[nk_lower - 1] == Matrix::from_bits({{1, 0}, {1, 1}}));
    CHECK(nk[nk_identity_mirror - 1] == Matrix::from_bits({{0, 1}, {1, 0}}));
    CHECK(nk[nk_co_identity - 1] == Matrix::from_bits({{0, 1}, {1, 0}}));
  }

  TEST_CASE("search examples") {
    auto hit = find_nk_submatrix(identity_matrix(5), 3);
    REQUIRE(hit);
    CHECK(hit->member == nk_identity);
    CHECK_FALSE(find_nk_submatrix(Matrix::constant(2, 2, Alphabet::binary(), 0), 2));
  }

  TEST_CASE("property: first member found matches enumeration") {
    std::mt19937_64 rng(91);
    for (int t = 0; t < 100; ++t) {
      Matrix m = oracle::random_bits(rng, 2 + rng() % 4, 2 + rng() % 4);
      auto got = find_nk_submatrix(m, 2);
      std::optional<int> want;
      auto nk = nk_matrices(2);
      for (std::size_t i = 0; i < 8 && !want; ++i)
        if (oracle::brute_contains(m, nk[i])) want = static_cast<int>(i + 1);
      REQUIRE(got.has_value() == want.has_value());
      if (got) {
        CHECK(got->member == *want);
        CHECK(submatrix(m, got->placement.rows, got->placement.cols) == nk[static_cast<std::size_t>(*want - 1)]);
      }
    }
  }
}

TEST_SUITE("rank-Latin divisions") {
  TEST_CASE("the 18x18 instance") {
    auto inst = oracle::latin_instance();
    LatinReport r = verify_rank_latin_division(inst.matrix, inst.witness, 2);
    CHECK(r.ok);
    CHECK(is_rank_division(inst.matrix, inst.witness.division, 2));
    CHECK(parse_latin_witness(serialize_latin_witness(inst.witness), 18, 18).cells.size() == 9);
  }

  TEST_CASE("a flipped cross entry is reported with its zone") {
    auto inst = oracle::latin_instance();
    std::vector<Symbol> e = inst.matrix.entries();
    // row block 1, column block 0 is a cross zone (member blocks sit at (0,0),(3,1),(6,2),...)
    e[2 * 18 + 0] ^= 1;
    Matrix flipped(18, 18, inst.matrix.alphabet(), e);
    LatinReport r = verify_rank_latin_division(flipped, inst.witness, 2);
    CHECK_FALSE(r.ok);
    CHECK(r.cell.has_value());
    CHECK(r.cross_with.has_value());
  }

  TEST_CASE("a wrong member is rejected") {
    auto inst = oracle::latin_instance();
    LatinWitness w = inst.witness;
    w.cells[0].member = nk_identity;
    CHECK_FALSE(verify_rank_latin_division(inst.matrix, w, 2).ok);
  }

  TEST_CASE("structural problems are certificate errors") {
    auto inst = oracle::latin_instance();
    LatinWitness w = inst.witness;
    w.cells.pop_back();
    CHECK_THROWS_AS(verify_rank_latin_division(inst.matrix, w, 2), CertificateInvalid);
    LatinWitness moved = inst.witness;
    moved.cells[0].row = 6;  // leaves its cell
    CHECK_THROWS_AS(verify_rank_latin_division(inst.matrix, moved, 2), CertificateInvalid);
  }

  TEST_CASE("k = 1 witness on a permutation matrix") {
    Matrix id = identity_matrix(4);
    LatinWitness w{Division(4, 4, {2}, {2}),
                   {{0, 0, nk_identity, 0, 0}, {0, 1, nk_co_identity, 1, 2}, {1, 0, nk_co_identity, 2, 1},
                    {1, 1, nk_identity, 3, 3}}};
    CHECK(verify_rank_latin_division(id, w, 1).ok);
  }

  TEST_CASE("witness file format") {
    LatinWitness w = parse_latin_witness("R 2\nC 2\n1 1 1 1 1\n1 2 2 2 3\n2 1 2 3 2\n2 2 1 4 4\n", 4, 4);
    REQUIRE(w.cells.size() == 4);
    CHECK(w.cells[1].member == nk_co_identity);
    CHECK(w.cells[1].row == 1);
    CHECK(w.cells[1].col == 2);
    CHECK_THROWS_AS(parse_latin_witness("R 2\nC 2\n1 1 9 1 1\n", 4, 4), ParseError);
  }
}
