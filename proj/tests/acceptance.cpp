// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ordtww/approx.hpp"
#include "ordtww/contraction.hpp"
#include "ordtww/core.hpp"
#include "ordtww/divisions.hpp"
#include "ordtww/folog.hpp"
#include "ordtww/patterns.hpp"

using namespace ordtww;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double seconds;
  std::function<Outcome()> run;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

Outcome checkerboard_rank() {
  const std::size_t r = grid_rank(checkerboard(16), 3);
  if (r > 2) return fail("grid rank " + std::to_string(r));
  if (find_rank_division(checkerboard(16), 3)) return fail("found a rank-3 division");
  return {true, "grid_rank=" + std::to_string(r)};
}

Outcome pattern_injectivity() {
  const auto perms = all_permutations(6);
  for (Eta eta : all_etas()) {
    std::set<std::vector<Symbol>> seen;
    for (const auto& s : perms) seen.insert(f_matrix_eta(eta, s).entries());
    if (seen.size() != 720) return fail("eta " + eta.to_string() + " gives " + std::to_string(seen.size()));
  }
  return {true, "16 x 720 distinct"};
}

Outcome decode_round_trips() {
  const auto perms = all_permutations(5);
  for (Eta eta : all_etas())
    for (const auto& s : perms)
      if (decode_f(eta, f_matrix_eta(eta, s)) != s) return fail("decode_f eta=" + eta.to_string() + " sigma=" + s.to_string());
  std::size_t checked = 0;
  for (PatternSymbol sym : kPatternSymbols)
    for (int f = 0; f < 2; ++f)
      for (int g = 0; g < 2; ++g)
        for (const auto& s : perms) {
          auto back = decode_regular(sym, regular_matching(sym, SignMap::constant(f), SignMap::constant(g), s));
          if (!back || back->sigma != s)
            return fail("decode_regular s=" + symbol_name(sym) + " f=" + std::to_string(f) + " g=" + std::to_string(g) +
                        " sigma=" + s.to_string());
          ++checked;
        }
  return {true, std::to_string(16 * 120) + " + " + std::to_string(checked) + " round trips"};
}

Outcome growth_counts() {
  const std::size_t expect_m00[] = {1, 2, 4, 9, 21, 52};
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto count = enumerate_slice(ClassSpec::parse("M=00"), n).size();
    if (count != expect_m00[n - 1] || BigInt(count) != growth_formula(n))
      return fail("M=00 n=" + std::to_string(n) + " count " + std::to_string(count));
  }
  std::size_t fact = 1;
  for (std::size_t n = 1; n <= 5; ++n) {
    fact *= n;
    if (enumerate_slice(ClassSpec::parse("P"), n).size() != fact) return fail("P n=" + std::to_string(n));
  }
  const std::size_t expect_m11[] = {1, 2, 6};
  for (std::size_t n = 1; n <= 3; ++n)
    if (enumerate_slice(ClassSpec::parse("M=11"), n).size() != expect_m11[n - 1])
      return fail("M=11 n=" + std::to_string(n));
  return {true, "1,2,4,9,21,52 / n! / 1,2,6"};
}

Outcome minimality_witness() {
  const Permutation tau({3, 4, 5, 2, 1});
  const auto etas = one_coordinate_etas();
  std::vector<std::vector<Permutation>> perms;
  for (std::size_t n = 1; n <= 7; ++n) perms.push_back(all_permutations(n));
  std::size_t checks = 0;
  for (Eta gamma : etas) {
    const Matrix pattern = f_matrix_eta(gamma, tau);
    if (!contains_submatrix(f_matrix_eta(gamma, tau), pattern)) return fail("self containment failed");
    for (Eta other : etas) {
      if (other == gamma) continue;
      for (const auto& level : perms)
        for (const auto& s : level) {
          ++checks;
          if (contains_submatrix(f_matrix_eta(other, s), pattern))
            return fail("F_" + gamma.to_string() + "(tau) inside F_" + other.to_string() + "(" + s.to_string() + ")");
        }
    }
  }
  return {true, std::to_string(checks) + " containment checks"};
}

Outcome shuffle_reduction() {
  std::size_t checks = 0;
  for (Eta eta : all_etas()) {
    if (eta.one_coordinate()) continue;
    const Reduction red = reduce_eta(eta);
    if (!red.gamma.one_coordinate()) return fail("gamma not one-coordinate for " + eta.to_string());
    for (const auto& s : all_permutations(4)) {
      const Matrix big = f_matrix_eta(eta, shuffle_permutation(s, red.shuffle));
      const Matrix small = f_matrix_eta(red.gamma, s);
      if (!contains_submatrix(big, small)) return fail("eta " + eta.to_string() + " sigma " + s.to_string());
      const Placement p = shuffle_placement(4, red.shuffle);
      if (submatrix(big, p.rows, p.cols) != small) return fail("placement mismatch for " + eta.to_string());
      ++checks;
    }
  }
  return {true, std::to_string(checks) + " containments"};
}

Outcome approximation_soundness() {
  std::mt19937_64 rng(2024);
  std::size_t rich = 0, seq = 0, exact_checked = 0;
  for (int instance = 0; instance < 120; ++instance) {
    std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
    if (instance % 3 == 0) {
      rows = 2 + rng() % 4;
      cols = 2 + rng() % (9 - rows);
    }
    const Matrix m = oracle::random_bits(rng, rows, cols, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0);
    for (std::size_t k : {1u, 2u}) {
      ApproxOutcome out;
      try {
        out = approximate_twinwidth(m, k);
      } catch (const std::exception& e) {
        return fail("instance " + std::to_string(instance) + " k=" + std::to_string(k) + ": " + e.what());
      }
      if (!verify_outcome(m, out)) return fail("certificate rejected on instance " + std::to_string(instance));
      if (out.kind == ApproxOutcome::Kind::rich) {
        ++rich;
        if (rows + cols <= 10) {
          ++exact_checked;
          if (exact_twinwidth(m).value <= k) return fail("rich outcome but exact twin-width <= k");
        }
      } else {
        ++seq;
      }
    }
  }
  return {true, std::to_string(seq) + " sequences, " + std::to_string(rich) + " rich, " +
                    std::to_string(exact_checked) + " exact cross-checks"};
}

Outcome exact_oracle_consistency() {
  std::size_t checked = 0;
  auto check = [&](const Matrix& m) -> std::optional<std::string> {
    const auto oracle = oracle::enumerate_sequences(m);
    const std::size_t t = exact_twinwidth(m).value;
    const std::size_t v = min_kk_value(m).value;
    ++checked;
    if (t != oracle.best_sum) return "exact " + std::to_string(t) + " vs oracle " + std::to_string(oracle.best_sum);
    if (v != oracle.best_max) return "kk " + std::to_string(v) + " vs oracle " + std::to_string(oracle.best_max);
    if (2 * v < t || v > t) return "sandwich violated";
    return std::nullopt;
  };
  for (std::size_t r = 1; r <= 3; ++r)
    for (std::size_t c = 1; c <= 3; ++c)
      for (unsigned mask = 0; mask < (1u << (r * c)); ++mask)
        if (auto why = check(oracle::bits_from_mask(r, c, mask))) return fail(*why);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i)
    if (auto why = check(oracle::random_bits(rng, 4, 4))) return fail(*why);
  return {true, std::to_string(checked) + " matrices"};
}

Outcome marcus_tardos_finder() {
  if (mt_bound(2) != 6144) return fail("mt_bound(2) = " + mt_bound(2).str());
  std::mt19937_64 rng(99);
  std::size_t found = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 2 + i % 2;
    const Matrix m = oracle::random_bits(rng, 6, 6, 0.15 + 0.02 * (i % 20));
    auto got = find_mt_division(m, k);
    auto want = oracle::brute_mt(m, k);
    if (got.has_value() != want.has_value()) return fail("existence disagrees on instance " + std::to_string(i));
    if (got) {
      ++found;
      if (got->row_cuts() != want->first || got->col_cuts() != want->second)
        return fail("different first division on instance " + std::to_string(i));
    }
  }
  return {true, "200 instances, " + std::to_string(found) + " with a division"};
}

Outcome interpretation_round_trips() {
  auto check = [](const Graph& g) -> bool {
    const OrderedMatching m = encode_graph_as_matching(g);
    return decode_matching_to_graph(m) == g && fo_decode_matching(m) == g;
  };
  for (unsigned mask = 0; mask < 64; ++mask)
    if (!check(oracle::graph_from_mask(4, mask))) return fail("4-vertex graph mask " + std::to_string(mask));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20; ++i)
    if (!check(oracle::random_graph(rng, 6))) return fail("random 6-vertex graph " + std::to_string(i));
  return {true, "84 graphs, procedural and first-order"};
}

Outcome matrix_structure_boundary() {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Structure s = oracle::random_structure(rng, 5);
    const Matrix adj = adjacency_matrix(s);
    for (const auto& token : adj.alphabet().symbols()) {
      const AtomicType tau = parse_atomic_type(token, s.signature());
      if (zero_one_adjacency(i_tau_directed(s, tau)) != a_selection(adj, token))
        return fail("structure " + std::to_string(i) + " type " + token);
    }
  }
  std::size_t true_count = 0;
  for (int i = 0; i < 20; ++i) {
    const Structure s = oracle::random_structure(rng, 4);
    const Matrix adj = adjacency_matrix(s);
    oracle::SentenceGenerator gen(rng, adj.alphabet().symbols());
    const FormulaPtr phi = gen.sentence(1 + i % 3);
    const bool lhs = evaluate(matrix_structure(adj), phi);
    const bool rhs = evaluate(s, rewrite_matrix_sentence(phi, s.signature()));
    if (lhs != rhs) return fail("sentence " + to_string(phi));
    true_count += lhs;
  }
  return {true, "50 structures; 20 sentences (" + std::to_string(true_count) + " true)"};
}

Outcome latin_witness() {
  const auto inst = oracle::latin_instance();
  const LatinReport r = verify_rank_latin_division(inst.matrix, inst.witness, 2);
  if (!r.ok) return fail("clean instance rejected: " + r.reason);
  std::set<std::pair<std::size_t, std::size_t>> member_blocks(inst.member_blocks.begin(), inst.member_blocks.end());
  std::size_t flips = 0;
  for (std::size_t rb = 0; rb < 9; ++rb)
    for (std::size_t cb = 0; cb < 9; ++cb) {
      if (member_blocks.count({rb, cb})) continue;
      for (std::size_t i = 2 * rb; i < 2 * rb + 2; ++i)
        for (std::size_t j = 2 * cb; j < 2 * cb + 2; ++j) {
          std::vector<Symbol> e = inst.matrix.entries();
          e[i * 18 + j] ^= 1;
          const Matrix flipped(18, 18, inst.matrix.alphabet(), e);
          ++flips;
          if (verify_rank_latin_division(flipped, inst.witness, 2).ok)
            return fail("flip at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") accepted");
        }
    }
  return {true, "accepted; " + std::to_string(flips) + " cross-zone flips rejected"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "checkerboard grid rank", 10, checkerboard_rank},
      {2, "pattern injectivity", 30, pattern_injectivity},
      {3, "decode round trips", 60, decode_round_trips},
      {4, "growth counts", 300, growth_counts},
      {5, "minimality witness", 600, minimality_witness},
      {6, "shuffle reduction", 60, shuffle_reduction},
      {7, "approximation soundness", 900, approximation_soundness},
      {8, "exact oracle consistency", 600, exact_oracle_consistency},
      {9, "Marcus-Tardos finder", 300, marcus_tardos_finder},
      {10, "interpretation round trips", 300, interpretation_round_trips},
      {11, "matrix/structure boundary", 120, matrix_structure_boundary},
      {12, "Latin witness", 60, latin_witness},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.seconds) o = fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.seconds));
    if (!o.ok) ++failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " [" << timing << "] " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
