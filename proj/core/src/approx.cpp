#include "ordtww/approx.hpp"

#include <map>
#include <tuple>

namespace ordtww {

ApproxParams ApproxParams::make(std::size_t k, std::size_t alphabet_size) {
  if (k < 1) throw InvalidArgument("approximation needs k >= 1");
  if (alphabet_size < 1) throw InvalidArgument("empty alphabet");
  ApproxParams p;
  p.k = k;
  p.r = 4 * k * (k + 1) + 1;
  p.alphabet_size = alphabet_size;
  BigInt threshold = boost::multiprecision::pow(BigInt(alphabet_size), static_cast<unsigned>(p.r - 1));
  p.w = BigInt(p.r) * boost::multiprecision::pow(threshold, static_cast<unsigned>(p.r));
  return p;
}

std::optional<IndexList> check_property(const Matrix& m, const Division& d, Side side, std::size_t part,
                                        std::size_t r, WitnessStrategy strategy) {
  if (r < 1) throw InvalidArgument("property level must be positive");
  return find_removal_witness(m, d, side, part, r, r - 1, strategy);
}

std::optional<IndexList> check_property_R(const Matrix& m, const Division& d, std::size_t part, std::size_t r) {
  return check_property(m, d, Side::rows, part, r);
}

std::optional<IndexList> check_property_C(const Matrix& m, const Division& d, std::size_t part, std::size_t r) {
  return check_property(m, d, Side::cols, part, r);
}

GreedyResult greedy_coarsen(const Matrix& m, std::size_t k) {
  const ApproxParams params = ApproxParams::make(k, m.alphabet().size());
  GreedyResult result;
  Division current = Division::singletons(m.rows(), m.cols());
  result.levels.push_back(current);
  // A part's property depends only on its interval and the opposite side's division,
  // so cached answers for one side stay valid until the other side changes.
  std::map<std::pair<std::size_t, std::size_t>, bool> cache[2];
  for (;;) {
    bool merged = false;
    for (Side side : {Side::rows, Side::cols}) {
      auto& memo = cache[side == Side::rows ? 0 : 1];
      for (std::size_t i = 0; i + 1 < current.parts(side); ++i) {
        Interval joined{current.part(side, i).first, current.part(side, i + 1).last};
        auto key = std::make_pair(joined.first, joined.last);
        auto it = memo.find(key);
        bool ok = false;
        if (it != memo.end()) {
          ok = it->second;
        } else {
          Division candidate = current.merged(side, i);
          ok = check_property(m, candidate, side, i, params.r).has_value();
          memo.emplace(key, ok);
        }
        if (!ok) continue;
        current = current.merged(side, i);
        result.levels.push_back(current);
        result.log.push_back({side, i, i + 1});
        cache[side == Side::rows ? 1 : 0].clear();
        merged = true;
        break;
      }
      if (merged) break;
    }
    if (!merged) break;
  }
  result.complete = current.row_parts() == 1 && current.col_parts() == 1;
  return result;
}

Division pair_coarsen(const Division& d, OddPart policy) {
  auto coarsen = [policy](const IndexList& cuts) {
    IndexList out;
    for (std::size_t t = 1; t < cuts.size(); t += 2) out.push_back(cuts[t]);
    const std::size_t parts = cuts.size() + 1;
    if (policy == OddPart::absorb && parts % 2 == 1 && !out.empty()) out.pop_back();
    return out;
  };
  return Division(d.rows(), d.cols(), coarsen(d.row_cuts()), coarsen(d.col_cuts()));
}

namespace {

bool zone_is_full(const Matrix& m, const Zone& z, std::size_t r) {
  return count_distinct_rows(m, z) >= r && count_distinct_cols(m, z) >= r;
}

// Groups the lines of each part of `side` by their restriction to the opposite-side
// indices that avoid full zones.
Partition refine_side(const Matrix& m, const Division& d, Side side, std::size_t r) {
  const Side other = side == Side::rows ? Side::cols : Side::rows;
  const std::size_t ground = side == Side::rows ? m.rows() : m.cols();
  std::vector<std::size_t> labels(ground);
  std::size_t next = 0;
  for (std::size_t p = 0; p < d.parts(side); ++p) {
    if (!check_property(m, d, side, p, r))
      throw InternalInvariant("refinement requested for a part violating its property");
    Interval own = d.part(side, p);
    IndexList outside;
    for (std::size_t q = 0; q < d.parts(other); ++q) {
      Interval iv = d.part(other, q);
      Zone z = side == Side::rows ? Zone{own, iv} : Zone{iv, own};
      if (zone_is_full(m, z, r)) continue;
      for (std::size_t x = iv.first; x <= iv.last; ++x) outside.push_back(x);
    }
    std::map<std::vector<Symbol>, std::size_t> groups;
    for (std::size_t l = own.first; l <= own.last; ++l) {
      std::vector<Symbol> v;
      for (auto x : outside) v.push_back(side == Side::rows ? m.at(l, x) : m.at(x, l));
      auto [it, fresh] = groups.emplace(std::move(v), next);
      if (fresh) ++next;
      labels[l] = it->second;
    }
  }
  return Partition::from_labels(side, labels);
}

// Appends single merges turning `from` into `to`; `from` must refine `to`.
void fill_side(Partition from, const Partition& to, std::vector<std::pair<Partition, Partition>>& steps) {
  if (!from.refines(to)) throw InternalInvariant("refined partitions do not form a chain");
  while (from.size() > to.size()) {
    bool done = false;
    for (std::size_t x = 0; x < from.size() && !done; ++x)
      for (std::size_t y = x + 1; y < from.size() && !done; ++y)
        if (to.block_of(from.block(x)[0]) == to.block_of(from.block(y)[0])) {
          from = from.merged(x, y);
          auto prev = steps.back();
          if (from.side() == Side::rows)
            steps.emplace_back(from, prev.second);
          else
            steps.emplace_back(prev.first, from);
          done = true;
        }
    if (!done) throw InternalInvariant("no mergeable pair while filling the chain");
  }
}

}  // namespace

std::pair<Partition, Partition> refine_to_partition(const Matrix& m, const Division& d, std::size_t r) {
  if (d.rows() != m.rows() || d.cols() != m.cols()) throw InvalidArgument("division does not match the matrix");
  return {refine_side(m, d, Side::rows, r), refine_side(m, d, Side::cols, r)};
}

ApproxOutcome approximate_twinwidth(const Matrix& m, std::size_t k) {
  ApproxOutcome out;
  out.params = ApproxParams::make(k, m.alphabet().size());
  out.greedy = greedy_coarsen(m, k);
  const std::size_t r = out.params.r;

  if (!out.greedy.complete) {
    out.kind = ApproxOutcome::Kind::rich;
    out.richness = out.params.richness();
    out.division = pair_coarsen(out.greedy.levels.back(), OddPart::absorb);
    if (!is_rich_division(m, *out.division, out.richness).rich)
      throw InternalInvariant("pair-coarsened stuck division is not " + std::to_string(out.richness) + "-rich");
    return out;
  }

  out.kind = ApproxOutcome::Kind::sequence;
  std::vector<std::pair<Partition, Partition>> steps;
  steps.emplace_back(Partition::singletons(Side::rows, m.rows()), Partition::singletons(Side::cols, m.cols()));
  auto advance = [&steps](const std::pair<Partition, Partition>& target) {
    fill_side(steps.back().first, target.first, steps);
    fill_side(steps.back().second, target.second, steps);
  };
  for (const auto& level : out.greedy.levels) advance(refine_to_partition(m, level, r));
  advance({Partition::whole(Side::rows, m.rows()), Partition::whole(Side::cols, m.cols())});

  out.sequence = ContractionSequence::from_steps(steps);
  out.profile = verify_sequence(m, *out.sequence);
  if (BigInt(out.profile.max_overlap) > out.params.w || BigInt(out.profile.max_error) > out.params.error_bound())
    throw InternalInvariant("approximate sequence exceeds its claimed profile bound");
  return out;
}

bool verify_outcome(const Matrix& m, const ApproxOutcome& outcome) {
  if (outcome.kind == ApproxOutcome::Kind::rich) {
    if (!outcome.division) return false;
    return is_rich_division(m, *outcome.division, outcome.richness).rich;
  }
  if (!outcome.sequence) return false;
  try {
    SequenceProfile p = verify_sequence(m, *outcome.sequence);
    return p == outcome.profile && BigInt(p.max_overlap) <= outcome.params.w &&
           BigInt(p.max_error) <= outcome.params.error_bound();
  } catch (const CertificateInvalid&) {
    return false;
  }
}

}  // namespace ordtww
