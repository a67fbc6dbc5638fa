#include "ordtww/divisions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "text.hpp"

namespace ordtww {

namespace {

void check_cuts(const IndexList& cuts, std::size_t n, const char* what) {
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] == 0 || cuts[i] >= n) throw InvalidArgument(std::string(what) + " cut out of range");
    if (i > 0 && cuts[i] <= cuts[i - 1]) throw InvalidArgument(std::string(what) + " cuts must increase");
  }
}

Interval part_of(const IndexList& cuts, std::size_t n, std::size_t i) {
  if (i > cuts.size()) throw InvalidArgument("part index out of range");
  std::size_t first = i == 0 ? 0 : cuts[i - 1];
  std::size_t last = i == cuts.size() ? n - 1 : cuts[i] - 1;
  return {first, last};
}

Partition interval_partition(Side side, const IndexList& cuts, std::size_t n) {
  std::vector<IndexList> blocks;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    Interval iv = part_of(cuts, n, i);
    IndexList b(iv.last - iv.first + 1);
    std::iota(b.begin(), b.end(), iv.first);
    blocks.push_back(std::move(b));
  }
  return Partition(side, n, std::move(blocks));
}

}  // namespace

Division::Division(std::size_t rows, std::size_t cols, IndexList row_cuts, IndexList col_cuts)
    : rows_(rows), cols_(cols), row_cuts_(std::move(row_cuts)), col_cuts_(std::move(col_cuts)) {
  if (rows_ == 0 || cols_ == 0) throw InvalidArgument("division dimensions must be positive");
  check_cuts(row_cuts_, rows_, "row");
  check_cuts(col_cuts_, cols_, "column");
}

Division Division::singletons(std::size_t rows, std::size_t cols) {
  IndexList rc(rows - 1), cc(cols - 1);
  std::iota(rc.begin(), rc.end(), std::size_t{1});
  std::iota(cc.begin(), cc.end(), std::size_t{1});
  return Division(rows, cols, rc, cc);
}

Division Division::whole(std::size_t rows, std::size_t cols) { return Division(rows, cols, {}, {}); }

Interval Division::row_part(std::size_t a) const { return part_of(row_cuts_, rows_, a); }
Interval Division::col_part(std::size_t b) const { return part_of(col_cuts_, cols_, b); }
Partition Division::row_partition() const { return interval_partition(Side::rows, row_cuts_, rows_); }
Partition Division::col_partition() const { return interval_partition(Side::cols, col_cuts_, cols_); }

Division Division::merged(Side side, std::size_t i) const {
  IndexList rc = row_cuts_, cc = col_cuts_;
  IndexList& cuts = side == Side::rows ? rc : cc;
  if (i >= cuts.size()) throw InvalidArgument("no part to merge with");
  cuts.erase(cuts.begin() + static_cast<std::ptrdiff_t>(i));
  return Division(rows_, cols_, rc, cc);
}

std::size_t count_distinct_rows(const Matrix& m, const Zone& z) {
  if (z.rows.last >= m.rows() || z.cols.last >= m.cols() || z.rows.first > z.rows.last || z.cols.first > z.cols.last)
    throw InvalidArgument("zone out of bounds");
  std::set<std::vector<Symbol>> seen;
  for (std::size_t i = z.rows.first; i <= z.rows.last; ++i) {
    std::vector<Symbol> v;
    for (std::size_t j = z.cols.first; j <= z.cols.last; ++j) v.push_back(m.at(i, j));
    seen.insert(std::move(v));
  }
  return seen.size();
}

std::size_t count_distinct_cols(const Matrix& m, const Zone& z) {
  if (z.rows.last >= m.rows() || z.cols.last >= m.cols() || z.rows.first > z.rows.last || z.cols.first > z.cols.last)
    throw InvalidArgument("zone out of bounds");
  std::set<std::vector<Symbol>> seen;
  for (std::size_t j = z.cols.first; j <= z.cols.last; ++j) {
    std::vector<Symbol> v;
    for (std::size_t i = z.rows.first; i <= z.rows.last; ++i) v.push_back(m.at(i, j));
    seen.insert(std::move(v));
  }
  return seen.size();
}

namespace {

bool zone_has_rank(const Matrix& m, const Zone& z, std::size_t k) {
  return count_distinct_rows(m, z) >= k || count_distinct_cols(m, z) >= k;
}

// Searches interval divisions with dr row parts and dc column parts whose zones all satisfy
// `ok`. `ok` must be monotone under extending the column interval. Row cuts are enumerated
// lexicographically; column cuts are placed greedily as early as possible.
template <class ZoneOk>
class DivisionSearch {
 public:
  DivisionSearch(const Matrix& m, std::size_t dr, std::size_t dc, ZoneOk ok) : m_(m), dr_(dr), dc_(dc), ok_(ok) {}

  std::optional<Division> run() {
    if (dr_ == 0 || dc_ == 0 || dr_ > m_.rows() || dc_ > m_.cols()) return std::nullopt;
    cuts_.clear();
    if (!extend(0)) return std::nullopt;
    IndexList col_cuts;
    columns(cuts_.size() + 1, m_.rows(), &col_cuts);
    return Division(m_.rows(), m_.cols(), cuts_, col_cuts);
  }

 private:
  Interval row_part(std::size_t a, std::size_t end) const {
    std::size_t first = a == 0 ? 0 : cuts_[a - 1];
    std::size_t last = a < cuts_.size() ? cuts_[a] - 1 : end - 1;
    return {first, last};
  }

  // Greedy column placement for the first `parts` row parts; the last of them ends at `end`.
  bool columns(std::size_t parts, std::size_t end, IndexList* out) const {
    std::size_t start = 0;
    for (std::size_t b = 0; b < dc_; ++b) {
      std::size_t remaining = dc_ - 1 - b;
      std::size_t last = m_.cols() - 1 - remaining;
      std::size_t stop = b + 1 == dc_ ? last : start;
      bool found = false;
      for (; stop <= last; ++stop) {
        bool all = true;
        for (std::size_t a = 0; a < parts && all; ++a) all = ok_(m_, Zone{row_part(a, end), {start, stop}});
        if (all) {
          found = true;
          break;
        }
      }
      if (!found) return false;
      if (b + 1 < dc_ && out) out->push_back(stop + 1);
      start = stop + 1;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth + 1 == dr_) return columns(dr_, m_.rows(), nullptr);
    std::size_t prev = cuts_.empty() ? 0 : cuts_.back();
    std::size_t remaining = dr_ - 1 - depth;
    for (std::size_t c = prev + 1; c + remaining <= m_.rows(); ++c) {
      cuts_.push_back(c);
      if (columns(depth + 1, c, nullptr) && extend(depth + 1)) return true;
      cuts_.pop_back();
    }
    return false;
  }

  const Matrix& m_;
  std::size_t dr_;
  std::size_t dc_;
  ZoneOk ok_;
  IndexList cuts_;
};

template <class ZoneOk>
std::optional<Division> search_division(const Matrix& m, std::size_t dr, std::size_t dc, ZoneOk ok) {
  return DivisionSearch<ZoneOk>(m, dr, dc, ok).run();
}

}  // namespace

bool is_rank_division(const Matrix& m, const Division& d, std::size_t k) {
  if (d.rows() != m.rows() || d.cols() != m.cols()) throw InvalidArgument("division does not match the matrix");
  if (d.row_parts() != d.col_parts()) throw InvalidArgument("rank divisions must have as many row as column parts");
  for (std::size_t a = 0; a < d.row_parts(); ++a)
    for (std::size_t b = 0; b < d.col_parts(); ++b)
      if (!zone_has_rank(m, Zone{d.row_part(a), d.col_part(b)}, k)) return false;
  return true;
}

std::optional<Division> find_rank_division(const Matrix& m, std::size_t k, std::size_t d) {
  return search_division(m, d, d, [k](const Matrix& mm, const Zone& z) { return zone_has_rank(mm, z, k); });
}

std::optional<Division> find_rank_division(const Matrix& m, std::size_t k) { return find_rank_division(m, k, k); }

std::size_t grid_rank(const Matrix& m, std::size_t max_k) {
  std::size_t best = 1;
  for (std::size_t k = 2; k <= max_k; ++k) {
    if (!find_rank_division(m, k)) break;
    best = k;
  }
  return std::min(best, std::max<std::size_t>(max_k, 1));
}

namespace {

// Rows of one part, each zone of the opposite side reduced to per-row segment ids.
class RemovalEngine {
 public:
  RemovalEngine(const Matrix& m, const Division& d, Side side, std::size_t part, std::size_t budget,
                std::size_t threshold, std::size_t node_cap)
      : budget_(budget), threshold_(threshold), node_cap_(node_cap) {
    if (d.rows() != m.rows() || d.cols() != m.cols()) throw InvalidArgument("division does not match the matrix");
    if (part >= d.parts(side)) throw InvalidArgument("part index out of range");
    Interval own = d.part(side, part);
    Side other = side == Side::rows ? Side::cols : Side::rows;
    zones_ = d.parts(other);
    lines_ = own.last - own.first + 1;
    seg_.assign(zones_, std::vector<std::uint32_t>(lines_));
    distinct_.assign(zones_, 0);
    for (std::size_t z = 0; z < zones_; ++z) {
      Interval iv = d.part(other, z);
      std::map<std::vector<Symbol>, std::uint32_t> ids;
      for (std::size_t l = 0; l < lines_; ++l) {
        std::vector<Symbol> v;
        for (std::size_t x = iv.first; x <= iv.last; ++x)
          v.push_back(side == Side::rows ? m.at(own.first + l, x) : m.at(x, own.first + l));
        auto [it, fresh] = ids.emplace(std::move(v), static_cast<std::uint32_t>(ids.size()));
        seg_[z][l] = it->second;
      }
      distinct_[z] = ids.size();
    }
  }

  std::optional<IndexList> run(WitnessStrategy strategy) {
    std::vector<char> removed(zones_, 0);
    std::size_t used = 0;
    for (std::size_t z = 0; z < zones_; ++z)
      if (distinct_[z] > threshold_) {
        removed[z] = 1;
        ++used;
      }
    if (used > budget_) return std::nullopt;
    if (threshold_ == 0) return std::nullopt;  // a non-empty part keeps at least one vector
    if (exceeds_cutoff(removed, used)) return std::nullopt;
    bool ok = strategy == WitnessStrategy::pair_branching ? branch(removed, used) : exhaust(removed, used);
    if (!ok) return std::nullopt;
    IndexList out;
    for (std::size_t z = 0; z < zones_; ++z)
      if (removed[z]) out.push_back(z);
    return out;
  }

 private:
  std::string key(const std::vector<char>& removed, std::size_t l) const {
    std::string k;
    k.reserve(zones_ * 4);
    for (std::size_t z = 0; z < zones_; ++z)
      if (!removed[z]) k.append(reinterpret_cast<const char*>(&seg_[z][l]), sizeof(std::uint32_t));
    return k;
  }

  // Collects representatives of distinct vectors, stopping after `limit` of them.
  std::vector<std::size_t> representatives(const std::vector<char>& removed, std::size_t limit) const {
    std::unordered_set<std::string> seen;
    std::vector<std::size_t> reps;
    for (std::size_t l = 0; l < lines_ && reps.size() < limit; ++l)
      if (seen.insert(key(removed, l)).second) reps.push_back(l);
    return reps;
  }

  std::size_t count_distinct(const std::vector<char>& removed) const {
    return representatives(removed, lines_ + 1).size();
  }

  bool exceeds_cutoff(const std::vector<char>& removed, std::size_t used) const {
    // Each kept zone has at most threshold distinct segments, so a witness leaves at most
    // threshold * threshold^(budget-used) distinct vectors before removal.
    std::size_t bound = threshold_;
    for (std::size_t i = used; i < budget_ && bound <= lines_; ++i) bound *= threshold_;
    return bound < lines_ && count_distinct(removed) > bound;
  }

  void tick() {
    if (++nodes_ > node_cap_)
      throw ResourceLimit("removal witness search exceeded " + std::to_string(node_cap_) + " nodes");
  }

  bool branch(std::vector<char>& removed, std::size_t used) {
    tick();
    if (!visited_.insert(std::string(removed.begin(), removed.end())).second) return false;
    auto reps = representatives(removed, threshold_ + 1);
    if (reps.size() <= threshold_) return true;
    if (used == budget_) return false;
    for (std::size_t p = 0; p < reps.size(); ++p)
      for (std::size_t q = p + 1; q < reps.size(); ++q) {
        std::vector<std::size_t> diff;
        for (std::size_t z = 0; z < zones_; ++z)
          if (!removed[z] && seg_[z][reps[p]] != seg_[z][reps[q]]) diff.push_back(z);
        if (used + diff.size() > budget_) continue;
        for (auto z : diff) removed[z] = 1;
        if (branch(removed, used + diff.size())) return true;
        for (auto z : diff) removed[z] = 0;
      }
    return false;
  }

  bool exhaust(std::vector<char>& removed, std::size_t used) {
    // Zones inducing the same partition of the lines are interchangeable; keeping more than
    // the remaining budget of them is pointless since one copy always survives.
    std::size_t spare = budget_ - used;
    std::map<std::vector<std::uint32_t>, std::size_t> copies;
    std::vector<std::size_t> candidates;
    for (std::size_t z = 0; z < zones_; ++z)
      if (!removed[z] && copies[seg_[z]]++ <= spare) candidates.push_back(z);
    if (candidates.size() > 40) throw ResourceLimit("too many candidate parts for exhaustive witness search");
    const std::uint64_t limit = std::uint64_t{1} << candidates.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {  // increasing masks = colex order
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) > spare) continue;
      tick();
      for (std::size_t c = 0; c < candidates.size(); ++c) removed[candidates[c]] = (mask >> c) & 1 ? 1 : 0;
      if (count_distinct(removed) <= threshold_) return true;
    }
    for (auto c : candidates) removed[c] = 0;
    return false;
  }

  std::size_t budget_;
  std::size_t threshold_;
  std::size_t node_cap_;
  std::size_t zones_ = 0;
  std::size_t lines_ = 0;
  std::vector<std::vector<std::uint32_t>> seg_;
  std::vector<std::size_t> distinct_;
  std::unordered_set<std::string> visited_;
  std::size_t nodes_ = 0;
};

}  // namespace

std::optional<IndexList> find_removal_witness(const Matrix& m, const Division& d, Side side, std::size_t part,
                                              std::size_t budget, std::size_t threshold,
                                              WitnessStrategy strategy, std::size_t node_cap) {
  return RemovalEngine(m, d, side, part, budget, threshold, node_cap).run(strategy);
}

RichReport is_rich_division(const Matrix& m, const Division& d, std::size_t k, WitnessStrategy strategy,
                            std::size_t node_cap) {
  RichReport report;
  if (d.rows() != m.rows() || d.cols() != m.cols()) throw InvalidArgument("division does not match the matrix");
  if (k == 0) return report;
  for (Side side : {Side::rows, Side::cols})
    for (std::size_t p = 0; p < d.parts(side); ++p)
      if (auto w = find_removal_witness(m, d, side, p, k, k - 1, strategy, node_cap)) {
        report.rich = false;
        report.side = side;
        report.part = p;
        report.removed = *w;
        return report;
      }
  return report;
}

BigInt mt_bound(std::size_t k) {
  if (k < 1) throw InvalidArgument("mt_bound needs k >= 1");
  BigInt num = BigInt(8) * BigInt(k + 1) * BigInt(k + 1);
  num <<= static_cast<unsigned>(4 * k);
  return (num + 2) / 3;
}

std::optional<Division> find_mt_division(const Matrix& m, std::size_t k) {
  auto zero = m.alphabet().zero();
  if (!zero) throw InvalidArgument("Marcus-Tardos search needs a '0' symbol in the alphabet");
  Symbol z0 = *zero;
  return search_division(m, k, k, [z0](const Matrix& mm, const Zone& z) {
    for (std::size_t i = z.rows.first; i <= z.rows.last; ++i)
      for (std::size_t j = z.cols.first; j <= z.cols.last; ++j)
        if (mm.at(i, j) != z0) return true;
    return false;
  });
}

std::optional<Coarsening> monochromatic_coarsening(const Matrix& labels, std::size_t d) {
  if (d == 0) throw InvalidArgument("coarsening size must be positive");
  if (d > labels.rows() || d > labels.cols()) return std::nullopt;
  IndexList rows;
  std::optional<Coarsening> found;
  auto check = [&]() {
    for (Symbol s = 0; s < labels.alphabet().size(); ++s) {
      IndexList cols;
      for (std::size_t j = 0; j < labels.cols() && cols.size() < d; ++j) {
        bool all = std::all_of(rows.begin(), rows.end(), [&](std::size_t i) { return labels.at(i, j) == s; });
        if (all) cols.push_back(j);
      }
      if (cols.size() == d) {
        found = Coarsening{rows, cols, s};
        return true;
      }
    }
    return false;
  };
  auto rec = [&](auto&& self, std::size_t first) -> bool {
    if (rows.size() == d) return check();
    for (std::size_t i = first; i + (d - rows.size()) <= labels.rows(); ++i) {
      rows.push_back(i);
      if (self(self, i + 1)) return true;
      rows.pop_back();
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

std::size_t finite_to_binary_rank(std::size_t k, std::size_t alphabet_size) {
  if (alphabet_size == 0) throw InvalidArgument("empty alphabet");
  std::size_t base = k == 0 ? 0 : k - 1;
  std::size_t power = 1;
  for (std::size_t i = 0; i + 1 < alphabet_size; ++i) power *= base;
  return power + 1;
}

std::optional<SelectedDivision> select_rank_division(const Matrix& m, std::size_t k, std::size_t d) {
  if (d == 0) throw InvalidArgument("division size must be positive");
  const std::size_t big_k = finite_to_binary_rank(k, m.alphabet().size());
  std::vector<Symbol> letters;
  auto zero = m.alphabet().zero();
  for (Symbol s = 0; s < m.alphabet().size(); ++s)
    if (!zero || s != *zero) letters.push_back(s);
  if (zero) letters.push_back(*zero);

  std::vector<Matrix> selections;
  for (Symbol s = 0; s < m.alphabet().size(); ++s) selections.push_back(a_selection(m, m.alphabet().symbol(s)));

  for (std::size_t big_d = d; big_d <= std::min(m.rows(), m.cols()); ++big_d) {
    auto division = find_rank_division(m, big_k, big_d);
    if (!division) continue;
    std::vector<Symbol> cells(big_d * big_d);
    bool labelled = true;
    for (std::size_t a = 0; a < big_d && labelled; ++a)
      for (std::size_t b = 0; b < big_d && labelled; ++b) {
        Zone z{division->row_part(a), division->col_part(b)};
        auto it = std::find_if(letters.begin(), letters.end(),
                               [&](Symbol s) { return zone_has_rank(selections[s], z, k); });
        if (it == letters.end())
          labelled = false;
        else
          cells[a * big_d + b] = *it;
      }
    if (!labelled) continue;
    Matrix grid(big_d, big_d, m.alphabet(), cells);
    auto co = monochromatic_coarsening(grid, d);
    if (!co) continue;
    auto coarsen = [&](const IndexList& chosen, const IndexList& cuts) {
      IndexList out;
      for (std::size_t t = 0; t + 1 < chosen.size(); ++t) out.push_back(cuts[chosen[t]]);
      return out;
    };
    // chosen block t ends right before block chosen[t]+1 starts
    IndexList row_cuts = coarsen(co->rows, division->row_cuts());
    IndexList col_cuts = coarsen(co->cols, division->col_cuts());
    Division result(m.rows(), m.cols(), row_cuts, col_cuts);
    const Matrix& sel = selections[co->symbol];
    if (!is_rank_division(sel, result, k)) throw InternalInvariant("coarsened selection lost its rank");
    return SelectedDivision{m.alphabet().symbol(co->symbol), result};
  }
  return std::nullopt;
}

std::vector<Matrix> nk_matrices(std::size_t k) {
  if (k < 1) throw InvalidArgument("N_k needs k >= 1");
  auto make = [k](auto rule) {
    std::vector<std::vector<int>> rows(k, std::vector<int>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) rows[i][j] = rule(i, j) ? 1 : 0;
    return Matrix::from_bits(rows);
  };
  std::vector<Matrix> out;
  out.push_back(make([](std::size_t i, std::size_t j) { return i == j; }));
  out.push_back(make([](std::size_t i, std::size_t j) { return i != j; }));
  out.push_back(make([](std::size_t i, std::size_t j) { return i <= j; }));
  out.push_back(make([](std::size_t i, std::size_t j) { return i >= j; }));
  for (std::size_t t = 0; t < 4; ++t) out.push_back(out[t].mirror_rows());
  return out;
}

std::optional<NkMatch> find_nk_submatrix(const Matrix& m, std::size_t k) {
  auto members = nk_matrices(k);
  for (std::size_t t = 0; t < members.size(); ++t)
    if (auto p = contains_submatrix(m, members[t])) return NkMatch{static_cast<int>(t + 1), *p};
  return std::nullopt;
}

LatinReport verify_rank_latin_division(const Matrix& m, const LatinWitness& w, std::size_t k) {
  const Division& d = w.division;
  const std::size_t parts = d.row_parts();
  auto cell_name = [](std::size_t i, std::size_t j) {
    return "cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  };
  if (k < 1) throw InvalidArgument("Latin divisions need k >= 1");
  if (d.rows() != m.rows() || d.cols() != m.cols())
    throw CertificateInvalid("division does not match the matrix", "division");
  if (d.col_parts() != parts) throw CertificateInvalid("division must be square", "division");
  if (w.cells.size() != parts * parts)
    throw CertificateInvalid("expected " + std::to_string(parts * parts) + " cells", "division");
  auto one = m.alphabet().find("1");
  auto zero = m.alphabet().find("0");
  std::vector<const LatinCell*> grid(parts * parts, nullptr);
  for (const auto& c : w.cells) {
    if (c.i >= parts || c.j >= parts) throw CertificateInvalid("cell outside the division", cell_name(c.i, c.j));
    if (grid[c.i * parts + c.j]) throw CertificateInvalid("cell listed twice", cell_name(c.i, c.j));
    if (c.member < 1 || c.member > 8) throw CertificateInvalid("member must be in 1..8", cell_name(c.i, c.j));
    Interval rp = d.row_part(c.i), cp = d.col_part(c.j);
    if (c.row < rp.first || c.row + k - 1 > rp.last || c.col < cp.first || c.col + k - 1 > cp.last)
      throw CertificateInvalid("embedded member leaves its cell", cell_name(c.i, c.j));
    grid[c.i * parts + c.j] = &c;
  }

  LatinReport report;
  auto fail = [&](std::string reason, const LatinCell* a, const LatinCell* b = nullptr) {
    report.ok = false;
    report.reason = std::move(reason);
    if (a) report.cell = std::make_pair(a->i, a->j);
    if (b) report.cross_with = std::make_pair(b->i, b->j);
    return report;
  };

  std::vector<int> row_owner(m.rows(), 0), col_owner(m.cols(), 0);
  for (const auto& c : w.cells)
    for (std::size_t t = 0; t < k; ++t) {
      ++row_owner[c.row + t];
      ++col_owner[c.col + t];
    }
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (row_owner[i] != 1) return fail("row " + std::to_string(i + 1) + " is not covered exactly once", nullptr);
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (col_owner[j] != 1) return fail("column " + std::to_string(j + 1) + " is not covered exactly once", nullptr);

  auto members = nk_matrices(k);
  for (const auto& c : w.cells) {
    const Matrix& want = members[static_cast<std::size_t>(c.member - 1)];
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const std::string& t = m.token(c.row + a, c.col + b);
        if (t != want.token(a, b)) return fail(cell_name(c.i, c.j) + " differs from its member", &c);
      }
  }
  for (const auto& x : w.cells)
    for (const auto& y : w.cells) {
      if (&x == &y) continue;
      Symbol first = m.at(x.row, y.col);
      bool ok = (one && first == *one) || (zero && first == *zero);
      for (std::size_t a = 0; a < k && ok; ++a)
        for (std::size_t b = 0; b < k && ok; ++b) ok = m.at(x.row + a, y.col + b) == first;
      if (!ok)
        return fail("rows of " + cell_name(x.i, x.j) + " meet columns of " + cell_name(y.i, y.j) +
                        " in a non-constant zone",
                    &x, &y);
    }
  return report;
}

Division parse_division(std::string_view input, std::size_t rows, std::size_t cols) {
  std::optional<IndexList> rc, cc;
  for (const auto& line : text::tokenize_lines(input)) {
    const auto& tag = line.tokens[0];
    if (tag != "R" && tag != "C") throw ParseError("division line must start with R or C", line.number);
    auto& target = tag == "R" ? rc : cc;
    if (target) throw ParseError("duplicate " + tag + " line", line.number);
    IndexList cuts;
    for (std::size_t t = 1; t < line.tokens.size(); ++t)
      cuts.push_back(text::parse_count(line.tokens[t], line.number, "cut position"));
    target = std::move(cuts);
  }
  try {
    return Division(rows, cols, rc.value_or(IndexList{}), cc.value_or(IndexList{}));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string serialize_division(const Division& d) {
  std::ostringstream out;
  out << 'R';
  for (auto c : d.row_cuts()) out << ' ' << c;
  out << "\nC";
  for (auto c : d.col_cuts()) out << ' ' << c;
  out << '\n';
  return out.str();
}

LatinWitness parse_latin_witness(std::string_view input, std::size_t rows, std::size_t cols) {
  std::string division_text;
  std::vector<LatinCell> cells;
  for (const auto& line : text::tokenize_lines(input)) {
    if (line.tokens[0] == "R" || line.tokens[0] == "C") {
      for (const auto& t : line.tokens) division_text += t + " ";
      division_text += "\n";
      continue;
    }
    if (line.tokens.size() != 5) throw ParseError("cell line must be 'i j member r1 c1'", line.number);
    std::size_t v[5];
    for (int t = 0; t < 5; ++t) {
      v[t] = text::parse_count(line.tokens[static_cast<std::size_t>(t)], line.number, "positive integer");
      if (v[t] == 0) throw ParseError("cell coordinates are 1-based", line.number);
    }
    if (v[2] > 8) throw ParseError("member must be in 1..8", line.number);
    cells.push_back({v[0] - 1, v[1] - 1, static_cast<int>(v[2]), v[3] - 1, v[4] - 1});
  }
  return LatinWitness{parse_division(division_text, rows, cols), std::move(cells)};
}

std::string serialize_latin_witness(const LatinWitness& w) {
  std::ostringstream out;
  out << serialize_division(w.division);
  for (const auto& c : w.cells)
    out << c.i + 1 << ' ' << c.j + 1 << ' ' << c.member << ' ' << c.row + 1 << ' ' << c.col + 1 << '\n';
  return out.str();
}

}  // namespace ordtww
