#include "ordtww/contraction.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "text.hpp"

namespace ordtww {

Partition::Partition(Side side, std::size_t ground, std::vector<IndexList> blocks)
    : side_(side), ground_(ground), blocks_(std::move(blocks)) {
  std::vector<char> seen(ground_, 0);
  for (auto& b : blocks_) {
    if (b.empty()) throw InvalidArgument("partition block is empty");
    std::sort(b.begin(), b.end());
    for (auto e : b) {
      if (e >= ground_) throw InvalidArgument("partition element out of range");
      if (seen[e]) throw InvalidArgument("partition blocks overlap");
      seen[e] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw InvalidArgument("partition does not cover the ground set");
  std::sort(blocks_.begin(), blocks_.end(), [](const IndexList& l, const IndexList& r) { return l[0] < r[0]; });
}

Partition Partition::singletons(Side side, std::size_t ground) {
  std::vector<IndexList> blocks(ground);
  for (std::size_t i = 0; i < ground; ++i) blocks[i] = {i};
  return Partition(side, ground, std::move(blocks));
}

Partition Partition::whole(Side side, std::size_t ground) {
  IndexList all(ground);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return Partition(side, ground, {all});
}

Partition Partition::from_labels(Side side, const std::vector<std::size_t>& labels) {
  std::vector<std::size_t> ids;
  std::vector<IndexList> blocks;
  for (std::size_t e = 0; e < labels.size(); ++e) {
    auto it = std::find(ids.begin(), ids.end(), labels[e]);
    if (it == ids.end()) {
      ids.push_back(labels[e]);
      blocks.push_back({e});
    } else {
      blocks[static_cast<std::size_t>(it - ids.begin())].push_back(e);
    }
  }
  return Partition(side, labels.size(), std::move(blocks));
}

std::size_t Partition::block_of(std::size_t e) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (std::binary_search(blocks_[i].begin(), blocks_[i].end(), e)) return i;
  throw InvalidArgument("element not in partition");
}

std::size_t Partition::block_with_min(std::size_t min_element) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i][0] == min_element) return i;
  throw InvalidArgument("no block with minimum " + std::to_string(min_element + 1));
}

Partition Partition::merged(std::size_t a, std::size_t b) const {
  if (a == b || a >= blocks_.size() || b >= blocks_.size()) throw InvalidArgument("invalid block pair to merge");
  std::vector<IndexList> blocks;
  IndexList joined = blocks_[a];
  joined.insert(joined.end(), blocks_[b].begin(), blocks_[b].end());
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (i != a && i != b) blocks.push_back(blocks_[i]);
  blocks.push_back(std::move(joined));
  return Partition(side_, ground_, std::move(blocks));
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.ground_ != ground_) return false;
  std::vector<std::size_t> owner(ground_);
  for (std::size_t i = 0; i < coarser.blocks_.size(); ++i)
    for (auto e : coarser.blocks_[i]) owner[e] = i;
  for (const auto& b : blocks_)
    for (auto e : b)
      if (owner[e] != owner[b[0]]) return false;
  return true;
}

Interval span(const IndexList& block) {
  if (block.empty()) throw InvalidArgument("span of an empty block");
  auto [lo, hi] = std::minmax_element(block.begin(), block.end());
  return {*lo, *hi};
}

DegreeReport overlap_degree(const Partition& p) {
  DegreeReport r;
  r.per_block.assign(p.size(), 0);
  std::vector<Interval> spans;
  for (const auto& b : p.blocks()) spans.push_back(span(b));
  for (std::size_t i = 0; i < spans.size(); ++i)
    for (std::size_t j = i + 1; j < spans.size(); ++j)
      if (spans[i].first <= spans[j].last && spans[j].first <= spans[i].last) {
        ++r.per_block[i];
        ++r.per_block[j];
      }
  for (auto c : r.per_block) r.max = std::max(r.max, c);
  return r;
}

ErrorReport error_value(const Matrix& m, const Partition& rows, const Partition& cols) {
  if (rows.ground() != m.rows() || cols.ground() != m.cols())
    throw InvalidArgument("partitions do not match the matrix dimensions");
  ErrorReport r;
  r.row_parts.assign(rows.size(), 0);
  r.col_parts.assign(cols.size(), 0);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const auto& rb = rows.block(a);
      const auto& cb = cols.block(b);
      Symbol first = m.at(rb[0], cb[0]);
      bool constant = true;
      for (std::size_t i = 0; i < rb.size() && constant; ++i)
        for (std::size_t j = 0; j < cb.size() && constant; ++j) constant = m.at(rb[i], cb[j]) == first;
      if (!constant) {
        ++r.row_parts[a];
        ++r.col_parts[b];
      }
    }
  for (auto c : r.row_parts) r.max = std::max(r.max, c);
  for (auto c : r.col_parts) r.max = std::max(r.max, c);
  return r;
}

std::vector<std::pair<Partition, Partition>> ContractionSequence::steps() const {
  if (rows == 0 || cols == 0) throw CertificateInvalid("sequence dimensions must be positive", "step 1");
  if (merges.size() != rows + cols - 2)
    throw CertificateInvalid("sequence must have " + std::to_string(rows + cols - 1) + " steps, got " +
                                 std::to_string(merges.size() + 1),
                             "step " + std::to_string(merges.size() + 1));
  std::vector<std::pair<Partition, Partition>> out;
  out.emplace_back(Partition::singletons(Side::rows, rows), Partition::singletons(Side::cols, cols));
  for (std::size_t s = 0; s < merges.size(); ++s) {
    const auto& mg = merges[s];
    const auto& [pr, pc] = out.back();
    const Partition& p = mg.side == Side::rows ? pr : pc;
    std::string where = "step " + std::to_string(s + 2);
    std::size_t a = 0, b = 0;
    try {
      a = p.block_with_min(mg.a);
      b = p.block_with_min(mg.b);
    } catch (const InvalidArgument& e) {
      throw CertificateInvalid(std::string("merge refers to a missing block: ") + e.what(), where);
    }
    if (a == b) throw CertificateInvalid("merge of a block with itself", where);
    if (mg.side == Side::rows)
      out.emplace_back(pr.merged(a, b), pc);
    else
      out.emplace_back(pr, pc.merged(a, b));
  }
  return out;
}

ContractionSequence ContractionSequence::from_steps(const std::vector<std::pair<Partition, Partition>>& steps) {
  if (steps.empty()) throw CertificateInvalid("empty partition chain", "step 1");
  ContractionSequence s;
  s.rows = steps.front().first.ground();
  s.cols = steps.front().second.ground();
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const auto& [r0, c0] = steps[i - 1];
    const auto& [r1, c1] = steps[i];
    std::string where = "step " + std::to_string(i + 1);
    bool row_step = r1.size() + 1 == r0.size() && c1 == c0;
    bool col_step = c1.size() + 1 == c0.size() && r1 == r0;
    if (!row_step && !col_step) throw CertificateInvalid("step is not a single merge", where);
    const Partition& before = row_step ? r0 : c0;
    const Partition& after = row_step ? r1 : c1;
    if (!before.refines(after)) throw CertificateInvalid("step is not a single merge", where);
    std::vector<std::size_t> joined;
    for (const auto& b : after.blocks()) {
      std::size_t parts = 0;
      for (const auto& old : before.blocks())
        if (std::binary_search(b.begin(), b.end(), old[0])) {
          ++parts;
          if (parts <= 2) joined.push_back(old[0]);
        }
      if (parts == 2) break;
      joined.clear();
    }
    if (joined.size() != 2) throw CertificateInvalid("step is not a single merge", where);
    s.merges.push_back({row_step ? Side::rows : Side::cols, joined[0], joined[1]});
  }
  return s;
}

SequenceProfile verify_steps(const Matrix& m, const std::vector<std::pair<Partition, Partition>>& steps) {
  if (steps.size() != m.rows() + m.cols() - 1)
    throw CertificateInvalid("sequence must have " + std::to_string(m.rows() + m.cols() - 1) + " steps",
                             "step " + std::to_string(steps.size()));
  const auto& [r0, c0] = steps.front();
  if (r0.ground() != m.rows() || c0.ground() != m.cols())
    throw CertificateInvalid("partitions do not match the matrix dimensions", "step 1");
  if (r0.size() != m.rows() || c0.size() != m.cols())
    throw CertificateInvalid("first step must consist of singletons", "step 1");
  const auto& [rl, cl] = steps.back();
  if (rl.size() != 1 || cl.size() != 1)
    throw CertificateInvalid("last step must be the two full blocks", "step " + std::to_string(steps.size()));
  ContractionSequence::from_steps(steps);  // single-merge structure
  SequenceProfile p;
  for (const auto& [pr, pc] : steps) {
    if (pr.side() != Side::rows || pc.side() != Side::cols || pr.ground() != m.rows() || pc.ground() != m.cols())
      throw CertificateInvalid("partition sides or sizes are inconsistent", "sequence");
    p.max_overlap = std::max({p.max_overlap, overlap_degree(pr).max, overlap_degree(pc).max});
    p.max_error = std::max(p.max_error, error_value(m, pr, pc).max);
  }
  return p;
}

SequenceProfile verify_sequence(const Matrix& m, const ContractionSequence& s) {
  if (s.rows != m.rows() || s.cols != m.cols())
    throw CertificateInvalid("sequence dimensions do not match the matrix", "step 1");
  return verify_steps(m, s.steps());
}

namespace {

// Label-based state for the exact search: label[e] = minimum element of e's block.
class ExactSearch {
 public:
  ExactSearch(const Matrix& m, std::size_t k, std::size_t e) : m_(m), k_(k), e_(e) {}

  bool run(std::vector<Merge>* merges) {
    std::vector<std::size_t> rows(m_.rows()), cols(m_.cols());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    path_.clear();
    bool ok = dfs(rows, cols);
    if (ok && merges) *merges = path_;
    return ok;
  }

 private:
  static std::vector<std::size_t> block_mins(const std::vector<std::size_t>& labels) {
    std::vector<std::size_t> mins;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == i) mins.push_back(i);
    return mins;
  }

  static std::size_t overlap(const std::vector<std::size_t>& labels) {
    std::vector<std::size_t> last(labels.size(), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) last[labels[i]] = i;
    auto mins = block_mins(labels);
    std::size_t best = 0;
    for (auto a : mins) {
      std::size_t c = 0;
      for (auto b : mins)
        if (a != b && a <= last[b] && b <= last[a]) ++c;
      best = std::max(best, c);
    }
    return best;
  }

  std::size_t error(const std::vector<std::size_t>& rl, const std::vector<std::size_t>& cl) const {
    const std::size_t n = rl.size(), m = cl.size();
    // zone constancy per (row block min, col block min)
    std::vector<int> first(n * m, -1);
    std::vector<char> mixed(n * m, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        std::size_t z = rl[i] * m + cl[j];
        int v = m_.at(i, j);
        if (first[z] < 0)
          first[z] = v;
        else if (first[z] != v)
          mixed[z] = 1;
      }
    std::vector<std::size_t> rc(n, 0), cc(m, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (mixed[a * m + b]) {
          ++rc[a];
          ++cc[b];
        }
    std::size_t best = 0;
    for (auto v : rc) best = std::max(best, v);
    for (auto v : cc) best = std::max(best, v);
    return best;
  }

  static std::vector<std::size_t> merge_labels(std::vector<std::size_t> labels, std::size_t a, std::size_t b) {
    for (auto& l : labels)
      if (l == b) l = a;
    return labels;
  }

  std::string key(const std::vector<std::size_t>& rl, const std::vector<std::size_t>& cl) const {
    std::string out;
    for (auto v : rl) out += static_cast<char>(v);
    out += '|';
    for (auto v : cl) out += static_cast<char>(v);
    return out;
  }

  bool dfs(const std::vector<std::size_t>& rl, const std::vector<std::size_t>& cl) {
    auto rm = block_mins(rl);
    auto cm = block_mins(cl);
    if (rm.size() == 1 && cm.size() == 1) return true;
    std::string k = key(rl, cl);
    if (dead_.count(k)) return false;
    for (int side = 0; side < 2; ++side) {
      const auto& mins = side == 0 ? rm : cm;
      for (std::size_t x = 0; x < mins.size(); ++x)
        for (std::size_t y = x + 1; y < mins.size(); ++y) {
          auto nr = side == 0 ? merge_labels(rl, mins[x], mins[y]) : rl;
          auto nc = side == 1 ? merge_labels(cl, mins[x], mins[y]) : cl;
          const auto& changed = side == 0 ? nr : nc;
          if (overlap(changed) > k_) continue;
          if (error(nr, nc) > e_) continue;
          path_.push_back({side == 0 ? Side::rows : Side::cols, mins[x], mins[y]});
          if (dfs(nr, nc)) return true;
          path_.pop_back();
        }
    }
    dead_.insert(std::move(k));
    return false;
  }

  const Matrix& m_;
  std::size_t k_;
  std::size_t e_;
  std::unordered_set<std::string> dead_;
  std::vector<Merge> path_;
};

void check_guard(const Matrix& m, std::size_t size_guard) {
  if (m.rows() + m.cols() > size_guard)
    throw ResourceLimit("exact search limited to rows+cols <= " + std::to_string(size_guard) + ", got " +
                        std::to_string(m.rows() + m.cols()));
}

ContractionSequence make_sequence(const Matrix& m, std::vector<Merge> merges) {
  ContractionSequence s;
  s.rows = m.rows();
  s.cols = m.cols();
  s.merges = std::move(merges);
  return s;
}

}  // namespace

bool has_ke_sequence(const Matrix& m, std::size_t k, std::size_t e, ContractionSequence* witness,
                     std::size_t size_guard) {
  check_guard(m, size_guard);
  std::vector<Merge> merges;
  if (!ExactSearch(m, k, e).run(&merges)) return false;
  if (witness) *witness = make_sequence(m, std::move(merges));
  return true;
}

ExactResult exact_twinwidth(const Matrix& m, std::size_t size_guard) {
  check_guard(m, size_guard);
  for (std::size_t t = 0;; ++t)
    for (std::size_t k = 0; k <= t; ++k) {
      std::vector<Merge> merges;
      if (ExactSearch(m, k, t - k).run(&merges)) {
        ExactResult r{t, make_sequence(m, std::move(merges)), {}};
        r.profile = verify_sequence(m, r.witness);
        if (r.profile.max_overlap + r.profile.max_error != t)
          throw InternalInvariant("exact witness profile disagrees with its value");
        return r;
      }
    }
}

ExactResult min_kk_value(const Matrix& m, std::size_t size_guard) {
  check_guard(m, size_guard);
  for (std::size_t v = 0;; ++v) {
    std::vector<Merge> merges;
    if (ExactSearch(m, v, v).run(&merges)) {
      ExactResult r{v, make_sequence(m, std::move(merges)), {}};
      r.profile = verify_sequence(m, r.witness);
      if (std::max(r.profile.max_overlap, r.profile.max_error) != v)
        throw InternalInvariant("exact witness profile disagrees with its value");
      return r;
    }
  }
}

ContractionSequence parse_sequence(std::string_view input, std::size_t rows, std::size_t cols) {
  ContractionSequence s;
  s.rows = rows;
  s.cols = cols;
  for (const auto& line : text::tokenize_lines(input)) {
    if (line.tokens.size() != 3 || (line.tokens[0] != "R" && line.tokens[0] != "C"))
      throw ParseError("sequence line must be 'R a b' or 'C a b'", line.number);
    Side side = line.tokens[0] == "R" ? Side::rows : Side::cols;
    std::size_t bound = side == Side::rows ? rows : cols;
    std::size_t a = text::parse_count(line.tokens[1], line.number, "block index");
    std::size_t b = text::parse_count(line.tokens[2], line.number, "block index");
    if (a < 1 || b < 1 || a > bound || b > bound) throw ParseError("block index out of range", line.number);
    s.merges.push_back({side, a - 1, b - 1});
  }
  return s;
}

std::string serialize_sequence(const ContractionSequence& s) {
  std::ostringstream out;
  for (const auto& mg : s.merges)
    out << (mg.side == Side::rows ? 'R' : 'C') << ' ' << mg.a + 1 << ' ' << mg.b + 1 << '\n';
  return out.str();
}

}  // namespace ordtww
