#include "ordtww/patterns.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ordtww {

Permutation::Permutation(std::vector<int> one_line) : values_(std::move(one_line)) {
  std::vector<char> seen(values_.size() + 1, 0);
  for (int v : values_) {
    if (v < 1 || static_cast<std::size_t>(v) > values_.size() || seen[static_cast<std::size_t>(v)])
      throw InvalidArgument("not a permutation of 1.." + std::to_string(values_.size()));
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::reversal(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(n - i);
  return Permutation(std::move(v));
}

namespace {

std::vector<int> split_numbers(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InvalidArgument("unexpected character '" + std::string(1, c) + "' in permutation");
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    out.push_back(std::stoi(std::string(text.substr(i, j - i))));
    i = j;
  }
  return out;
}

}  // namespace

Permutation Permutation::parse(std::string_view text, std::size_t size) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw InvalidArgument("empty permutation");
  if (text[first] != '(') {
    Permutation p(split_numbers(text));
    if (size != 0 && p.size() != size) throw InvalidArgument("permutation has the wrong size");
    return p;
  }
  std::vector<std::vector<int>> cycles;
  std::size_t i = first;
  int largest = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw InvalidArgument("expected '(' in cycle notation");
    auto close = text.find(')', i);
    if (close == std::string_view::npos) throw InvalidArgument("unbalanced '(' in cycle notation");
    std::string_view body = text.substr(i + 1, close - i - 1);
    std::vector<int> cycle;
    if (body.find_first_of(" ,") != std::string_view::npos) {
      cycle = split_numbers(body);
    } else {
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw InvalidArgument("bad digit in cycle notation");
        cycle.push_back(c - '0');
      }
    }
    for (int v : cycle) largest = std::max(largest, v);
    cycles.push_back(std::move(cycle));
    i = close + 1;
  }
  std::size_t n = size != 0 ? size : static_cast<std::size_t>(largest);
  std::vector<int> values(n);
  std::iota(values.begin(), values.end(), 1);
  std::vector<char> used(n + 1, 0);
  for (const auto& cycle : cycles)
    for (std::size_t t = 0; t < cycle.size(); ++t) {
      int from = cycle[t];
      int to = cycle[(t + 1) % cycle.size()];
      if (from < 1 || static_cast<std::size_t>(from) > n) throw InvalidArgument("cycle entry out of range");
      if (used[static_cast<std::size_t>(from)]) throw InvalidArgument("cycles are not disjoint");
      used[static_cast<std::size_t>(from)] = 1;
      values[static_cast<std::size_t>(from - 1)] = to;
    }
  return Permutation(std::move(values));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) inv[static_cast<std::size_t>(values_[i] - 1)] = static_cast<int>(i + 1);
  return Permutation(std::move(inv));
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) out += (i ? " " : "") + std::to_string(values_[i]);
  return out;
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::string symbol_name(PatternSymbol s) {
  switch (s) {
    case PatternSymbol::eq: return "eq";
    case PatternSymbol::neq: return "neq";
    case PatternSymbol::le_r: return "leR";
    case PatternSymbol::ge_r: return "geR";
    case PatternSymbol::le_c: return "leC";
    case PatternSymbol::ge_c: return "geC";
  }
  return "?";
}

PatternSymbol parse_symbol(std::string_view t) {
  if (t == "eq" || t == "=") return PatternSymbol::eq;
  if (t == "neq" || t == "!=" || t == "≠") return PatternSymbol::neq;
  if (t == "leR" || t == "lel" || t == "<=R" || t == "<=l") return PatternSymbol::le_r;
  if (t == "geR" || t == "gel" || t == ">=R" || t == ">=l") return PatternSymbol::ge_r;
  if (t == "leC" || t == "ler" || t == "<=C" || t == "<=r") return PatternSymbol::le_c;
  if (t == "geC" || t == "ger" || t == ">=C" || t == ">=r") return PatternSymbol::ge_c;
  throw InvalidArgument("unknown pattern symbol '" + std::string(t) + "'");
}

Eta Eta::from_index(unsigned index) {
  if (index > 15) throw InvalidArgument("eta index must be below 16");
  return Eta(index & 1u, index & 2u, index & 4u, index & 8u);
}

std::string Eta::to_string() const {
  return std::string{static_cast<char>('0' + (*this)(1, 1)), static_cast<char>('0' + (*this)(1, -1)),
                     static_cast<char>('0' + (*this)(-1, 1)), static_cast<char>('0' + (*this)(-1, -1))};
}

std::vector<Eta> all_etas() {
  std::vector<Eta> out;
  for (unsigned i = 0; i < 16; ++i) out.push_back(Eta::from_index(i));
  return out;
}

std::vector<Eta> one_coordinate_etas() {
  std::vector<Eta> out;
  for (Eta e : all_etas())
    if (e.one_coordinate()) out.push_back(e);
  return out;
}

Eta eta_for_symbol(PatternSymbol s) {
  switch (s) {
    case PatternSymbol::eq: return Eta::constant(0);
    case PatternSymbol::neq: return Eta::constant(1);
    case PatternSymbol::le_r: return Eta(0, 0, 1, 1);  // [x = -1]
    case PatternSymbol::ge_r: return Eta(1, 1, 0, 0);  // [x = 1]
    case PatternSymbol::le_c: return Eta(1, 0, 1, 0);  // [y = 1]
    case PatternSymbol::ge_c: return Eta(0, 1, 0, 1);  // [y = -1]
  }
  return {};
}

namespace {

bool iverson(PatternSymbol s, const Permutation& sigma, const Permutation& inv, int i, int j) {
  switch (s) {
    case PatternSymbol::eq: return sigma(i) == j;
    case PatternSymbol::neq: return sigma(i) != j;
    case PatternSymbol::le_r: return i <= inv(j);
    case PatternSymbol::ge_r: return i >= inv(j);
    case PatternSymbol::le_c: return j <= sigma(i);
    case PatternSymbol::ge_c: return j >= sigma(i);
  }
  return false;
}

}  // namespace

Matrix f_matrix_s(PatternSymbol s, const Permutation& sigma) {
  const std::size_t k = sigma.size();
  if (k == 0) throw InvalidArgument("empty permutation");
  Permutation inv = sigma.inverse();
  std::vector<Symbol> entries(k * k);
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= k; ++j)
      entries[(i - 1) * k + (j - 1)] = iverson(s, sigma, inv, static_cast<int>(i), static_cast<int>(j)) ? 1 : 0;
  return Matrix(k, k, Alphabet::binary(), std::move(entries));
}

Matrix f_matrix_eta(Eta eta, const Permutation& sigma) {
  const std::size_t k = sigma.size();
  if (k == 0) throw InvalidArgument("empty permutation");
  Permutation inv = sigma.inverse();
  std::vector<Symbol> entries(k * k);
  for (int i = 1; i <= static_cast<int>(k); ++i)
    for (int j = 1; j <= static_cast<int>(k); ++j) {
      int v = sigma(i) == j ? 1 - eta(1, 1) : eta(order_type(inv(j), i), order_type(j, sigma(i)));
      entries[static_cast<std::size_t>((i - 1) * static_cast<int>(k) + (j - 1))] = static_cast<Symbol>(v);
    }
  return Matrix(k, k, Alphabet::binary(), std::move(entries));
}

std::optional<Permutation> decode_f(Eta eta, const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("decode_f needs a square matrix");
  const std::size_t k = m.rows();
  std::vector<std::vector<int>> bits(k, std::vector<int>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::string& t = m.token(i, j);
      if (t != "0" && t != "1") throw InvalidArgument("decode_f needs a 0/1 matrix");
      bits[i][j] = t == "1" ? 1 : 0;
    }
  // In the last remaining row every entry left of the diagonal one equals eta(1,1), so the
  // diagonal position is the first entry holding the complementary value.
  const int diagonal = 1 - eta(1, 1);
  std::vector<std::size_t> columns(k);
  std::iota(columns.begin(), columns.end(), std::size_t{0});
  std::vector<int> values(k);
  for (std::size_t row = k; row-- > 0;) {
    auto it = std::find_if(columns.begin(), columns.end(), [&](std::size_t c) { return bits[row][c] == diagonal; });
    if (it == columns.end()) return std::nullopt;
    values[row] = static_cast<int>(*it + 1);
    columns.erase(it);
  }
  Permutation sigma(values);
  if (f_matrix_eta(eta, sigma) != Matrix::from_bits(bits)) return std::nullopt;
  return sigma;
}

std::optional<Permutation> decode_s(PatternSymbol s, const Matrix& m) {
  if (s == PatternSymbol::eq || s == PatternSymbol::neq) return decode_f(eta_for_symbol(s), m);
  if (m.rows() != m.cols()) throw InvalidArgument("decode_s needs a square matrix");
  const std::size_t k = m.rows();
  const bool by_column = s == PatternSymbol::le_r || s == PatternSymbol::ge_r;
  const bool prefix = s == PatternSymbol::le_r || s == PatternSymbol::le_c;
  // Each column (for R) or row (for C) is a run of ones whose length pins one value.
  std::vector<int> values(k);
  for (std::size_t l = 0; l < k; ++l) {
    std::size_t ones = 0;
    for (std::size_t x = 0; x < k; ++x) {
      const std::string& t = by_column ? m.token(x, l) : m.token(l, x);
      if (t != "0" && t != "1") throw InvalidArgument("decode_s needs a 0/1 matrix");
      ones += t == "1" ? 1 : 0;
    }
    if (ones == 0) return std::nullopt;
    values[l] = static_cast<int>(prefix ? ones : k - ones + 1);
  }
  std::vector<int> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < k; ++i)
    if (sorted[i] != static_cast<int>(i + 1)) return std::nullopt;
  Permutation sigma = by_column ? Permutation(values).inverse() : Permutation(values);
  if (f_matrix_s(s, sigma) != m) return std::nullopt;
  return sigma;
}

std::string shuffle_case_name(ShuffleCase c) {
  switch (c) {
    case ShuffleCase::none: return "none";
    case ShuffleCase::odd_rows_left: return "odd-rows-left";
    case ShuffleCase::bottom_even: return "bottom-even";
    case ShuffleCase::odd_rows_right: return "odd-rows-right";
    case ShuffleCase::top_even: return "top-even";
  }
  return "?";
}

Reduction reduce_eta(Eta e) {
  if (e.one_coordinate()) return {e, ShuffleCase::none};
  if (e(1, 1) != e(-1, 1)) return {Eta(e(1, 1), e(1, 1), e(-1, 1), e(-1, 1)), ShuffleCase::odd_rows_left};
  if (e(1, 1) != e(1, -1)) return {Eta(e(1, 1), e(1, -1), e(1, 1), e(1, -1)), ShuffleCase::bottom_even};
  if (e(-1, -1) != e(1, -1)) return {Eta(e(1, -1), e(1, -1), e(-1, -1), e(-1, -1)), ShuffleCase::odd_rows_right};
  return {Eta(e(-1, 1), e(-1, -1), e(-1, 1), e(-1, -1)), ShuffleCase::top_even};
}

Permutation shuffle_permutation(const Permutation& sigma) { return shuffle_permutation(sigma, ShuffleCase::top_even); }

Permutation shuffle_permutation(const Permutation& sigma, ShuffleCase c) {
  const int k = static_cast<int>(sigma.size());
  std::vector<int> tau(static_cast<std::size_t>(2 * k));
  auto set = [&tau](int i, int v) { tau[static_cast<std::size_t>(i - 1)] = v; };
  for (int i = 1; i <= k; ++i) switch (c) {
      case ShuffleCase::none:
      case ShuffleCase::top_even:
        set(i, 2 * sigma(i) - 1);
        set(k + i, 2 * i);
        break;
      case ShuffleCase::bottom_even:
        set(i, 2 * i);
        set(k + i, 2 * sigma(i) - 1);
        break;
      case ShuffleCase::odd_rows_left:
        set(2 * i - 1, k + i);
        set(2 * i, sigma(i));
        break;
      case ShuffleCase::odd_rows_right:
        set(2 * i - 1, i);
        set(2 * i, k + sigma(i));
        break;
    }
  return Permutation(std::move(tau));
}

Placement shuffle_placement(std::size_t k, ShuffleCase c) {
  Placement p;
  for (std::size_t i = 0; i < k; ++i) switch (c) {
      case ShuffleCase::none:
      case ShuffleCase::top_even:
        p.rows.push_back(i);
        p.cols.push_back(2 * i + 1);
        break;
      case ShuffleCase::bottom_even:
        p.rows.push_back(k + i);
        p.cols.push_back(2 * i + 1);
        break;
      case ShuffleCase::odd_rows_left:
        p.rows.push_back(2 * i);
        p.cols.push_back(i);
        break;
      case ShuffleCase::odd_rows_right:
        p.rows.push_back(2 * i);
        p.cols.push_back(k + i);
        break;
    }
  return p;
}

Graph permutation_graph(const Permutation& pi) {
  Graph g(pi.size());
  for (int i = 1; i <= static_cast<int>(pi.size()); ++i)
    for (int j = i + 1; j <= static_cast<int>(pi.size()); ++j)
      if (pi(i) > pi(j)) g.add_edge(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  return g;
}

Graph OrderedMatching::to_graph() const { return s_sigma_matching(PatternSymbol::eq, sigma); }

std::optional<OrderedMatching> matching_from_graph(const Graph& g) {
  if (g.size() == 0 || g.size() % 2 != 0) return std::nullopt;
  const std::size_t n = g.size() / 2;
  std::vector<int> sigma(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (!g.adjacent(a, b)) continue;
      if (b < n || sigma[a] != 0) return std::nullopt;
      sigma[a] = static_cast<int>(b - n + 1);
    }
  for (std::size_t b = n; b < g.size(); ++b)
    for (std::size_t c = b + 1; c < g.size(); ++c)
      if (g.adjacent(b, c)) return std::nullopt;
  try {
    return OrderedMatching{Permutation(sigma)};
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

Graph s_sigma_matching(PatternSymbol s, const Permutation& sigma) {
  const std::size_t n = sigma.size();
  Permutation inv = sigma.inverse();
  Graph g(2 * n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (iverson(s, sigma, inv, static_cast<int>(i), static_cast<int>(j))) g.add_edge(i - 1, n + j - 1);
  return g;
}

Graph regular_matching(PatternSymbol s, SignMap f, SignMap g, const Permutation& sigma) {
  const int n = static_cast<int>(sigma.size());
  Permutation inv = sigma.inverse();
  Graph out = s_sigma_matching(s, sigma);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (f(order_type(sigma(i), sigma(j))))
        out.add_edge(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
      if (g(order_type(inv(i), inv(j))))
        out.add_edge(static_cast<std::size_t>(n + i - 1), static_cast<std::size_t>(n + j - 1));
    }
  return out;
}

Graph m_class_graph(const OrderedMatching& h, PatternSymbol s, int lambda, int rho) {
  if ((lambda != 0 && lambda != 1) || (rho != 0 && rho != 1)) throw InvalidArgument("lambda and rho must be 0 or 1");
  return regular_matching(s, SignMap::constant(lambda), SignMap::constant(rho), h.sigma);
}

namespace {

// mu(x,y;z) of the middle-point decoding, for x <= z < y.
bool middle_pair(PatternSymbol s, const Graph& g, std::size_t x, std::size_t y, std::size_t z) {
  if (!(x <= z && z < y)) return false;
  bool e = g.adjacent(x, y);
  switch (s) {
    case PatternSymbol::eq: return e;
    case PatternSymbol::neq: return !e;
    case PatternSymbol::le_r:
      if (!e) return false;
      for (std::size_t x2 = x + 1; x2 <= z; ++x2)
        if (g.adjacent(x2, y)) return false;
      return true;
    case PatternSymbol::ge_r:
      if (!e) return false;
      for (std::size_t x2 = 0; x2 < x; ++x2)
        if (g.adjacent(x2, y)) return false;
      return true;
    case PatternSymbol::le_c:
      if (!e) return false;
      for (std::size_t y2 = y + 1; y2 < g.size(); ++y2)
        if (g.adjacent(x, y2)) return false;
      return true;
    case PatternSymbol::ge_c:
      if (!e) return false;
      for (std::size_t y2 = z + 1; y2 < y; ++y2)
        if (g.adjacent(x, y2)) return false;
      return true;
  }
  return false;
}

}  // namespace

std::optional<OrderedMatching> decode_regular(PatternSymbol s, const Graph& g) {
  const std::size_t n = g.size();
  std::optional<std::size_t> middle;
  std::vector<int> best;
  for (std::size_t z = 0; z < n; ++z) {
    std::vector<int> partner_of_left(z + 1, -1);
    std::vector<int> hits_right(n, 0);
    bool bijection = true;
    for (std::size_t x = 0; x <= z && bijection; ++x)
      for (std::size_t y = z + 1; y < n && bijection; ++y)
        if (middle_pair(s, g, x, y, z)) {
          if (partner_of_left[x] >= 0 || hits_right[y]++ > 0) bijection = false;
          partner_of_left[x] = static_cast<int>(y);
        }
    for (std::size_t x = 0; x <= z && bijection; ++x) bijection = partner_of_left[x] >= 0;
    for (std::size_t y = z + 1; y < n && bijection; ++y) bijection = hits_right[y] == 1;
    if (!bijection) continue;
    if (middle) return std::nullopt;  // not unique
    middle = z;
    best = partner_of_left;
  }
  if (!middle) return std::nullopt;
  const std::size_t half = *middle + 1;
  std::vector<int> sigma(half);
  for (std::size_t x = 0; x < half; ++x) sigma[x] = static_cast<int>(static_cast<std::size_t>(best[x]) - half + 1);
  return OrderedMatching{Permutation(sigma)};
}

namespace {

struct MatchingLayout {
  std::size_t half = 0;
  std::vector<int> sigma;  // 1-based targets
};

MatchingLayout layout_for(const Graph& g) {
  const std::size_t n = g.size();
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  const std::size_t half = n + 3 * m + 2;
  // left positions
  auto left_v = [](std::size_t i) { return i; };
  const std::size_t left_x = n;
  auto left_e = [n](std::size_t k, int offset) { return n + 1 + 3 * k + static_cast<std::size_t>(1 + offset); };
  const std::size_t left_y = half - 1;

  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t k = 0; k < m; ++k) {
    incident[edges[k].first].push_back(k);
    incident[edges[k].second].push_back(k);
  }
  std::vector<int> sigma(half, 0);
  std::size_t pos = 0;
  sigma[left_x] = static_cast<int>(++pos);  // x'
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k : incident[i]) sigma[left_e(k, edges[k].first == i ? -1 : 1)] = static_cast<int>(++pos);
    sigma[left_v(i)] = static_cast<int>(++pos);
  }
  sigma[left_y] = static_cast<int>(++pos);  // y
  for (std::size_t k = m; k-- > 0;) sigma[left_e(k, 0)] = static_cast<int>(++pos);
  return {half, sigma};
}

}  // namespace

OrderedMatching encode_graph_as_matching(const Graph& g) {
  if (g.size() == 0) throw InvalidArgument("cannot encode the empty graph");
  return OrderedMatching{Permutation(layout_for(g).sigma)};
}

std::optional<Graph> decode_matching_to_graph(const OrderedMatching& matching) {
  if (matching.half() == 0) return std::nullopt;
  const Graph g = matching.to_graph();
  const std::size_t total = g.size();
  std::vector<long> partner(total, -1);
  for (std::size_t u = 0; u < total; ++u)
    for (std::size_t v = 0; v < total; ++v)
      if (g.adjacent(u, v)) {
        if (partner[u] >= 0) return std::nullopt;
        partner[u] = static_cast<long>(v);
      }
  auto nbr = [&](std::size_t u) { return static_cast<std::size_t>(partner[u]); };
  for (auto p : partner)
    if (p < 0) return std::nullopt;

  // x' is the least vertex with a smaller neighbour, y' the greatest with a bigger one.
  std::optional<std::size_t> xp, yp;
  for (std::size_t u = 0; u < total && !xp; ++u)
    if (nbr(u) < u) xp = u;
  for (std::size_t u = total; u-- > 0 && !yp;)
    if (nbr(u) > u) yp = u;
  if (!xp || !yp) return std::nullopt;
  const std::size_t x = nbr(*xp);
  const std::size_t y = nbr(*yp);
  const std::size_t n = x;  // the v_i are the vertices below x
  if (n == 0) return std::nullopt;

  // z lies in the block of v_i when strictly between v_i' and the partner of v_i's successor.
  auto block_of = [&](std::size_t z) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t a = nbr(i), b = nbr(i + 1);
      if (std::min(a, b) < z && z < std::max(a, b)) return i;
    }
    return std::nullopt;
  };
  Graph out(n);
  for (std::size_t e = y + 1; e < total; ++e) {
    std::size_t ep = nbr(e);
    if (ep == 0 || ep + 1 >= total) continue;
    auto i = block_of(nbr(ep - 1));
    auto j = block_of(nbr(ep + 1));
    if (i && j && *i < *j) out.add_edge(*i, *j);
  }
  if (encode_graph_as_matching(out) != matching) return std::nullopt;
  return out;
}

ClassSpec ClassSpec::parse(std::string_view text) {
  ClassSpec c;
  auto bit = [&text](char ch) {
    if (ch != '0' && ch != '1') throw InvalidArgument("bad class spec '" + std::string(text) + "'");
    return ch - '0';
  };
  if (text == "P") return c;
  if (text.size() >= 4 && text[0] == 'M') {
    c.kind = Kind::m_class;
    c.s = parse_symbol(text.substr(1, text.size() - 3));
    c.lambda = bit(text[text.size() - 2]);
    c.rho = bit(text[text.size() - 1]);
    c.f = SignMap::constant(c.lambda);
    c.g = SignMap::constant(c.rho);
    return c;
  }
  if (text.size() >= 2 && text[0] == 'R') {
    auto fpos = text.find(":f");
    auto gpos = text.find(":g");
    if (fpos == std::string_view::npos || gpos == std::string_view::npos || gpos != fpos + 4 ||
        text.size() != gpos + 4)
      throw InvalidArgument("bad class spec '" + std::string(text) + "'");
    c.kind = Kind::regular;
    c.s = parse_symbol(text.substr(1, fpos - 1));
    c.f = {bit(text[fpos + 2]), bit(text[fpos + 3])};
    c.g = {bit(text[gpos + 2]), bit(text[gpos + 3])};
    return c;
  }
  throw InvalidArgument("bad class spec '" + std::string(text) + "'");
}

std::string ClassSpec::to_string() const {
  switch (kind) {
    case Kind::permutation_graphs: return "P";
    case Kind::m_class: return "M" + symbol_name(s) + std::to_string(lambda) + std::to_string(rho);
    case Kind::regular:
      return "R" + symbol_name(s) + ":f" + std::to_string(f.at_neg) + std::to_string(f.at_pos) + ":g" +
             std::to_string(g.at_neg) + std::to_string(g.at_pos);
  }
  return "?";
}

std::vector<Graph> enumerate_slice(const ClassSpec& spec, std::size_t n, std::size_t guard,
                                   std::size_t generator_half) {
  if (n == 0) throw InvalidArgument("slice size must be positive");
  if (n > guard) throw ResourceLimit("slice size " + std::to_string(n) + " exceeds guard " + std::to_string(guard));
  std::unordered_set<std::string> keys;
  std::vector<Graph> out;
  auto add = [&](const Graph& g) {
    if (keys.insert(g.key()).second) out.push_back(g);
  };
  if (spec.kind == ClassSpec::Kind::permutation_graphs) {
    for (const auto& pi : all_permutations(n)) add(permutation_graph(pi));
  } else {
    const std::size_t half = generator_half == 0 ? n : generator_half;
    if (half > guard) throw ResourceLimit("generator size exceeds guard");
    IndexList subset;
    for (const auto& sigma : all_permutations(half)) {
      Graph gen = regular_matching(spec.s, spec.f, spec.g, sigma);
      if (n > gen.size()) continue;
      subset.resize(n);
      std::iota(subset.begin(), subset.end(), std::size_t{0});
      for (;;) {
        add(gen.induced(subset));
        // next n-subset in lexicographic order
        std::size_t t = n;
        while (t > 0 && subset[t - 1] == gen.size() - n + t - 1) --t;
        if (t == 0) break;
        ++subset[t - 1];
        for (std::size_t u = t; u < n; ++u) subset[u] = subset[u - 1] + 1;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Graph& a, const Graph& b) { return a.key() < b.key(); });
  return out;
}

BigInt growth_formula(std::size_t n) {
  BigInt total = 0;
  BigInt factorial = 1;  // k!
  for (std::size_t k = 0; 2 * k <= n; ++k) {
    if (k > 0) factorial *= k;
    BigInt binom = 1;
    for (std::size_t t = 0; t < 2 * k; ++t) binom = binom * (n - t) / (t + 1);
    total += binom * factorial;
  }
  return total;
}

}  // namespace ordtww
