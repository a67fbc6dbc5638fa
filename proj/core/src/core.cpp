#include "ordtww/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "text.hpp"

namespace ordtww {

namespace {

bool is_token(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

void check_index_list(const IndexList& list, std::size_t bound, const char* what) {
  if (list.empty()) throw InvalidArgument(std::string(what) + " index list is empty");
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] >= bound) throw InvalidArgument(std::string(what) + " index out of range");
    if (i > 0 && list[i] <= list[i - 1]) throw InvalidArgument(std::string(what) + " indices must increase");
  }
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidArgument("alphabet is empty");
  if (symbols_.size() > 0xFFFF) throw InvalidArgument("alphabet too large");
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (!is_token(s)) throw InvalidArgument("alphabet token '" + s + "' is empty or contains whitespace");
    if (!seen.insert(s).second) throw InvalidArgument("duplicate alphabet token '" + s + "'");
  }
}

Alphabet Alphabet::binary() { return Alphabet({"0", "1"}); }

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == token) return static_cast<Symbol>(i);
  return std::nullopt;
}

Symbol Alphabet::index_of(std::string_view token) const {
  auto s = find(token);
  if (!s) throw InvalidArgument("unknown symbol '" + std::string(token) + "'");
  return *s;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Alphabet alphabet, std::vector<Symbol> entries)
    : rows_(rows), cols_(cols), alphabet_(std::move(alphabet)), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw InvalidArgument("matrix dimensions must be positive");
  if (entries_.size() != rows_ * cols_) throw InvalidArgument("matrix entry count mismatch");
  for (Symbol s : entries_)
    if (s >= alphabet_.size()) throw InvalidArgument("matrix entry outside alphabet");
}

Matrix Matrix::from_bits(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InvalidArgument("matrix dimensions must be positive");
  std::vector<Symbol> entries;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw InvalidArgument("ragged matrix rows");
    for (int v : row) {
      if (v != 0 && v != 1) throw InvalidArgument("0/1 matrix entry must be 0 or 1");
      entries.push_back(static_cast<Symbol>(v));
    }
  }
  return Matrix(rows.size(), rows.front().size(), Alphabet::binary(), std::move(entries));
}

Matrix Matrix::from_tokens(const std::vector<std::vector<std::string>>& rows, Alphabet alphabet) {
  if (rows.empty() || rows.front().empty()) throw InvalidArgument("matrix dimensions must be positive");
  std::vector<Symbol> entries;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw InvalidArgument("ragged matrix rows");
    for (const auto& t : row) entries.push_back(alphabet.index_of(t));
  }
  return Matrix(rows.size(), rows.front().size(), std::move(alphabet), std::move(entries));
}

Matrix Matrix::constant(std::size_t rows, std::size_t cols, Alphabet alphabet, Symbol value) {
  return Matrix(rows, cols, std::move(alphabet), std::vector<Symbol>(rows * cols, value));
}

Matrix Matrix::transpose() const {
  std::vector<Symbol> out(entries_.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[j * rows_ + i] = at(i, j);
  return Matrix(cols_, rows_, alphabet_, std::move(out));
}

Matrix Matrix::mirror_rows() const {
  std::vector<Symbol> out(entries_.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[(rows_ - 1 - i) * cols_ + j] = at(i, j);
  return Matrix(rows_, cols_, alphabet_, std::move(out));
}

Graph::Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

Graph::Graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw InvalidArgument("edge endpoint out of range");
  if (u == v) throw InvalidArgument("loops are not allowed");
  adj_[u * n_ + v] = adj_[v * n_ + u] = 1;
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw InvalidArgument("edge endpoint out of range");
  adj_[u * n_ + v] = adj_[v * n_ + u] = 0;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

std::size_t Graph::edge_count() const {
  return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1)) / 2;
}

Graph Graph::induced(const IndexList& vertices) const {
  Graph g(vertices.size());
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (adjacent(vertices[a], vertices[b])) g.add_edge(a, b);
  return g;
}

Graph Graph::complement() const {
  Graph g(n_);
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (!adjacent(u, v)) g.add_edge(u, v);
  return g;
}

std::string Graph::key() const {
  std::string out;
  out.reserve(n_ * (n_ - (n_ > 0 ? 1 : 0)) / 2 + 4);
  out += std::to_string(n_);
  out += ':';
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v) out += adjacent(u, v) ? '1' : '0';
  return out;
}

bool Signature::has_unary(std::string_view name) const {
  return std::find(unary.begin(), unary.end(), name) != unary.end();
}

bool Signature::has_binary(std::string_view name) const {
  return std::find(binary.begin(), binary.end(), name) != binary.end();
}

bool is_valid_relation_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  std::size_t i = 1;
  while (i < name.size() && (std::isalnum(static_cast<unsigned char>(name[i])) || name[i] == '_')) ++i;
  if (i == name.size()) return true;
  if (name[i] != '[' || name.back() != ']') return false;
  int depth = 0;
  for (std::size_t j = i; j < name.size(); ++j) {
    char c = name[j];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',') return false;
    if (c == '[') ++depth;
    if (c == ']' && --depth == 0 && j + 1 != name.size()) return false;
    if (depth < 0) return false;
  }
  return depth == 0;
}

Structure::Structure(std::size_t n) : n_(n) {}

Structure::Structure(std::size_t n, std::vector<UnaryRelation> unary, std::vector<BinaryRelation> binary)
    : n_(n), unary_(std::move(unary)), binary_(std::move(binary)) {
  validate();
}

void Structure::validate() const {
  std::set<std::string_view> names;
  auto check_name = [&](const std::string& name) {
    if (!is_valid_relation_name(name)) throw InvalidArgument("invalid relation name '" + name + "'");
    if (!names.insert(name).second) throw InvalidArgument("duplicate relation name '" + name + "'");
  };
  for (const auto& u : unary_) {
    check_name(u.name);
    if (u.members.size() != n_) throw InvalidArgument("unary relation '" + u.name + "' has wrong size");
  }
  for (const auto& b : binary_) {
    check_name(b.name);
    if (b.pairs.size() != n_ * n_) throw InvalidArgument("binary relation '" + b.name + "' has wrong size");
  }
}

Structure Structure::from_graph(const Graph& g, const std::string& relation) {
  BinaryRelation e{relation, std::vector<std::uint8_t>(g.size() * g.size(), 0)};
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = 0; v < g.size(); ++v) e.pairs[u * g.size() + v] = g.adjacent(u, v) ? 1 : 0;
  return Structure(g.size(), {}, {std::move(e)});
}

Signature Structure::signature() const {
  Signature sig;
  for (const auto& u : unary_) sig.unary.push_back(u.name);
  for (const auto& b : binary_) sig.binary.push_back(b.name);
  return sig;
}

const UnaryRelation* Structure::find_unary(std::string_view name) const {
  for (const auto& u : unary_)
    if (u.name == name) return &u;
  return nullptr;
}

const BinaryRelation* Structure::find_binary(std::string_view name) const {
  for (const auto& b : binary_)
    if (b.name == name) return &b;
  return nullptr;
}

std::string AtomicType::token() const {
  std::map<std::string, std::string> fields;
  for (const auto& u : unary) fields[u.name] = std::string{u.x ? '1' : '0', u.y ? '1' : '0'};
  for (const auto& b : binary) fields[b.name] = std::string{b.forward ? '1' : '0', b.backward ? '1' : '0'};
  std::string out(1, order > 0 ? '<' : order == 0 ? '=' : '>');
  for (const auto& [name, bits] : fields) out += "." + name + ":" + bits;
  return out;
}

AtomicType atomic_type(const Structure& s, std::size_t a, std::size_t b) {
  if (a >= s.size() || b >= s.size()) throw InvalidArgument("element out of range");
  AtomicType t;
  t.order = a < b ? 1 : a == b ? 0 : -1;
  for (const auto& u : s.unary()) t.unary.push_back({u.name, u.members[a] != 0, u.members[b] != 0});
  for (const auto& r : s.binary()) t.binary.push_back({r.name, s.holds(r, a, b), s.holds(r, b, a)});
  std::sort(t.unary.begin(), t.unary.end(), [](const auto& l, const auto& r) { return l.name < r.name; });
  std::sort(t.binary.begin(), t.binary.end(), [](const auto& l, const auto& r) { return l.name < r.name; });
  return t;
}

AtomicType parse_atomic_type(std::string_view token, const Signature& signature) {
  if (token.empty()) throw ParseError("empty atomic type", 0);
  AtomicType t;
  switch (token[0]) {
    case '<': t.order = 1; break;
    case '=': t.order = 0; break;
    case '>': t.order = -1; break;
    default: throw ParseError("atomic type must start with <, = or >", 0, 1);
  }
  std::vector<std::string_view> fields;
  std::size_t i = 1;
  while (i < token.size()) {
    if (token[i] != '.') throw ParseError("expected '.' in atomic type", 0, i + 1);
    std::size_t j = i + 1;
    int depth = 0;
    while (j < token.size() && !(depth == 0 && token[j] == '.')) {
      if (token[j] == '[') ++depth;
      if (token[j] == ']') --depth;
      ++j;
    }
    fields.push_back(token.substr(i + 1, j - i - 1));
    i = j;
  }
  std::set<std::string> seen;
  for (auto field : fields) {
    auto colon = field.rfind(':');
    if (colon == std::string_view::npos || field.size() != colon + 3)
      throw ParseError("malformed atomic type field '" + std::string(field) + "'", 0);
    std::string name(field.substr(0, colon));
    char a = field[colon + 1];
    char b = field[colon + 2];
    if ((a != '0' && a != '1') || (b != '0' && b != '1'))
      throw ParseError("atomic type bits must be 0 or 1", 0);
    if (!seen.insert(name).second) throw ParseError("duplicate field '" + name + "' in atomic type", 0);
    if (signature.has_unary(name)) {
      t.unary.push_back({name, a == '1', b == '1'});
    } else if (signature.has_binary(name)) {
      t.binary.push_back({name, a == '1', b == '1'});
    } else {
      throw ParseError("atomic type mentions unknown relation '" + name + "'", 0);
    }
  }
  if (t.unary.size() != signature.unary.size() || t.binary.size() != signature.binary.size())
    throw ParseError("atomic type must mention every relation of the signature", 0);
  std::sort(t.unary.begin(), t.unary.end(), [](const auto& l, const auto& r) { return l.name < r.name; });
  std::sort(t.binary.begin(), t.binary.end(), [](const auto& l, const auto& r) { return l.name < r.name; });
  if (t.order == 0) {
    for (const auto& u : t.unary)
      if (u.x != u.y) throw ParseError("atomic type with x=y needs equal unary profiles", 0);
    for (const auto& b : t.binary)
      if (b.forward != b.backward) throw ParseError("atomic type with x=y needs symmetric binary profile", 0);
  }
  return t;
}

Matrix submatrix(const Matrix& m, const IndexList& rows, const IndexList& cols) {
  check_index_list(rows, m.rows(), "row");
  check_index_list(cols, m.cols(), "column");
  std::vector<Symbol> out;
  out.reserve(rows.size() * cols.size());
  for (auto i : rows)
    for (auto j : cols) out.push_back(m.at(i, j));
  return Matrix(rows.size(), cols.size(), m.alphabet(), std::move(out));
}

Matrix a_selection(const Matrix& m, std::string_view symbol) {
  Symbol a = m.alphabet().index_of(symbol);
  std::vector<Symbol> out(m.entries().size());
  std::transform(m.entries().begin(), m.entries().end(), out.begin(),
                 [a](Symbol s) { return static_cast<Symbol>(s == a ? 1 : 0); });
  return Matrix(m.rows(), m.cols(), Alphabet::binary(), std::move(out));
}

namespace {

class PlacementSearch {
 public:
  PlacementSearch(const Matrix& m, const Matrix& n) : m_(m), n_(n), pattern_(n.entries().size()) {
    for (std::size_t k = 0; k < pattern_.size(); ++k) {
      auto s = m.alphabet().find(n.alphabet().symbol(n.entries()[k]));
      pattern_[k] = s ? static_cast<int>(*s) : -1;
    }
  }

  std::optional<Placement> run() {
    rows_.clear();
    if (!extend(0, 0)) return std::nullopt;
    Placement p{rows_, {}};
    greedy_columns(rows_.size(), &p.cols);
    return p;
  }

 private:
  int pattern(std::size_t i, std::size_t j) const { return pattern_[i * n_.cols() + j]; }

  // Leftmost column embedding for the first `depth` pattern rows.
  bool greedy_columns(std::size_t depth, IndexList* out) const {
    std::size_t c = 0;
    for (std::size_t j = 0; j < m_.cols() && c < n_.cols(); ++j) {
      bool ok = true;
      for (std::size_t s = 0; s < depth && ok; ++s) ok = static_cast<int>(m_.at(rows_[s], j)) == pattern(s, c);
      if (ok) {
        if (out) out->push_back(j);
        ++c;
      }
    }
    return c == n_.cols();
  }

  bool extend(std::size_t depth, std::size_t first) {
    if (depth == n_.rows()) return true;
    std::size_t remaining = n_.rows() - depth;
    for (std::size_t i = first; i + remaining <= m_.rows(); ++i) {
      rows_.push_back(i);
      if (greedy_columns(depth + 1, nullptr) && extend(depth + 1, i + 1)) return true;
      rows_.pop_back();
    }
    return false;
  }

  const Matrix& m_;
  const Matrix& n_;
  std::vector<int> pattern_;
  IndexList rows_;
};

}  // namespace

std::optional<Placement> contains_submatrix(const Matrix& m, const Matrix& n) {
  for (const auto& s : n.alphabet().symbols())
    if (!m.alphabet().find(s)) {
      bool used = false;
      Symbol idx = n.alphabet().index_of(s);
      for (Symbol e : n.entries()) used = used || e == idx;
      if (used) return std::nullopt;
    }
  if (n.rows() > m.rows() || n.cols() > m.cols()) return std::nullopt;
  return PlacementSearch(m, n).run();
}

Matrix adjacency_matrix(const Structure& s) {
  const std::size_t n = s.size();
  if (n == 0) throw InvalidArgument("adjacency matrix of an empty structure");
  std::vector<std::string> tokens(n * n);
  std::set<std::string> distinct;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      tokens[a * n + b] = atomic_type(s, a, b).token();
      distinct.insert(tokens[a * n + b]);
    }
  Alphabet alphabet(std::vector<std::string>(distinct.begin(), distinct.end()));
  std::vector<Symbol> entries(n * n);
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = alphabet.index_of(tokens[k]);
  return Matrix(n, n, std::move(alphabet), std::move(entries));
}

Matrix mixed_symmetric_encoding(const Structure& s) {
  const std::size_t n = s.size();
  if (n == 0) throw InvalidArgument("encoding of an empty structure");
  const std::size_t p = s.binary().size();
  std::vector<std::vector<int>> vectors(n * n, std::vector<int>(p));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < p; ++i) {
        bool f = s.holds(s.binary()[i], x, y);
        bool b = s.holds(s.binary()[i], y, x);
        vectors[x * n + y][i] = f && b ? 2 : f ? 1 : b ? -1 : 0;
      }
  auto name = [p](const std::vector<int>& v) {
    if (p == 1) return std::to_string(v[0]);
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "]";
  };
  std::set<std::vector<int>> distinct(vectors.begin(), vectors.end());
  std::vector<std::string> symbols;
  for (const auto& v : distinct) symbols.push_back(name(v));
  Alphabet alphabet(symbols);
  std::vector<Symbol> entries(n * n);
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = alphabet.index_of(name(vectors[k]));
  return Matrix(n, n, std::move(alphabet), std::move(entries));
}

Matrix checkerboard(std::size_t n) {
  std::vector<Symbol> entries(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = static_cast<Symbol>((i + j) % 2);
  return Matrix(n, n, Alphabet::binary(), std::move(entries));
}

Matrix identity_matrix(std::size_t n) {
  std::vector<Symbol> entries(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = 1;
  return Matrix(n, n, Alphabet::binary(), std::move(entries));
}

Matrix parse_matrix(std::string_view input) {
  auto lines = text::tokenize_lines(input);
  if (lines.empty()) throw ParseError("empty matrix file", 1);
  const auto& header = lines[0];
  if (header.tokens.size() != 2) throw ParseError("matrix header must be 'n m'", header.number);
  std::size_t n = text::parse_count(header.tokens[0], header.number, "row count");
  std::size_t m = text::parse_count(header.tokens[1], header.number, "column count");
  if (n == 0 || m == 0) throw ParseError("matrix dimensions must be positive", header.number);
  std::size_t body = lines.size() - 1;
  if (body != n && body != n + 1)
    throw ParseError("expected " + std::to_string(n) + " rows after the header", lines.back().number);
  std::size_t first_row = 1;
  std::optional<Alphabet> alphabet;
  if (body == n + 1) {
    try {
      alphabet.emplace(lines[1].tokens);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), lines[1].number);
    }
    first_row = 2;
  } else {
    alphabet.emplace(Alphabet::binary());
  }
  std::vector<Symbol> entries;
  entries.reserve(n * m);
  for (std::size_t r = first_row; r < lines.size(); ++r) {
    const auto& line = lines[r];
    if (line.tokens.size() != m)
      throw ParseError("row has " + std::to_string(line.tokens.size()) + " entries, expected " + std::to_string(m),
                       line.number);
    for (const auto& t : line.tokens) {
      auto s = alphabet->find(t);
      if (!s) throw ParseError("unknown symbol '" + t + "'", line.number);
      entries.push_back(*s);
    }
  }
  return Matrix(n, m, std::move(*alphabet), std::move(entries));
}

std::string serialize_matrix(const Matrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.alphabet().size(); ++i) out << (i ? " " : "") << m.alphabet().symbol(i);
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m.token(i, j);
    out << '\n';
  }
  return out.str();
}

std::string render_matrix(const Matrix& m, bool first_row_at_bottom) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t i = first_row_at_bottom ? m.rows() - 1 - r : r;
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? " " : "") + m.token(i, j);
    out += '\n';
  }
  return out;
}

Graph parse_graph(std::string_view input) {
  auto lines = text::tokenize_lines(input);
  if (lines.empty()) throw ParseError("empty graph file", 1);
  if (lines[0].tokens.size() != 1) throw ParseError("graph header must be 'n'", lines[0].number);
  std::size_t n = text::parse_count(lines[0].tokens[0], lines[0].number, "vertex count");
  if (n == 0) throw ParseError("graph must have at least one vertex", lines[0].number);
  Graph g(n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens.size() != 2) throw ParseError("edge line must be 'i j'", line.number);
    std::size_t i = text::parse_count(line.tokens[0], line.number, "vertex");
    std::size_t j = text::parse_count(line.tokens[1], line.number, "vertex");
    if (i < 1 || j < 1 || i > n || j > n) throw ParseError("edge endpoint out of range", line.number);
    if (i == j) throw ParseError("loops are not allowed", line.number);
    g.add_edge(i - 1, j - 1);
  }
  return g;
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

Structure parse_structure(std::string_view input) {
  auto lines = text::tokenize_lines(input);
  if (lines.empty()) throw ParseError("empty structure file", 1);
  if (lines[0].tokens.size() != 1) throw ParseError("structure header must be 'n'", lines[0].number);
  std::size_t n = text::parse_count(lines[0].tokens[0], lines[0].number, "domain size");
  std::vector<UnaryRelation> unary;
  std::vector<BinaryRelation> binary;
  std::set<std::string> names;
  auto element = [n](const std::string& t, std::size_t line) {
    std::size_t v = text::parse_count(t, line, "element");
    if (v < 1 || v > n) throw ParseError("element out of range", line);
    return v - 1;
  };
  auto declare = [&](const std::string& name, std::size_t line) {
    if (!is_valid_relation_name(name)) throw ParseError("invalid relation name '" + name + "'", line);
    if (!names.insert(name).second) throw ParseError("duplicate relation name '" + name + "'", line);
  };
  std::size_t k = 1;
  while (k < lines.size()) {
    const auto& line = lines[k];
    if (line.tokens[0] == "unary") {
      if (line.tokens.size() < 2) throw ParseError("unary block needs a name", line.number);
      declare(line.tokens[1], line.number);
      UnaryRelation u{line.tokens[1], std::vector<std::uint8_t>(n, 0)};
      for (std::size_t t = 2; t < line.tokens.size(); ++t) u.members[element(line.tokens[t], line.number)] = 1;
      unary.push_back(std::move(u));
      ++k;
    } else if (line.tokens[0] == "binary") {
      if (line.tokens.size() != 2) throw ParseError("binary block header must be 'binary NAME'", line.number);
      declare(line.tokens[1], line.number);
      BinaryRelation b{line.tokens[1], std::vector<std::uint8_t>(n * n, 0)};
      ++k;
      bool closed = false;
      while (k < lines.size()) {
        const auto& pair = lines[k++];
        if (pair.tokens.size() == 1 && pair.tokens[0] == "end") {
          closed = true;
          break;
        }
        if (pair.tokens.size() != 2) throw ParseError("pair line must be 'i j'", pair.number);
        b.pairs[element(pair.tokens[0], pair.number) * n + element(pair.tokens[1], pair.number)] = 1;
      }
      if (!closed) throw ParseError("binary block '" + b.name + "' is missing 'end'", lines.back().number);
      binary.push_back(std::move(b));
    } else {
      throw ParseError("expected 'unary' or 'binary', got '" + line.tokens[0] + "'", line.number);
    }
  }
  return Structure(n, std::move(unary), std::move(binary));
}

std::string serialize_structure(const Structure& s) {
  std::ostringstream out;
  out << s.size() << '\n';
  for (const auto& u : s.unary()) {
    out << "unary " << u.name;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (u.members[i]) out << ' ' << i + 1;
    out << '\n';
  }
  for (const auto& b : s.binary()) {
    out << "binary " << b.name << '\n';
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j)
        if (s.holds(b, i, j)) out << i + 1 << ' ' << j + 1 << '\n';
    out << "end\n";
  }
  return out.str();
}

}  // namespace ordtww
