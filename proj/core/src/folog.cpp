#include "ordtww/folog.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace ordtww {

using Kind = Formula::Kind;

namespace fo {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

FormulaPtr atom(Kind k, std::string rel, std::string x, std::string y) {
  Formula f;
  f.kind = k;
  f.relation = std::move(rel);
  f.a = std::move(x);
  f.b = std::move(y);
  return make(std::move(f));
}

FormulaPtr connective(Kind k, FormulaPtr l, FormulaPtr r) {
  if (!l || (k != Kind::negation && !r)) throw InvalidArgument("missing operand");
  Formula f;
  f.kind = k;
  f.left = std::move(l);
  f.right = std::move(r);
  return make(std::move(f));
}

FormulaPtr quantifier(Kind k, std::string x, FormulaPtr body, Sort sort) {
  if (!body) throw InvalidArgument("missing quantifier body");
  Formula f;
  f.kind = k;
  f.a = std::move(x);
  f.sort = sort;
  f.left = std::move(body);
  return make(std::move(f));
}

}  // namespace

FormulaPtr top() { return atom(Kind::truth, "", "", ""); }
FormulaPtr bottom() { return atom(Kind::falsity, "", "", ""); }
FormulaPtr less(std::string x, std::string y) { return atom(Kind::less, "", std::move(x), std::move(y)); }
FormulaPtr equal(std::string x, std::string y) { return atom(Kind::equal, "", std::move(x), std::move(y)); }
FormulaPtr unary(std::string rel, std::string x) { return atom(Kind::unary, std::move(rel), std::move(x), ""); }
FormulaPtr binary(std::string rel, std::string x, std::string y) {
  return atom(Kind::binary, std::move(rel), std::move(x), std::move(y));
}
FormulaPtr negation(FormulaPtr f) { return connective(Kind::negation, std::move(f), nullptr); }
FormulaPtr conjunction(FormulaPtr l, FormulaPtr r) { return connective(Kind::conjunction, std::move(l), std::move(r)); }
FormulaPtr disjunction(FormulaPtr l, FormulaPtr r) { return connective(Kind::disjunction, std::move(l), std::move(r)); }
FormulaPtr implication(FormulaPtr l, FormulaPtr r) { return connective(Kind::implication, std::move(l), std::move(r)); }
FormulaPtr equivalence(FormulaPtr l, FormulaPtr r) { return connective(Kind::equivalence, std::move(l), std::move(r)); }
FormulaPtr exists(std::string x, FormulaPtr body, Sort sort) {
  return quantifier(Kind::exists, std::move(x), std::move(body), sort);
}
FormulaPtr forall(std::string x, FormulaPtr body, Sort sort) {
  return quantifier(Kind::forall, std::move(x), std::move(body), sort);
}

FormulaPtr atomic_type_formula(const AtomicType& t, const std::string& x, const std::string& y) {
  FormulaPtr out = t.order == 1 ? less(x, y) : t.order == 0 ? equal(x, y) : less(y, x);
  auto literal = [](bool positive, FormulaPtr f) { return positive ? f : negation(std::move(f)); };
  for (const auto& u : t.unary) {
    out = conjunction(out, literal(u.x, unary(u.name, x)));
    out = conjunction(out, literal(u.y, unary(u.name, y)));
  }
  for (const auto& b : t.binary) {
    out = conjunction(out, literal(b.forward, binary(b.name, x, y)));
    out = conjunction(out, literal(b.backward, binary(b.name, y, x)));
  }
  return out;
}

}  // namespace fo

namespace {

bool is_quantifier(Kind k) { return k == Kind::exists || k == Kind::forall; }

void collect_free(const FormulaPtr& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
  };
  switch (f->kind) {
    case Kind::truth:
    case Kind::falsity:
      return;
    case Kind::unary:
      note(f->a);
      return;
    case Kind::less:
    case Kind::equal:
    case Kind::binary:
      note(f->a);
      note(f->b);
      return;
    case Kind::negation:
      collect_free(f->left, bound, out);
      return;
    case Kind::exists:
    case Kind::forall:
      bound.push_back(f->a);
      collect_free(f->left, bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(f->left, bound, out);
      collect_free(f->right, bound, out);
  }
}

void collect_all_variables(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  if (!f->a.empty()) out.insert(f->a);
  if (!f->b.empty()) out.insert(f->b);
  collect_all_variables(f->left, out);
  collect_all_variables(f->right, out);
}

const char* connective_text(Kind k) {
  switch (k) {
    case Kind::conjunction: return " & ";
    case Kind::disjunction: return " | ";
    case Kind::implication: return " -> ";
    default: return " <-> ";
  }
}

void print(const FormulaPtr& f, std::string& out) {
  switch (f->kind) {
    case Kind::truth: out += "T"; return;
    case Kind::falsity: out += "F"; return;
    case Kind::less: out += f->a + "<" + f->b; return;
    case Kind::equal: out += f->a + "=" + f->b; return;
    case Kind::unary: out += f->relation + "(" + f->a + ")"; return;
    case Kind::binary: out += f->relation + "(" + f->a + "," + f->b + ")"; return;
    case Kind::negation:
      out += "~";
      print(f->left, out);
      return;
    case Kind::exists:
    case Kind::forall:
      out += f->kind == Kind::exists ? "(E " : "(A ";
      out += f->a;
      if (f->sort == Sort::row) out += ":r";
      if (f->sort == Sort::col) out += ":c";
      out += ". ";
      print(f->left, out);
      out += ")";
      return;
    default:
      out += "(";
      print(f->left, out);
      out += connective_text(f->kind);
      print(f->right, out);
      out += ")";
  }
}

// Recursive-descent parser; positions in errors are 1-based columns.
class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_iff();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos_ + 1); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(std::string_view s) {
    skip();
    return text_.substr(pos_, s.size()) == s;
  }
  bool accept(std::string_view s) {
    if (!peek(s)) return false;
    pos_ += s.size();
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  static bool var_start(char c) { return std::islower(static_cast<unsigned char>(c)) || c == '_'; }
  char current() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char at(std::size_t offset) const { return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0'; }

  std::string variable() {
    skip();
    if (!var_start(current())) fail("expected a variable");
    std::size_t start = pos_;
    while (ident_char(current())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string bracketed() {
    // current() == '['
    std::size_t start = pos_;
    int depth = 0;
    do {
      if (pos_ >= text_.size()) fail("unterminated '['");
      if (text_[pos_] == '[') ++depth;
      if (text_[pos_] == ']') --depth;
      ++pos_;
    } while (depth > 0);
    return std::string(text_.substr(start, pos_ - start));
  }

  FormulaPtr parse_iff() {
    FormulaPtr l = parse_implication();
    while (accept("<->")) l = fo::equivalence(l, parse_implication());
    return l;
  }

  FormulaPtr parse_implication() {
    FormulaPtr l = parse_or();
    if (accept("->")) return fo::implication(l, parse_implication());
    return l;
  }

  FormulaPtr parse_or() {
    FormulaPtr l = parse_and();
    while (accept("|")) l = fo::disjunction(l, parse_and());
    return l;
  }

  FormulaPtr parse_and() {
    FormulaPtr l = parse_unary();
    while (accept("&")) l = fo::conjunction(l, parse_unary());
    return l;
  }

  FormulaPtr parse_unary() {
    skip();
    if (accept("~") || accept("!")) return fo::negation(parse_unary());
    if ((current() == 'E' || current() == 'A') && std::isspace(static_cast<unsigned char>(at(1)))) {
      const bool ex = current() == 'E';
      ++pos_;
      std::string x = variable();
      Sort sort = Sort::none;
      if (accept(":")) {
        skip();
        if (current() == 'r') sort = Sort::row;
        else if (current() == 'c') sort = Sort::col;
        else fail("expected sort 'r' or 'c'");
        ++pos_;
      }
      expect(".");
      if (std::find(bound_.begin(), bound_.end(), x) != bound_.end()) fail("variable '" + x + "' bound twice");
      bound_.push_back(x);
      FormulaPtr body = parse_iff();
      bound_.pop_back();
      return ex ? fo::exists(x, body, sort) : fo::forall(x, body, sort);
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    skip();
    if (accept("(")) {
      FormulaPtr f = parse_iff();
      expect(")");
      return f;
    }
    const char c = current();
    if ((c == 'T' || c == 'F') && !ident_char(at(1)) && at(1) != '(' && at(1) != '[') {
      ++pos_;
      return c == 'T' ? fo::top() : fo::bottom();
    }
    if (text_.substr(pos_, 3) == "tp[") {
      pos_ += 2;
      std::string token = bracketed();
      token = token.substr(1, token.size() - 2);
      expect("(");
      std::string x = variable();
      expect(",");
      std::string y = variable();
      expect(")");
      AtomicType t;
      try {
        t = parse_atomic_type(token, sig_);
      } catch (const Error& e) {
        fail(std::string("bad atomic type: ") + e.what());
      }
      return fo::atomic_type_formula(t, x, y);
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (ident_char(current())) ++pos_;
      if (current() == '[') bracketed();
      std::string name(text_.substr(start, pos_ - start));
      expect("(");
      std::string x = variable();
      if (accept(",")) {
        std::string y = variable();
        expect(")");
        if (!sig_.has_binary(name)) fail("unknown binary relation '" + name + "'");
        return fo::binary(name, x, y);
      }
      expect(")");
      if (!sig_.has_unary(name)) fail("unknown unary relation '" + name + "'");
      return fo::unary(name, x);
    }
    if (var_start(c)) {
      std::string x = variable();
      if (accept("!=")) return fo::negation(fo::equal(x, variable()));
      if (accept("<")) return fo::less(x, variable());
      if (accept(">")) {
        std::string y = variable();
        return fo::less(y, x);
      }
      if (accept("=")) return fo::equal(x, variable());
      fail("expected '<', '>', '=' or '!=' after variable");
    }
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

std::size_t quantifier_depth(const FormulaPtr& f) {
  if (!f) return 0;
  std::size_t inner = std::max(quantifier_depth(f->left), quantifier_depth(f->right));
  return inner + (is_quantifier(f->kind) ? 1 : 0);
}

bool structurally_equal(const FormulaPtr& l, const FormulaPtr& r) {
  if (!l || !r) return !l && !r;
  return l->kind == r->kind && l->relation == r->relation && l->a == r->a && l->b == r->b && l->sort == r->sort &&
         structurally_equal(l->left, r->left) && structurally_equal(l->right, r->right);
}

std::string to_string(const FormulaPtr& f) {
  std::string out;
  print(f, out);
  return out;
}

FormulaPtr parse_formula(std::string_view text, const Signature& signature) {
  return Parser(text, signature).parse();
}

// ---------------------------------------------------------------------------
// Evaluation

struct Evaluator::Node {
  Kind kind = Kind::truth;
  std::size_t a = 0;
  std::size_t b = 0;
  const UnaryRelation* unary = nullptr;
  const BinaryRelation* binary = nullptr;
  std::unique_ptr<Node> left;
  std::unique_ptr<Node> right;
  std::vector<std::size_t> free_slots;
  bool memoize = false;
  std::unordered_map<std::uint64_t, bool> memo;
};

struct Evaluator::Compiled {
  FormulaPtr formula;
  std::map<std::string, std::size_t> slots;
  std::set<std::string> free;
  std::unique_ptr<Node> root;
};

Evaluator::Evaluator(const Structure& s, std::uint64_t guard) : structure_(s), guard_(guard) {}
Evaluator::~Evaluator() = default;

Evaluator::Compiled& Evaluator::compile(const FormulaPtr& f) {
  if (!f) throw InvalidArgument("null formula");
  if (auto it = cache_.find(f.get()); it != cache_.end()) return *it->second;

  auto compiled = std::make_unique<Compiled>();
  compiled->formula = f;
  compiled->free = free_variables(f);
  std::set<std::string> names;
  collect_all_variables(f, names);
  for (const auto& v : names) compiled->slots.emplace(v, compiled->slots.size());
  const bool small_domain = structure_.size() < (1u << 16);

  std::function<std::unique_ptr<Node>(const FormulaPtr&)> build = [&](const FormulaPtr& g) {
    auto node = std::make_unique<Node>();
    node->kind = g->kind;
    if (!g->a.empty()) node->a = compiled->slots.at(g->a);
    if (!g->b.empty()) node->b = compiled->slots.at(g->b);
    if (g->kind == Kind::unary) {
      node->unary = structure_.find_unary(g->relation);
      if (!node->unary) throw InvalidArgument("structure has no unary relation '" + g->relation + "'");
    }
    if (g->kind == Kind::binary) {
      node->binary = structure_.find_binary(g->relation);
      if (!node->binary) throw InvalidArgument("structure has no binary relation '" + g->relation + "'");
    }
    if (g->left) node->left = build(g->left);
    if (g->right) node->right = build(g->right);
    if (is_quantifier(g->kind)) {
      for (const auto& v : free_variables(g)) node->free_slots.push_back(compiled->slots.at(v));
      node->memoize = small_domain && node->free_slots.size() <= 4;
    }
    return node;
  };
  compiled->root = build(f);
  auto& ref = *compiled;
  cache_.emplace(f.get(), std::move(compiled));
  return ref;
}

bool Evaluator::eval(Node& node, std::vector<std::size_t>& slots) {
  switch (node.kind) {
    case Kind::truth: return true;
    case Kind::falsity: return false;
    case Kind::less:
    case Kind::equal:
    case Kind::unary:
    case Kind::binary:
      if (++atoms_ > guard_) throw ResourceLimit("formula evaluation exceeded " + std::to_string(guard_) + " atoms");
      if (node.kind == Kind::less) return slots[node.a] < slots[node.b];
      if (node.kind == Kind::equal) return slots[node.a] == slots[node.b];
      if (node.kind == Kind::unary) return node.unary->members[slots[node.a]] != 0;
      return structure_.holds(*node.binary, slots[node.a], slots[node.b]);
    case Kind::negation: return !eval(*node.left, slots);
    case Kind::conjunction: return eval(*node.left, slots) && eval(*node.right, slots);
    case Kind::disjunction: return eval(*node.left, slots) || eval(*node.right, slots);
    case Kind::implication: return !eval(*node.left, slots) || eval(*node.right, slots);
    case Kind::equivalence: return eval(*node.left, slots) == eval(*node.right, slots);
    case Kind::exists:
    case Kind::forall: {
      std::uint64_t key = 0;
      if (node.memoize) {
        for (auto s : node.free_slots) key = (key << 16) | slots[s];
        if (auto it = node.memo.find(key); it != node.memo.end()) return it->second;
      }
      const bool want = node.kind == Kind::exists;
      const std::size_t saved = slots[node.a];
      bool result = !want;
      for (std::size_t v = 0; v < structure_.size(); ++v) {
        slots[node.a] = v;
        if (eval(*node.left, slots) == want) {
          result = want;
          break;
        }
      }
      slots[node.a] = saved;
      if (node.memoize) node.memo.emplace(key, result);
      return result;
    }
  }
  return false;
}

bool Evaluator::evaluate(const FormulaPtr& f, const Valuation& v) {
  Compiled& c = compile(f);
  std::vector<std::size_t> slots(c.slots.size(), 0);
  for (const auto& name : c.free) {
    auto it = v.find(name);
    if (it == v.end()) throw InvalidArgument("free variable '" + name + "' has no value");
    if (it->second >= structure_.size()) throw InvalidArgument("value of '" + name + "' is outside the domain");
    slots[c.slots.at(name)] = it->second;
  }
  atoms_ = 0;
  return eval(*c.root, slots);
}

bool evaluate(const Structure& s, const FormulaPtr& f, const Valuation& v, std::uint64_t guard) {
  Evaluator e(s, guard);
  return e.evaluate(f, v);
}

// ---------------------------------------------------------------------------
// Interpretations

Signature Interpretation::output_signature() const {
  Signature sig;
  for (const auto& r : relations) (r.vars.size() == 1 ? sig.unary : sig.binary).push_back(r.name);
  return sig;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool is_variable_name(const std::string& v) {
  if (v.empty() || !(std::islower(static_cast<unsigned char>(v[0])) || v[0] == '_')) return false;
  return std::all_of(v.begin(), v.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Interpretation parse_interpretation(std::string_view text, const Signature& input) {
  Interpretation out;
  std::set<std::string> names;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    pos = end + 1;
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::size_t colon = std::string::npos;
    int depth = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '[') ++depth;
      if (line[i] == ']') --depth;
      if (line[i] == ':' && depth == 0) {
        colon = i;
        break;
      }
    }
    if (colon == std::string::npos) throw ParseError("expected ':' after the definition header", number);
    auto head = split_words(line.substr(0, colon));
    FormulaPtr f;
    try {
      f = parse_formula(line.substr(colon + 1), input);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number, e.column());
    }
    std::vector<std::string> vars;
    if (!head.empty() && head[0] == "domain" && head.size() == 2) {
      if (out.domain) throw ParseError("domain defined twice", number);
      vars = {head[1]};
      out.domain_var = head[1];
      out.domain = f;
    } else if (!head.empty() && head[0] == "unary" && head.size() == 3) {
      vars = {head[2]};
      out.relations.push_back({head[1], vars, f});
    } else if (!head.empty() && head[0] == "binary" && head.size() == 4) {
      vars = {head[2], head[3]};
      if (vars[0] == vars[1]) throw ParseError("binary definition repeats its variable", number);
      out.relations.push_back({head[1], vars, f});
    } else {
      throw ParseError("expected 'domain x', 'unary NAME x' or 'binary NAME x y'", number);
    }
    for (const auto& v : vars)
      if (!is_variable_name(v)) throw ParseError("bad variable name '" + v + "'", number);
    if (head[0] != "domain") {
      if (!is_valid_relation_name(head[1])) throw ParseError("bad relation name '" + head[1] + "'", number);
      if (!names.insert(head[1]).second) throw ParseError("relation '" + head[1] + "' defined twice", number);
    }
    for (const auto& v : free_variables(f))
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        throw ParseError("free variable '" + v + "' is not a parameter", number);
    if (end == text.size()) break;
  }
  if (!out.domain) throw ParseError("missing domain definition", number);
  return out;
}

std::string serialize_interpretation(const Interpretation& interp) {
  std::string out = "domain " + interp.domain_var + ": " + to_string(interp.domain) + "\n";
  for (const auto& r : interp.relations) {
    out += r.vars.size() == 1 ? "unary " : "binary ";
    out += r.name;
    for (const auto& v : r.vars) out += " " + v;
    out += ": " + to_string(r.formula) + "\n";
  }
  return out;
}

Structure apply_interpretation(const Structure& s, const Interpretation& interp, std::uint64_t guard) {
  if (!interp.domain) throw InvalidArgument("interpretation has no domain formula");
  Evaluator eval(s, guard);
  IndexList domain;
  for (std::size_t a = 0; a < s.size(); ++a)
    if (eval.evaluate(interp.domain, {{interp.domain_var, a}})) domain.push_back(a);
  const std::size_t n = domain.size();
  std::vector<UnaryRelation> unary;
  std::vector<BinaryRelation> binary;
  for (const auto& r : interp.relations) {
    if (r.vars.size() == 1) {
      UnaryRelation u{r.name, std::vector<std::uint8_t>(n, 0)};
      for (std::size_t i = 0; i < n; ++i) u.members[i] = eval.evaluate(r.formula, {{r.vars[0], domain[i]}});
      unary.push_back(std::move(u));
    } else if (r.vars.size() == 2) {
      BinaryRelation b{r.name, std::vector<std::uint8_t>(n * n, 0)};
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          b.pairs[i * n + j] = eval.evaluate(r.formula, {{r.vars[0], domain[i]}, {r.vars[1], domain[j]}});
      binary.push_back(std::move(b));
    } else {
      throw InvalidArgument("relation '" + r.name + "' must have one or two variables");
    }
  }
  return Structure(n, std::move(unary), std::move(binary));
}

namespace {

class Composer {
 public:
  Composer(const Interpretation& first, const Interpretation& second) : first_(first) {
    collect_all_variables(first.domain, used_);
    for (const auto& r : first.relations) collect_all_variables(r.formula, used_);
    collect_all_variables(second.domain, used_);
    for (const auto& r : second.relations) collect_all_variables(r.formula, used_);
    used_.insert(first.domain_var);
    used_.insert(second.domain_var);
  }

  // Rewrites a formula over the output of `first` into one over its input.
  FormulaPtr translate(const FormulaPtr& f) {
    switch (f->kind) {
      case Kind::truth:
      case Kind::falsity:
      case Kind::less:
      case Kind::equal:
        return f;
      case Kind::unary:
      case Kind::binary: {
        const RelationDefinition& def = definition(f->relation, f->kind == Kind::unary ? 1 : 2);
        std::map<std::string, std::string> rename{{def.vars[0], f->a}};
        if (def.vars.size() == 2) rename[def.vars[1]] = f->b;
        return instantiate(def.formula, rename);
      }
      case Kind::negation:
        return fo::negation(translate(f->left));
      case Kind::exists:
        return fo::exists(f->a, fo::conjunction(domain(f->a), translate(f->left)), f->sort);
      case Kind::forall:
        return fo::forall(f->a, fo::implication(domain(f->a), translate(f->left)), f->sort);
      default: {
        Formula g = *f;
        g.left = translate(f->left);
        g.right = translate(f->right);
        return std::make_shared<const Formula>(std::move(g));
      }
    }
  }

  FormulaPtr domain(const std::string& v) { return instantiate(first_.domain, {{first_.domain_var, v}}); }

 private:
  const RelationDefinition& definition(const std::string& name, std::size_t arity) const {
    for (const auto& r : first_.relations)
      if (r.name == name && r.vars.size() == arity) return r;
    throw InvalidArgument("relation '" + name + "' is not defined by the inner interpretation");
  }

  std::string fresh() {
    for (;;) {
      std::string v = "_c" + std::to_string(++counter_);
      if (used_.insert(v).second) return v;
    }
  }

  // Renames free variables per `rename` and every bound variable to a fresh name.
  FormulaPtr instantiate(const FormulaPtr& f, std::map<std::string, std::string> rename) {
    auto var = [&rename](const std::string& v) {
      auto it = rename.find(v);
      return it == rename.end() ? v : it->second;
    };
    switch (f->kind) {
      case Kind::truth:
      case Kind::falsity:
        return f;
      case Kind::unary:
      case Kind::less:
      case Kind::equal:
      case Kind::binary: {
        Formula g = *f;
        g.a = var(f->a);
        if (!f->b.empty()) g.b = var(f->b);
        return std::make_shared<const Formula>(std::move(g));
      }
      case Kind::exists:
      case Kind::forall: {
        std::string v = fresh();
        rename[f->a] = v;
        Formula g = *f;
        g.a = v;
        g.left = instantiate(f->left, rename);
        return std::make_shared<const Formula>(std::move(g));
      }
      default: {
        Formula g = *f;
        g.left = instantiate(f->left, rename);
        if (f->right) g.right = instantiate(f->right, rename);
        return std::make_shared<const Formula>(std::move(g));
      }
    }
  }

  const Interpretation& first_;
  std::set<std::string> used_;
  std::size_t counter_ = 0;
};

}  // namespace

Interpretation compose(const Interpretation& first, const Interpretation& second) {
  if (!first.domain || !second.domain) throw InvalidArgument("interpretation has no domain formula");
  Composer c(first, second);
  Interpretation out;
  out.domain_var = second.domain_var;
  out.domain = fo::conjunction(c.domain(second.domain_var), c.translate(second.domain));
  for (const auto& r : second.relations) out.relations.push_back({r.name, r.vars, c.translate(r.formula)});
  return out;
}

Graph i_tau(const Structure& s, const AtomicType& tau) {
  if (tau.order != 1) throw InvalidArgument("I_tau needs an atomic type with x<y");
  Graph g(s.size());
  for (std::size_t u = 0; u < s.size(); ++u)
    for (std::size_t v = u + 1; v < s.size(); ++v)
      if (atomic_type(s, u, v) == tau) g.add_edge(u, v);
  return g;
}

Structure i_tau_directed(const Structure& s, const AtomicType& tau) {
  const std::size_t n = s.size();
  BinaryRelation e{"E", std::vector<std::uint8_t>(n * n, 0)};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) e.pairs[u * n + v] = atomic_type(s, u, v) == tau;
  return Structure(n, {}, {std::move(e)});
}

Interpretation i_tau_interpretation(const AtomicType& tau) {
  if (tau.order != 1) throw InvalidArgument("I_tau needs an atomic type with x<y");
  Interpretation out;
  out.domain_var = "x";
  out.domain = fo::top();
  out.relations.push_back({"E", {"x", "y"},
                           fo::disjunction(fo::atomic_type_formula(tau, "x", "y"),
                                           fo::atomic_type_formula(tau, "y", "x"))});
  return out;
}

Matrix zero_one_adjacency(const Structure& s) {
  if (s.binary().size() != 1) throw InvalidArgument("structure must have exactly one binary relation");
  const auto& rel = s.binary().front();
  const std::size_t n = s.size();
  std::vector<Symbol> entries(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) entries[u * n + v] = s.holds(rel, u, v) ? 1 : 0;
  return Matrix(n, n, Alphabet::binary(), std::move(entries));
}

std::string matrix_relation_name(const std::string& symbol) { return "E[" + symbol + "]"; }

Structure matrix_structure(const Matrix& m) {
  const std::size_t n = m.rows() + m.cols();
  UnaryRelation rows{"R", std::vector<std::uint8_t>(n, 0)};
  UnaryRelation cols{"C", std::vector<std::uint8_t>(n, 0)};
  for (std::size_t i = 0; i < m.rows(); ++i) rows.members[i] = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.members[m.rows() + j] = 1;
  std::vector<BinaryRelation> binary;
  for (std::size_t s = 0; s < m.alphabet().size(); ++s) {
    std::string name = matrix_relation_name(m.alphabet().symbol(static_cast<Symbol>(s)));
    if (!is_valid_relation_name(name)) throw InvalidArgument("symbol cannot name a relation: " + name);
    BinaryRelation rel{name, std::vector<std::uint8_t>(n * n, 0)};
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.at(i, j) == s) rel.pairs[i * n + m.rows() + j] = 1;
    binary.push_back(std::move(rel));
  }
  return Structure(n, {std::move(rows), std::move(cols)}, std::move(binary));
}

namespace {

bool guarded(const FormulaPtr& q) {
  const FormulaPtr& body = q->left;
  const Kind want = q->kind == Kind::exists ? Kind::conjunction : Kind::implication;
  if (body->kind != want || body->left->kind != Kind::unary || body->left->a != q->a) return false;
  return (q->sort == Sort::row && body->left->relation == "R") || (q->sort == Sort::col && body->left->relation == "C");
}

class Normalizer {
 public:
  explicit Normalizer(const FormulaPtr& f) { collect_all_variables(f, used_); }

  FormulaPtr run(const FormulaPtr& f, std::map<std::string, std::string> rename) {
    auto var = [&rename](const std::string& v) {
      auto it = rename.find(v);
      return it == rename.end() ? v : it->second;
    };
    switch (f->kind) {
      case Kind::truth:
      case Kind::falsity:
        return f;
      case Kind::unary:
      case Kind::less:
      case Kind::equal:
      case Kind::binary: {
        Formula g = *f;
        g.a = var(f->a);
        if (!f->b.empty()) g.b = var(f->b);
        return std::make_shared<const Formula>(std::move(g));
      }
      case Kind::exists:
      case Kind::forall: {
        if (f->sort != Sort::none) {
          rename.erase(f->a);
          Formula g = *f;
          g.left = run(f->left, rename);
          FormulaPtr q = std::make_shared<const Formula>(std::move(g));
          if (guarded(q)) return q;
          return copy(f->kind, f->a, f->sort, run(f->left, rename));
        }
        std::string xr = name(f->a + "_r");
        std::string xc = name(f->a + "_c");
        auto r = rename;
        r[f->a] = xr;
        auto c = rename;
        c[f->a] = xc;
        FormulaPtr row = copy(f->kind, xr, Sort::row, run(f->left, r));
        FormulaPtr col = copy(f->kind, xc, Sort::col, run(f->left, c));
        return f->kind == Kind::exists ? fo::disjunction(row, col) : fo::conjunction(row, col);
      }
      default: {
        Formula g = *f;
        g.left = run(f->left, rename);
        if (f->right) g.right = run(f->right, rename);
        return std::make_shared<const Formula>(std::move(g));
      }
    }
  }

 private:
  static FormulaPtr copy(Kind k, const std::string& x, Sort sort, FormulaPtr body) {
    FormulaPtr guard = fo::unary(sort == Sort::row ? "R" : "C", x);
    if (k == Kind::exists) return fo::exists(x, fo::conjunction(guard, std::move(body)), sort);
    return fo::forall(x, fo::implication(guard, std::move(body)), sort);
  }

  std::string name(std::string base) {
    if (used_.count(base) == 0) return base;
    for (std::size_t i = 1;; ++i)
      if (used_.count(base + std::to_string(i)) == 0) return base + std::to_string(i);
  }

  std::set<std::string> used_;
};

class MatrixRewriter {
 public:
  explicit MatrixRewriter(const Signature& sig) : sig_(sig) {}

  FormulaPtr run(const FormulaPtr& f) {
    switch (f->kind) {
      case Kind::truth:
      case Kind::falsity:
        return f;
      case Kind::unary: {
        Sort s = sort_of(f->a);
        if (f->relation == "R") return s == Sort::row ? fo::top() : fo::bottom();
        if (f->relation == "C") return s == Sort::col ? fo::top() : fo::bottom();
        throw InvalidArgument("unary relation '" + f->relation + "' is not part of a matrix structure");
      }
      case Kind::equal: {
        if (sort_of(f->a) != sort_of(f->b)) return fo::bottom();
        return f;
      }
      case Kind::less: {
        Sort sa = sort_of(f->a), sb = sort_of(f->b);
        if (sa == sb) return f;
        return sa == Sort::row ? fo::top() : fo::bottom();
      }
      case Kind::binary: {
        const std::string& rel = f->relation;
        if (rel.size() < 4 || rel.compare(0, 2, "E[") != 0 || rel.back() != ']')
          throw InvalidArgument("binary relation '" + rel + "' is not part of a matrix structure");
        AtomicType t = parse_atomic_type(std::string_view(rel).substr(2, rel.size() - 3), sig_);
        if (sort_of(f->a) != Sort::row || sort_of(f->b) != Sort::col) return fo::bottom();
        return fo::atomic_type_formula(t, f->a, f->b);
      }
      case Kind::exists:
      case Kind::forall: {
        if (f->sort == Sort::none) throw InvalidArgument("quantifier over '" + f->a + "' has no sort");
        if (!guarded(f)) throw InvalidArgument("quantifier over '" + f->a + "' is not guarded");
        sorts_.emplace_back(f->a, f->sort);
        FormulaPtr body = run(f->left->right);
        sorts_.pop_back();
        return f->kind == Kind::exists ? fo::exists(f->a, body) : fo::forall(f->a, body);
      }
      default: {
        Formula g = *f;
        g.left = run(f->left);
        if (f->right) g.right = run(f->right);
        return std::make_shared<const Formula>(std::move(g));
      }
    }
  }

 private:
  Sort sort_of(const std::string& v) const {
    for (auto it = sorts_.rbegin(); it != sorts_.rend(); ++it)
      if (it->first == v) return it->second;
    throw InvalidArgument("variable '" + v + "' is free");
  }

  const Signature& sig_;
  std::vector<std::pair<std::string, Sort>> sorts_;
};

}  // namespace

FormulaPtr guard_normalize(const FormulaPtr& f) {
  Normalizer n(f);
  return n.run(f, {});
}

FormulaPtr rewrite_matrix_sentence(const FormulaPtr& f, const Signature& structure_signature) {
  if (!free_variables(f).empty()) throw InvalidArgument("matrix sentence has free variables");
  MatrixRewriter r(structure_signature);
  return r.run(f);
}

// ---------------------------------------------------------------------------
// Formulas over matching graphs

namespace {

Signature graph_signature() {
  Signature sig;
  sig.binary = {"E"};
  return sig;
}

class Fresh {
 public:
  explicit Fresh(std::string prefix) : prefix_(std::move(prefix)) {}
  std::string operator()() { return prefix_ + std::to_string(++count_); }

 private:
  std::string prefix_;
  std::size_t count_ = 0;
};

std::string mu_text(PatternSymbol s, const std::string& x, const std::string& y, const std::string& z, Fresh& fresh) {
  std::string base = "(" + x + "<" + z + " | " + x + "=" + z + ") & " + z + "<" + y;
  std::string e = "E(" + x + "," + y + ")";
  std::string w = fresh();
  switch (s) {
    case PatternSymbol::eq: return "(" + base + " & " + e + ")";
    case PatternSymbol::neq: return "(" + base + " & ~" + e + ")";
    case PatternSymbol::le_r:
      return "(" + base + " & " + e + " & ~(E " + w + ". " + x + "<" + w + " & (" + w + "<" + z + " | " + w + "=" + z +
             ") & E(" + w + "," + y + ")))";
    case PatternSymbol::ge_r:
      return "(" + base + " & " + e + " & ~(E " + w + ". " + w + "<" + x + " & E(" + w + "," + y + ")))";
    case PatternSymbol::le_c:
      return "(" + base + " & " + e + " & ~(E " + w + ". " + y + "<" + w + " & E(" + x + "," + w + ")))";
    case PatternSymbol::ge_c:
      return "(" + base + " & " + e + " & ~(E " + w + ". " + z + "<" + w + " & " + w + "<" + y + " & E(" + x + "," + w +
             ")))";
  }
  return "F";
}

std::string rho_text(PatternSymbol s, const std::string& z, Fresh& fresh) {
  std::string x = fresh(), y = fresh(), x2 = fresh(), y2 = fresh();
  std::string left = "(A " + x + ". (" + x + "<" + z + " | " + x + "=" + z + ") -> (E " + y + ". " +
                     mu_text(s, x, y, z, fresh) + " & (A " + y2 + ". " + mu_text(s, x, y2, z, fresh) + " -> " + y2 +
                     "=" + y + ")))";
  std::string x3 = fresh(), y3 = fresh();
  std::string right = "(A " + y3 + ". " + z + "<" + y3 + " -> (E " + x3 + ". " + mu_text(s, x3, y3, z, fresh) +
                      " & (A " + x2 + ". " + mu_text(s, x2, y3, z, fresh) + " -> " + x2 + "=" + x3 + ")))";
  return "(" + left + " & " + right + ")";
}

}  // namespace

std::string middle_point_mu(PatternSymbol s, const std::string& x, const std::string& y, const std::string& z) {
  Fresh fresh("m");
  return mu_text(s, x, y, z, fresh);
}

std::string middle_point_rho(PatternSymbol s, const std::string& z) {
  Fresh fresh("r");
  return rho_text(s, z, fresh);
}

std::string middle_point_phi(PatternSymbol s, const std::string& x, const std::string& y) {
  Fresh fresh("p");
  std::string z = fresh();
  return "(E " + z + ". " + rho_text(s, z, fresh) + " & " + mu_text(s, x, y, z, fresh) + ")";
}

std::optional<OrderedMatching> fo_decode_regular(PatternSymbol s, const Graph& g, std::uint64_t guard) {
  Structure st = Structure::from_graph(g);
  Evaluator eval(st, guard);
  FormulaPtr phi = parse_formula(middle_point_phi(s, "x", "y"), graph_signature());
  Graph pairs(g.size());
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = x + 1; y < g.size(); ++y)
      if (eval.evaluate(phi, {{"x", x}, {"y", y}}) || eval.evaluate(phi, {{"x", y}, {"y", x}})) pairs.add_edge(x, y);
  if (pairs.edge_count() == 0) return std::nullopt;
  return matching_from_graph(pairs);
}

Interpretation matching_decoder_interpretation() {
  Fresh fresh("q");
  auto is_xp = [&](const std::string& p) {
    std::string a = fresh(), b = fresh(), c = fresh();
    return "((E " + a + ". " + a + "<" + p + " & E(" + p + "," + a + ")) & ~(E " + b + ". " + b + "<" + p + " & (E " +
           c + ". " + c + "<" + b + " & E(" + b + "," + c + "))))";
  };
  auto is_yp = [&](const std::string& p) {
    std::string a = fresh(), b = fresh(), c = fresh();
    return "((E " + a + ". " + p + "<" + a + " & E(" + p + "," + a + ")) & ~(E " + b + ". " + p + "<" + b + " & (E " +
           c + ". " + b + "<" + c + " & E(" + b + "," + c + "))))";
  };
  auto succ = [&](const std::string& a, const std::string& s) {
    std::string t = fresh();
    return "(" + a + "<" + s + " & ~(E " + t + ". " + a + "<" + t + " & " + t + "<" + s + "))";
  };
  auto between = [](const std::string& z, const std::string& a, const std::string& b) {
    return "((" + a + "<" + z + " & " + z + "<" + b + ") | (" + b + "<" + z + " & " + z + "<" + a + "))";
  };
  auto in_block = [&](const std::string& v, const std::string& z) {
    std::string s = fresh(), a = fresh(), b = fresh();
    return "(E " + s + ". " + succ(v, s) + " & (E " + a + ". E(" + v + "," + a + ") & (E " + b + ". E(" + s + "," + b +
           ") & " + between(z, a, b) + ")))";
  };
  auto psi = [&](const std::string& u, const std::string& v) {
    std::string e = fresh(), yp = fresh(), yy = fresh(), f = fresh(), p = fresh(), s = fresh(), z1 = fresh(),
                z2 = fresh();
    return "(E " + e + ". (E " + yp + ". " + is_yp(yp) + " & (E " + yy + ". E(" + yp + "," + yy + ") & " + yy + "<" +
           e + ")) & (E " + f + ". E(" + e + "," + f + ") & (E " + p + ". " + succ(p, f) + " & (E " + s + ". " +
           succ(f, s) + " & (E " + z1 + ". E(" + p + "," + z1 + ") & " + in_block(u, z1) + ") & (E " + z2 + ". E(" +
           s + "," + z2 + ") & " + in_block(v, z2) + ")))))";
  };
  std::string p = fresh(), q = fresh();
  std::string domain = "E " + p + ". " + is_xp(p) + " & (E " + q + ". E(" + p + "," + q + ") & v<" + q + ")";
  std::string edge = psi("u", "w") + " | " + psi("w", "u");

  const Signature sig = graph_signature();
  Interpretation out;
  out.domain_var = "v";
  out.domain = parse_formula(domain, sig);
  out.relations.push_back({"E", {"u", "w"}, parse_formula(edge, sig)});
  return out;
}

std::optional<Graph> fo_decode_matching(const OrderedMatching& m, std::uint64_t guard) {
  if (m.half() == 0) return std::nullopt;
  Structure decoded = apply_interpretation(Structure::from_graph(m.to_graph()), matching_decoder_interpretation(), guard);
  if (decoded.size() == 0) return std::nullopt;
  const BinaryRelation& e = decoded.binary().front();
  Graph g(decoded.size());
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v)
      if (decoded.holds(e, u, v)) g.add_edge(u, v);
  return g;
}

}  // namespace ordtww
