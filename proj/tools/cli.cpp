#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ordtww/approx.hpp"
#include "ordtww/contraction.hpp"
#include "ordtww/core.hpp"
#include "ordtww/divisions.hpp"
#include "ordtww/folog.hpp"
#include "ordtww/patterns.hpp"

namespace ordtww::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

std::string join(const IndexList& values, std::size_t offset = 0) {
  std::string out;
  for (auto v : values) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v + offset);
  }
  return out;
}

Eta parse_eta(const std::string& bits) {
  if (bits.size() != 4 || bits.find_first_not_of("01") != std::string::npos)
    throw InvalidArgument("eta must be four bits: values at (1,1),(1,-1),(-1,1),(-1,-1)");
  return Eta(bits[0] - '0', bits[1] - '0', bits[2] - '0', bits[3] - '0');
}

void report_division(std::ostream& out, const Division& d) {
  out << "row_cuts=" << join(d.row_cuts()) << "\n";
  out << "col_cuts=" << join(d.col_cuts()) << "\n";
}

struct Options {
  std::string matrix;
  std::string second;
  std::string out_path;
  std::string symbol;
  std::string eta;
  std::string sigma;
  std::string spec;
  std::string formula;
  std::vector<std::string> assignments;
  std::size_t k = 1;
  std::size_t max_k = 4;
  std::size_t n = 0;
  std::size_t half = 0;
  std::size_t guard = 0;
  std::uint64_t atom_guard = kDefaultAtomGuard;
  bool bottom = false;
  bool kk = false;
  bool fo_route = false;
};

int cmd_gridrank(const Options& o, std::ostream& out) {
  Matrix m = parse_matrix(read_file(o.matrix));
  const std::size_t k = grid_rank(m, o.max_k);
  auto d = find_rank_division(m, k);
  if (!d || !is_rank_division(m, *d, k)) throw InternalInvariant("grid rank division failed re-verification");
  out << "gridrank=" << k << "\n";
  report_division(out, *d);
  return exit_ok;
}

int cmd_tww_exact(const Options& o, std::ostream& out) {
  Matrix m = parse_matrix(read_file(o.matrix));
  const std::size_t guard = o.guard ? o.guard : kDefaultExactGuard;
  ExactResult r = o.kk ? min_kk_value(m, guard) : exact_twinwidth(m, guard);
  if (verify_sequence(m, r.witness) != r.profile) throw InternalInvariant("witness failed re-verification");
  out << (o.kk ? "kk=" : "tww=") << r.value << "\n";
  out << "max_overlap=" << r.profile.max_overlap << "\n";
  out << "max_error=" << r.profile.max_error << "\n";
  if (!o.out_path.empty()) write_file(o.out_path, serialize_sequence(r.witness));
  return exit_ok;
}

int cmd_tww_approx(const Options& o, std::ostream& out) {
  Matrix m = parse_matrix(read_file(o.matrix));
  ApproxOutcome r = approximate_twinwidth(m, o.k);
  if (!verify_outcome(m, r)) throw InternalInvariant("approximation certificate failed re-verification");
  if (r.kind == ApproxOutcome::Kind::rich) {
    out << "outcome=RICH\n";
    out << "richness=" << r.richness << "\n";
    report_division(out, *r.division);
    if (!o.out_path.empty()) write_file(o.out_path, serialize_division(*r.division));
  } else {
    out << "outcome=SEQ\n";
    out << "actual_overlap=" << r.profile.max_overlap << "\n";
    out << "actual_error=" << r.profile.max_error << "\n";
    out << "claimed_overlap=" << r.params.w << "\n";
    out << "claimed_error=" << r.params.error_bound() << "\n";
    if (!o.out_path.empty()) write_file(o.out_path, serialize_sequence(*r.sequence));
  }
  return exit_ok;
}

int cmd_verify_seq(const Options& o, std::ostream& out) {
  Matrix m = parse_matrix(read_file(o.matrix));
  ContractionSequence s = parse_sequence(read_file(o.second), m.rows(), m.cols());
  try {
    SequenceProfile p = verify_sequence(m, s);
    out << "valid=1\nmax_overlap=" << p.max_overlap << "\nmax_error=" << p.max_error << "\n";
    return exit_ok;
  } catch (const CertificateInvalid& e) {
    out << "valid=0\nlocation=" << e.location() << "\nreason=" << e.what() << "\n";
    return exit_invalid_input;
  }
}

int cmd_verify_rich(const Options& o, std::ostream& out) {
  Matrix m = parse_matrix(read_file(o.matrix));
  Division d = parse_division(read_file(o.second), m.rows(), m.cols());
  RichReport r = is_rich_division(m, d, o.k);
  if (r.rich) {
    out << "rich=1\n";
    return exit_ok;
  }
  out << "rich=0\nside=" << (r.side == Side::rows ? "R" : "C") << "\npart=" << r.part + 1
      << "\nremoved=" << join(r.removed, 1) << "\n";
  return exit_invalid_input;
}

int cmd_verify_latin(const Options& o, std::ostream& out) {
  Matrix m = parse_matrix(read_file(o.matrix));
  LatinWitness w = parse_latin_witness(read_file(o.second), m.rows(), m.cols());
  LatinReport r;
  try {
    r = verify_rank_latin_division(m, w, o.k);
  } catch (const CertificateInvalid& e) {
    out << "valid=0\nlocation=" << e.location() << "\nreason=" << e.what() << "\n";
    return exit_invalid_input;
  }
  if (r.ok) {
    out << "valid=1\n";
    return exit_ok;
  }
  out << "valid=0\nreason=" << r.reason << "\n";
  if (r.cell) out << "cell=" << r.cell->first + 1 << " " << r.cell->second + 1 << "\n";
  if (r.cross_with) out << "cross_with=" << r.cross_with->first + 1 << " " << r.cross_with->second + 1 << "\n";
  return exit_invalid_input;
}

int cmd_mt_find(const Options& o, std::ostream& out) {
  Matrix m = parse_matrix(read_file(o.matrix));
  out << "mt_bound=" << mt_bound(o.k) << "\n";
  auto d = find_mt_division(m, o.k);
  if (!d) {
    out << "found=0\n";
    return exit_ok;
  }
  const Symbol zero = *m.alphabet().zero();
  for (std::size_t a = 0; a < d->row_parts(); ++a)
    for (std::size_t b = 0; b < d->col_parts(); ++b) {
      Interval r = d->row_part(a), c = d->col_part(b);
      bool hit = false;
      for (std::size_t i = r.first; i <= r.last && !hit; ++i)
        for (std::size_t j = c.first; j <= c.last && !hit; ++j) hit = m.at(i, j) != zero;
      if (!hit) throw InternalInvariant("division has an all-zero zone");
    }
  out << "found=1\n";
  report_division(out, *d);
  return exit_ok;
}

Eta pattern_eta(const Options& o) {
  if (o.symbol.empty() == o.eta.empty()) throw InvalidArgument("give exactly one of --s and --eta");
  return o.symbol.empty() ? parse_eta(o.eta) : eta_for_symbol(parse_symbol(o.symbol));
}

int cmd_gen_pattern(const Options& o, std::ostream& out) {
  const Eta eta = pattern_eta(o);
  Permutation sigma = Permutation::parse(o.sigma, o.n);
  Matrix m = o.symbol.empty() ? f_matrix_eta(eta, sigma) : f_matrix_s(parse_symbol(o.symbol), sigma);
  auto back = o.symbol.empty() ? decode_f(eta, m) : decode_s(parse_symbol(o.symbol), m);
  if (back != sigma) throw InternalInvariant("pattern matrix does not decode to its permutation");
  out << (o.bottom ? render_matrix(m, true) : serialize_matrix(m));
  return exit_ok;
}

int cmd_decode_pattern(const Options& o, std::ostream& out) {
  const Eta eta = pattern_eta(o);
  Matrix m = parse_matrix(read_file(o.matrix));
  auto sigma = o.symbol.empty() ? decode_f(eta, m) : decode_s(parse_symbol(o.symbol), m);
  out << "decoded=" << (sigma ? 1 : 0) << "\n";
  if (sigma) out << "sigma=" << sigma->to_string() << "\n";
  return exit_ok;
}

int cmd_gen_class(const Options& o, std::ostream& out) {
  auto graphs = enumerate_slice(ClassSpec::parse(o.spec), o.n, o.guard ? o.guard : kDefaultSliceGuard, o.half);
  out << "count=" << graphs.size() << "\n";
  for (const auto& g : graphs) out << "graph=" << g.key() << "\n";
  return exit_ok;
}

int cmd_growth(const Options& o, std::ostream& out) {
  auto graphs = enumerate_slice(ClassSpec::parse(o.spec), o.n, o.guard ? o.guard : kDefaultSliceGuard, o.half);
  out << "count=" << graphs.size() << "\n";
  return exit_ok;
}

int cmd_encode_matching(const Options& o, std::ostream& out) {
  Graph g = parse_graph(read_file(o.matrix));
  OrderedMatching m = encode_graph_as_matching(g);
  if (decode_matching_to_graph(m) != g) throw InternalInvariant("matching encoding does not decode");
  out << "half=" << m.half() << "\nsigma=" << m.sigma.to_string() << "\n";
  return exit_ok;
}

int cmd_decode_matching(const Options& o, std::ostream& out) {
  OrderedMatching m{Permutation::parse(o.sigma, o.n)};
  auto g = o.fo_route ? fo_decode_matching(m, o.atom_guard) : decode_matching_to_graph(m);
  out << "decoded=" << (g ? 1 : 0) << "\n";
  if (!g) return exit_ok;
  out << "n=" << g->size() << "\n";
  for (auto [u, v] : g->edges()) out << "edge=" << u + 1 << " " << v + 1 << "\n";
  return exit_ok;
}

int cmd_fo_eval(const Options& o, std::ostream& out) {
  Structure s = parse_structure(read_file(o.matrix));
  FormulaPtr f = parse_formula(o.formula, s.signature());
  Valuation v;
  for (const auto& a : o.assignments) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("assignment must be var=element");
    std::size_t value = 0;
    try {
      value = std::stoul(a.substr(eq + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("bad element in '" + a + "'");
    }
    if (value == 0) throw InvalidArgument("elements are numbered from 1");
    v[a.substr(0, eq)] = value - 1;
  }
  Evaluator e(s, o.atom_guard);
  const bool value = e.evaluate(f, v);
  out << "value=" << (value ? 1 : 0) << "\natoms=" << e.atoms_evaluated() << "\n";
  return exit_ok;
}

int cmd_fo_interp(const Options& o, std::ostream& out) {
  Structure s = parse_structure(read_file(o.matrix));
  Interpretation interp = parse_interpretation(read_file(o.second), s.signature());
  out << serialize_structure(apply_interpretation(s, interp, o.atom_guard));
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twin-width certificates for ordered matrices and structures", "ordtww"};
  app.require_subcommand(1);
  Options o;

  using Handler = int (*)(const Options&, std::ostream&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, h);
    return sub;
  };
  auto guard_flag = [&o](CLI::App* sub) {
    sub->add_option("--guard", o.atom_guard, "Atom-evaluation limit")->capture_default_str();
  };

  auto* gridrank = add("gridrank", "Largest k with a rank-k k-division", cmd_gridrank);
  gridrank->add_option("matrix", o.matrix)->required();
  gridrank->add_option("--max-k", o.max_k)->capture_default_str();

  auto* exact = add("tww-exact", "Exact twin-width with a witness sequence", cmd_tww_exact);
  exact->add_option("matrix", o.matrix)->required();
  exact->add_option("--guard", o.guard, "Largest rows+cols accepted");
  exact->add_flag("--kk", o.kk, "Minimize max(overlap, error) instead of the sum");
  exact->add_option("--out", o.out_path, "Write the witness sequence here");

  auto* approx = add("tww-approx", "Approximation: rich division or contraction sequence", cmd_tww_approx);
  approx->add_option("matrix", o.matrix)->required();
  approx->add_option("--k", o.k)->required();
  approx->add_option("--out", o.out_path, "Write the certificate here");

  auto* vseq = add("verify-seq", "Check a contraction sequence", cmd_verify_seq);
  vseq->add_option("matrix", o.matrix)->required();
  vseq->add_option("sequence", o.second)->required();

  auto* vrich = add("verify-rich", "Check that a division is k-rich", cmd_verify_rich);
  vrich->add_option("matrix", o.matrix)->required();
  vrich->add_option("division", o.second)->required();
  vrich->add_option("--k", o.k)->required();

  auto* vlatin = add("verify-latin", "Check a rank-Latin division witness", cmd_verify_latin);
  vlatin->add_option("matrix", o.matrix)->required();
  vlatin->add_option("witness", o.second)->required();
  vlatin->add_option("--k", o.k)->required();

  auto* mt = add("mt-find", "k-division with a non-zero entry in every zone", cmd_mt_find);
  mt->add_option("matrix", o.matrix)->required();
  mt->add_option("--k", o.k)->required();

  auto* genp = add("gen-pattern", "Pattern matrix F_s(sigma) or F_eta(sigma)", cmd_gen_pattern);
  genp->add_option("--s", o.symbol);
  genp->add_option("--eta", o.eta, "Values at (1,1),(1,-1),(-1,1),(-1,-1), e.g. 0111");
  genp->add_option("--sigma", o.sigma)->required();
  genp->add_option("--n", o.n, "Size for cycle notation");
  genp->add_flag("--bottom", o.bottom, "Render with the first row at the bottom");

  auto* decp = add("decode-pattern", "Recover sigma from a pattern matrix", cmd_decode_pattern);
  decp->add_option("matrix", o.matrix)->required();
  decp->add_option("--s", o.symbol);
  decp->add_option("--eta", o.eta);

  auto* genc = add("gen-class", "List the n-vertex graphs of a class slice", cmd_gen_class);
  genc->add_option("spec", o.spec)->required();
  genc->add_option("--n", o.n)->required();
  genc->add_option("--half", o.half, "Half-size of the generating matchings");
  genc->add_option("--guard", o.guard, "Largest size accepted");

  auto* growth = add("growth", "Count the n-vertex graphs of a class slice", cmd_growth);
  growth->add_option("spec", o.spec)->required();
  growth->add_option("--n", o.n)->required();
  growth->add_option("--half", o.half, "Half-size of the generating matchings");
  growth->add_option("--guard", o.guard, "Largest size accepted");

  auto* enc = add("encode-matching", "Encode a graph as an ordered matching", cmd_encode_matching);
  enc->add_option("graph", o.matrix)->required();

  auto* dec = add("decode-matching", "Recover a graph from its matching encoding", cmd_decode_matching);
  dec->add_option("--sigma", o.sigma)->required();
  dec->add_option("--n", o.n, "Size for cycle notation");
  dec->add_flag("--fo", o.fo_route, "Decode through the first-order interpretation");
  guard_flag(dec);

  auto* foe = add("fo-eval", "Evaluate a formula on a structure", cmd_fo_eval);
  foe->add_option("structure", o.matrix)->required();
  foe->add_option("formula", o.formula)->required();
  foe->add_option("--let", o.assignments, "Free variable values, e.g. x=2 (1-based)");
  guard_flag(foe);

  auto* foi = add("fo-interp", "Apply an interpretation to a structure", cmd_fo_interp);
  foi->add_option("structure", o.matrix)->required();
  foi->add_option("interpretation", o.second)->required();
  guard_flag(foi);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    for (auto& [sub, handler] : commands)
      if (sub->parsed()) return handler(o, out);
  } catch (const ResourceLimit& e) {
    err << "error=resource-limit: " << e.what() << "\n";
    return exit_resource_limit;
  } catch (const InternalInvariant& e) {
    err << "error=internal: " << e.what() << "\n";
    return exit_internal;
  } catch (const Error& e) {
    err << "error=invalid-input: " << e.what() << "\n";
    return exit_invalid_input;
  } catch (const std::exception& e) {
    err << "error=internal: " << e.what() << "\n";
    return exit_internal;
  }
  err << app.help();
  return exit_usage;
}

}  // namespace ordtww::cli
