#include "pit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "pit/pit.hpp"
#include "pit/suite.hpp"
#include "pit/text.hpp"
#include "pit/transforms.hpp"

namespace pit {

namespace {

struct RunConfig {
  u64 field = kDefaultPrime;
  std::size_t cap = kDefaultExpansionCap;
  u64 seed = 1;
  std::size_t trials = 20;
  std::string format = "text";
};

// Raised for failed post-condition checks on emitted artifacts.
class CheckFailed : public Error {
 public:
  using Error::Error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load(const std::string& path, const RunConfig& cfg) {
  return parse_document(read_input(path), PrimeField(cfg.field));
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// ------------------------------------------------------------------ check

struct CheckOutcome {
  Verdict verdict = Verdict::NonZero;
  std::string mode;  // det | rand | brute
  bool randomized = false;
  std::optional<std::string> witness;
  std::size_t splits = 0;
  std::size_t trials_run = 0;
  bool small_field_warning = false;
  std::vector<std::string> trace;
};

// Value of prod_i (A_i0 + sum_j A_ij x_j) in the algebra at a point.
bool term_circuit_nonzero_at(const AlgebraTermCircuit& c, const EvalPoint& p) {
  const AlgebraBasis& b = c.basis;
  AlgebraElement acc = b.identity();
  for (const auto& t : c.terms) {
    AlgebraElement v = t.front();
    for (std::size_t j = 1; j < t.size(); ++j) {
      v = algebra_add(b, v, algebra_scale(b, t[j], p.xs[j - 1]));
    }
    acc = algebra_mul(b, acc, v);
  }
  return !acc.is_zero();
}

CheckOutcome from_sz(const SzResult& r, bool with_z) {
  CheckOutcome o;
  o.mode = "rand";
  o.randomized = true;
  o.verdict = r.nonzero ? Verdict::NonZero : Verdict::Zero;
  if (r.witness) o.witness = format_point(*r.witness, with_z);
  o.trials_run = r.trials_run;
  o.small_field_warning = r.small_field_warning;
  return o;
}

CheckOutcome run_random(const Document& doc, const RunConfig& cfg) {
  const std::size_t t = cfg.trials;
  const u64 seed = cfg.seed;
  if (doc.sps) return from_sz(schwartz_zippel(*doc.sps, t, seed), false);
  if (doc.seq) return from_sz(schwartz_zippel(*doc.seq, t, seed), doc.seq->uses_z());
  if (doc.abp) return from_sz(schwartz_zippel(*doc.abp, t, seed), doc.abp->uses_z());
  if (doc.formula) return from_sz(schwartz_zippel(*doc.formula, t, seed), false);
  if (doc.poly) {
    const SparsePoly& f = *doc.poly;
    const bool uses_z = std::any_of(f.terms().begin(), f.terms().end(), [](const auto& kv) {
      return kv.first.exponent(kHomogenizingVar) > 0;
    });
    auto r = schwartz_zippel(
        [&](const EvalPoint& p) { return !f.eval(p.xs, p.z).is_zero(); }, f.field(),
        f.max_var().value_or(0), uses_z, static_cast<std::size_t>(std::max(f.degree(), 0)),
        t, seed);
    return from_sz(r, uses_z);
  }
  if (auto tc = doc.term_circuit()) {
    tc->check_shapes();
    auto r = schwartz_zippel(
        [&](const EvalPoint& p) { return term_circuit_nonzero_at(*tc, p); },
        tc->basis.field(), tc->num_vars(), false, tc->terms.size(), t, seed);
    return from_sz(r, false);
  }
  throw InvalidArgument("input has no circuit");
}

CheckOutcome run_brute(const Document& doc, const RunConfig& cfg) {
  ExpandOptions opts{cfg.cap};
  CheckOutcome o;
  o.mode = "brute";
  if (doc.sps) {
    o.verdict = brute_force_zero(*doc.sps, opts);
  } else if (doc.seq) {
    o.verdict = brute_force_zero(*doc.seq, opts);
  } else if (doc.abp) {
    o.verdict = brute_force_zero(*doc.abp, opts);
  } else if (doc.formula) {
    o.verdict = brute_force_zero(*doc.formula, opts);
  } else if (doc.poly) {
    o.verdict = doc.poly->is_zero() ? Verdict::Zero : Verdict::NonZero;
  } else if (auto tc = doc.term_circuit()) {
    o.verdict = brute_force_zero(*tc, opts);
  } else {
    throw InvalidArgument("input has no circuit");
  }
  return o;
}

CheckOutcome run_commutative(const Document& doc, const RunConfig& cfg) {
  auto tc = doc.term_circuit();
  if (!tc) throw InvalidArgument("commutative mode needs an algebra and term lines");
  validate_basis(tc->basis);
  PitOptions opts;
  opts.expand.cap = cfg.cap;
  PitVerdict v = commutative_pit(*tc, opts);
  CheckOutcome o;
  o.mode = "det";
  o.verdict = v.verdict;
  o.splits = v.stats.splits;
  o.trace = std::move(v.trace);
  return o;
}

CheckOutcome run_check(const Document& doc, const std::string& mode, const RunConfig& cfg) {
  if (mode == "commutative") return run_commutative(doc, cfg);
  if (mode == "brute") return run_brute(doc, cfg);
  if (mode == "rand") return run_random(doc, cfg);
  // auto
  if (doc.algebra) {
    validate_basis(*doc.algebra);
    if (doc.algebra->is_commutative()) return run_commutative(doc, cfg);
  }
  try {
    return run_brute(doc, cfg);
  } catch (const ExpansionTooLarge&) {
    return run_random(doc, cfg);
  }
}

void print_check(const CheckOutcome& o, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "records") {
    out << "verdict=" << to_string(o.verdict) << " mode=" << o.mode
        << " seed=" << (o.randomized ? std::to_string(cfg.seed) : "-")
        << " witness=" << o.witness.value_or("-") << " splits=" << o.splits << '\n';
    return;
  }
  if (o.randomized) {
    out << "verdict: " << (o.verdict == Verdict::NonZero ? "ProbablyNonZero" : "ZeroAtAllSamples")
        << '\n';
  } else {
    out << "verdict: " << (o.verdict == Verdict::Zero ? "Zero" : "NonZero") << '\n';
  }
  out << "mode: " << o.mode << '\n';
  out << "seed: " << cfg.seed << '\n';
  if (o.randomized) {
    out << "trials: " << o.trials_run << " of " << cfg.trials << '\n';
    if (o.witness) out << "witness: " << *o.witness << '\n';
    if (o.small_field_warning) {
      out << "warning: field size does not exceed the degree bound\n";
    }
  }
  if (o.mode == "det") {
    out << "splits: " << o.splits << '\n';
    for (const auto& line : o.trace) out << "  " << line << '\n';
  }
}

// ------------------------------------------------------------- transforms

bool sampled_equal(const std::function<FieldElement(const std::vector<FieldElement>&)>& a,
                   const std::function<FieldElement(const std::vector<FieldElement>&)>& b,
                   const PrimeField& F, std::size_t n, const RunConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    std::vector<FieldElement> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(rng.element(F));
    if (a(x) != b(x)) return false;
  }
  return true;
}

LoweredU2 lowering_from(const Document& doc) {
  if (doc.sps) return sps_to_u2(*doc.sps);
  if (doc.seq && doc.l_factors) {
    LoweredU2 l;
    l.seq = *doc.seq;
    l.l_factors = *doc.l_factors;
    l.source.n = doc.seq->num_vars();
    return l;
  }
  throw InvalidArgument("expected an sps block, or a seq block with an L: line");
}

std::string stats_line(const std::string& body) { return "# stats: " + body + "\n"; }

int cmd_lower(const std::string& in, const std::string& outpath, const RunConfig& cfg,
              std::ostream& out) {
  Document doc = load(in, cfg);
  if (!doc.sps) throw InvalidArgument("lower expects an sps block");
  const DepthThreeCircuit& c = *doc.sps;
  LoweredU2 low = sps_to_u2(c);
  const std::size_t bound = low.length_bound();
  const bool bound_ok = low.seq.length() <= bound;

  // Re-read the artifact and check it against the source.
  std::string text = serialize(low);
  Document back = parse_document(text, c.field);
  if (!back.seq || !back.l_factors) throw CheckFailed("lowered output does not re-parse");
  const LinearMatrixSequence& seq = *back.seq;
  const auto& ls = *back.l_factors;
  if (!seq.is_upper_triangular()) throw CheckFailed("lowered sequence not upper triangular");
  for (const auto& l : ls) {
    if (l.is_zero()) throw CheckFailed("zero factor in L");
  }
  std::string how = "expanded";
  try {
    ExpandOptions opts{cfg.cap};
    SparsePoly want = product_of(c.field, ls) * expand_depth3(c, opts);
    if (expand_sequence(seq, opts).at(0, 1) != want) throw CheckFailed("top-right entry != L*f");
  } catch (const ExpansionTooLarge&) {
    how = "sampled";
    const std::size_t n = std::max(c.num_vars(), seq.num_vars());
    bool ok = sampled_equal(
        [&](const std::vector<FieldElement>& x) { return eval_sequence(seq, x)(0, 1); },
        [&](const std::vector<FieldElement>& x) {
          FieldElement v = c.eval(x);
          for (const auto& l : ls) v = c.field.mul(v, l.eval(x));
          return v;
        },
        c.field, n, cfg);
    if (!ok) throw CheckFailed("top-right entry != L*f at a sample point");
  }
  std::ostringstream st;
  st << "n=" << low.source.n << " d=" << low.source.d << " s=" << low.source.s
     << " len=" << low.seq.length() << " bound=" << bound << " bound_ok=" << yes_no(bound_ok)
     << " L=" << low.l_factors.size() << " syntactic_zero=" << yes_no(low.syntactic_zero)
     << " check=" << how;
  std::string stats = stats_line(st.str());
  write_output(outpath, text + stats, out);
  if (!outpath.empty() && outpath != "-") out << stats;
  return bound_ok ? 0 : kExitError;
}

int cmd_abp(const std::string& in, const std::string& outpath, const RunConfig& cfg,
            std::ostream& out) {
  Document doc = load(in, cfg);
  LoweredU2 low = lowering_from(doc);
  const PrimeField F = low.seq.field;
  Abp abp = homogenize_and_abp(low);
  std::string text = serialize(abp);
  Document back = parse_document(text, F);
  if (!back.abp) throw CheckFailed("ABP output does not re-parse");
  const Abp& a = *back.abp;
  a.check_structure();
  const bool planar = is_pattern_planar(a);
  std::size_t core_width = 0;
  for (std::size_t lv = 1; lv + 1 < a.levels.size(); ++lv) {
    core_width = std::max(core_width, a.levels[lv]);
  }
  if (!planar) throw CheckFailed("ABP fails the planarity pattern test");
  if (core_width > 2) throw CheckFailed("ABP core width exceeds 2");
  const std::size_t n = std::max<std::size_t>(low.seq.num_vars(), a.num_vars());
  std::string how = "expanded";
  try {
    ExpandOptions opts{cfg.cap};
    SparsePoly at_one = expand_abp(a, opts).substitute(kHomogenizingVar, SparsePoly::one(F));
    if (at_one != expand_sequence(mask_offdiagonal(low), opts).at(0, 1)) {
      throw CheckFailed("ABP at z=1 != masked sequence entry");
    }
  } catch (const ExpansionTooLarge&) {
    how = "sampled";
    bool ok = sampled_equal(
        [&](const std::vector<FieldElement>& x) { return eval_abp(a, x, F.one()); },
        [&](const std::vector<FieldElement>& x) {
          return eval_sequence(mask_offdiagonal(low), x)(0, 1);
        },
        F, n, cfg);
    if (!ok) throw CheckFailed("ABP at z=1 != masked sequence entry at a sample point");
  }
  std::ostringstream st;
  st << "levels=" << a.levels.size() << " gaps=" << a.gaps.size() << " width=" << a.width()
     << " core_width=" << core_width << " planar=" << yes_no(planar) << " check=" << how;
  std::string stats = stats_line(st.str());
  write_output(outpath, text + stats, out);
  if (!outpath.empty() && outpath != "-") out << stats;
  return 0;
}

int cmd_boc(const std::string& in, const std::string& outpath, const RunConfig& cfg,
            std::ostream& out) {
  Document doc = load(in, cfg);
  if (!doc.formula) throw InvalidArgument("boc expects a formula");
  const Formula& e = *doc.formula;
  const PrimeField F = e.field();
  LinearMatrixSequence seq = ben_or_cleve(e);
  std::size_t bound = 1;
  for (std::size_t t = 0; t < e.depth() && bound < (std::size_t{1} << 60); ++t) bound *= 4;
  const bool bound_ok = seq.length() <= bound;
  std::string text = serialize(seq);
  Document back = parse_document(text, F);
  if (!back.seq) throw CheckFailed("program output does not re-parse");
  const LinearMatrixSequence& s = *back.seq;
  for (const auto& m : s.matrices) {
    if (!is_transvection(m)) throw CheckFailed("emitted matrix is not a transvection");
  }
  std::string how = "expanded";
  try {
    ExpandOptions opts{cfg.cap};
    PolyMatrix p = expand_sequence(s, opts);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        SparsePoly want = r == kBocRow && c == kBocCol ? e.expand(opts)
                          : r == c                     ? SparsePoly::one(F)
                                                       : SparsePoly(F);
        if (p.at(r, c) != want) throw CheckFailed("product != I + E at (3,1)");
      }
    }
  } catch (const ExpansionTooLarge&) {
    how = "sampled";
    bool ok = sampled_equal(
        [&](const std::vector<FieldElement>& x) { return eval_sequence(s, x)(kBocRow, kBocCol); },
        [&](const std::vector<FieldElement>& x) { return e.eval(x); }, F, e.num_vars(), cfg);
    if (!ok) throw CheckFailed("entry (3,1) != E at a sample point");
  }
  std::ostringstream st;
  st << "depth=" << e.depth() << " len=" << seq.length() << " bound=" << bound
     << " bound_ok=" << yes_no(bound_ok) << " slot=(3,1) check=" << how;
  std::string stats = stats_line(st.str());
  write_output(outpath, text + stats, out);
  if (!outpath.empty() && outpath != "-") out << stats;
  return bound_ok ? 0 : kExitError;
}

int cmd_reduce_local(const std::string& in, const std::string& outpath, const RunConfig& cfg,
                     std::ostream& out) {
  Document doc = load(in, cfg);
  if (!doc.sps) throw InvalidArgument("reduce-local expects an sps block");
  const DepthThreeCircuit& c = *doc.sps;
  LocalRingReduction red = local_ring_reduction(c);
  std::string text = serialize(red.circuit);
  Document back = parse_document(text, c.field);
  auto tc = back.term_circuit();
  if (!tc) throw CheckFailed("local ring output does not re-parse");
  validate_basis(tc->basis);
  if (!tc->basis.is_commutative()) throw CheckFailed("local ring is not commutative");
  const std::size_t expected = red.s * (red.d - 1) + 2;
  const bool dim_ok = tc->basis.dim() == expected;
  std::string how = "expanded";
  try {
    ExpandOptions opts{cfg.cap};
    AlgebraPoly prod = expand_term_circuit(*tc, opts);
    SparsePoly top(c.field);
    for (const auto& [m, a] : prod) {
      for (std::size_t i = 0; i < a.dim(); ++i) {
        if (i == red.top_index) {
          top.add_term(m, a.coords[i]);
        } else if (!a.coords[i].is_zero()) {
          throw CheckFailed("product has a coordinate outside y1^d");
        }
      }
    }
    if (top != expand_depth3(c, opts)) throw CheckFailed("y1^d coordinate != f");
  } catch (const ExpansionTooLarge&) {
    how = "skipped";
  }
  std::ostringstream st;
  st << "s=" << red.s << " d=" << red.d << " dim=" << tc->basis.dim()
     << " expected_dim=" << expected << " dim_ok=" << yes_no(dim_ok)
     << " top_index=" << red.top_index + 1 << " check=" << how;
  std::string stats = stats_line(st.str());
  write_output(outpath, text + stats, out);
  if (!outpath.empty() && outpath != "-") out << stats;
  return dim_ok ? 0 : kExitError;
}

int cmd_validate_algebra(const std::string& in, const RunConfig& cfg, std::ostream& out) {
  Document doc = load(in, cfg);
  if (!doc.algebra) throw InvalidArgument("input has no algebra");
  const AlgebraBasis& b = *doc.algebra;
  try {
    validate_basis(b);
  } catch (const ValidationError& e) {
    out << "invalid: " << e.what() << '\n';
    return 1;
  }
  out << "ok k=" << b.dim() << " identity=ok associative=yes commutative="
      << yes_no(b.is_commutative()) << '\n';
  return 0;
}

int cmd_robustness(const std::string& in, const std::string& poly_text, std::size_t budget,
                   const RunConfig& cfg, std::ostream& out) {
  std::optional<SparsePoly> f;
  if (!poly_text.empty()) {
    f = parse_poly(poly_text, PrimeField(cfg.field));
  } else if (!in.empty()) {
    Document doc = load(in, cfg);
    if (!doc.poly) throw InvalidArgument("robustness expects a poly item");
    f = doc.poly;
  } else {
    throw InvalidArgument("robustness needs an input file or --poly");
  }
  auto pairs = robustness_search(*f, budget);
  out << "field " << f->field().modulus() << " poly " << to_text(*f) << '\n';
  for (const auto& [l1, l2] : pairs) {
    SparsePoly r = *reduce_mod_two_linears(*f, l1, l2);
    out << "violation (" << to_text(l1) << ") (" << to_text(l2) << ") -> " << to_text(r)
        << '\n';
  }
  out << "violations=" << pairs.size() << '\n';
  return 0;
}

int cmd_suite(const std::string& sizes_name, std::size_t instances, bool inject,
              const std::vector<int>& criteria, const std::string& report_path,
              const RunConfig& cfg, std::ostream& out) {
  suite::Sizes sizes;
  if (sizes_name == "small") {
    sizes = suite::small_sizes();
  } else if (sizes_name != "full") {
    throw InvalidArgument("--sizes must be full or small");
  }
  if (instances) {
    sizes.random_circuits = instances;
    sizes.zoo_instances = instances;
    sizes.formulas = instances;
  }
  suite::Faults faults;
  faults.flip_structure_constant = inject;
  std::vector<int> ids = criteria;
  if (ids.empty()) {
    for (int i = 1; i <= suite::kCriterionCount; ++i) ids.push_back(i);
  }
  std::string report;
  std::size_t failures = 0;
  for (int id : ids) {
    suite::CriterionResult r = suite::run_criterion(id, cfg.seed, sizes, faults);
    failures += r.failures;
    report += r.report;
    out << (r.passed() ? "pass" : "FAIL") << " criterion " << id << " (" << r.name
        << "): " << r.checks - r.failures << "/" << r.checks << '\n';
  }
  out << "seed=" << cfg.seed << " failures=" << failures << '\n';
  if (!report_path.empty()) write_output(report_path, report, out);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Identity testing and circuit lowering over prime fields", "pit"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--field", cfg.field, "prime modulus (a field line in the input wins)")
      ->capture_default_str();
  app.add_option("--cap", cfg.cap, "monomial cap for symbolic expansion")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--trials", cfg.trials, "random evaluation points")->capture_default_str();
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "records"}))
      ->capture_default_str();

  std::string input, output, mode = "auto";
  auto with_io = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("input", input, "input file, - for stdin")->required();
    sub->add_option("-o,--output", output, "output file (default stdout)");
  };

  CLI::App* check = app.add_subcommand("check", "decide whether a circuit is zero");
  check->fallthrough();
  check->add_option("input", input, "input file, - for stdin")->required();
  check->add_option("--mode", mode, "auto | brute | rand | commutative")
      ->check(CLI::IsMember({"auto", "brute", "rand", "commutative"}))
      ->capture_default_str();

  CLI::App* lower = app.add_subcommand("lower", "depth-3 circuit to 2x2 upper-triangular sequence");
  with_io(lower);
  CLI::App* abp = app.add_subcommand("abp", "depth-3 circuit or lowering to a width-2 ABP");
  with_io(abp);
  CLI::App* boc = app.add_subcommand("boc", "formula to a 3x3 transvection program");
  with_io(boc);
  CLI::App* local = app.add_subcommand("reduce-local", "depth-3 circuit to a local-ring product");
  with_io(local);

  CLI::App* validate = app.add_subcommand("validate-algebra", "check an algebra in basis form");
  validate->fallthrough();
  validate->add_option("input", input, "input file, - for stdin")->required();

  std::string poly_text;
  std::size_t budget = kDefaultRobustnessBudget;
  CLI::App* robust = app.add_subcommand("robustness", "search for linear pairs reducing f to degree <= 1");
  robust->fallthrough();
  robust->add_option("input", input, "file with a poly item");
  robust->add_option("--poly", poly_text, "polynomial text instead of a file");
  robust->add_option("--budget", budget, "maximum number of pairs")->capture_default_str();

  std::string sizes_name = "full", report_path;
  std::size_t instances = 0;
  bool inject = false;
  std::vector<int> criteria;
  CLI::App* suite_cmd = app.add_subcommand("suite", "run the cross-oracle property suites");
  suite_cmd->fallthrough();
  suite_cmd->add_option("--sizes", sizes_name, "full | small")->capture_default_str();
  suite_cmd->add_option("--instances", instances, "override random instance counts");
  suite_cmd->add_option("--criteria", criteria, "subset of criteria 1..8, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(1, suite::kCriterionCount));
  suite_cmd->add_flag("--inject-fault", inject, "flip one structure constant");
  suite_cmd->add_option("-o,--output", report_path, "write the full report here");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (check->parsed()) {
      Document doc = load(input, cfg);
      CheckOutcome o = run_check(doc, mode, cfg);
      print_check(o, cfg, out);
      return o.verdict == Verdict::Zero ? kExitZero : kExitNonZero;
    }
    if (lower->parsed()) return cmd_lower(input, output, cfg, out);
    if (abp->parsed()) return cmd_abp(input, output, cfg, out);
    if (boc->parsed()) return cmd_boc(input, output, cfg, out);
    if (local->parsed()) return cmd_reduce_local(input, output, cfg, out);
    if (validate->parsed()) return cmd_validate_algebra(input, cfg, out);
    if (robust->parsed()) return cmd_robustness(input, poly_text, budget, cfg, out);
    if (suite_cmd->parsed()) {
      return cmd_suite(sizes_name, instances, inject, criteria, report_path, cfg, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace pit
