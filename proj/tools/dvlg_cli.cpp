// dvlg: decide, reduce and evaluate sentences about valued l-groups, compute
// in the periodic model, and run the self-validation corpus.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dvlg/ba.hpp"
#include "dvlg/corpus.hpp"
#include "dvlg/error.hpp"
#include "dvlg/generate.hpp"
#include "dvlg/lra.hpp"
#include "dvlg/oracle.hpp"
#include "dvlg/parser.hpp"
#include "dvlg/periodic.hpp"
#include "dvlg/periodic_logic.hpp"
#include "dvlg/random.hpp"
#include "dvlg/serialize.hpp"
#include "dvlg/sw.hpp"

#ifndef DVLG_CORPUS_DIR
#define DVLG_CORPUS_DIR "corpus"
#endif

using namespace dvlg;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kInput = 2, kUnsupported = 3, kResource = 4 };

constexpr std::size_t kMaxN = 6;
constexpr std::size_t kMaxQuantifiers = 64;
constexpr std::size_t kMaxAtoms = 1024;
constexpr std::size_t kMaxDisjuncts = 1000000;
constexpr std::size_t kMaxPeriod = 1024;

struct Config {
  std::string formula;
  std::string file;
  std::string mode = "ec";
  std::size_t n = 2;
  std::uint64_t seed = 1;
  bool json = false;
  bool trace = false;
  bool timing = false;
  std::size_t max_period = 64;
  std::string limits;
  std::string env = "{}";
  std::string op;
  std::vector<std::string> args;
};

struct Report {
  std::string command;
  std::string input;
  Json verdict;
  std::vector<std::string> trace;
  std::size_t eliminations = 0;
  std::size_t atoms = 0;
};

oracle::Limits parse_limits(Config& c) {
  oracle::Limits l;
  std::stringstream ss(c.limits);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::PreconditionViolated, "limit '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::PreconditionViolated, "limit '" + item + "' has a non-numeric value");
    }
    auto set = [&](std::size_t& slot, std::size_t max) {
      if (value == 0 || value > max)
        throw Error(ErrorKind::PreconditionViolated, key + " must be in 1.." + std::to_string(max));
      slot = value;
    };
    if (key == "max_n") set(l.max_n, kMaxN);
    else if (key == "max_quantifiers") set(l.max_quantifiers, kMaxQuantifiers);
    else if (key == "max_atoms") set(l.max_atoms, kMaxAtoms);
    else if (key == "max_disjuncts") set(l.max_disjuncts, kMaxDisjuncts);
    else if (key == "max_period") set(c.max_period, kMaxPeriod);
    else throw Error(ErrorKind::PreconditionViolated, "unknown limit '" + key + "'");
  }
  if (c.max_period == 0 || c.max_period > kMaxPeriod || (c.max_period & (c.max_period - 1)) != 0)
    throw Error(ErrorKind::PreconditionViolated, "max period must be a power of two up to " + std::to_string(kMaxPeriod));
  return l;
}

std::string read_input(const Config& c) {
  if (c.file.empty()) {
    if (c.formula.empty()) throw Error(ErrorKind::PreconditionViolated, "no formula given (inline or --file)");
    return c.formula;
  }
  std::ifstream in(c.file);
  if (!in) throw Error(ErrorKind::PreconditionViolated, "cannot open " + c.file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

logic::Formula read_formula(const Config& c, Report& r) {
  r.input = read_input(c);
  logic::Formula f = logic::parse(r.input);
  r.atoms = logic::atom_count(f);
  return f;
}

Json verdict(bool b) { return b; }

int cmd_decide(const Config& c, Report& r) {
  const logic::Formula f = read_formula(c, r);
  if (!logic::free_vars(f).empty()) throw Error(ErrorKind::NotSentence, "decide needs a sentence");
  const sw::ReductionOutput red = sw::reduce(f, sw::parse_mode(c.mode));
  r.eliminations = red.eliminations;
  r.trace = red.trace;
  r.trace.push_back("assembled: " + logic::print(red.assemble()));
  const bool v = ba::ba_decide(red.assemble());
  r.verdict = verdict(v);
  return v ? kTrue : kFalse;
}

int cmd_reduce(const Config& c, Report& r) {
  const logic::Formula f = read_formula(c, r);
  const sw::ReductionOutput red = sw::reduce(f, sw::parse_mode(c.mode));
  r.eliminations = red.eliminations;
  r.trace = red.trace;
  r.verdict = Json::parse(io::to_json(red).dump());
  return kTrue;
}

int cmd_eval(const Config& c, const oracle::Limits& limits, Report& r) {
  const logic::Formula f = read_formula(c, r);
  if (c.n == 0 || c.n > limits.max_n)
    throw Error(ErrorKind::ResourceLimit, "-n must be in 1.." + std::to_string(limits.max_n));
  const oracle::Assignment env = io::assignment_from_json(nlohmann::json::parse(c.env), f, c.n);
  oracle::Stats stats;
  const bool v = oracle::decide_finite(FinStdStructure(c.n), f, env, limits, &stats);
  r.eliminations = stats.group_eliminations;
  r.verdict = verdict(v);
  return v ? kTrue : kFalse;
}

periodic::PeriodicFn fn_arg(const Config& c, std::size_t i) {
  if (i >= c.args.size()) throw Error(ErrorKind::PreconditionViolated, c.op + " needs " + std::to_string(i + 1) + " operands");
  return io::periodic_fn_from_json(nlohmann::json::parse(c.args[i]));
}

periodic::PeriodicSet set_arg(const Config& c, std::size_t i) {
  if (i >= c.args.size()) throw Error(ErrorKind::PreconditionViolated, c.op + " needs " + std::to_string(i + 1) + " operands");
  return io::periodic_set_from_json(nlohmann::json::parse(c.args[i]));
}

Json as_ordered(const nlohmann::json& j) { return Json::parse(j.dump()); }

int cmd_model(const Config& c, Report& r) {
  using namespace periodic;
  r.input = c.op;
  for (const auto& a : c.args) r.input += " " + a;
  const std::string& op = c.op;
  if (op == "add" || op == "meet" || op == "join") {
    const GroupOp kind = op == "add" ? GroupOp::Add : op == "meet" ? GroupOp::Meet : GroupOp::Join;
    r.verdict = as_ordered(io::to_json(periodic_op(kind, fn_arg(c, 0), fn_arg(c, 1))));
  } else if (op == "neg") {
    r.verdict = as_ordered(io::to_json(periodic_op(GroupOp::Neg, fn_arg(c, 0))));
  } else if (op == "scale") {
    if (c.args.size() < 2) throw Error(ErrorKind::PreconditionViolated, "scale needs a rational and a function");
    r.verdict = as_ordered(io::to_json(scale(io::rational_from_json(c.args[0]), fn_arg(c, 1))));
  } else if (op == "valuation") {
    r.verdict = as_ordered(io::to_json(periodic_valuation(fn_arg(c, 0))));
  } else if (op == "split") {
    r.verdict = as_ordered(io::to_json(split_nonempty(set_arg(c, 0))));
  } else if (op == "archimedean") {
    r.verdict = archimedean_bound(fn_arg(c, 0), fn_arg(c, 1));
  } else if (op == "shift") {
    r.verdict = as_ordered(io::to_json(shift(fn_arg(c, 0))));
  } else if (op == "witness") {
    if (c.args.empty()) throw Error(ErrorKind::PreconditionViolated, "witness needs a sentence");
    const logic::Formula f = logic::parse(c.args[0]);
    r.atoms = logic::atom_count(f);
    WitnessOptions options;
    options.max_period = c.max_period;
    options.exact_columns = true;
    const auto w = find_witness(f, options);
    if (!w) {
      r.verdict = nullptr;
      return kFalse;
    }
    Json values = Json::object();
    for (const auto& [name, fn] : w->values) values[name] = as_ordered(io::to_json(fn));
    r.verdict = Json{{"values", values}, {"exact", w->exact}};
  } else {
    throw Error(ErrorKind::PreconditionViolated,
                "unknown model operation '" + op + "' (add, meet, join, neg, scale, valuation, split, archimedean, shift, witness)");
  }
  return kTrue;
}

// ---- selftest

struct Tally {
  std::size_t pass = 0, total = 0;
  void add(bool ok) {
    ++total;
    pass += ok ? 1 : 0;
  }
  bool ok() const { return pass == total; }
};

Tally run_corpus(const std::string& path, const oracle::Limits& limits, std::vector<std::string>& lines) {
  Tally t;
  const auto entries = corpus::load_file(path);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto out = corpus::check(entries[i], limits);
    t.add(out.pass);
    if (!out.pass) lines.push_back("  FAIL " + path + ":" + std::to_string(i + 1) + " " + out.detail);
  }
  return t;
}

Tally valuation_suite(Rng rng) {
  using namespace periodic;
  Tally t;
  for (int i = 0; i < 200; ++i) {
    const PeriodicFn f = rng.periodic_fn(3), g = rng.periodic_fn(3);
    const long n = rng.uniform(1, 5);
    t.add(periodic_valuation(scale(Rational(n), f)) == periodic_valuation(f) &&
          periodic_valuation(periodic_op(GroupOp::Meet, f, g)) ==
              set_op(SubsetOp::Meet, periodic_valuation(f), periodic_valuation(g)) &&
          periodic_valuation(periodic_op(GroupOp::Join, f, g)) ==
              set_op(SubsetOp::Join, periodic_valuation(f), periodic_valuation(g)) &&
          (f.is_nonneg() == periodic_valuation(f).is_full()));
  }
  return t;
}

Tally split_suite(Rng rng) {
  using namespace periodic;
  Tally t;
  for (int i = 0; i < 200; ++i) {
    const PeriodicSet c = rng.periodic_set(4);
    if (c.is_empty()) continue;
    const PeriodicSet d = split_nonempty(c);
    t.add(below(d, c) && !d.is_empty() && !(d == c));
  }
  return t;
}

Tally fm_suite(Rng rng) {
  using namespace lra;
  Tally t;
  for (int i = 0; i < 100; ++i) {
    std::vector<LraFormula> parts;
    for (int j = 0, m = 1 + static_cast<int>(rng.index(4)); j < m; ++j) {
      LinExpr e = LinExpr::variable(0, Rational(rng.uniform(-2, 2))) + LinExpr::variable(1, Rational(rng.uniform(-2, 2))) +
                  LinExpr(rng.rational(3, 2));
      parts.push_back(LraFormula::atom({e, static_cast<Rel>(rng.index(3))}));
    }
    const LraFormula f = LraFormula::all(parts);
    const LraFormula r = eliminate({0}, f);
    bool agree = true;
    for (long y = -8; y <= 8 && agree; ++y) {
      bool found = false;
      for (long x = -64; x <= 64 && !found; ++x)
        found = evaluate(f, {{0, Rational(x, 8)}, {1, Rational(y, 2)}});
      const bool claimed = evaluate(r, {{1, Rational(y, 2)}});
      agree = !found || claimed;
    }
    t.add(agree);
  }
  return t;
}

Tally ba_suite(Rng rng) {
  Tally t;
  gen::LatticeShape shape;
  shape.max_depth = 2;
  shape.max_atoms = 4;
  for (int i = 0; i < 30; ++i) {
    const logic::Formula s = gen::lattice_sentence(rng, shape);
    try {
      t.add(ba::ba_decide(s) == ba::interval_check(s, 3));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DepthExceeded) throw;
    }
  }
  return t;
}

int cmd_selftest(const Config& c, const oracle::Limits& limits, Report& r) {
  const std::uint64_t seed = seed_from_env(c.seed);
  Rng root(seed, "selftest");
  std::vector<std::string> paths;
  if (!c.file.empty()) paths.push_back(c.file);
  else paths = {std::string(DVLG_CORPUS_DIR) + "/known.jsonl", std::string(DVLG_CORPUS_DIR) + "/existential.jsonl"};
  r.input = "seed " + std::to_string(seed);
  Json verdicts = Json::object();
  bool all = true;
  auto record = [&](const std::string& name, const Tally& t) {
    r.trace.push_back(name + ": " + std::to_string(t.pass) + "/" + std::to_string(t.total) + (t.ok() ? " pass" : " FAIL"));
    verdicts[name] = {{"pass", t.pass}, {"total", t.total}};
    all = all && t.ok();
  };
  for (const auto& p : paths) {
    std::vector<std::string> failures;
    const Tally t = run_corpus(p, limits, failures);
    record("corpus " + p.substr(p.find_last_of('/') + 1), t);
    r.trace.insert(r.trace.end(), failures.begin(), failures.end());
  }
  record("valuation laws", valuation_suite(root.split("valuation")));
  record("split_nonempty", split_suite(root.split("split")));
  record("fm vs grid", fm_suite(root.split("fm")));
  record("ba vs intervals", ba_suite(root.split("ba")));
  r.verdict = verdicts;
  return all ? kTrue : kFalse;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::UnsupportedFragment: return kUnsupported;
    case ErrorKind::ResourceLimit:
    case ErrorKind::DepthExceeded: return kResource;
    default: return kInput;
  }
}

void emit(const Config& c, const Report& r, double elapsed_ms, bool timed) {
  if (c.json) {
    Json out;
    out["command"] = r.command;
    out["input"] = r.input;
    out["verdict"] = r.verdict;
    if (c.trace) out["trace"] = r.trace;
    out["stats"] = {{"elapsed_ms", timed ? Json(elapsed_ms) : Json(nullptr)},
                    {"eliminations", r.eliminations},
                    {"atoms", r.atoms}};
    std::cout << out.dump(2) << "\n";
    return;
  }
  if (c.trace || r.command == "selftest")
    for (const auto& line : r.trace) std::cout << (r.command == "selftest" ? "" : "# ") << line << "\n";
  if (r.command == "selftest") return;
  if (r.verdict.is_boolean()) std::cout << (r.verdict.get<bool>() ? "true" : "false") << "\n";
  else if (r.command == "reduce") {
    std::cout << "k = " << r.verdict["k"].get<std::size_t>() << "\n";
    std::size_t i = 1;
    for (const auto& t : r.verdict["terms"]) std::cout << "t_" << i++ << " = " << t.get<std::string>() << "\n";
    std::cout << "chi: " << r.verdict["chi"].get<std::string>() << "\n";
  } else if (r.verdict.is_null()) std::cout << "none\n";
  else std::cout << r.verdict.dump() << "\n";
  if (timed) std::cout << "# " << elapsed_ms << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures for existentially closed valued l-groups"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub, bool formula) {
    if (formula) {
      sub->add_option("formula", c.formula, "Formula text");
      sub->add_option("--file", c.file, "Read the formula from a file");
    }
    sub->add_option("--mode", c.mode, "Reduction mode: tplus or ec")->check(CLI::IsMember({"tplus", "ec"}));
    sub->add_option("-n", c.n, "Ground size of Stan(Q^n)");
    sub->add_option("--seed", c.seed, "Root seed (DVLG_SEED overrides)");
    sub->add_flag("--json", c.json, "JSON report");
    sub->add_flag("--trace", c.trace, "Include the reduction trace");
    sub->add_flag("--timing", c.timing, "Report elapsed time");
    sub->add_option("--max-period", c.max_period, "Largest period for witness search");
    sub->add_option("--limits", c.limits, "k=v,... over max_n, max_quantifiers, max_atoms, max_disjuncts, max_period");
  };
  auto* decide = app.add_subcommand("decide", "Truth of a sentence in every existentially closed model");
  common(decide, true);
  auto* reduce = app.add_subcommand("reduce", "Eliminate group quantifiers");
  common(reduce, true);
  auto* eval = app.add_subcommand("eval", "Truth in the finite structure Stan(Q^n)");
  common(eval, true);
  eval->add_option("--env", c.env, "Free variables as JSON: {\"a\": [\"1\", \"-1/2\"], \"l\": [0]}");
  auto* model = app.add_subcommand("model", "Computations in the periodic model");
  common(model, false);
  model->add_option("op", c.op, "add meet join neg scale valuation split archimedean shift witness")->required();
  model->add_option("args", c.args, "Operands as JSON {\"k\", \"vals\"} / {\"k\", \"mask\"}, or a sentence");
  auto* selftest = app.add_subcommand("selftest", "Run the corpus and property suites");
  common(selftest, false);
  selftest->add_option("--file", c.file, "Corpus file (JSON lines)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  Report r;
  r.command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  int code = kInput;
  try {
    const oracle::Limits limits = parse_limits(c);
    if (r.command == "decide") code = cmd_decide(c, r);
    else if (r.command == "reduce") code = cmd_reduce(c, r);
    else if (r.command == "eval") code = cmd_eval(c, limits, r);
    else if (r.command == "model") code = cmd_model(c, r);
    else code = cmd_selftest(c, limits, r);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kInput;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  emit(c, r, ms, c.timing);
  return code;
}
