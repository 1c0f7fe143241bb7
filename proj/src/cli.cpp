#include "trsd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trsd/diamond.hpp"
#include "trsd/encode.hpp"
#include "trsd/formats.hpp"
#include "trsd/reach.hpp"
#include "trsd/report.hpp"
#include "trsd/term.hpp"
#include "trsd/turing.hpp"

namespace trsd {

namespace {

constexpr int exit_counterexample = 1;
constexpr int exit_unknown = 2;
constexpr int exit_usage = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  file << text;
}

std::string located(const std::string& path, const std::string& text,
                    const ParseError& e) {
  return path + ":" + std::to_string(line_of_offset(text, e.position())) + ": " +
         e.what();
}

TuringMachine load_machine(const std::string& path) {
  const std::string text = read_file(path);
  TuringMachine tm;
  try {
    tm = parse_machine(text);
  } catch (const ParseError& e) {
    throw std::runtime_error(located(path, text, e));
  }
  const std::vector<std::string> defects = validate_machine(tm);
  if (!defects.empty()) {
    std::string message = path + ": invalid machine:";
    for (const std::string& defect : defects) message += "\n  " + defect;
    throw std::runtime_error(message);
  }
  return tm;
}

Trs load_trs(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_trs(text);
  } catch (const ParseError& e) {
    throw std::runtime_error(located(path, text, e));
  }
}

std::string trimmed(const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const std::size_t last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::runtime_error(what + " must be a nonnegative integer, got '" + text + "'");
  try {
    return static_cast<std::size_t>(std::stoull(text));
  } catch (const std::out_of_range&) {
    throw std::runtime_error(what + " is out of range: '" + text + "'");
  }
}

Budget parse_budget_text(const std::string& text) {
  Budget budget;
  if (text.empty()) return budget;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string item = trimmed(
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(
          "budget entries look like steps=200,terms=500,size=10000; got '" + item + "'");
    const std::string key = trimmed(item.substr(0, eq));
    const std::size_t value =
        parse_count(trimmed(item.substr(eq + 1)), "budget value for '" + key + "'");
    if (key == "steps")
      budget.max_rewrite_steps = value;
    else if (key == "terms")
      budget.max_distinct_terms = value;
    else if (key == "size")
      budget.max_term_size = value;
    else
      throw std::runtime_error("unknown budget key '" + key +
                               "' (expected steps, terms, or size)");
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  validate_budget(budget);
  return budget;
}

std::string budget_to_text(const Budget& budget) {
  return "steps=" + std::to_string(budget.max_rewrite_steps) +
         " terms=" + std::to_string(budget.max_distinct_terms) +
         " size=" + std::to_string(budget.max_term_size);
}

Term parse_term_arg(const std::string& text, const Signature& sig,
                    const std::string& flag) {
  try {
    return parse_term(text, sig);
  } catch (const ParseError& e) {
    throw std::runtime_error(flag + " '" + text + "': " + e.what());
  }
}

struct SimulateOptions {
  std::string machine_path;
  std::size_t steps = 100;
  bool json = false;
};

int do_simulate(const SimulateOptions& opt, const std::string& echo, std::ostream& out) {
  const TuringMachine tm = load_machine(opt.machine_path);
  const RunOutcome outcome = run(tm, opt.steps);

  std::size_t shown = 0;
  switch (outcome.kind) {
    case RunOutcome::Kind::halted: shown = outcome.steps; break;
    case RunOutcome::Kind::cycled: shown = outcome.cycle_prefix + outcome.cycle_period; break;
    case RunOutcome::Kind::exceeded: shown = opt.steps; break;
  }
  std::vector<Configuration> configs{initial_config(tm)};
  for (std::size_t i = 0; i < shown; ++i) configs.push_back(*step(tm, configs.back()));

  std::string status;
  std::string summary;
  switch (outcome.kind) {
    case RunOutcome::Kind::halted:
      status = "halted";
      summary = "halted after " + count_word(outcome.steps, "step");
      break;
    case RunOutcome::Kind::cycled:
      status = "cycled";
      summary = "cycled: step " + std::to_string(outcome.cycle_prefix + outcome.cycle_period) +
                " repeats step " + std::to_string(outcome.cycle_prefix) + " (period " +
                std::to_string(outcome.cycle_period) + ")";
      break;
    case RunOutcome::Kind::exceeded:
      status = "exceeded";
      summary = "exceeded the budget of " + count_word(opt.steps, "step");
      break;
  }

  if (opt.json) {
    Json doc;
    doc["command"] = echo;
    doc["status"] = status;
    if (outcome.kind == RunOutcome::Kind::halted) doc["steps"] = outcome.steps;
    if (outcome.kind == RunOutcome::Kind::cycled) {
      Json cycle;
      cycle["prefix"] = outcome.cycle_prefix;
      cycle["period"] = outcome.cycle_period;
      doc["cycle"] = std::move(cycle);
    }
    Json list = Json::array();
    for (const Configuration& k : configs) list.push_back(config_to_json(k));
    doc["configs"] = std::move(list);
    out << doc.dump(2) << "\n";
  } else {
    out << "command: " << echo << "\n";
    for (std::size_t i = 0; i < configs.size(); ++i)
      out << "step " << i << ": " << config_to_text(configs[i]) << "\n";
    out << summary << "\n";
  }
  return outcome.kind == RunOutcome::Kind::exceeded ? exit_unknown : 0;
}

struct CompileOptions {
  std::string machine_path;
  std::string out_path;
};

int do_compile(const CompileOptions& opt, std::ostream& out) {
  const TuringMachine tm = load_machine(opt.machine_path);
  const std::string text = trs_to_text(compile_trs(tm));
  if (opt.out_path.empty())
    out << text;
  else
    write_file(opt.out_path, text);
  return 0;
}

struct EncodeOptions {
  std::string machine_path;
  std::string config_text;
  std::string term_text;
  bool json = false;
};

int do_encode(const EncodeOptions& opt, const std::string& echo, std::ostream& out) {
  const TuringMachine tm = load_machine(opt.machine_path);
  const Trs trs = compile_trs(tm);

  Configuration config;
  std::optional<Term> term;
  if (!opt.term_text.empty()) {
    term = parse_term_arg(opt.term_text, trs.signature(), "--term");
    const std::optional<Configuration> decoded = decode_term(tm, *term);
    if (!decoded)
      throw std::runtime_error("--term '" + opt.term_text +
                               "' does not decode to a configuration");
    config = *decoded;
  } else {
    if (opt.config_text.empty()) {
      config = initial_config(tm);
    } else {
      try {
        config = parse_config(opt.config_text, tm);
      } catch (const ParseError& e) {
        throw std::runtime_error("--config '" + opt.config_text + "': " + e.what());
      }
    }
    term = encode_config(tm, config);
  }

  if (opt.json) {
    Json doc;
    doc["command"] = echo;
    doc["config"] = config_to_json(config);
    doc["term"] = format_term(*term);
    out << doc.dump(2) << "\n";
  } else {
    out << "command: " << echo << "\n"
        << "config: " << config_to_text(config) << "\n"
        << "term: " << format_term(*term) << "\n";
  }
  return 0;
}

struct RewriteOptions {
  std::string trs_path;
  std::string term_text;
  std::size_t steps = 1;
  bool json = false;
};

int do_rewrite(const RewriteOptions& opt, const std::string& echo, std::ostream& out) {
  const Trs trs = load_trs(opt.trs_path);
  const Term start = parse_term_arg(opt.term_text, trs.signature(), "--term");

  RewriteTrace trace;
  trace.terms.push_back(start);
  while (trace.length() < opt.steps) {
    const std::vector<RewriteEdge> edges = one_step_rewrites(trs, trace.terms.back());
    if (edges.empty()) break;
    const RewriteEdge& edge = edges.front();
    trace.terms.push_back(edge.target);
    trace.steps.push_back({edge.rule_index, edge.position});
  }
  const bool normal_form = one_step_rewrites(trs, trace.terms.back()).empty();

  if (opt.json) {
    Json doc;
    doc["command"] = echo;
    doc["trace"] = trace_to_json(trace);
    doc["steps"] = trace.length();
    doc["normal_form"] = normal_form;
    out << doc.dump(2) << "\n";
  } else {
    out << "command: " << echo << "\n";
    out << "trace (" << count_word(trace.length(), "step") << "):\n";
    out << trace_to_text(trace, "  ");
    out << (normal_form ? "normal form after " + count_word(trace.length(), "step")
                        : "step limit reached after " + count_word(trace.length(), "step"))
        << "\n";
  }
  return 0;
}

struct GraphOptions {
  std::string trs_path;
  std::string seed_text;
  std::string budget_text;
  std::string out_path;
};

int do_graph(const GraphOptions& opt, std::ostream& out) {
  const Trs trs = load_trs(opt.trs_path);
  const Term seed = parse_term_arg(opt.seed_text, trs.signature(), "--seed");
  const Budget budget = parse_budget_text(opt.budget_text);
  const std::string dot = export_graph(trs, seed, budget);
  if (opt.out_path.empty())
    out << dot;
  else
    write_file(opt.out_path, dot);
  return 0;
}

struct CheckOptions {
  std::string trs_path;
  std::string machine_path;
  std::string shape_text;
  std::string budget_text;
  std::vector<std::string> peak_texts;
  std::string seed_text;
  bool cross_check = false;
  bool json = false;
};

int do_check(const CheckOptions& opt, const std::string& echo, std::ostream& out) {
  if (opt.trs_path.empty() && opt.machine_path.empty())
    throw std::runtime_error("check needs a rewrite system file or --machine");

  DiamondShape shape{{ShapeLabel::star}};
  try {
    shape = parse_shape(opt.shape_text);
  } catch (const ParseError& e) {
    throw std::runtime_error("--shape '" + opt.shape_text + "': " + e.what());
  }
  const Budget budget = parse_budget_text(opt.budget_text);

  ShapeCheckResult result;
  if (!opt.machine_path.empty()) {
    const TuringMachine tm = load_machine(opt.machine_path);
    result = check_shape_on_derived(tm, shape, budget, opt.cross_check);
  } else {
    const Trs trs = load_trs(opt.trs_path);
    std::vector<Term> peaks;
    for (const std::string& text : opt.peak_texts)
      peaks.push_back(parse_term_arg(text, trs.signature(), "--peak"));
    if (!opt.seed_text.empty()) {
      const Term seed = parse_term_arg(opt.seed_text, trs.signature(), "--seed");
      const ReachSet cone = reachable_terms(trs, seed, budget);
      for (const Term& t : cone.terms)
        if (std::find(peaks.begin(), peaks.end(), t) == peaks.end()) peaks.push_back(t);
    }
    if (peaks.empty())
      throw std::runtime_error("checking a rewrite system needs at least one peak: pass --peak or --seed");
    result = check_shape_on_trs(trs, shape, peaks, budget);
  }

  const std::optional<std::string> name = shape_name(shape);
  if (opt.json) {
    Json doc;
    doc["command"] = echo;
    doc["shape"] = shape_to_string(shape);
    if (name) doc["shape_name"] = *name;
    doc["budget"] = budget_to_json(budget);
    doc.update(check_result_to_json(result));
    out << doc.dump(2) << "\n";
  } else {
    out << "command: " << echo << "\n";
    out << "shape: " << (name ? *name + " (" + shape_to_string(shape) + ")" : shape_to_string(shape))
        << "\n";
    out << "budget: " << budget_to_text(budget) << "\n";
    out << check_result_to_text(result);
  }

  switch (result.verdict) {
    case ShapeVerdict::holds: return 0;
    case ShapeVerdict::counterexample: return exit_counterexample;
    case ShapeVerdict::unknown: return exit_unknown;
  }
  return exit_usage;
}

std::string dot_escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_graph(const Trs& trs, const Term& seed, const Budget& budget) {
  const ReachGraph graph = reachable_graph(trs, seed, budget);
  std::string dot;
  dot += "digraph reduction {\n";
  dot += "  rankdir=LR;\n";
  dot += "  // seed: " + format_term(seed) + "\n";
  if (graph.complete)
    dot += "  // complete: " + count_word(graph.nodes.size(), "term") + ", closed under rewriting\n";
  else
    dot += "  // truncated: " + graph.note + "\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i)
    dot += "  n" + std::to_string(i) + " [label=\"" + dot_escape(format_term(graph.nodes[i])) +
           "\"];\n";
  for (const ReachGraph::Edge& e : graph.edges) {
    std::string label = "rule " + std::to_string(e.rule_index);
    if (!e.position.empty()) label += " @ " + position_to_string(e.position);
    dot += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [label=\"" +
           label + "\"];\n";
  }
  dot += "}\n";
  return dot;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile Turing machines to rewrite systems and check diamond-like shapes"};
  app.name("trsdiamond");

  SimulateOptions sim;
  CompileOptions comp;
  EncodeOptions enc;
  RewriteOptions rew;
  GraphOptions gra;
  CheckOptions chk;

  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Run a machine from the empty tape and print each configuration");
  sim_cmd->add_option("machine", sim.machine_path, "Machine description file")->required();
  sim_cmd->add_option("--steps", sim.steps, "Step budget")->capture_default_str();
  sim_cmd->add_flag("--json", sim.json, "Structured output");

  CLI::App* comp_cmd = app.add_subcommand("compile", "Compile a machine to its rewrite system");
  comp_cmd->add_option("machine", comp.machine_path, "Machine description file")->required();
  comp_cmd->add_option("-o,--output", comp.out_path,
                       "Write the system here instead of standard output");

  CLI::App* enc_cmd =
      app.add_subcommand("encode", "Picture a configuration as a term, or decode a term back");
  enc_cmd->add_option("machine", enc.machine_path, "Machine description file")->required();
  CLI::Option* config_opt = enc_cmd->add_option(
      "--config", enc.config_text,
      "Configuration like 's@0:1=one' (default: the start configuration)");
  enc_cmd->add_option("--term", enc.term_text, "Decode this term instead")->excludes(config_opt);
  enc_cmd->add_flag("--json", enc.json, "Structured output");

  CLI::App* rew_cmd =
      app.add_subcommand("rewrite", "Apply leftmost-outermost rewrite steps to a term");
  rew_cmd->add_option("trs", rew.trs_path, "Rewrite system file")->required();
  rew_cmd->add_option("--term", rew.term_text, "Ground start term")->required();
  rew_cmd->add_option("--steps", rew.steps, "Maximum steps")->capture_default_str();
  rew_cmd->add_flag("--json", rew.json, "Structured output");

  CLI::App* gra_cmd =
      app.add_subcommand("graph", "Emit the bounded reduction graph from a seed as DOT");
  gra_cmd->add_option("trs", gra.trs_path, "Rewrite system file")->required();
  gra_cmd->add_option("--seed", gra.seed_text, "Ground seed term")->required();
  gra_cmd->add_option("--budget", gra.budget_text, "Limits as steps=N,terms=N,size=N");
  gra_cmd->add_option("-o,--output", gra.out_path, "Write DOT here instead of standard output");

  CLI::App* chk_cmd = app.add_subcommand(
      "check", "Check a diamond-like shape on a rewrite system or a machine's derived relation");
  CLI::Option* trs_opt = chk_cmd->add_option("trs", chk.trs_path, "Rewrite system file");
  CLI::Option* machine_opt = chk_cmd->add_option(
      "--machine", chk.machine_path, "Check the relation derived from this machine instead");
  trs_opt->excludes(machine_opt);
  machine_opt->excludes(trs_opt);
  chk_cmd
      ->add_option("--shape", chk.shape_text,
                   "Shape name or labels over {*,+,=,1}, e.g. local-confluence or '*,='")
      ->required();
  chk_cmd->add_option("--budget", chk.budget_text, "Limits as steps=N,terms=N,size=N");
  chk_cmd->add_option("--peak", chk.peak_texts, "Ground peak to check (repeatable)")
      ->excludes(machine_opt);
  chk_cmd->add_option("--seed", chk.seed_text, "Check every term reachable from this ground seed")
      ->excludes(machine_opt);
  chk_cmd->add_flag("--cross-check", chk.cross_check,
                    "Also run the bounded direct check over the reachable cone")
      ->needs(machine_opt);
  chk_cmd->add_flag("--json", chk.json, "Structured output");

  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("trsdiamond");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const std::vector<CLI::App*> subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  std::string echo = "trsdiamond";
  for (const std::string& arg : args) echo += " " + arg;

  try {
    if (sim_cmd->parsed()) return do_simulate(sim, echo, out);
    if (comp_cmd->parsed()) return do_compile(comp, out);
    if (enc_cmd->parsed()) return do_encode(enc, echo, out);
    if (rew_cmd->parsed()) return do_rewrite(rew, echo, out);
    if (gra_cmd->parsed()) return do_graph(gra, out);
    if (chk_cmd->parsed()) return do_check(chk, echo, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace trsd
