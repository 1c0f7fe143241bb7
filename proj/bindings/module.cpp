#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trsd/cli.hpp"
#include "trsd/diamond.hpp"
#include "trsd/encode.hpp"
#include "trsd/formats.hpp"
#include "trsd/reach.hpp"
#include "trsd/report.hpp"
#include "trsd/term.hpp"
#include "trsd/turing.hpp"

namespace py = pybind11;

namespace {

trsd::Budget make_budget(std::size_t steps, std::size_t terms, std::size_t size) {
  trsd::Budget budget;
  budget.max_rewrite_steps = steps;
  budget.max_distinct_terms = terms;
  budget.max_term_size = size;
  return budget;
}

trsd::TuringMachine machine_from_text(const std::string& text) {
  trsd::TuringMachine tm = trsd::parse_machine(text);
  const std::vector<std::string> defects = trsd::validate_machine(tm);
  if (!defects.empty()) {
    std::string message = "invalid machine:";
    for (const std::string& defect : defects) message += "\n  " + defect;
    throw std::invalid_argument(message);
  }
  return tm;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Core operations: compile Turing machines to rewrite systems, explore "
      "them under budgets, and check diamond-like shapes. Structured results "
      "come back as JSON text; the package wrappers decode them.";

  m.def(
      "compile_machine",
      [](const std::string& machine_text) {
        return trsd::trs_to_text(trsd::compile_trs(machine_from_text(machine_text)));
      },
      py::arg("machine_text"));

  m.def(
      "machine_to_text",
      [](const std::string& machine_text) {
        return trsd::machine_to_text(machine_from_text(machine_text));
      },
      py::arg("machine_text"));

  m.def(
      "validate_machine",
      [](const std::string& machine_text) {
        return trsd::validate_machine(trsd::parse_machine(machine_text));
      },
      py::arg("machine_text"));

  m.def(
      "simulate_json",
      [](const std::string& machine_text, std::size_t steps) {
        const trsd::TuringMachine tm = machine_from_text(machine_text);
        const trsd::RunOutcome outcome = trsd::run(tm, steps);
        trsd::Json doc;
        switch (outcome.kind) {
          case trsd::RunOutcome::Kind::halted:
            doc["status"] = "halted";
            doc["steps"] = outcome.steps;
            doc["final_config"] = trsd::config_to_text(*outcome.final_config);
            break;
          case trsd::RunOutcome::Kind::cycled: {
            doc["status"] = "cycled";
            trsd::Json cycle;
            cycle["prefix"] = outcome.cycle_prefix;
            cycle["period"] = outcome.cycle_period;
            doc["cycle"] = std::move(cycle);
            break;
          }
          case trsd::RunOutcome::Kind::exceeded:
            doc["status"] = "exceeded";
            doc["steps"] = outcome.steps;
            break;
        }
        return doc.dump();
      },
      py::arg("machine_text"), py::arg("steps") = 100);

  m.def(
      "encode_config",
      [](const std::string& machine_text, const std::string& config) {
        const trsd::TuringMachine tm = machine_from_text(machine_text);
        const trsd::Configuration k =
            config.empty() ? trsd::initial_config(tm) : trsd::parse_config(config, tm);
        return trsd::format_term(trsd::encode_config(tm, k));
      },
      py::arg("machine_text"), py::arg("config") = std::string());

  m.def(
      "decode_term",
      [](const std::string& machine_text, const std::string& term) -> std::optional<std::string> {
        const trsd::TuringMachine tm = machine_from_text(machine_text);
        const trsd::Trs trs = trsd::compile_trs(tm);
        const std::optional<trsd::Configuration> k =
            trsd::decode_term(tm, trsd::parse_term(term, trs.signature()));
        if (!k) return std::nullopt;
        return trsd::config_to_text(*k);
      },
      py::arg("machine_text"), py::arg("term"));

  m.def(
      "successors",
      [](const std::string& trs_text, const std::string& term) {
        const trsd::Trs trs = trsd::parse_trs(trs_text);
        std::vector<std::string> out;
        for (const trsd::Term& t :
             trsd::one_step_successors(trs, trsd::parse_term(term, trs.signature())))
          out.push_back(trsd::format_term(t));
        return out;
      },
      py::arg("trs_text"), py::arg("term"));

  m.def(
      "reachable_json",
      [](const std::string& trs_text, const std::string& seed, std::size_t steps,
         std::size_t terms, std::size_t size) {
        const trsd::Trs trs = trsd::parse_trs(trs_text);
        const trsd::ReachSet set = trsd::reachable_terms(
            trs, trsd::parse_term(seed, trs.signature()), make_budget(steps, terms, size));
        trsd::Json doc;
        trsd::Json list = trsd::Json::array();
        for (const trsd::Term& t : set.terms) list.push_back(trsd::format_term(t));
        doc["terms"] = std::move(list);
        doc["complete"] = set.complete;
        doc["depth"] = set.depth_reached;
        if (!set.note.empty()) doc["note"] = set.note;
        return doc.dump();
      },
      py::arg("trs_text"), py::arg("seed"), py::arg("steps") = 1000,
      py::arg("terms") = 5000, py::arg("size") = 10000);

  m.def(
      "terminates_json",
      [](const std::string& machine_text, std::size_t steps, std::size_t terms,
         std::size_t size) {
        return trsd::three_valued_to_json(trsd::terminates_via_trs(
                                              machine_from_text(machine_text),
                                              make_budget(steps, terms, size)))
            .dump();
      },
      py::arg("machine_text"), py::arg("steps") = 1000, py::arg("terms") = 5000,
      py::arg("size") = 10000);

  m.def(
      "joinable_json",
      [](const std::string& trs_text, const std::vector<std::string>& branches,
         const std::string& labels, std::size_t steps, std::size_t terms, std::size_t size) {
        const trsd::Trs trs = trsd::parse_trs(trs_text);
        const trsd::DiamondShape shape = trsd::parse_shape(labels);
        std::vector<trsd::Term> parsed;
        for (const std::string& b : branches)
          parsed.push_back(trsd::parse_term(b, trs.signature()));
        const trsd::JoinResult r =
            trsd::joinable(trs, parsed, shape.labels, make_budget(steps, terms, size));
        trsd::Json doc;
        doc["decision"] = trsd::decision_to_string(r.decision);
        if (r.witness) doc["witness"] = trsd::format_term(*r.witness);
        doc["note"] = r.note;
        return doc.dump();
      },
      py::arg("trs_text"), py::arg("branches"), py::arg("labels"), py::arg("steps") = 1000,
      py::arg("terms") = 5000, py::arg("size") = 10000);

  m.def(
      "check_trs_json",
      [](const std::string& trs_text, const std::string& shape,
         const std::vector<std::string>& peaks, std::size_t steps, std::size_t terms,
         std::size_t size) {
        const trsd::Trs trs = trsd::parse_trs(trs_text);
        std::vector<trsd::Term> parsed;
        for (const std::string& p : peaks)
          parsed.push_back(trsd::parse_term(p, trs.signature()));
        return trsd::check_result_to_json(
                   trsd::check_shape_on_trs(trs, trsd::parse_shape(shape), parsed,
                                            make_budget(steps, terms, size)))
            .dump();
      },
      py::arg("trs_text"), py::arg("shape"), py::arg("peaks"), py::arg("steps") = 1000,
      py::arg("terms") = 5000, py::arg("size") = 10000);

  m.def(
      "check_machine_json",
      [](const std::string& machine_text, const std::string& shape, std::size_t steps,
         std::size_t terms, std::size_t size, bool cross_check) {
        return trsd::check_result_to_json(
                   trsd::check_shape_on_derived(machine_from_text(machine_text),
                                                trsd::parse_shape(shape),
                                                make_budget(steps, terms, size), cross_check))
            .dump();
      },
      py::arg("machine_text"), py::arg("shape"), py::arg("steps") = 1000,
      py::arg("terms") = 5000, py::arg("size") = 10000, py::arg("cross_check") = false);

  m.def(
      "export_graph",
      [](const std::string& trs_text, const std::string& seed, std::size_t steps,
         std::size_t terms, std::size_t size) {
        const trsd::Trs trs = trsd::parse_trs(trs_text);
        return trsd::export_graph(trs, trsd::parse_term(seed, trs.signature()),
                                  make_budget(steps, terms, size));
      },
      py::arg("trs_text"), py::arg("seed"), py::arg("steps") = 1000, py::arg("terms") = 5000,
      py::arg("size") = 10000);

  m.def(
      "named_shapes",
      [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [name, shape] : trsd::named_shapes())
          out.emplace_back(name, trsd::shape_to_string(shape));
        return out;
      });

  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = trsd::run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
