// Batch front-end: classify exclusions, check properties, compose trees,
// run the named verification batteries, synthesize witnesses, and replay
// reports. Reports are JSON and byte-stable for a given seed unless --timing
// is requested.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lexichoice/spec_io.hpp"
#include "lexichoice/theorems.hpp"

namespace lexichoice {
namespace {

struct CliContext {
  std::string out_path;
  std::uint64_t seed = 0;
  bool timing = false;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
};

int emit(const CliContext& ctx, const std::string& command, const SpecFile* spec, Json tasks,
         int exit_code, std::vector<std::string> caveats = {}) {
  Json report;
  report["schema"] = kReportSchema;
  report["tool"] = "lexichoice";
  report["version"] = kToolVersion;
  report["command"] = command;
  report["seed"] = ctx.seed;
  if (spec) {
    Json context;
    Json g;
    g["size"] = spec->ground->size();
    g["headroom"] = spec->ground->headroom();
    context["ground"] = g;
    if (spec->partition) {
      Json blocks = Json::array();
      for (const ItemSet& b : spec->partition->blocks()) blocks.push_back(itemset_to_json(b));
      context["partition"] = blocks;
    }
    report["context"] = context;
  }
  report["tasks"] = std::move(tasks);
  report["caveats"] = caveats;
  report["exit"] = exit_code;
  if (ctx.timing) {
    auto elapsed = std::chrono::steady_clock::now() - ctx.started;
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }
  std::string text = report.dump(2) + "\n";
  if (ctx.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(ctx.out_path);
    if (!out) {
      std::cerr << "cannot write report to " << ctx.out_path << "\n";
      return 2;
    }
    out << text;
  }
  return exit_code;
}

ItemSet parse_eval_set(const std::string& text, const GroundSet& ground) {
  ItemSet out;
  std::string body = text;
  if (!body.empty() && body.front() == '[') body = body.substr(1);
  if (!body.empty() && body.back() == ']') body.pop_back();
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? body.size() : comma + 1;
    if (tok.empty()) continue;
    int item = std::stoi(tok);
    if (item < 0 || item >= ground.size()) throw ParseError("eval item out of range");
    out |= ItemSet::single(item);
  }
  return out;
}

/// Tree expressions: a name, or L(<exclusion>, <tree>, <tree>).
struct TreeParser {
  const std::string& text;
  std::size_t pos = 0;
  const SpecFile& spec;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) throw ParseError("expected a name in tree expression at offset " +
                                       std::to_string(pos));
    return text.substr(start, pos - start);
  }

  CompositionTree parse() {
    skip_ws();
    std::string name = ident();
    if (name == "L") {
      if (!consume('(')) throw ParseError("expected '(' after L");
      std::string label = ident();
      if (!consume(',')) throw ParseError("expected ',' after the exclusion label");
      CompositionTree left = parse();
      if (!consume(',')) throw ParseError("expected ',' between subtrees");
      CompositionTree right = parse();
      if (!consume(')')) throw ParseError("expected ')' closing L(...)");
      return CompositionTree::node(std::move(left), std::move(right), spec.exclusion(label));
    }
    return CompositionTree::leaf(spec.choice(name));
  }
};

int run_cli(int argc, char** argv) {
  CLI::App app{"lexicographic choice composition verifier"};
  app.require_subcommand(1);
  CliContext ctx;
  app.add_option("--out", ctx.out_path, "write the JSON report to this path");
  app.add_option("--seed", ctx.seed, "seed echoed in the report and used by sampling");
  app.add_flag("--timing", ctx.timing, "include wall-clock timing in the report");

  std::string spec_path, name, prop_name = "PI", condition_name, theorem;
  std::string tree_expr, eval_set;
  bool exhaustive = false;
  int samples = 500;

  CLI::App* classify = app.add_subcommand("classify", "classify an exclusion function");
  classify->add_option("spec", spec_path)->required();
  classify->add_option("name", name)->required();

  CLI::App* check = app.add_subcommand("check", "check a property of a choice function");
  check->add_option("spec", spec_path)->required();
  check->add_option("name", name)->required();
  check->add_option("--prop", prop_name, "PI|SUB|CON|SM|MTO1");

  CLI::App* compose = app.add_subcommand("compose", "evaluate a composition tree");
  compose->add_option("spec", spec_path)->required();
  compose->add_option("--tree", tree_expr, "e.g. L(E1,C1,L(E2,C2,C3))")->required();
  compose->add_option("--eval", eval_set, "input set, e.g. [0,2,4]")->required();

  CLI::App* verify = app.add_subcommand("verify", "run a named verification battery");
  verify->add_option("spec", spec_path);
  verify->add_option("--theorem", theorem, "battery id, e.g. thm1 or prop-pi")->required();
  verify->add_flag("--exhaustive", exhaustive, "prefer exhaustive modes where available");
  verify->add_option("--samples", samples, "sampled pair count");

  CLI::App* witness = app.add_subcommand("witness", "synthesize a counterexample");
  witness->add_option("spec", spec_path)->required();
  witness->add_option("name", name)->required();
  witness->add_option("--condition", condition_name, "violated condition")->required();

  CLI::App* replay = app.add_subcommand("replay", "re-validate every witness in a report");
  std::string report_path;
  replay->add_option("report", report_path)->required();

  // let --out/--seed/--timing appear after the subcommand arguments
  for (CLI::App* sub : {classify, check, compose, verify, witness, replay}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(classify)) {
      SpecFile spec = load_spec(spec_path);
      const ExclusionFunction& e = spec.exclusion(name);
      TlcrClassification cls = classify_tlcr(e);
      Json task;
      task["task"] = "classify";
      task["name"] = name;
      task["result"] = classification_to_json(cls);
      return emit(ctx, "classify", &spec, Json::array({task}), 0);
    }

    if (app.got_subcommand(check)) {
      SpecFile spec = load_spec(spec_path);
      auto prop = property_from_name(prop_name);
      if (!prop) throw ParseError("unknown property '" + prop_name + "'");
      const ChoiceFunction& c = spec.choice(name);
      const EquivalencePartition* part = spec.partition ? &*spec.partition : nullptr;
      PropertyVerdict v = check_choice(c, *prop, part);
      Json task;
      task["task"] = "check";
      task["name"] = name;
      task["function"] = choice_to_json(c);
      task["result"] = verdict_to_json(v);
      return emit(ctx, "check", &spec, Json::array({task}), v.holds ? 0 : 1);
    }

    if (app.got_subcommand(compose)) {
      SpecFile spec = load_spec(spec_path);
      TreeParser parser{tree_expr, 0, spec};
      CompositionTree tree = parser.parse();
      parser.skip_ws();
      if (parser.pos != tree_expr.size()) throw ParseError("trailing text in tree expression");
      ChoiceFunction composed = eval_tree(tree);
      ItemSet y = parse_eval_set(eval_set, *spec.ground);
      Json task;
      task["task"] = "compose";
      task["tree"] = tree_expr;
      task["eval"] = itemset_to_json(y);
      task["result"] = itemset_to_json(composed(y));
      return emit(ctx, "compose", &spec, Json::array({task}), 0);
    }

    if (app.got_subcommand(verify)) {
      BatteryOptions options;
      options.seed = ctx.seed;
      options.samples = samples;
      options.exhaustive = exhaustive;
      BatteryReport r = run_battery(theorem, options);
      Json lines = Json::array();
      for (const CheckLine& l : r.lines) {
        Json line;
        line["name"] = l.name;
        line["pass"] = l.pass;
        if (!l.detail.empty()) line["detail"] = l.detail;
        lines.push_back(line);
      }
      Json task;
      task["task"] = "verify";
      task["theorem"] = theorem;
      task["pass"] = r.pass();
      task["lines"] = lines;
      return emit(ctx, "verify", nullptr, Json::array({task}), r.pass() ? 0 : 1);
    }

    if (app.got_subcommand(witness)) {
      SpecFile spec = load_spec(spec_path);
      const ExclusionFunction& e = spec.exclusion(name);
      auto cond = violation_case_from_name(condition_name);
      if (!cond && condition_name == "pi-domain") cond = ViolationCase::PiFiniteThreshold;
      if (!cond) throw ParseError("unknown condition '" + condition_name + "'");
      Json task;
      task["task"] = "witness";
      task["name"] = name;
      task["exclusion"] = exclusion_to_json(e);
      try {
        Witness w = synthesize(e, *cond, spec.partition ? &*spec.partition : nullptr);
        task["result"] = witness_to_json(w);
        task["validated"] = validate_witness(e, w);
        return emit(ctx, "witness", &spec, Json::array({task}), 0);
      } catch (const ConditionNotViolated& err) {
        task["result"] = nullptr;
        task["note"] = std::string("condition not violated: ") + err.what();
        return emit(ctx, "witness", &spec, Json::array({task}), 0);
      }
    }

    if (app.got_subcommand(replay)) {
      std::ifstream in(report_path);
      if (!in) throw ParseError("cannot open report " + report_path);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("report parse error: ") + err.what());
      }
      if (!j.contains("context") || !j["context"].contains("ground"))
        throw ParseError("report has no replayable context");
      const Json& gj = j["context"]["ground"];
      GroundPtr ground = make_ground(gj.at("size").get<int>(), gj.at("headroom").get<int>());
      std::optional<EquivalencePartition> partition;
      if (j["context"].contains("partition")) {
        std::vector<ItemSet> blocks;
        for (const Json& blk : j["context"]["partition"])
          blocks.push_back(itemset_from_json(blk, *ground));
        partition.emplace(*ground, std::move(blocks));
      }
      int reproduced = 0, expected = 0;
      Json tasks = Json::array();
      for (const Json& task : j.at("tasks")) {
        std::string kind = task.at("task").get<std::string>();
        if (kind == "witness" && task.contains("result") && !task.at("result").is_null()) {
          ++expected;
          ExclusionFunction e = exclusion_from_json(task.at("exclusion"), ground, partition);
          Witness w = witness_from_json(task.at("result"), ground, partition);
          bool ok = validate_witness(e, w);
          reproduced += ok;
          tasks.push_back(Json{{"task", "replay-witness"}, {"reproduced", ok}});
        } else if (kind == "check" && task.contains("result") &&
                   !task.at("result").at("holds").get<bool>()) {
          ++expected;
          ChoiceFunction c = choice_from_json(task.at("function"), ground, partition);
          auto prop = property_from_name(task.at("result").at("property").get<std::string>());
          const Json& w = task.at("result").at("witness");
          bool ok = prop && violates_at(c, *prop, itemset_from_json(w.at("y_small"), *ground),
                                        itemset_from_json(w.at("y_big"), *ground),
                                        partition ? &*partition : nullptr);
          reproduced += ok;
          tasks.push_back(Json{{"task", "replay-check"}, {"reproduced", ok}});
        }
      }
      Json summary;
      summary["task"] = "replay";
      summary["witnesses_expected"] = expected;
      summary["witnesses_reproduced"] = reproduced;
      tasks.push_back(summary);
      return emit(ctx, "replay", nullptr, tasks, reproduced == expected ? 0 : 1);
    }
  } catch (const ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return 2;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace
}  // namespace lexichoice

int main(int argc, char** argv) { return lexichoice::run_cli(argc, argv); }
