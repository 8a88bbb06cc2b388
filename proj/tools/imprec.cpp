// imprec — goal recognition over incomplete STRIPS domain models.
//
// Subcommands compose the library: recognize, extract-landmarks,
// gen-incomplete, sample-obs, evaluate, validate-plan, completions.
// Exit codes: 0 success, 1 domain error (parse/unreachable/...), 2 usage.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "imprec/dataset.hpp"
#include "imprec/eval.hpp"
#include "imprec/graphs.hpp"
#include "imprec/landmarks.hpp"
#include "imprec/pddl.hpp"
#include "imprec/recognizer.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace imprec;

namespace {

double default_timeout() {
  if (const char* env = std::getenv("IMPREC_TIMEOUT_SECS"))
    return std::atof(env);
  return 120.0;
}

std::vector<std::string> read_plan_file(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == ';') continue;
    auto b = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(a, b - a + 1));
  }
  return out;
}

int cmd_recognize(const std::string& bundle, const std::string& heuristic,
                  const std::string& kinds, double theta, bool strict_lm,
                  bool as_json) {
  HeuristicConfig cfg;
  if (!parse_heuristic(heuristic, cfg.heuristic)) {
    std::cerr << "unknown heuristic: " << heuristic << "\n";
    return 2;
  }
  parse_kinds(kinds, cfg);
  cfg.theta = theta;
  cfg.strict_islandmark = strict_lm;
  double budget = default_timeout();
  if (budget > 0)
    cfg.deadline = std::chrono::steady_clock::now() +
                   std::chrono::microseconds(
                       static_cast<long long>(budget * 1e6));

  RecognitionProblem rp = parse_recognition_bundle(bundle);
  RecognitionResult r = recognize(rp, cfg);
  if (as_json) {
    json j;
    j["heuristic"] = heuristic;
    j["kinds"] = kinds;
    j["theta"] = theta;
    j["scores"] = r.scores;
    j["returned"] = r.returned;
    j["spread"] = r.spread;
    j["hit"] = r.hit;
    j["hidden_goal"] = rp.hidden_goal;
    j["all_unreachable"] = r.all_unreachable;
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < r.scores.size(); ++i) {
      bool in = std::find(r.returned.begin(), r.returned.end(),
                          static_cast<int>(i)) != r.returned.end();
      std::cout << (in ? "* " : "  ") << "goal " << i << "  score "
                << r.scores[i]
                << (static_cast<int>(i) == rp.hidden_goal ? "  (hidden)" : "")
                << "\n";
    }
    std::cout << "spread " << r.spread << "  hit " << (r.hit ? "yes" : "no")
              << "\n";
    if (r.all_unreachable)
      std::cerr << "warning: no hypothesis is reachable; all returned\n";
  }
  return 0;
}

int cmd_extract(const std::string& bundle, bool strict_lm, bool as_json) {
  GroundedProblem gp = ground_problem(parse_recognition_bundle(bundle));
  json goals = json::array();
  for (std::size_t h = 0; h < gp.hyp_goals.size(); ++h) {
    LandmarkSet lm = extract_incomplete(gp.task, gp.hyp_goals[h], strict_lm);
    auto names = [&](const std::vector<int>& v) {
      std::vector<std::string> out;
      for (int f : v) out.push_back(gp.task.facts.name(f));
      return out;
    };
    if (as_json) {
      json g;
      g["goal"] = h;
      g["definite"] = names(lm.definite);
      g["possible"] = names(lm.possible);
      goals.push_back(g);
    } else {
      std::cout << "goal " << h << "\n  definite:";
      for (const auto& n : names(lm.definite)) std::cout << " " << n;
      std::cout << "\n  possible:";
      for (const auto& n : names(lm.possible)) std::cout << " " << n;
      std::cout << "\n";
    }
  }
  if (as_json) std::cout << json{{"goals", goals}}.dump(2) << "\n";
  return 0;
}

int cmd_gen(const std::string& domain_path, int percent, std::uint64_t seed,
            int variants, bool mix, const std::string& out_dir) {
  LiftedDomain d = parse_domain(read_file(domain_path));
  DegradeSpec spec;
  spec.percent = percent;
  spec.seed = seed;
  spec.variants = variants;
  spec.mix = mix;
  auto outs = degrade(d, spec);
  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < outs.size(); ++i) {
    fs::path p = fs::path(out_dir) /
                 ("domain_" + std::to_string(percent) + "_v" +
                  std::to_string(i) + ".pddl");
    std::ofstream(p) << serialize_domain(outs[i]);
    std::cout << p.string() << "\n";
  }
  return 0;
}

int cmd_sample(const std::string& plan_path, int percent, std::uint64_t seed,
               const std::string& out_path) {
  auto plan = read_plan_file(plan_path);
  auto obs = sample_observations(plan, percent, seed);
  std::ostringstream os;
  for (const auto& a : obs) os << a << "\n";
  if (out_path.empty())
    std::cout << os.str();
  else
    std::ofstream(out_path) << os.str();
  return 0;
}

int cmd_validate(const std::string& bundle, const std::string& plan_path,
                 bool as_json) {
  GroundedProblem gp = ground_problem(parse_recognition_bundle(bundle));
  std::vector<std::string> plan;
  if (plan_path.empty())
    for (int ai : gp.obs)
      plan.push_back(gp.task.actions[static_cast<std::size_t>(ai)].name);
  else
    plan = read_plan_file(plan_path);
  StateTrace tr = validate_optimistic_plan(gp.task, plan);
  if (as_json) {
    json j;
    j["valid"] = tr.ok();
    if (tr.ok()) {
      json states = json::array();
      for (const auto& s : tr.states) {
        std::vector<std::string> names;
        for (int f : s.to_ids()) names.push_back(gp.task.facts.name(f));
        states.push_back(names);
      }
      j["trace"] = states;
    } else {
      j["error_step"] = tr.error.step;
      j["error_detail"] = tr.error.detail;
    }
    std::cout << j.dump(2) << "\n";
  } else if (tr.ok()) {
    for (std::size_t i = 0; i < tr.states.size(); ++i) {
      std::cout << "s" << i << ":";
      for (int f : tr.states[i].to_ids())
        std::cout << " " << gp.task.facts.name(f);
      std::cout << "\n";
    }
  } else {
    std::cerr << "invalid plan at step " << tr.error.step << ": "
              << tr.error.detail << "\n";
  }
  return tr.ok() ? 0 : 1;
}

int cmd_completions(const std::string& domain_path, bool as_json) {
  LiftedDomain d = parse_domain(read_file(domain_path));
  GroundedTask t = ground(d, {}, {}, {});
  CompletionCount cc = completion_count(t);
  if (as_json)
    std::cout << json{{"k", cc.k}, {"completions", cc.count}}.dump(2) << "\n";
  else
    std::cout << cc.count << "\n";
  return 0;
}

// Dataset layout for `evaluate`: every directory below the root that holds a
// full bundle is one problem; an optional meta.json beside it may carry
// domain, incompleteness, observability.
int cmd_evaluate(const std::string& root, std::vector<std::string> specs,
                 double theta, double timeout, int jobs, bool as_json,
                 const std::string& csv_path, const std::string& roc_path) {
  std::vector<EvalProblem> problems;
  std::vector<fs::path> dirs;
  for (auto it = fs::recursive_directory_iterator(root);
       it != fs::recursive_directory_iterator(); ++it)
    if (it->is_directory() && fs::exists(it->path() / "domain.pddl"))
      dirs.push_back(it->path());
  if (fs::exists(fs::path(root) / "domain.pddl")) dirs.push_back(root);
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    EvalProblem p;
    p.gp = ground_problem(parse_recognition_bundle(dir.string()));
    p.domain_name = dir.filename().string();
    fs::path meta = dir / "meta.json";
    if (fs::exists(meta)) {
      json m = json::parse(read_file(meta.string()));
      p.domain_name = m.value("domain", p.domain_name);
      p.incompleteness = m.value("incompleteness", 0);
      p.observability = m.value("observability", 0);
    }
    problems.push_back(std::move(p));
  }
  if (problems.empty()) {
    std::cerr << "no problem bundles under " << root << "\n";
    return 1;
  }

  std::vector<NamedConfig> configs;
  if (specs.empty()) specs = {"gc_enhanced:DPO"};
  for (const auto& s : specs) {
    NamedConfig nc;
    std::string name = s, kinds = "DPO";
    if (auto colon = s.find(':'); colon != std::string::npos) {
      name = s.substr(0, colon);
      kinds = s.substr(colon + 1);
    }
    if (!parse_heuristic(name, nc.cfg.heuristic)) {
      std::cerr << "unknown heuristic: " << name << "\n";
      return 2;
    }
    parse_kinds(kinds, nc.cfg);
    nc.cfg.theta = theta;
    nc.name = name + ":" + kinds;
    configs.push_back(std::move(nc));
  }

  auto rows = evaluate(problems, configs, timeout, jobs);
  auto emit_csv = [&](std::ostream& os) {
    os << "domain,config,incompleteness,observability,n,timed_out,failed,"
          "accuracy,spread,precision,recall,f1,mean_d,mean_p,mean_o,"
          "secs_per_problem\n";
    for (const auto& r : rows)
      os << r.domain_name << "," << r.config << "," << r.incompleteness << ","
         << r.observability << "," << r.n_problems << "," << r.timed_out << ","
         << r.failed << "," << r.accuracy << "," << r.spread << ","
         << r.precision << "," << r.recall << "," << r.f1 << "," << r.mean_d
         << "," << r.mean_p << "," << r.mean_o << ","
         << r.wallclock_per_problem << "\n";
  };
  if (!csv_path.empty()) {
    std::ofstream os(csv_path);
    emit_csv(os);
  }
  if (as_json) {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"domain", r.domain_name},
                   {"config", r.config},
                   {"incompleteness", r.incompleteness},
                   {"observability", r.observability},
                   {"n", r.n_problems},
                   {"timed_out", r.timed_out},
                   {"failed", r.failed},
                   {"accuracy", r.accuracy},
                   {"spread", r.spread},
                   {"precision", r.precision},
                   {"recall", r.recall},
                   {"f1", r.f1},
                   {"mean_d", r.mean_d},
                   {"mean_p", r.mean_p},
                   {"mean_o", r.mean_o}});
    std::cout << j.dump(2) << "\n";
  } else {
    emit_csv(std::cout);
  }
  if (!roc_path.empty()) {
    // per-problem points, one run per config
    std::ofstream os(roc_path);
    os << "label,tpr,fpr\n";
    for (const auto& nc : configs) {
      for (const auto& p : problems) {
        try {
          RecognitionResult r = recognize_grounded(p.gp, nc.cfg);
          ProblemOutcome oc;
          oc.hit = r.hit;
          oc.returned = r.spread;
          oc.n_hyps = static_cast<int>(p.gp.hyp_goals.size());
          oc.label = nc.name + "@" + std::to_string(p.incompleteness);
          for (const auto& pt : roc_points({oc}))
            os << pt.label << "," << pt.tpr << "," << pt.fpr << "\n";
        } catch (const std::exception&) {
        }
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"goal recognition over incomplete STRIPS domain models"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output on stdout");

  std::string bundle, domain_path, plan_path, out_path, root;
  std::string heuristic = "gc_enhanced", kinds = "DPO";
  double theta = 0.0;
  bool strict_lm = false, mix = false, strict_cli = false;
  int percent = 20, variants = 3, jobs = 1;
  std::uint64_t seed = 0;
  double timeout = default_timeout();
  std::vector<std::string> configs;
  std::string csv_path, roc_path;

  auto* rec = app.add_subcommand("recognize", "score goal hypotheses");
  rec->add_option("--bundle", bundle, "problem bundle directory")->required();
  rec->add_option("--heuristic", heuristic,
                  "gc_baseline|uniq_baseline|gc_enhanced|uniq_enhanced");
  rec->add_option("--kinds", kinds, "landmark kinds mask over DPO");
  rec->add_option("--theta", theta, "return goals within theta of the max");
  rec->add_flag("--strict-islandmark", strict_lm,
                "also remove the fact from I in the deletion test");

  auto* ext = app.add_subcommand("extract-landmarks",
                                 "definite/possible landmarks per goal");
  ext->add_option("--bundle", bundle)->required();
  ext->add_flag("--strict-islandmark", strict_lm);

  auto* gen = app.add_subcommand("gen-incomplete",
                                 "degrade a complete domain");
  gen->add_option("--domain", domain_path)->required();
  gen->add_option("--percent", percent)->check(CLI::Range(0, 100));
  auto* gen_seed = gen->add_option("--seed", seed);
  gen->add_option("--variants", variants)->check(CLI::PositiveNumber);
  gen->add_flag("--mix", mix, "inject extra possible literals");
  gen->add_flag("--strict", strict_cli, "require an explicit --seed");
  gen->add_option("--out", out_path, "output directory")->required();

  auto* smp = app.add_subcommand("sample-obs", "sample an observation subsequence");
  smp->add_option("--plan", plan_path, "file with one action per line")
      ->required();
  smp->add_option("--percent", percent)->check(CLI::Range(0, 100));
  auto* smp_seed = smp->add_option("--seed", seed);
  smp->add_flag("--strict", strict_cli, "require an explicit --seed");
  smp->add_option("--out", out_path, "output file (stdout otherwise)");

  auto* ev = app.add_subcommand("evaluate", "batch-run configs over a dataset");
  ev->add_option("--root", root, "directory tree of problem bundles")
      ->required();
  ev->add_option("--config", configs,
                 "heuristic[:kinds], repeatable (default gc_enhanced:DPO)");
  ev->add_option("--theta", theta);
  ev->add_option("--timeout", timeout, "seconds per problem");
  ev->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  ev->add_option("--csv", csv_path, "also write rows to this CSV file");
  ev->add_option("--roc", roc_path, "write per-problem ROC points CSV");

  auto* val = app.add_subcommand("validate-plan",
                                 "replay a plan under optimistic semantics");
  val->add_option("--bundle", bundle)->required();
  val->add_option("--plan", plan_path, "plan file (defaults to obs.dat)");

  auto* cmp = app.add_subcommand("completions",
                                 "number of completions of a domain");
  cmp->add_option("--domain", domain_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rec->parsed())
      return cmd_recognize(bundle, heuristic, kinds, theta, strict_lm, as_json);
    if (ext->parsed()) return cmd_extract(bundle, strict_lm, as_json);
    if (gen->parsed()) {
      if (strict_cli && gen_seed->count() == 0) {
        std::cerr << "--strict requires an explicit --seed\n";
        return 2;
      }
      return cmd_gen(domain_path, percent, seed, variants, mix, out_path);
    }
    if (smp->parsed()) {
      if (strict_cli && smp_seed->count() == 0) {
        std::cerr << "--strict requires an explicit --seed\n";
        return 2;
      }
      return cmd_sample(plan_path, percent, seed, out_path);
    }
    if (ev->parsed())
      return cmd_evaluate(root, configs, theta, timeout, jobs, as_json,
                          csv_path, roc_path);
    if (val->parsed()) return cmd_validate(bundle, plan_path, as_json);
    if (cmp->parsed()) return cmd_completions(domain_path, as_json);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
