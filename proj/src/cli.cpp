#include "fpsets/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fpsets/classify.hpp"
#include "fpsets/config.hpp"
#include "fpsets/errors.hpp"
#include "fpsets/report.hpp"

namespace fpsets {

void RunConfig::validate() const {
  if (p < 2 || q < 2) throw InvalidInput("p and q must be at least 2");
  if (n < 1 || max_degree < 1) throw InvalidInput("n and max-degree must be positive");
  if (group_cap < 1 || dim_cap < 1 || kappa_budget < 1 || jobs < 1 || support_cap < 1)
    throw InvalidInput("caps must be positive");
  if (format != "text" && format != "json") throw InvalidInput("format must be text or json");
}

FpsOptions RunConfig::fps_options() const {
  FpsOptions o;
  o.support_cap = support_cap;
  o.group_cap = group_cap;
  o.ambient_cap = group_cap;
  o.decomp.dim_cap = dim_cap;
  o.decomp.group_cap = group_cap;
  o.kappa_budget = kappa_budget;
  o.seed = seed;
  o.jobs = jobs;
  return o;
}

namespace {

std::vector<std::string> collect_sets(const std::vector<std::string>& positional,
                                      const std::string& input_path) {
  std::vector<std::string> sets = positional;
  if (!input_path.empty()) {
    std::ifstream in(input_path);
    if (!in) throw InvalidInput("cannot open input file: " + input_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t") != std::string::npos) sets.push_back(line);
    }
  }
  if (sets.empty()) throw InvalidInput("no input sets given");
  return sets;
}

void emit(const Json& j, const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json")
    out << j.dump(2) << "\n";
  else
    out << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fixed point set calculus for conjugacy classes of q-cycle products"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> sets;
  std::string input_path;

  auto add_common = [&](CLI::App* sub, bool with_sets) {
    sub->add_option("--p", cfg.p, "characteristic prime")->envname("FPSET_P");
    sub->add_option("--q", cfg.q, "cycle length")->envname("FPSET_Q");
    sub->add_option("--group-cap", cfg.group_cap, "largest group enumeration allowed")
        ->envname("FPSET_GROUP_CAP");
    sub->add_option("--dim-cap", cfg.dim_cap, "largest module dimension allowed")
        ->envname("FPSET_DIM_CAP");
    sub->add_option("--kappa-budget", cfg.kappa_budget, "wreath powers tested for kappa")
        ->envname("FPSET_KAPPA_BUDGET");
    sub->add_option("--seed", cfg.seed, "seed for the decomposition splits")
        ->envname("FPSET_SEED");
    sub->add_option("--format", cfg.format, "text or json")->envname("FPSET_FORMAT");
    sub->add_option("--jobs", cfg.jobs, "parallel candidate verification")
        ->envname("FPSET_JOBS");
    sub->add_option("--support-cap", cfg.support_cap, "largest support for equivalence search")
        ->envname("FPSET_SUPPORT_CAP");
    if (with_sets) {
      sub->add_option("sets", sets, "permutation sets in cycle notation");
      sub->add_option("--input", input_path, "file with one set per line");
    }
  };

  auto* closure_cmd = app.add_subcommand("closure", "closure of a set");
  add_common(closure_cmd, true);
  auto* factor_cmd = app.add_subcommand("factor", "irreducible factorization");
  add_common(factor_cmd, true);
  auto* isfps_cmd = app.add_subcommand("is-fps", "fixed point set verdict");
  add_common(isfps_cmd, true);
  auto* kappa_cmd = app.add_subcommand("kappa", "wreath power threshold");
  add_common(kappa_cmd, true);

  auto* classify_cmd = app.add_subcommand("classify", "all fixed point sets up to a degree");
  add_common(classify_cmd, false);
  classify_cmd->add_option("--max-degree", cfg.max_degree, "largest support size")
      ->envname("FPSET_MAX_DEGREE");
  auto* oracle_cmd = app.add_subcommand("oracle", "vertex walk over the class module");
  add_common(oracle_cmd, false);
  oracle_cmd->add_option("--n", cfg.n, "number of q-cycles")->envname("FPSET_N");
  auto* verify_cmd = app.add_subcommand("verify", "compare classification with the oracle");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--n", cfg.n, "number of q-cycles")->envname("FPSET_N");

  std::vector<std::string> argv(args);
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "argument error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    cfg.validate();
    FpsOptions opt = cfg.fps_options();

    if (closure_cmd->parsed()) {
      for (const auto& s : collect_sets(sets, input_path)) {
        SqSet X(PermSet::parse(s), cfg.q);
        SqSet c = closure(X, cfg.p, opt);
        Json j;
        j["set"] = X.str();
        j["p"] = cfg.p;
        j["q"] = cfg.q;
        j["closure"] = c.str();
        j["size"] = c.elements().size();
        j["closed"] = c.elements() == X.elements();
        std::ostringstream text;
        text << "closure: " << c.str() << "\n"
             << "size: " << c.elements().size() << "\n"
             << "closed: " << (c.elements() == X.elements() ? "true" : "false") << "\n";
        emit(j, text.str(), cfg, out);
      }
      return kExitOk;
    }

    if (factor_cmd->parsed()) {
      for (const auto& s : collect_sets(sets, input_path)) {
        PermSet X = PermSet::parse(s);
        auto factors = irreducible_factors(X, std::max(cfg.support_cap, X.degree()));
        Json j;
        j["set"] = X.str();
        Json fj = Json::array();
        std::ostringstream text;
        text << "factors: " << factors.size() << "\n";
        for (const auto& f : factors) {
          fj.push_back(f.str());
          text << "  " << f.str() << "\n";
        }
        j["factors"] = fj;
        emit(j, text.str(), cfg, out);
      }
      return kExitOk;
    }

    if (isfps_cmd->parsed()) {
      for (const auto& s : collect_sets(sets, input_path)) {
        SqSet X(PermSet::parse(s), cfg.q);
        FpsReport r = analyze(X, cfg.p, opt);
        emit(to_json(r, cfg.q), text_report(r, cfg.q), cfg, out);
      }
      return kExitOk;
    }

    if (kappa_cmd->parsed()) {
      for (const auto& s : collect_sets(sets, input_path)) {
        SqSet X(PermSet::parse(s), cfg.q);
        KappaResult r = kappa(X, cfg.p, opt);
        Json j;
        j["set"] = X.str();
        j["p"] = cfg.p;
        j["q"] = cfg.q;
        j["kappa"] = to_json(r);
        std::ostringstream text;
        if (r.value)
          text << "kappa: " << *r.value << "\n";
        else
          text << "kappa: > " << r.tested_up_to << " (budget exhausted)\n";
        emit(j, text.str(), cfg, out);
      }
      return kExitOk;
    }

    if (classify_cmd->parsed()) {
      ClassificationReport r = classify_all(cfg.p, cfg.q, cfg.max_degree, opt);
      emit(to_json(r), text_report(r), cfg, out);
      return kExitOk;
    }

    if (oracle_cmd->parsed()) {
      OracleResult r = broue_oracle(cfg.p, cfg.q, cfg.n, opt);
      emit(to_json(r), text_report(r), cfg, out);
      return r.conclusive ? kExitOk : kExitInconclusive;
    }

    if (verify_cmd->parsed()) {
      VerifyResult r = verify_against_oracle(cfg.p, cfg.q, cfg.n, opt);
      emit(to_json(r), text_report(r), cfg, out);
      return r.agree ? kExitOk : kExitMismatch;
    }

    err << "no subcommand selected\n";
    return kExitParse;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const DecompositionInconclusive& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const TheoremViolation& e) {
    err << "theorem violation (implementation bug): " << e.what() << "\n";
    return kExitTheorem;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace fpsets
