#include "dcrn/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "dcrn/analysis.hpp"
#include "dcrn/dde.hpp"
#include "dcrn/equilibrium.hpp"
#include "dcrn/errors.hpp"
#include "dcrn/format.hpp"
#include "dcrn/functionals.hpp"
#include "dcrn/io.hpp"
#include "dcrn/network.hpp"
#include "dcrn/structure.hpp"

namespace dcrn::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Options {
  std::string net_file;
  std::string out_dir;
  std::vector<std::string> histories;
  std::optional<double> h;
  std::optional<double> t_end;
  std::optional<double> tol;
  std::string n_schedule = "8,32,128";
  int stages = 8;
  int samples = 0;
  std::uint64_t seed = 1;
  std::string suite;
  double eps_eq = 1e-4;
  double eps_bd = 1e-6;
};

/// Carries an exit code out of a command.
struct Exit {
  int code;
  std::string message;
};

ReactionNetwork read_network(const Options& opt) {
  try {
    return load_network(opt.net_file);
  } catch (const ParseError& e) {
    throw Exit{kParseError, opt.net_file + ": " + e.what()};
  } catch (const std::invalid_argument& e) {
    throw Exit{kParseError, e.what()};
  }
}

std::vector<HistoryFunction> read_histories(const Options& opt, const ReactionNetwork& net) {
  std::vector<HistoryFunction> out;
  for (const auto& spec : opt.histories) {
    try {
      HistoryFunction theta = parse_history_spec(spec, net.num_species(), ".");
      theta.validate(net.num_species(), net.max_delay());
      out.push_back(std::move(theta));
    } catch (const std::invalid_argument& e) {
      throw Exit{kUsage, std::string("bad --history '") + spec + "': " + e.what()};
    }
  }
  return out;
}

HistoryFunction single_history(const Options& opt, const ReactionNetwork& net) {
  auto all = read_histories(opt, net);
  if (all.empty()) throw Exit{kUsage, "this command needs --history"};
  return all.front();
}

std::vector<int> schedule(const Options& opt) {
  try {
    return parse_int_list(opt.n_schedule);
  } catch (const std::invalid_argument& e) {
    throw Exit{kUsage, e.what()};
  }
}

SimConfig sim_config(const Options& opt, double default_t_end) {
  SimConfig cfg;
  cfg.h = opt.h.value_or(0.01);
  cfg.t_end = opt.t_end.value_or(default_t_end);
  return cfg;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Exit{kUsage, "cannot create output directory '" + dir + "'"};
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::ofstream f(fs::path(dir) / name, std::ios::binary);
  if (!f) throw Exit{kUsage, "cannot write " + (fs::path(dir) / name).string()};
  f << content;
}

std::string basis_text(const StoichInfo& st) {
  if (st.num_conservation_laws() == 0) return "(none)";
  std::string out;
  for (int j = 0; j < st.num_conservation_laws(); ++j)
    out += (j ? "; " : "") + format_vector(Eigen::VectorXi(st.ortho_basis.col(j)));
  return out;
}

std::string key_text(const ClassKey& key) { return key.size() ? format_vector(key.values) : "[]"; }

int cmd_analyze(const Options& opt, std::ostream& out) {
  const ReactionNetwork net = read_network(opt);
  const StoichInfo st = analyze_structure(net);
  Report r;
  r.add("species", net.num_species());
  r.add("reactions", net.num_reactions());
  r.add("max delay", net.max_delay());
  r.add("rank", st.rank);
  r.add("S⊥ basis", basis_text(st));
  r.add("complexes", static_cast<int>(st.complexes.size()));
  r.add("linkage classes", static_cast<int>(st.linkage.size()));
  r.add("deficiency", st.deficiency);
  r.add("weakly reversible", st.weakly_reversible);
  try {
    const EquilibriumResult eq = find_complex_balanced_equilibrium(net, st);
    r.add("complex balanced", true);
    r.add("equilibrium", format_vector(eq.point));
    r.add("balance residual", eq.residual);
    r.add("deficiency zero certificate", eq.deficiency_zero_certificate);
  } catch (const NotWeaklyReversible& e) {
    r.add("complex balanced", false);
    r.add("reason", e.what());
  } catch (const NotComplexBalanced& e) {
    r.add("complex balanced", false);
    r.add("reason", e.what());
  }
  r.write(out);
  return kOk;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
  const ReactionNetwork net = read_network(opt);
  const StoichInfo st = analyze_structure(net);
  const HistoryFunction theta = single_history(opt, net);
  const SimConfig cfg = sim_config(opt, 100.0);

  std::optional<Trajectory> traj;
  try {
    traj.emplace(simulate(net, theta, cfg));
  } catch (const IntegrationFailure& e) {
    throw Exit{kIntegrationFailure, e.what()};
  } catch (const std::invalid_argument& e) {
    throw Exit{kUsage, e.what()};
  }

  Report r;
  r.add("history", theta.describe());
  r.add("h", cfg.h);
  r.add("t_end", cfg.t_end);
  r.add("samples", static_cast<std::size_t>(traj->samples()));
  r.add("clamp count", traj->clamp_count());
  r.add("final state", format_vector(Eigen::VectorXd(traj->states().col(traj->samples() - 1))));

  const Eigen::MatrixXd C = class_key_series(*traj, st);
  const ClassKey key{C.row(0).transpose()};
  r.add("class key", key_text(key));
  r.add("conservation drift", conservation_drift(*traj, st));

  std::optional<Eigen::VectorXd> V;
  std::string verdict = "Undetermined";
  ordered_json verdict_json;
  try {
    const EquilibriumResult eq = find_complex_balanced_equilibrium(net, st);
    const Eigen::VectorXd x_class = in_class_equilibrium(net, st, eq.point, key).point;
    V = lyapunov_series(*traj, x_class);
    const OmegaLimitVerdict v = classify_omega_limit(*traj, x_class, net.max_delay(), {opt.eps_eq, opt.eps_bd});
    verdict = to_string(v.kind);
    r.add("predicted equilibrium", format_vector(x_class));
    r.add("V(t_end)", (*V)[V->size() - 1]);
    r.add("V max increase", max_increase(*V));
    r.add("verdict", verdict);
    r.add("distance to equilibrium", v.distance);
    r.add("window min", format_vector(v.window_min));
    r.add("window max", format_vector(v.window_max));
    if (!v.vanished.empty()) {
      std::string names;
      for (int i : v.vanished) names += (names.empty() ? "" : ",") + net.species()[i].name;
      r.add("vanished species", names);
    }
    verdict_json = {{"kind", verdict}, {"distance", v.distance}, {"lyapunov", v.lyapunov}};
  } catch (const AnalysisError& e) {
    r.add("verdict", verdict);
    r.add("reason", e.what());
  }
  r.write(out);

  if (!opt.out_dir.empty()) {
    ensure_dir(opt.out_dir);
    std::ostringstream csv;
    write_trajectory_csv(csv, *traj, V ? &*V : nullptr, C.cols() ? &C : nullptr);
    write_file(opt.out_dir, "trajectory.csv", csv.str());
    for (int i = 0; i < net.num_species(); ++i) {
      std::ostringstream one;
      write_species_csv(one, *traj, i);
      write_file(opt.out_dir, "species_" + net.species()[i].name + ".csv", one.str());
    }
    ordered_json manifest = {
        {"command", "simulate"},
        {"network", opt.net_file},
        {"network_hash", hex(network_hash(net))},
        {"history", theta.describe()},
        {"config", {{"h", cfg.h}, {"t_end", cfg.t_end}, {"neg_clamp", cfg.neg_clamp}}},
        {"thresholds", {{"eps_eq", opt.eps_eq}, {"eps_bd", opt.eps_bd}, {"window", net.max_delay()}}},
        {"clamp_count", traj->clamp_count()},
        {"verdict", verdict_json.is_null() ? ordered_json{{"kind", verdict}} : verdict_json},
    };
    write_file(opt.out_dir, "manifest.json", manifest.dump(2) + "\n");
  }
  return kOk;
}

int cmd_equilibrium(const Options& opt, std::ostream& out) {
  const ReactionNetwork net = read_network(opt);
  const StoichInfo st = analyze_structure(net);
  Report r;
  try {
    const EquilibriumResult eq = find_complex_balanced_equilibrium(net, st);
    r.add("representative", format_vector(eq.point));
    r.add("balance residual", eq.residual);
    r.add("log-linear residual", eq.log_residual);
    r.add("deficiency zero certificate", eq.deficiency_zero_certificate);
    r.add("representative class key", key_text(eq.key));
    const auto histories = read_histories(opt, net);
    for (std::size_t i = 0; i < histories.size(); ++i) {
      const std::string tag = histories.size() > 1 ? " " + std::to_string(i + 1) : "";
      const ClassKey key = class_key(net, st, SegmentView::of(histories[i], opt.h.value_or(1e-3)));
      InClassOptions io;
      if (opt.tol) io.tol = *opt.tol;
      const InClassResult res = in_class_equilibrium(net, st, eq.point, key, io);
      r.add("class key" + tag, key_text(key));
      r.add("in-class equilibrium" + tag, format_vector(res.point));
      r.add("newton iterations" + tag, res.iterations);
      r.add("newton residual" + tag, res.residual);
      r.add("in-class balance residual" + tag, check_complex_balance(net, res.point).residual);
    }
  } catch (const AnalysisError& e) {
    r.write(out);
    throw Exit{kAnalysisFailure, e.what()};
  }
  r.write(out);
  return kOk;
}

int cmd_chain_expand(const Options& opt, std::ostream& out) {
  const ReactionNetwork net = read_network(opt);
  try {
    const ReactionNetwork chain = expand_chain(net, opt.stages);
    out << to_text(chain);
    const auto histories = read_histories(opt, net);
    if (!histories.empty())
      out << "# initial state: " << format_vector(chain_initial_state(net, histories.front(), opt.stages)) << '\n';
    if (!opt.out_dir.empty()) {
      ensure_dir(opt.out_dir);
      write_file(opt.out_dir, "chain.net", to_text(chain));
    }
  } catch (const std::invalid_argument& e) {
    throw Exit{kAnalysisFailure, e.what()};
  }
  return kOk;
}

int verify_classes(const Options& opt, const ReactionNetwork& net, const StoichInfo& st, std::ostream& out) {
  auto samples = read_histories(opt, net);
  std::mt19937_64 rng(opt.seed);
  for (int i = 0; i < opt.samples; ++i) samples.push_back(random_history(net.num_species(), net.max_delay(), rng));
  if (samples.empty()) throw Exit{kUsage, "verify classes needs --history or --samples"};
  const ClassCountReport rep = verify_class_count(net, st, samples, opt.h.value_or(1e-3), opt.tol.value_or(1e-9));
  Report r;
  r.add("samples", samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    r.add("key " + std::to_string(i + 1), key_text(rep.keys[i]) + " -> group " + std::to_string(rep.key_group[i] + 1));
  r.add("distinct delayed classes", rep.distinct_keys);
  r.add("distinct projected classes", rep.distinct_projections);
  r.add("projection equals key", rep.projections_match_keys);
  r.add("injective", rep.injective);
  r.add("result", rep.pass ? "pass" : "fail");
  r.write(out);
  if (!rep.pass) {
    const char* why = !rep.projections_match_keys ? "projection differs from class key"
                      : !rep.injective           ? "distinct classes share a projection"
                                                 : "class counts differ";
    throw Exit{kVerificationFailed, why};
  }
  return kOk;
}

int verify_existence(const Options& opt, const ReactionNetwork& net, const StoichInfo& st, std::ostream& out) {
  const HistoryFunction theta = single_history(opt, net);
  WrExistenceOptions wo;
  wo.schedule = schedule(opt);
  wo.h = opt.h.value_or(wo.h);
  wo.t_end = opt.t_end.value_or(wo.t_end);
  if (opt.tol) wo.rhs_tol = *opt.tol;
  WrExistenceReport rep;
  try {
    rep = verify_wr_existence(net, st, theta, wo);
  } catch (const AnalysisError& e) {
    throw Exit{kAnalysisFailure, e.what()};
  } catch (const std::invalid_argument& e) {
    throw Exit{kAnalysisFailure, e.what()};
  } catch (const IntegrationFailure& e) {
    throw Exit{kIntegrationFailure, e.what()};
  }
  Report r;
  r.add("class key", key_text(rep.theta_key));
  if (rep.in_class) r.add("in-class equilibrium", format_vector(*rep.in_class));
  std::ostringstream csv;
  csv << "N,x_bar,rhs_norm,key_mismatch,change,in_class_distance\n";
  for (const auto& row : rep.rows) {
    const std::string tag = "N=" + std::to_string(row.stages);
    r.add(tag + " x_bar", format_vector(row.x_bar));
    r.add(tag + " |rhs|", row.rhs_norm);
    r.add(tag + " key mismatch", row.key_mismatch);
    if (rep.in_class) r.add(tag + " distance to in-class equilibrium", row.in_class_distance);
    csv << row.stages << ',' << '"' << format_vector(row.x_bar) << '"' << ',' << format_double(row.rhs_norm) << ','
        << format_double(row.key_mismatch) << ',' << format_double(row.change) << ','
        << format_double(row.in_class_distance) << '\n';
  }
  r.add("equilibrium of delayed field", rep.rhs_ok ? "pass" : "fail");
  r.add("class key trend", rep.key_trend_ok ? "pass" : "fail");
  r.add("complex balance", rep.balance_ok ? "pass" : "fail");
  r.add("result", rep.pass ? "pass" : "fail");
  r.write(out);
  if (!opt.out_dir.empty()) {
    ensure_dir(opt.out_dir);
    write_file(opt.out_dir, "existence.csv", csv.str());
  }
  if (!rep.pass)
    throw Exit{kVerificationFailed, !rep.rhs_ok         ? "chain limit is not an equilibrium of the delayed field"
                                    : !rep.key_trend_ok ? "class key mismatch does not shrink with N"
                                                        : "chain limit is not complex balanced"};
  return kOk;
}

int verify_chain(const Options& opt, const ReactionNetwork& net, std::ostream& out) {
  const HistoryFunction theta = single_history(opt, net);
  const SimConfig cfg = sim_config(opt, 20.0);
  ChainStudyReport rep;
  try {
    rep = chain_convergence_study(net, theta, schedule(opt), cfg);
  } catch (const IntegrationFailure& e) {
    throw Exit{kIntegrationFailure, e.what()};
  } catch (const std::invalid_argument& e) {
    throw Exit{kAnalysisFailure, e.what()};
  }
  Report r;
  std::ostringstream csv;
  csv << "N,error\n";
  for (const auto& row : rep.rows) {
    r.add("e_" + std::to_string(row.stages), row.error);
    csv << row.stages << ',' << format_double(row.error) << '\n';
  }
  r.add("monotone", rep.monotone ? "pass" : "fail");
  r.add("last below half of first", rep.halved ? "pass" : "fail");
  r.write(out);
  if (!opt.out_dir.empty()) {
    ensure_dir(opt.out_dir);
    write_file(opt.out_dir, "chain_errors.csv", csv.str());
  }
  if (!rep.monotone) throw Exit{kVerificationFailed, "chain error is not monotone in N"};
  if (!rep.halved) throw Exit{kVerificationFailed, "chain error did not halve over the schedule"};
  return kOk;
}

int verify_lyapunov(const Options& opt, const ReactionNetwork& net, const StoichInfo& st, std::ostream& out) {
  const auto histories = read_histories(opt, net);
  if (histories.empty()) throw Exit{kUsage, "verify lyapunov needs at least one --history"};
  const double slack = opt.tol.value_or(1e-8);
  const SimConfig cfg = sim_config(opt, 100.0);
  EquilibriumResult eq;
  try {
    eq = find_complex_balanced_equilibrium(net, st);
  } catch (const AnalysisError& e) {
    throw Exit{kAnalysisFailure, e.what()};
  }
  Report r;
  double worst = 0.0;
  bool dichotomy = true;
  std::size_t clamps = 0;
  for (std::size_t i = 0; i < histories.size(); ++i) {
    LyapunovRun run;
    try {
      run = lyapunov_run(net, st, eq.point, histories[i], cfg, {opt.eps_eq, opt.eps_bd});
    } catch (const IntegrationFailure& e) {
      throw Exit{kIntegrationFailure, e.what()};
    }
    const std::string tag = "run " + std::to_string(i + 1);
    r.add(tag + " history", histories[i].describe());
    r.add(tag + " V(0)", run.V[0]);
    r.add(tag + " V(t_end)", run.V[run.V.size() - 1]);
    r.add(tag + " max increase", run.max_increase);
    r.add(tag + " verdict", to_string(run.verdict.kind));
    worst = std::max(worst, run.max_increase);
    dichotomy = dichotomy && !dichotomy_violated(run.midpoint_verdict, run.verdict);
    clamps += run.clamps;
  }
  const bool monotone = worst <= slack;
  r.add("V non-increasing", std::string(monotone ? "pass" : "fail") + " (max positive increment " +
                                format_double(worst, 6) + " ≤ " + format_double(slack) + ")");
  r.add("dichotomy", dichotomy ? "pass" : "fail");
  r.add("clamp count", clamps);
  r.write(out);
  if (!monotone) throw Exit{kVerificationFailed, "V increased along a trajectory"};
  if (!dichotomy) throw Exit{kVerificationFailed, "trajectory switched between positive and boundary limits"};
  return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const ReactionNetwork net = read_network(opt);
  const StoichInfo st = analyze_structure(net);
  if (opt.suite == "classes") return verify_classes(opt, net, st, out);
  if (opt.suite == "existence") return verify_existence(opt, net, st, out);
  if (opt.suite == "chain") return verify_chain(opt, net, out);
  if (opt.suite == "lyapunov") return verify_lyapunov(opt, net, st, out);
  throw Exit{kUsage, "unknown suite '" + opt.suite + "' (classes, existence, chain, lyapunov)"};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delayed mass-action reaction network toolkit"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--net", opt.net_file, "network file")->required();
    cmd->add_option("--out", opt.out_dir, "output directory");
  };
  auto sim_flags = [&](CLI::App* cmd) {
    cmd->add_option("--h", opt.h, "integration step");
    cmd->add_option("--t-end", opt.t_end, "final time");
    cmd->add_option("--history", opt.histories, "per-species history spec (repeatable)");
  };

  auto* analyze = app.add_subcommand("analyze", "structure report and complex balance");
  common(analyze);

  auto* sim = app.add_subcommand("simulate", "integrate from an initial history");
  common(sim);
  sim_flags(sim);
  sim->add_option("--eps-eq", opt.eps_eq, "distance threshold for a positive limit");
  sim->add_option("--eps-bd", opt.eps_bd, "threshold for a vanished species");

  auto* equil = app.add_subcommand("equilibrium", "complex-balanced and in-class equilibria");
  common(equil);
  equil->add_option("--history", opt.histories, "history whose class to solve for (repeatable)");
  equil->add_option("--tol", opt.tol, "Newton residual tolerance");
  equil->add_option("--h", opt.h, "quadrature panel for the class key");

  auto* chain = app.add_subcommand("chain-expand", "replace constant delays by reaction chains");
  common(chain);
  chain->add_option("--n", opt.stages, "chain length N")->check(CLI::PositiveNumber);
  chain->add_option("--history", opt.histories, "history to seed the chain state");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", opt.suite, "classes | existence | chain | lyapunov")->required();
  common(verify);
  sim_flags(verify);
  verify->add_option("--n-schedule", opt.n_schedule, "chain lengths, e.g. 8,32,128");
  verify->add_option("--tol", opt.tol, "suite tolerance");
  verify->add_option("--samples", opt.samples, "random histories to add (classes)");
  verify->add_option("--seed", opt.seed, "seed for random histories");
  verify->add_option("--eps-eq", opt.eps_eq, "distance threshold for a positive limit");
  verify->add_option("--eps-bd", opt.eps_bd, "threshold for a vanished species");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(opt, out);
    if (sim->parsed()) return cmd_simulate(opt, out);
    if (equil->parsed()) return cmd_equilibrium(opt, out);
    if (chain->parsed()) return cmd_chain_expand(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
  } catch (const Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const AnalysisError& e) {
    err << "error: " << e.what() << '\n';
    return kAnalysisFailure;
  } catch (const IntegrationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kIntegrationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace dcrn::cli
