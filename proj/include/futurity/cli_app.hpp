#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "futurity/equilibrium.hpp"
#include "futurity/expectation_table.hpp"
#include "futurity/limit_theorems.hpp"
#include "futurity/report.hpp"
#include "futurity/simulate.hpp"
#include "futurity/spec_io.hpp"
#include "futurity/two_armed.hpp"

namespace futurity::cli {

namespace detail {

inline void write_report(const std::string& out_path, std::ostream& fallback,
                         const std::function<void(std::ostream&)>& fn) {
  if (out_path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw SpecParseError("cannot open output file '" + out_path + "'");
  fn(f);
}

inline OutFormat to_format(const std::string& name) {
  return name == "doc" ? OutFormat::doc : OutFormat::csv;
}

// Mean cumulative casino profit per coup across simulated replications, each
// replication on its own jumped stream.
inline std::vector<double> simulated_profit_curve(const TwoArmedSpec& spec,
                                                  const Strategy& strat,
                                                  std::uint64_t seed, long long n,
                                                  int reps) {
  std::vector<double> mean(n, 0.0);
  for (int r = 0; r < reps; ++r) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.stream = r;
    cfg.n_coups = n;
    cfg.record_path = true;
    SimResult res = simulate_two_armed(spec, strat, cfg);
    long long cum = 0;
    for (long long t = 0; t < n; ++t) {
      cum += res.path_payouts[t] + (res.path_awards[t] ? spec.J : 0);
      mean[t] += (static_cast<double>(t + 1) - static_cast<double>(cum)) / reps;
    }
  }
  return mean;
}

}  // namespace futurity::cli::detail

inline int run_cli(std::vector<std::string> args, std::ostream& out_stream,
                   std::ostream& err_stream) {
  CLI::App app{"Exact analysis and simulation of award-cycle slot machines", "futurity"};
  app.require_subcommand(1);

  // Options shared by the machine-analysis commands.
  struct {
    std::string machine = "builtin:futurity1936";
    std::string out;
    std::string format = "csv";
    int dp = 6;
  } common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--machine", common.machine,
                    "machine spec: builtin:futurity1936 or a file path");
    sub->add_option("--out", common.out, "write the report to a file instead of stdout");
    sub->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"csv", "doc"}));
    sub->add_option("--dp", common.dp, "decimal places in csv output")
        ->check(CLI::Range(0, 17));
  };
  auto emit = [&](const std::function<void(std::ostream&)>& fn) {
    detail::write_report(common.out, out_stream, fn);
  };

  // ---- analyze ----
  auto* analyze = app.add_subcommand("analyze", "equilibrium report for a machine");
  add_common(analyze);
  analyze->callback([&] {
    MachineSpec spec = machine_from_uri(common.machine);
    StationaryLaw law = stationary_closed_form(spec);
    ExpectationTable tab = stop_after_payout_table(spec, law);
    std::vector<double> rho = post_payout_distribution(spec, law);
    KvList kv = {
        {"I", spec.I()},
        {"J", spec.J()},
        {"Q", law.Q},
        {"p_award", law.p_award},
        {"mu_star", law.mu_star},
        {"p_star", law.p_star},
        {"stop_after_payout_equilibrium_value", tab.equilibrium_value},
    };
    for (int i = 0; i < spec.I(); ++i) kv.emplace_back("rho_" + std::to_string(i), rho[i]);
    emit([&](std::ostream& os) { emit_kv(kv, detail::to_format(common.format), common.dp, os); });
  });

  // ---- variance ----
  auto* variance = app.add_subcommand("variance", "limit-theorem parameter report");
  add_common(variance);
  variance->callback([&] {
    MachineSpec spec = machine_from_uri(common.machine);
    StationaryLaw law = stationary_closed_form(spec);
    CltParameters params = clt_parameters(spec);
    KvList kv = {
        {"mu_bar", params.mu_bar},
        {"var_S0", params.var_S0},
        {"cov1", params.cov1},
        {"cov_tail", params.cov_tail},
        {"sigma_bar_sq", params.sigma_bar_sq},
        {"sigma_star_sq", params.sigma_star_sq},
        {"mu_star", params.mu_bar / spec.I()},
        {"p_star", law.p_star},
        {"p_award", law.p_award},
    };
    for (int i = 0; i < spec.I(); ++i)
      kv.emplace_back("P_" + std::to_string(i), params.P[i]);
    emit([&](std::ostream& os) { emit_kv(kv, detail::to_format(common.format), common.dp, os); });
  });

  // ---- table3 / table4 ----
  auto* table3 = app.add_subcommand("table3", "stationary distribution of the driving chain");
  add_common(table3);
  table3->callback([&] {
    MachineSpec spec = machine_from_uri(common.machine);
    StationaryLaw law = stationary_closed_form(spec);
    emit([&](std::ostream& os) {
      emit_table3(law, detail::to_format(common.format), common.dp, os);
    });
  });

  auto* table4 = app.add_subcommand("table4", "stop-after-payout expected profit by state");
  add_common(table4);
  table4->callback([&] {
    MachineSpec spec = machine_from_uri(common.machine);
    StationaryLaw law = stationary_closed_form(spec);
    ExpectationTable tab = stop_after_payout_table(spec, law);
    emit([&](std::ostream& os) {
      emit_table4(tab, detail::to_format(common.format), common.dp, os);
    });
  });

  // ---- simulate ----
  struct {
    std::uint64_t seed = 0;
    long long n = 1000000;
    int cam = 0;
    int pointer = 0;
  } sim;
  auto* simulate = app.add_subcommand("simulate", "seeded one-armed session summary");
  add_common(simulate);
  simulate->add_option("--seed", sim.seed, "generator seed");
  simulate->add_option("--n", sim.n, "number of coups")->check(CLI::PositiveNumber);
  simulate->add_option("--cam", sim.cam, "initial cam position");
  simulate->add_option("--pointer", sim.pointer, "initial pointer value");
  simulate->callback([&] {
    MachineSpec spec = machine_from_uri(common.machine);
    SimConfig cfg;
    cfg.seed = sim.seed;
    cfg.n_coups = sim.n;
    cfg.initial_state = {sim.cam, sim.pointer};
    SimResult r = simulate_one_armed(spec, cfg);
    KvList kv = {
        {"n", r.n_coups},
        {"seed", sim.seed},
        {"total_payout", r.total_payout},
        {"mean_payout", static_cast<double>(r.total_payout) / r.n_coups},
        {"hits", r.hits},
        {"hit_frequency", static_cast<double>(r.hits) / r.n_coups},
        {"awards", r.awards},
        {"award_frequency", static_cast<double>(r.awards) / r.n_coups},
        {"final_cam", r.final_state.cam},
        {"final_pointer", r.final_state.pointer},
    };
    emit([&](std::ostream& os) { emit_kv(kv, detail::to_format(common.format), common.dp, os); });
  });

  // ---- parrondo ----
  struct {
    double pA = 0.3;
    double pB = 1.0 / 15.0;
    int J = 10;
    double gamma = 0.5;
    std::string pattern = "AABB";
    int K = 4;
    bool fair = false;
    double muA = -1.0, muB = -1.0;
    bool muA_set = false, muB_set = false;
  } par;
  auto* parrondo = app.add_subcommand("parrondo", "two-armed strategy analysis");
  parrondo->require_subcommand(1);
  auto add_arms = [&](CLI::App* sub) {
    sub->add_option("--pA", par.pA, "arm A hit probability")->required();
    sub->add_option("--pB", par.pB, "arm B hit probability")->required();
    sub->add_option("--J", par.J, "award run length")->required();
    sub->add_option("--out", common.out, "write the report to a file instead of stdout");
    sub->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"csv", "doc"}));
    sub->add_option("--dp", common.dp, "decimal places in csv output")
        ->check(CLI::Range(0, 17));
  };
  auto add_means = [&](CLI::App* sub) {
    sub->add_flag("--fair", par.fair, "make both arms fair");
    sub->add_option("--muA", par.muA, "arm A base mean payout")
        ->each([&](const std::string&) { par.muA_set = true; });
    sub->add_option("--muB", par.muB, "arm B base mean payout")
        ->each([&](const std::string&) { par.muB_set = true; });
  };
  auto resolve_means = [&]() -> std::pair<double, double> {
    if (par.fair) return {fair_mu(par.pA, par.J), fair_mu(par.pB, par.J)};
    if (!par.muA_set || !par.muB_set)
      throw CLI::RequiredError("--fair or both --muA and --muB");
    return {par.muA, par.muB};
  };

  auto* pmix = parrondo->add_subcommand("mixture", "random mixture of the two arms");
  add_arms(pmix);
  add_means(pmix);
  pmix->add_option("--gamma", par.gamma, "chance of playing arm A each coup")
      ->check(CLI::Range(0.0, 1.0));
  pmix->callback([&] {
    auto [muA, muB] = resolve_means();
    double pC = par.gamma * par.pA + (1.0 - par.gamma) * par.pB;
    double muC = par.gamma * muA + (1.0 - par.gamma) * muB;
    double mA = single_arm_mean(par.pA, muA, par.J);
    double mB = single_arm_mean(par.pB, muB, par.J);
    double mC = single_arm_mean(pC, muC, par.J);
    double gap = mC - (par.gamma * mA + (1.0 - par.gamma) * mB);
    KvList kv = {
        {"p_A", par.pA},
        {"p_B", par.pB},
        {"J", par.J},
        {"gamma", par.gamma},
        {"mu_A", muA},
        {"mu_B", muB},
        {"p_award_A", single_arm_award_probability(par.pA, par.J)},
        {"p_award_B", single_arm_award_probability(par.pB, par.J)},
        {"p_award_C", single_arm_award_probability(pC, par.J)},
        {"mu_star_A", mA},
        {"mu_star_B", mB},
        {"mu_star_C", mC},
        {"gap", gap},
        {"casino_win_rate", -gap},
    };
    emit([&](std::ostream& os) { emit_kv(kv, detail::to_format(common.format), common.dp, os); });
  });

  auto* ppat = parrondo->add_subcommand("pattern", "deterministic periodic arm pattern");
  add_arms(ppat);
  add_means(ppat);
  ppat->add_option("--pattern", par.pattern, "arm pattern word over {A,B}");
  ppat->callback([&] {
    auto [muA, muB] = resolve_means();
    validate_pattern_word(par.pattern);
    long long r = std::count(par.pattern.begin(), par.pattern.end(), 'A');
    long long s = static_cast<long long>(par.pattern.size()) - r;
    double pD = pattern_award_probability(par.pA, par.pB, par.J, par.pattern);
    double mu_base = (r * muA + s * muB) / static_cast<double>(par.pattern.size());
    double mD = mu_base + par.J * pD;
    double blend = (r * single_arm_mean(par.pA, muA, par.J) +
                    s * single_arm_mean(par.pB, muB, par.J)) /
                   static_cast<double>(par.pattern.size());
    KvList kv = {
        {"p_A", par.pA},    {"p_B", par.pB},
        {"J", par.J},       {"pattern", par.pattern},
        {"r", r},           {"s", s},
        {"mu_A", muA},      {"mu_B", muB},
        {"p_award_D", pD},  {"mu_star_D", mD},
        {"gap", mD - blend}, {"casino_win_rate", blend - mD},
    };
    // Cross-check through the generalized machine when the arms admit
    // integer-payout laws with these means.
    try {
      TwoArmedSpec spec2 = TwoArmedSpec::make(arm_distribution(par.pA, muA),
                                              arm_distribution(par.pB, muB), par.J);
      kv.emplace_back("p_award_D_machine",
                      pattern_award_probability_via_machine(spec2, par.pattern));
    } catch (const BadDist&) {
      kv.emplace_back("p_award_D_machine", nullptr);
    }
    emit([&](std::ostream& os) { emit_kv(kv, detail::to_format(common.format), common.dp, os); });
  });

  auto* pptr = parrondo->add_subcommand("pointer", "loss-counter threshold strategy (fair arms)");
  add_arms(pptr);
  pptr->add_option("--K", par.K, "play arm A while the counter is below K")->required();
  pptr->callback([&] {
    PointerStrategyReport rep = pointer_strategy_analysis(par.pA, par.pB, par.J, par.K);
    KvList kv = {
        {"p_A", par.pA},
        {"p_B", par.pB},
        {"J", par.J},
        {"K", par.K},
        {"mu_star", rep.mu_star},
        {"player_edge", rep.player_edge},
        {"parrondo_effect", rep.parrondo_effect},
    };
    for (int j = 0; j < rep.J; ++j)
      kv.emplace_back("pi1_" + std::to_string(j), rep.pi1[j]);
    emit([&](std::ostream& os) { emit_kv(kv, detail::to_format(common.format), common.dp, os); });
  });

  // ---- conjecture ----
  struct {
    std::vector<int> Js = {2, 3, 4, 5, 6, 10};
    std::vector<std::string> rs = {"1x1", "1x2", "2x1", "1x3", "3x1", "2x2", "2x3", "3x2", "3x3"};
    double grid_min = 0.05, grid_max = 0.95, grid_step = 0.05;
    int threads = 1;
  } conj;
  auto* conjecture = app.add_subcommand("conjecture", "pattern-gap sweep over the conjectured conditions");
  conjecture->add_option("--Js", conj.Js, "award run lengths")->delimiter(',');
  conjecture->add_option("--rs", conj.rs, "pattern shapes as RxS")->delimiter(',');
  conjecture->add_option("--grid-min", conj.grid_min, "first grid value");
  conjecture->add_option("--grid-max", conj.grid_max, "last grid value");
  conjecture->add_option("--grid-step", conj.grid_step, "grid step");
  conjecture->add_option("--threads", conj.threads, "worker threads")->check(CLI::PositiveNumber);
  conjecture->add_option("--out", common.out, "write the report to a file instead of stdout");
  conjecture->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"csv", "doc"}));
  conjecture->callback([&] {
    std::vector<std::pair<int, int>> rs_set;
    for (const std::string& token : conj.rs) {
      auto x = token.find('x');
      if (x == std::string::npos)
        throw BadPattern("pattern shape must look like 2x3, got '" + token + "'");
      rs_set.emplace_back(std::stoi(token.substr(0, x)), std::stoi(token.substr(x + 1)));
    }
    std::vector<double> grid;
    for (double v = conj.grid_min; v <= conj.grid_max + 1e-12; v += conj.grid_step)
      grid.push_back(v);
    SweepReport rep = conjecture_sweep(conj.Js, rs_set, grid, kCondAll, conj.threads);
    emit([&](std::ostream& os) { emit_sweep(rep, detail::to_format(common.format), os); });
  });

  // ---- fig1 ----
  struct {
    double pA = 0.3;
    double pB = 1.0 / 15.0;
    int J = 10;
    double gamma = 0.5;
    std::string pattern = "AABB";
    int K = 4;
    long long n = 500;
    bool overlay = false;
    std::uint64_t seed = 0;
    int reps = 100;
  } fig;
  auto* fig1 = app.add_subcommand(
      "fig1", "expected casino cumulative profit curves by direct calculation");
  fig1->add_option("--pA", fig.pA, "arm A hit probability");
  fig1->add_option("--pB", fig.pB, "arm B hit probability");
  fig1->add_option("--J", fig.J, "award run length");
  fig1->add_option("--gamma", fig.gamma, "mixture weight on arm A")->check(CLI::Range(0.0, 1.0));
  fig1->add_option("--pattern", fig.pattern, "pattern word over {A,B}");
  fig1->add_option("--K", fig.K, "pointer-strategy threshold");
  fig1->add_option("--n", fig.n, "number of coups")->check(CLI::PositiveNumber);
  fig1->add_flag("--overlay", fig.overlay, "add simulated replication means");
  fig1->add_option("--seed", fig.seed, "generator seed for the overlay");
  fig1->add_option("--reps", fig.reps, "overlay replications")->check(CLI::PositiveNumber);
  fig1->add_option("--out", common.out, "write the report to a file instead of stdout");
  fig1->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"csv", "doc"}));
  fig1->add_option("--dp", common.dp, "decimal places in csv output")->check(CLI::Range(0, 17));
  fig1->callback([&] {
    TwoArmedSpec spec2 = fair_two_armed(fig.pA, fig.pB, fig.J);
    std::vector<std::pair<std::string, Strategy>> roster = {
        {"A", SingleArm{'A'}},
        {"B", SingleArm{'B'}},
        {"mixture", Mixture{fig.gamma}},
        {"pattern_" + fig.pattern, PatternStrategy{fig.pattern}},
        {"pointer_" + std::to_string(fig.K), PointerThreshold{fig.K}},
    };
    std::vector<std::pair<std::string, std::vector<double>>> curves;
    for (const auto& [label, strat] : roster)
      curves.emplace_back(label,
                          expected_casino_profit(spec2, strat, static_cast<int>(fig.n)));
    if (fig.overlay)
      for (const auto& [label, strat] : roster)
        curves.emplace_back("sim:" + label,
                            detail::simulated_profit_curve(spec2, strat, fig.seed,
                                                           fig.n, fig.reps));
    emit([&](std::ostream& os) {
      emit_curves(curves, detail::to_format(common.format), common.dp, os);
    });
  });

  // ---- spec-dump ----
  bool dump_reels = false;
  auto* spec_dump = app.add_subcommand("spec-dump", "emit a machine spec document");
  add_common(spec_dump);
  spec_dump->add_flag("--reels", dump_reels, "dump the reel-level document (builtin only)");
  spec_dump->callback([&] {
    if (dump_reels) {
      if (common.machine != "builtin:futurity1936")
        throw SpecParseError("--reels is only available for the builtin machine");
      emit([&](std::ostream& os) { os << dump_reel_machine(futurity_reels()); });
    } else {
      MachineSpec spec = machine_from_uri(common.machine);
      emit([&](std::ostream& os) { os << dump_machine_spec(spec); });
    }
  });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out_stream << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out_stream << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err_stream << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err_stream << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err_stream << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace futurity::cli
