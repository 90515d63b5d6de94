#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rhg/rhg.hpp"

namespace rhg::cli {

enum ExitCode { ok = 0, failure = 1, usage = 2, io = 3 };

inline double parse_real(const std::string& text, const char* flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw DomainError(std::string(flag) + ": not a finite number: '" + text + "'");
  return v;
}

inline std::uint64_t parse_count(const std::string& text, const char* flag) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError(std::string(flag) + ": not a non-negative integer: '" + text + "'");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw DomainError(std::string(flag) + ": out of range: '" + text + "'");
  }
}

struct ModelFlags {
  std::string alpha, nu, n;

  void add_to(CLI::App* app) {
    app->add_option("--alpha", alpha, "curvature parameter alpha > 0")->required();
    app->add_option("--nu", nu, "density parameter nu > 0")->required();
    app->add_option("--n", n, "number of nodes (n > nu)")->required();
  }

  ModelParams params() const {
    return ModelParams(parse_real(alpha, "--alpha"), parse_real(nu, "--nu"),
                       parse_count(n, "--n"));
  }
};

struct GenerateFlags {
  ModelFlags model;
  std::string seed = "0";
  bool poisson = false;
  std::string out = "rhg";
  std::string builder = "fast";
};

inline int cmd_generate(const GenerateFlags& f, std::ostream& out) {
  const ModelParams params = f.model.params();
  const std::uint64_t seed = parse_count(f.seed, "--seed");
  if (f.builder != "fast" && f.builder != "naive")
    throw DomainError("--builder: expected fast or naive");
  const BuildOptions options{f.builder == "naive" ? EdgeBuilder::naive : EdgeBuilder::fast, true};
  const RngSeed rs{seed, 0};
  const GraphSample g =
      f.poisson ? sample_graph_poisson(params, rs, options) : sample_graph(params, rs, options);

  std::string header = graph_header(f.model.alpha, f.model.nu, f.model.n, f.seed);
  if (f.poisson) header += " poisson=1 n_realized=" + std::to_string(g.n_realized);
  write_file_atomic(f.out + ".nodes", [&](std::ostream& s) { write_nodes(s, header, g.points); });
  write_file_atomic(f.out + ".edges", [&](std::ostream& s) { write_edge_list(s, header, g.edges); });

  std::uint64_t max_degree = 0;
  for (auto d : g.degrees) max_degree = std::max<std::uint64_t>(max_degree, d);
  const double mean = g.n_realized == 0 ? 0.0
                                        : 2.0 * static_cast<double>(g.edges.size()) /
                                              static_cast<double>(g.n_realized);
  out << "nodes " << g.n_realized << "\nedges " << g.edges.size() << "\nmax_degree "
      << max_degree << "\nmean_degree " << format_double(mean) << '\n';
  return ok;
}

struct VolumeFlags {
  ModelFlags model;
  std::string r;
  std::string x;
  std::string mode = "exact";
};

inline const std::vector<std::string> volume_modes = {
    "exact", "supercritical", "small-radius", "valpha", "derivative",
    "origin",  "origin-small",  "origin-large", "annulus"};

/// Prints an exact value next to the requested approximation.
inline int cmd_volume(const VolumeFlags& f, std::ostream& out) {
  const ModelParams params = f.model.params();
  const double r = parse_real(f.r, "--r");
  double exact = 0.0;
  std::optional<double> approx;
  if (f.mode == "annulus") {
    if (f.x.empty()) throw DomainError("--x is required for mode annulus");
    exact = mu_ball_minus_origin_ball(r, parse_real(f.x, "--x"), params);
  } else if (f.mode == "derivative") {
    exact = mu_ball_radial_derivative(r, params);
    approx = -0.5 * c_alpha(params.alpha()) * std::exp(-0.5 * r);
  } else if (f.mode == "origin" || f.mode == "origin-small" || f.mode == "origin-large") {
    exact = mu_ball_origin(r, params);
    if (f.mode == "origin-small") approx = mu_origin_approx(r, params, OriginApprox::small);
    if (f.mode == "origin-large") approx = mu_origin_approx(r, params, OriginApprox::large);
  } else {
    exact = mu_ball(r, params);
    if (f.mode == "supercritical")
      approx = mu_ball_approx(r, params, BallApprox::supercritical);
    else if (f.mode == "small-radius")
      approx = mu_ball_approx(r, params, BallApprox::small_radius);
    else if (f.mode == "valpha")
      approx = mu_ball_approx(r, params, BallApprox::critical_limit);
    else if (f.mode != "exact")
      throw DomainError("--mode: unknown mode '" + f.mode + "'");
  }
  out << "exact " << format_double(exact) << '\n';
  if (approx) {
    out << "approx " << format_double(*approx) << '\n';
    out << "rel_diff " << format_double(exact == 0.0 ? *approx - exact : (*approx - exact) / exact)
        << '\n';
  }
  return ok;
}

struct LimitsFlags {
  std::string alpha, nu;
  std::string n;
  std::string what;
  std::string at;
  std::string a, b;
};

inline const std::vector<std::string> limits_quantities = {
    "regime",       "c-alpha",      "radius-intensity", "min-radius-cdf", "degree-intensity",
    "maxdeg-cdf",   "normalize-max", "beta",            "k-n",            "misorder-bound",
    "degree-map"};

inline int cmd_limits(const LimitsFlags& f, std::ostream& out) {
  const double alpha = parse_real(f.alpha, "--alpha");
  const double nu = f.nu.empty() ? 1.0 : parse_real(f.nu, "--nu");
  if (!(alpha > 0.0)) throw DomainError("--alpha must be positive");
  const Regime regime = regime_of(alpha);
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw DomainError(std::string(flag) + " is required for this quantity");
    return v;
  };
  auto at = [&] { return parse_real(need(f.at, "--at"), "--at"); };
  double value = 0.0;
  if (f.what == "regime") {
    out << to_string(regime) << '\n';
    return ok;
  } else if (f.what == "c-alpha") {
    value = c_alpha(alpha);
  } else if (f.what == "radius-intensity") {
    value = radius_intensity(regime, at(), alpha, nu);
  } else if (f.what == "min-radius-cdf") {
    value = min_radius_limit_cdf(regime, at(), alpha, nu);
  } else if (f.what == "degree-intensity") {
    value = degree_intensity(regime, at(), alpha, nu);
  } else if (f.what == "maxdeg-cdf") {
    value = maxdeg_limit_cdf(regime, at(), alpha, nu);
  } else if (f.what == "normalize-max") {
    const ModelParams params(alpha, nu, parse_count(need(f.n, "--n"), "--n"));
    value = normalize_max_degree(regime, parse_count(need(f.at, "--at"), "--at"), params);
  } else if (f.what == "beta") {
    value = ordering_exponent(alpha);
  } else if (f.what == "k-n") {
    out << ordering_rank(parse_count(need(f.n, "--n"), "--n"), alpha) << '\n';
    return ok;
  } else if (f.what == "misorder-bound") {
    value = misorder_bound(parse_count(need(f.n, "--n"), "--n"), parse_real(need(f.a, "--a"), "--a"),
                           parse_real(need(f.b, "--b"), "--b"));
  } else if (f.what == "degree-map") {
    value = degree_map(regime, at(), alpha, nu);
  } else {
    throw DomainError("--what: unknown quantity '" + f.what + "'");
  }
  out << format_double(value) << '\n';
  return ok;
}

struct CampaignFlags {
  ModelFlags model;
  std::string trials = "100";
  std::string k = "3";
  std::string seed = "0";
  std::string vn = "log";
  std::string threads = "1";
  std::string mode = "full";
  bool poisson = false;
  std::string csv = "campaign.csv";
  std::string json = "campaign.json";
};

inline CampaignConfig campaign_config(const CampaignFlags& f) {
  if (f.mode != "full" && f.mode != "radii") throw DomainError("--mode: expected full or radii");
  const auto threads = parse_count(f.threads, "--threads");
  if (threads < 1 || threads > 1024) throw DomainError("--threads must lie in [1, 1024]");
  CampaignConfig cfg{f.model.params()};
  cfg.trials = parse_count(f.trials, "--trials");
  cfg.k = parse_count(f.k, "--k");
  cfg.v_n_policy = f.vn;
  cfg.poissonized = f.poisson;
  cfg.master_seed = parse_count(f.seed, "--seed");
  cfg.threads = static_cast<unsigned>(threads);
  cfg.mode = f.mode == "radii" ? CampaignMode::radii_only : CampaignMode::full;
  detail::check_campaign(cfg);
  return cfg;
}

inline nlohmann::ordered_json campaign_flags_json(const CampaignFlags& f) {
  nlohmann::ordered_json j;
  j["alpha"] = f.model.alpha;
  j["nu"] = f.model.nu;
  j["n"] = f.model.n;
  j["trials"] = f.trials;
  j["k"] = f.k;
  j["seed"] = f.seed;
  j["vn"] = f.vn;
  j["threads"] = f.threads;
  j["mode"] = f.mode;
  j["poisson"] = f.poisson;
  return j;
}

inline int cmd_campaign(const CampaignFlags& f, std::ostream& out) {
  const CampaignConfig cfg = campaign_config(f);
  const auto start = std::chrono::steady_clock::now();
  const auto records = run_campaign(cfg);
  const CampaignSummary summary = summarize(cfg, records);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto json = campaign_summary_json(campaign_flags_json(f), summary, seconds);

  write_file_atomic(f.csv, [&](std::ostream& s) { write_campaign_csv(s, records); });
  write_file_atomic(f.json, [&](std::ostream& s) { s << json.dump(2) << '\n'; });

  auto show = [&](const char* name, const std::optional<double>& v) {
    out << name << ' ' << (v ? format_double(*v) : std::string("n/a")) << '\n';
  };
  out << "regime " << to_string(summary.regime) << "\ntrials " << records.size() << '\n';
  show("ks_max_degree", summary.ks_max_degree);
  show("ks_min_radius", summary.ks_min_radius);
  show("ordering_success_rate", summary.ordering_success_rate);
  return ok;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Random hyperbolic graphs: sampling, ball volumes, limit laws, campaigns"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* g = app.add_subcommand("generate", "sample one graph and write node and edge files");
  gen.model.add_to(g);
  g->add_option("--seed", gen.seed, "master seed");
  g->add_flag("--poisson", gen.poisson, "Poisson(n) number of nodes");
  g->add_option("--out", gen.out, "output prefix (<out>.nodes, <out>.edges)");
  g->add_option("--builder", gen.builder, "fast or naive");

  VolumeFlags vol;
  auto* v = app.add_subcommand("volume", "ball measure: exact value and approximation");
  vol.model.add_to(v);
  v->add_option("--r", vol.r, "radius")->required();
  v->add_option("--x", vol.x, "origin-ball radius (mode annulus)");
  v->add_option("--mode", vol.mode)->check(CLI::IsMember(volume_modes));

  LimitsFlags lim;
  auto* l = app.add_subcommand("limits", "evaluate limit intensities, CDFs and constants");
  l->add_option("--alpha", lim.alpha)->required();
  l->add_option("--nu", lim.nu);
  l->add_option("--n", lim.n);
  l->add_option("--what", lim.what)->required()->check(CLI::IsMember(limits_quantities));
  l->add_option("--at", lim.at, "evaluation point");
  l->add_option("--a", lim.a);
  l->add_option("--b", lim.b);

  CampaignFlags camp;
  auto* c = app.add_subcommand("campaign", "Monte Carlo campaign; writes CSV and JSON summary");
  camp.model.add_to(c);
  c->add_option("--trials", camp.trials);
  c->add_option("--k", camp.k, "number of top degrees / smallest radii recorded");
  c->add_option("--seed", camp.seed, "master seed");
  c->add_option("--vn", camp.vn, "v_n policy: log, loglog, logpow:<p>");
  c->add_option("--threads", camp.threads);
  c->add_option("--mode", camp.mode, "full or radii");
  c->add_flag("--poisson", camp.poisson);
  c->add_option("--csv", camp.csv);
  c->add_option("--json", camp.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out);
    if (v->parsed()) return cmd_volume(vol, out);
    if (l->parsed()) return cmd_limits(lim, out);
    return cmd_campaign(camp, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
}

}  // namespace rhg::cli
