#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "rhg/core.hpp"
#include "rhg/generator.hpp"
#include "rhg/io.hpp"
#include "rhg/limits.hpp"
#include "rhg/rng.hpp"

namespace rhg {

/// Sup-distance between the empirical CDF of samples and cdf, taking both
/// one-sided gaps at every sample point.
template <class Cdf>
double ks_statistic(std::span<const double> samples, Cdf&& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: no samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

/// Smallest rank i in [lo, hi] (1-based, radius order) with
/// deg(X_(i)) < deg(X_(i+1)).
inline std::optional<std::size_t> ordering_break_scan(const GraphSample& g, std::size_t lo,
                                                      std::size_t hi) {
  const std::size_t n = g.radius_order.size();
  if (lo < 1 || lo > hi || hi >= n)
    throw DomainError("ordering_break_scan: requires 1 <= lo <= hi < n");
  for (std::size_t i = lo; i <= hi; ++i) {
    if (g.degrees[g.radius_order[i - 1]] < g.degrees[g.radius_order[i]]) return i;
  }
  return std::nullopt;
}

/// Diverging sequence v_n bounding the rank window [n^beta, n^beta v_n].
/// Accepted forms: "log", "loglog", "logpow:<p>" for (log n)^p.
inline std::function<double(double)> parse_vn_policy(const std::string& policy) {
  if (policy == "log") return [](double n) { return std::log(n); };
  if (policy == "loglog") return [](double n) { return std::log(std::log(n)); };
  const std::string prefix = "logpow:";
  if (policy.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(policy.substr(prefix.size()), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != policy.size() - prefix.size() || !(p > 0.0))
      throw DomainError("v_n policy: bad exponent in '" + policy + "'");
    return [p](double n) { return std::pow(std::log(n), p); };
  }
  throw DomainError("v_n policy: unknown policy '" + policy + "'");
}

enum class CampaignMode {
  full,       ///< sample and build each graph
  radii_only  ///< sample radii only; degree fields stay empty
};

struct CampaignConfig {
  ModelParams params;
  std::uint64_t trials = 1;
  std::size_t k = 1;
  std::string v_n_policy = "log";
  bool poissonized = false;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  CampaignMode mode = CampaignMode::full;
  EdgeBuilder builder = EdgeBuilder::fast;
};

struct TrialRecord {
  std::uint64_t trial_id = 0;
  std::uint64_t n_realized = 0;
  std::optional<std::uint64_t> max_degree;
  std::optional<double> normalized_max_degree;
  std::vector<std::uint32_t> top_k_degrees;  ///< descending
  std::vector<double> top_k_norm_degrees;    ///< normalized, same order as top_k_degrees
  std::vector<double> top_k_radii;           ///< ascending
  std::vector<double> top_k_norm_radii;
  std::optional<double> norm_min_radius;
  std::optional<std::uint64_t> ordering_prefix;
  /// First rank i >= ceil(n^beta) where the degree order breaks (alpha > 1/2 only).
  std::optional<std::uint64_t> break_index;
  /// Whether break_index lies in [n^beta, n^beta v_n].
  std::optional<bool> break_in_window;
};

namespace detail {

inline void check_campaign(const CampaignConfig& cfg) {
  if (cfg.trials < 1) throw DomainError("campaign: trials must be >= 1");
  if (cfg.k < 1) throw DomainError("campaign: k must be >= 1");
  if (!cfg.poissonized && cfg.k > cfg.params.n())
    throw DomainError("campaign: k must not exceed n");
  if (cfg.threads < 1) throw DomainError("campaign: threads must be >= 1");
  parse_vn_policy(cfg.v_n_policy);
}

inline void fill_radii(TrialRecord& rec, std::vector<double> radii, const CampaignConfig& cfg,
                       Regime regime) {
  const std::size_t k = std::min(cfg.k, radii.size());
  std::partial_sort(radii.begin(), radii.begin() + k, radii.end());
  rec.top_k_radii.assign(radii.begin(), radii.begin() + k);
  for (double r : rec.top_k_radii) rec.top_k_norm_radii.push_back(normalize_radius(regime, r, cfg.params));
  if (k > 0) rec.norm_min_radius = rec.top_k_norm_radii.front();
}

inline TrialRecord run_trial(const CampaignConfig& cfg, std::uint64_t trial_id) {
  const auto& params = cfg.params;
  const Regime regime = regime_of(params.alpha());
  TrialRecord rec;
  rec.trial_id = trial_id;
  Rng rng({cfg.master_seed, trial_id});
  const std::uint64_t count = cfg.poissonized ? rng.poisson(params.n_real()) : params.n();
  rec.n_realized = count;

  if (cfg.mode == CampaignMode::radii_only) {
    fill_radii(rec, sample_radii(params, count, rng), cfg, regime);
    return rec;
  }

  const GraphSample g =
      make_graph(sample_points(params, count, rng), params, {cfg.builder, false});
  std::vector<double> radii(count);
  for (std::size_t i = 0; i < count; ++i) radii[i] = g.points[i].r;
  fill_radii(rec, std::move(radii), cfg, regime);
  if (count == 0) return rec;

  const DegreeStats stats = degree_stats(g, std::min<std::size_t>(cfg.k, count));
  rec.top_k_degrees = stats.top_k_degrees;
  for (auto d : rec.top_k_degrees)
    rec.top_k_norm_degrees.push_back(normalize_max_degree(regime, d, params));
  rec.max_degree = rec.top_k_degrees.front();
  rec.normalized_max_degree = rec.top_k_norm_degrees.front();
  rec.ordering_prefix = stats.max_prefix;

  if (regime == Regime::supercritical) {
    const double nb = std::pow(params.n_real(), ordering_exponent(params.alpha()));
    const auto lo = static_cast<std::size_t>(std::max(1.0, std::ceil(nb)));
    const double window_hi = std::floor(nb * parse_vn_policy(cfg.v_n_policy)(params.n_real()));
    if (lo < count) {
      const auto hit = ordering_break_scan(g, lo, count - 1);
      if (hit) rec.break_index = *hit;
      rec.break_in_window = hit && static_cast<double>(*hit) <= window_hi;
    }
  }
  return rec;
}

}  // namespace detail

/// Runs cfg.trials independent trials; trial t draws from stream
/// (master_seed, t). The result is sorted by trial id and does not depend on
/// cfg.threads. The first failing trial's exception is rethrown.
inline std::vector<TrialRecord> run_campaign(const CampaignConfig& cfg) {
  detail::check_campaign(cfg);
  std::vector<TrialRecord> records(cfg.trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      try {
        records[t] = detail::run_trial(cfg, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.trials;
        return;
      }
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(cfg.threads, cfg.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

/// CDF of the normalized maximum degree, clamped to [0, 1] outside the support
/// (reachable at finite n, e.g. D > n in the Poissonized model).
inline double maxdeg_cdf_clamped(Regime regime, double z, double alpha, double nu,
                                 const QuadratureConfig& q = {}) {
  if (z <= 0.0) return 0.0;
  if (regime == Regime::critical && z >= 1.0) return 1.0;
  return maxdeg_limit_cdf(regime, z, alpha, nu, q);
}

struct CampaignSummary {
  Regime regime = Regime::supercritical;
  std::optional<double> ks_max_degree;
  std::optional<double> ks_min_radius;
  std::optional<double> ordering_success_rate;  ///< fraction with ordering_prefix >= k
};

inline CampaignSummary summarize(const CampaignConfig& cfg, std::span<const TrialRecord> records) {
  const double a = cfg.params.alpha();
  const double nu = cfg.params.nu();
  CampaignSummary s;
  s.regime = regime_of(a);
  std::vector<double> degs, radii;
  std::size_t ordered = 0, with_prefix = 0;
  for (const auto& r : records) {
    if (r.normalized_max_degree) degs.push_back(*r.normalized_max_degree);
    if (r.norm_min_radius) radii.push_back(*r.norm_min_radius);
    if (r.ordering_prefix) {
      ++with_prefix;
      if (*r.ordering_prefix >= cfg.k) ++ordered;
    }
  }
  if (!degs.empty())
    s.ks_max_degree =
        ks_statistic(degs, [&](double z) { return maxdeg_cdf_clamped(s.regime, z, a, nu); });
  if (!radii.empty())
    s.ks_min_radius =
        ks_statistic(radii, [&](double u) { return min_radius_limit_cdf(s.regime, u, a, nu); });
  if (with_prefix > 0)
    s.ordering_success_rate = static_cast<double>(ordered) / static_cast<double>(with_prefix);
  return s;
}

inline constexpr const char* campaign_csv_header =
    "trial_id,n_realized,max_degree,norm_max_degree,ordering_prefix,topk_degrees(json),"
    "topk_radii(json)";

namespace detail {

template <class T, class Format>
std::string json_array(const std::vector<T>& values, Format&& format) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ',';
    s += format(values[i]);
  }
  return s + "]";
}

template <class T>
std::string optional_field(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>)
    return format_double(*v);
  else
    return std::to_string(*v);
}

}  // namespace detail

/// One row per record. Array cells are JSON and therefore quoted; missing
/// values are left empty.
inline void write_campaign_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << campaign_csv_header << '\n';
  for (const auto& r : records) {
    out << r.trial_id << ',' << r.n_realized << ',' << detail::optional_field(r.max_degree) << ','
        << detail::optional_field(r.normalized_max_degree) << ','
        << detail::optional_field(r.ordering_prefix) << ",\""
        << detail::json_array(r.top_k_degrees, [](std::uint32_t d) { return std::to_string(d); })
        << "\",\"" << detail::json_array(r.top_k_radii, format_double) << "\"\n";
  }
}

/// JSON summary; config is embedded as given (the CLI passes its flags verbatim).
inline nlohmann::ordered_json campaign_summary_json(const nlohmann::ordered_json& config,
                                                    const CampaignSummary& s,
                                                    double runtime_seconds) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    if (v) return *v;
    return nullptr;
  };
  nlohmann::ordered_json j;
  j["config"] = config;
  j["regime"] = to_string(s.regime);
  j["ks_max_degree"] = opt(s.ks_max_degree);
  j["ks_min_radius"] = opt(s.ks_min_radius);
  j["ordering_success_rate"] = opt(s.ordering_success_rate);
  j["runtime_seconds"] = runtime_seconds;
  return j;
}

}  // namespace rhg
