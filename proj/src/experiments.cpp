#include "periodkit/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "periodkit/errors.hpp"
#include "periodkit/kernels.hpp"
#include "periodkit/numtheory.hpp"
#include "periodkit/ramanujan.hpp"

namespace periodkit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

nlohmann::json snr_to_json(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

double snr_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw Error(Errc::BadConfig, "snr_db string must be \"inf\"");
  }
  return j.get<double>();
}

void require_components(const ExperimentConfig& c) {
  if (c.components.empty()) throw Error(Errc::BadConfig, "no hidden components configured");
  if (c.trials < 1) throw Error(Errc::BadConfig, "trials must be >= 1");
}

void require_composite_length(const ExperimentConfig& c) {
  if (c.n < 4 * c.composite_period())
    throw Error(Errc::BadConfig, "n must be at least 4x the composite period");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t k = v.size() / 2;
  return (v.size() % 2 == 1) ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

double loglog_slope(const std::vector<std::pair<std::size_t, double>>& points) {
  double mx = 0, my = 0;
  for (const auto& [n, t] : points) {
    mx += std::log(static_cast<double>(n));
    my += std::log(t);
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double num = 0, den = 0;
  for (const auto& [n, t] : points) {
    double dx = std::log(static_cast<double>(n)) - mx;
    num += dx * (std::log(t) - my);
    den += dx * dx;
  }
  return num / den;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  double na = kernels::sum_squares(a);
  double nb = kernels::sum_squares(b);
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  return kernels::dot(a, b) / std::sqrt(na * nb);
}

}  // namespace

std::vector<std::size_t> ExperimentConfig::hidden_periods() const {
  std::vector<std::size_t> out;
  out.reserve(components.size());
  for (const ComponentSpec& c : components) out.push_back(c.period);
  return out;
}

std::uint64_t ExperimentConfig::composite_period() const {
  return lcm_of(hidden_periods());
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  if (j.contains("components")) {
    c.components.clear();
    for (const auto& jc : j.at("components")) {
      ComponentSpec s;
      s.period = jc.at("period").get<std::size_t>();
      s.wave = waveform_from_name(jc.value("wave", std::string("tri")));
      s.amplitude = jc.value("amplitude", 1.0);
      c.components.push_back(s);
    }
  }
  c.n = j.value("n", c.n);
  if (j.contains("snr_db")) {
    c.snr_db.clear();
    for (const auto& v : j.at("snr_db")) c.snr_db.push_back(snr_from_json(v));
  }
  c.trials = j.value("trials", c.trials);
  if (j.contains("montecarlo")) {
    const auto& m = j.at("montecarlo");
    c.montecarlo.resends = m.value("resends", c.montecarlo.resends);
    c.montecarlo.columns_per_period =
        m.value("columns_per_period", c.montecarlo.columns_per_period);
    c.montecarlo.rows_per_column = m.value("rows_per_column", c.montecarlo.rows_per_column);
  }
  if (j.contains("svd")) {
    const auto& s = j.at("svd");
    c.svd.cap_value = s.value("cap_value", c.svd.cap_value);
    c.svd.cap_threshold = s.value("cap_threshold", c.svd.cap_threshold);
  }
  c.master_seed = j.value("master_seed", c.master_seed);
  if (j.contains("n_sweep")) c.n_sweep = j.at("n_sweep").get<std::vector<std::size_t>>();
  c.timing_repeats = j.value("timing_repeats", c.timing_repeats);
  if (j.contains("methods")) c.methods = j.at("methods").get<std::vector<std::string>>();
  c.seeds_per_snr = j.value("seeds_per_snr", c.seeds_per_snr);
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json jc = nlohmann::json::array();
  for (const ComponentSpec& s : c.components) {
    jc.push_back({{"period", s.period},
                  {"wave", waveform_name(s.wave)},
                  {"amplitude", s.amplitude}});
  }
  nlohmann::json jsnr = nlohmann::json::array();
  for (double v : c.snr_db) jsnr.push_back(snr_to_json(v));
  return nlohmann::json{
      {"components", jc},
      {"n", c.n},
      {"snr_db", jsnr},
      {"trials", c.trials},
      {"montecarlo",
       {{"resends", c.montecarlo.resends},
        {"columns_per_period", c.montecarlo.columns_per_period},
        {"rows_per_column", c.montecarlo.rows_per_column}}},
      {"svd", {{"cap_value", c.svd.cap_value}, {"cap_threshold", c.svd.cap_threshold}}},
      {"master_seed", c.master_seed},
      {"n_sweep", c.n_sweep},
      {"timing_repeats", c.timing_repeats},
      {"methods", c.methods},
      {"seeds_per_snr", c.seeds_per_snr},
  };
}

ExperimentReport run_hit_miss(const ExperimentConfig& config) {
  require_components(config);
  require_composite_length(config);
  if (config.snr_db.size() > 1)
    throw Error(Errc::BadConfig, "hit-miss takes a single SNR value");
  double snr = config.snr_db.empty() ? std::numeric_limits<double>::infinity()
                                     : config.snr_db[0];

  ExperimentReport rep;
  rep.kind = "hitmiss";
  rep.config = config;
  std::uint64_t composite = config.composite_period();

  // The clean composite is fixed; each trial sees k fresh noisy records.
  GroundTruth base = synthesize(config.components, config.n, snr, config.master_seed);

  std::size_t k = config.montecarlo.resends;
  for (std::size_t t = 0; t < config.trials; ++t) {
    std::vector<Signal> records;
    records.reserve(k);
    for (std::size_t r = 0; r < k; ++r)
      records.push_back(
          add_noise_snr(base.clean, snr, derive_seed(config.master_seed, t, r, 0xA)));

    MonteCarloParams params = config.montecarlo;
    params.seed = derive_seed(config.master_seed, t, 0, 0xB);

    TrialRecord rec;
    rec.trial = t;
    rec.seed = params.seed;
    auto t0 = Clock::now();
    try {
      rec.estimate = estimate_period_montecarlo(records, params).period;
    } catch (const Error& e) {
      if (e.code() != Errc::NoConsistentDips) throw;
      rec.estimate = 0;
    }
    rec.wall_ms = seconds_since(t0) * 1e3;
    rec.hit = rec.estimate != 0 && rec.estimate % composite == 0;
    if (rec.hit) {
      ++rep.hits;
    } else {
      ++rep.misses;
    }
    rep.trials.push_back(rec);
  }

  double mean = 0;
  for (const TrialRecord& r : rep.trials) mean += r.wall_ms;
  mean /= static_cast<double>(rep.trials.size());
  double var = 0;
  for (const TrialRecord& r : rep.trials) var += (r.wall_ms - mean) * (r.wall_ms - mean);
  rep.mean_runtime_ms = mean;
  rep.stddev_runtime_ms =
      rep.trials.size() > 1 ? std::sqrt(var / static_cast<double>(rep.trials.size() - 1)) : 0.0;
  return rep;
}

ExperimentReport run_runtime_comparison(const ExperimentConfig& config) {
  require_components(config);
  if (config.n_sweep.size() < 4)
    throw Error(Errc::BadConfig, "runtime sweep needs at least 4 lengths");
  auto [lo, hi] = std::minmax_element(config.n_sweep.begin(), config.n_sweep.end());
  if (*hi < 8 * *lo)
    throw Error(Errc::BadConfig, "runtime sweep must span at least 8x");
  if (config.timing_repeats < 1) throw Error(Errc::BadConfig, "timing_repeats must be >= 1");
  if (config.methods.empty()) throw Error(Errc::BadConfig, "no methods selected");
  double snr = config.snr_db.empty() ? 32.0 : config.snr_db[0];

  ExperimentReport rep;
  rep.kind = "bench";
  rep.config = config;

  std::vector<std::size_t> sweep = config.n_sweep;
  std::sort(sweep.begin(), sweep.end());

  for (const std::string& method : config.methods) {
    std::vector<std::pair<std::size_t, double>> medians;
    for (std::size_t n : sweep) {
      GroundTruth gt =
          synthesize(config.components, n, snr, derive_seed(config.master_seed, n, 0xC));
      BenchRow row;
      row.method = method;
      row.n = n;
      for (std::size_t r = 0; r < config.timing_repeats; ++r) {
        auto t0 = Clock::now();
        std::size_t est = 0;
        if (method == "montecarlo") {
          MonteCarloParams params = config.montecarlo;
          params.seed = derive_seed(config.master_seed, n, 0xD);
          std::span<const Signal> one(&gt.noisy, 1);
          try {
            est = estimate_period_montecarlo(one, params).period;
          } catch (const Error& e) {
            if (e.code() != Errc::NoConsistentDips) throw;
          }
        } else if (method == "svd") {
          est = estimate_period_svd(gt.noisy, config.svd).period;
        } else if (method == "variance") {
          est = estimate_period_mvpf(gt.noisy).period;
        } else {
          throw Error(Errc::BadConfig, "unknown method '" + method + "'");
        }
        row.times_s.push_back(seconds_since(t0));
        row.estimate = est;
      }
      row.median_s = median(row.times_s);
      medians.emplace_back(n, row.median_s);
      rep.bench.push_back(std::move(row));
    }
    rep.slopes[method] = loglog_slope(medians);
  }
  return rep;
}

ExperimentReport run_reconstruction_eval(const ExperimentConfig& config) {
  require_components(config);
  require_composite_length(config);
  if (config.snr_db.empty()) throw Error(Errc::BadConfig, "reconstruction eval needs an SNR sweep");
  if (config.seeds_per_snr < 1) throw Error(Errc::BadConfig, "seeds_per_snr must be >= 1");

  ExperimentReport rep;
  rep.kind = "recon";
  rep.config = config;
  std::vector<std::size_t> hidden = config.hidden_periods();
  std::uint64_t composite = config.composite_period();

  // divisor set of the hidden periods: everything else carries noise only
  std::vector<bool> is_divisor(2 * config.n + 1, false);
  for (std::size_t p : hidden)
    for (std::size_t q : divisors(p)) is_divisor[q] = true;

  for (std::size_t si = 0; si < config.snr_db.size(); ++si) {
    for (std::size_t s = 0; s < config.seeds_per_snr; ++s) {
      std::uint64_t seed = derive_seed(config.master_seed, si, s, 0xE);
      GroundTruth gt = synthesize(config.components, config.n, config.snr_db[si], seed);

      ReconRow row;
      row.snr_db = config.snr_db[si];
      row.seed = seed;
      try {
        row.estimate = estimate_period_mvpf(gt.noisy).period;
      } catch (const Error& e) {
        if (e.code() != Errc::NoDipsFound) throw;
        row.estimate = 0;
      }
      row.hit = row.estimate != 0 && row.estimate % composite == 0;

      if (row.estimate >= 2) {
        Decomposition dec = decompose(gt.noisy, row.estimate);
        for (const auto& [q, strength] : normalized_strengths(dec)) {
          if (q < is_divisor.size() && !is_divisor[q])
            row.max_nondivisor_strength = std::max(row.max_nondivisor_strength, strength);
        }
        if (row.hit) {
          ComponentSet cs = reconstruct_components(dec, hidden);
          for (std::size_t p : hidden) {
            std::span<const double> recon(cs.components.at(p).data(), composite);
            std::span<const double> truth(gt.components.at(p).data(), composite);
            row.correlations[p] = cosine_similarity(recon, truth);
          }
        }
      }
      if (!row.hit)
        for (std::size_t p : hidden) row.correlations[p] = 0.0;
      rep.recon.push_back(std::move(row));
    }
  }
  return rep;
}

nlohmann::json report_to_json(const ExperimentReport& r, bool include_timing) {
  nlohmann::json j{{"schema_version", kReportSchemaVersion},
                   {"kind", r.kind},
                   {"config", config_to_json(r.config)}};
  if (r.kind == "hitmiss") {
    nlohmann::json jt = nlohmann::json::array();
    for (const TrialRecord& t : r.trials) {
      nlohmann::json e{{"trial", t.trial},
                       {"seed", t.seed},
                       {"estimate", t.estimate},
                       {"hit", t.hit}};
      if (include_timing) e["wall_ms"] = t.wall_ms;
      jt.push_back(e);
    }
    j["hitmiss"] = {{"hits", r.hits}, {"misses", r.misses}, {"trials", jt}};
    if (include_timing) {
      j["hitmiss"]["mean_runtime_ms"] = r.mean_runtime_ms;
      j["hitmiss"]["stddev_runtime_ms"] = r.stddev_runtime_ms;
    }
  } else if (r.kind == "bench") {
    nlohmann::json jb = nlohmann::json::array();
    for (const BenchRow& b : r.bench) {
      nlohmann::json e{{"method", b.method}, {"n", b.n}, {"estimate", b.estimate}};
      if (include_timing) {
        e["times_s"] = b.times_s;
        e["median_s"] = b.median_s;
      }
      jb.push_back(e);
    }
    j["bench"] = {{"rows", jb}};
    if (include_timing) j["bench"]["slopes"] = r.slopes;
  } else if (r.kind == "recon") {
    nlohmann::json jr = nlohmann::json::array();
    for (const ReconRow& row : r.recon) {
      nlohmann::json corr = nlohmann::json::object();
      for (const auto& [p, c] : row.correlations) corr[std::to_string(p)] = c;
      jr.push_back({{"snr_db", snr_to_json(row.snr_db)},
                    {"seed", row.seed},
                    {"estimate", row.estimate},
                    {"hit", row.hit},
                    {"correlations", corr},
                    {"max_nondivisor_strength", row.max_nondivisor_strength}});
    }
    j["recon"] = {{"rows", jr}};
  }
  return j;
}

CsvTable report_to_csv(const ExperimentReport& r) {
  CsvTable t;
  if (r.kind == "hitmiss") {
    t.header = {"trial", "seed", "estimate", "hit", "wall_ms"};
    for (const TrialRecord& rec : r.trials) {
      t.rows.push_back({std::to_string(rec.trial), std::to_string(rec.seed),
                        std::to_string(rec.estimate), rec.hit ? "1" : "0",
                        format_double(rec.wall_ms)});
    }
  } else if (r.kind == "bench") {
    t.header = {"method", "n", "median_s", "estimate"};
    for (const BenchRow& b : r.bench) {
      t.rows.push_back({b.method, std::to_string(b.n), format_double(b.median_s),
                        std::to_string(b.estimate)});
    }
  } else if (r.kind == "recon") {
    t.header = {"snr_db", "seed", "estimate", "hit", "component_period",
                "correlation", "max_nondivisor_strength"};
    for (const ReconRow& row : r.recon) {
      for (const auto& [p, c] : row.correlations) {
        t.rows.push_back({format_double(row.snr_db), std::to_string(row.seed),
                          std::to_string(row.estimate), row.hit ? "1" : "0",
                          std::to_string(p), format_double(c),
                          format_double(row.max_nondivisor_strength)});
      }
    }
  }
  return t;
}

}  // namespace periodkit
