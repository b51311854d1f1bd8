// periodkit command line front end.
//
// Subcommands: synth, estimate, decompose, bench, hitmiss, recon.
// Every run is deterministic given its flags; the default seed is the
// documented constant 176176 (no environment overrides).
//
// Exit codes: 0 ok, 2 bad flags or parameters, 3 estimation failure
// (no dips / no consistent dips), 4 I/O failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "periodkit/csv.hpp"
#include "periodkit/errors.hpp"
#include "periodkit/experiments.hpp"
#include "periodkit/numtheory.hpp"
#include "periodkit/period_finder.hpp"
#include "periodkit/ramanujan.hpp"
#include "periodkit/rng.hpp"
#include "periodkit/signal.hpp"
#include "periodkit/svd_baseline.hpp"

namespace pk = periodkit;
using nlohmann::json;

namespace {

double parse_snr(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF")
    return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw pk::Error(pk::Errc::BadParams, "bad SNR value '" + s + "'");
  return v;
}

std::vector<pk::ComponentSpec> build_specs(const std::vector<std::size_t>& periods,
                                           std::vector<std::string> waves,
                                           std::vector<double> amps) {
  if (periods.empty()) throw pk::Error(pk::Errc::BadParams, "no --periods given");
  if (waves.empty()) waves.assign(periods.size(), "tri");
  if (amps.empty()) amps.assign(periods.size(), 1.0);
  if (waves.size() != periods.size() || amps.size() != periods.size())
    throw pk::Error(pk::Errc::BadParams, "--wave/--amps must match --periods in count");
  std::vector<pk::ComponentSpec> specs;
  for (std::size_t i = 0; i < periods.size(); ++i)
    specs.push_back({periods[i], pk::waveform_from_name(waves[i]), amps[i]});
  return specs;
}

json estimate_to_json(const pk::PeriodEstimate& est) {
  json dips = json::array();
  for (const pk::DipRecord& d : est.dips) {
    dips.push_back({{"period", d.period},
                    {"measure1", d.measure1},
                    {"measure2", d.measure2},
                    {"score", d.score}});
  }
  json j{{"schema_version", pk::kReportSchemaVersion},
         {"period", est.period},
         {"score", est.score},
         {"method", pk::method_name(est.method)},
         {"dips", dips}};
  if (est.runs_consistent) j["runs_consistent"] = *est.runs_consistent;
  return j;
}

void write_json_report(const std::filesystem::path& path, const json& j) {
  pk::write_text_atomic(path, j.dump(2) + "\n");
}

struct EstimateArgs {
  std::vector<std::string> inputs;
  std::string method = "variance";
  pk::MonteCarloParams mc;
  pk::SvdParams svd;
  std::string emit_profile;
  std::string format = "json";
};

int cmd_estimate(const EstimateArgs& a) {
  if (a.method != "montecarlo" && a.inputs.size() > 1)
    throw pk::Error(pk::Errc::BadParams,
                    "only --method montecarlo accepts multiple --input records");
  std::vector<pk::Signal> records;
  for (const std::string& path : a.inputs) records.push_back(pk::read_signal_csv(path));
  const pk::Signal& x = records[0];

  pk::PeriodEstimate est;
  if (a.method == "variance") {
    est = pk::estimate_period_mvpf(x);
  } else if (a.method == "montecarlo") {
    est = pk::estimate_period_montecarlo(records, a.mc);
  } else if (a.method == "svd") {
    est = pk::estimate_period_svd(x, a.svd);
  } else {
    throw pk::Error(pk::Errc::BadParams, "unknown method '" + a.method + "'");
  }

  if (!a.emit_profile.empty()) {
    pk::CsvTable t;
    if (a.method == "svd") {
      pk::SvdSpectrum sp = pk::svd_spectrum(x, a.svd);
      t.header = {"period", "ratio"};
      for (std::size_t p = sp.min_period(); p <= sp.max_period(); ++p)
        t.rows.push_back({std::to_string(p), pk::format_double(sp.at(p))});
    } else {
      pk::VarianceProfile vp = pk::variance_profile(x);
      t.header = {"period", "variance"};
      for (std::size_t p = vp.min_period(); p <= vp.max_period(); ++p)
        t.rows.push_back({std::to_string(p), pk::format_double(vp.at(p))});
    }
    t.write(a.emit_profile);
  }

  if (a.format == "csv") {
    std::printf("period,score,method\n%zu,%s,%s\n", est.period,
                pk::format_double(est.score).c_str(), pk::method_name(est.method));
  } else {
    json j = estimate_to_json(est);
    if (a.method == "montecarlo")
      j["mode"] = records.size() > 1 ? "multi-record" : "single-record";
    std::printf("%s\n", j.dump(2).c_str());
  }
  return 0;
}

pk::ExperimentConfig load_config(const std::string& config_path) {
  pk::ExperimentConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw pk::Error(pk::Errc::IoError, "cannot open " + config_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw pk::Error(pk::Errc::BadConfig, std::string("config parse: ") + e.what());
    }
    config = pk::config_from_json(j);
  }
  return config;
}

void write_report(const pk::ExperimentReport& rep, const std::string& out,
                  const std::string& csv) {
  write_json_report(out, pk::report_to_json(rep));
  if (!csv.empty()) pk::report_to_csv(rep).write(csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodicity estimation and hidden-component reconstruction toolkit"};
  app.require_subcommand(1);

  // ---- synth ----------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "generate a composite signal + noisy copy");
  std::vector<std::size_t> sy_periods{8, 11, 16};
  std::vector<std::string> sy_waves;
  std::vector<double> sy_amps;
  std::size_t sy_n = 4119;
  std::string sy_snr = "inf";
  std::uint64_t sy_seed = pk::kDefaultSeed;
  std::string sy_outdir = ".";
  synth->add_option("--periods", sy_periods, "hidden periods")->delimiter(',');
  synth->add_option("--wave", sy_waves, "waveform per period: tri|cos|rand")->delimiter(',');
  synth->add_option("--amps", sy_amps, "amplitude per period")->delimiter(',');
  synth->add_option("--n", sy_n, "signal length")->capture_default_str();
  synth->add_option("--snr", sy_snr, "SNR in dB, or 'inf' for noiseless")->capture_default_str();
  synth->add_option("--seed", sy_seed, "RNG seed")->capture_default_str();
  synth->add_option("--out-dir", sy_outdir, "output directory");

  // ---- estimate -------------------------------------------------------
  auto* estimate = app.add_subcommand("estimate", "estimate the composite period of a CSV signal");
  EstimateArgs ea;
  estimate->add_option("--input", ea.inputs, "input CSV (repeat for montecarlo resend records)")
      ->required();
  estimate->add_option("--method", ea.method, "variance|montecarlo|svd")->capture_default_str();
  estimate->add_option("--resends", ea.mc.resends, "montecarlo: resend count k")->capture_default_str();
  estimate->add_option("--cols", ea.mc.columns_per_period, "montecarlo: sampled columns per period")->capture_default_str();
  estimate->add_option("--rows", ea.mc.rows_per_column, "montecarlo: sampled rows per column")->capture_default_str();
  estimate->add_option("--seed", ea.mc.seed, "montecarlo: subsampling seed")->capture_default_str();
  estimate->add_option("--svd-cap", ea.svd.cap_value, "svd: ratio cap for vanishing sigma2");
  estimate->add_option("--svd-threshold", ea.svd.cap_threshold,
                       "svd: cap when sigma2 <= threshold * sigma1");
  estimate->add_option("--emit-profile", ea.emit_profile, "write the variance/ratio spectrum CSV");
  estimate->add_option("--format", ea.format, "stdout format: json|csv")->capture_default_str();

  // ---- decompose ------------------------------------------------------
  auto* decompose = app.add_subcommand("decompose", "project onto factor Ramanujan subspaces");
  std::string de_input;
  std::size_t de_period = 0;
  bool de_auto = false;
  std::string de_method = "variance";
  std::vector<std::size_t> de_hidden;
  std::string de_strengths = "strengths.csv";
  std::string de_components = "components.csv";
  decompose->add_option("--input", de_input, "input CSV")->required();
  decompose->add_option("--period", de_period, "composite period to decompose at");
  decompose->add_flag("--auto", de_auto, "estimate the period first");
  decompose->add_option("--method", de_method, "estimator for --auto: variance|svd");
  decompose->add_option("--hidden", de_hidden, "hidden periods to reconstruct")->delimiter(',');
  decompose->add_option("--strengths", de_strengths, "output CSV of normalized strengths");
  decompose->add_option("--components", de_components, "output CSV of reconstructed components");

  // ---- experiment commands --------------------------------------------
  auto* bench = app.add_subcommand("bench", "runtime comparison over a length sweep");
  auto* hitmiss = app.add_subcommand("hitmiss", "Monte Carlo hit-miss experiment");
  auto* recon = app.add_subcommand("recon", "reconstruction quality over an SNR sweep");

  std::string xp_config, xp_out = "report.json", xp_csv;
  std::vector<std::size_t> xp_periods;
  std::vector<std::string> xp_waves;
  std::vector<double> xp_amps;
  std::size_t xp_n = 0, xp_trials = 0, xp_resends = 0, xp_reps = 0, xp_seeds_per_snr = 0;
  std::uint64_t xp_seed = 0;
  std::vector<std::string> xp_snrs, xp_methods;
  std::vector<std::size_t> xp_nsweep;
  for (CLI::App* cmd : {bench, hitmiss, recon}) {
    cmd->add_option("--config", xp_config, "ExperimentConfig JSON (flags override it)");
    cmd->add_option("--out", xp_out, "output report JSON path");
    cmd->add_option("--csv", xp_csv, "companion CSV table path");
    cmd->add_option("--periods", xp_periods, "hidden periods")->delimiter(',');
    cmd->add_option("--wave", xp_waves, "waveform per period")->delimiter(',');
    cmd->add_option("--amps", xp_amps, "amplitude per period")->delimiter(',');
    cmd->add_option("--seed", xp_seed, "master seed");
    cmd->add_option("--resends", xp_resends, "montecarlo resend count k");
  }
  hitmiss->add_option("--n", xp_n, "signal length");
  recon->add_option("--n", xp_n, "signal length");
  hitmiss->add_option("--snr", xp_snrs, "SNR in dB ('inf' ok)")->delimiter(',');
  recon->add_option("--snr-sweep", xp_snrs, "SNR sweep in dB")->delimiter(',');
  bench->add_option("--snr", xp_snrs, "SNR for the timed signals")->delimiter(',');
  hitmiss->add_option("--trials", xp_trials, "trial count");
  bench->add_option("--n", xp_nsweep, "length sweep")->delimiter(',');
  bench->add_option("--methods", xp_methods, "methods: montecarlo,svd,variance")->delimiter(',');
  bench->add_option("--reps", xp_reps, "timing repeats");
  recon->add_option("--seeds-per-snr", xp_seeds_per_snr, "trials per SNR point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help exits 0; every parse failure is exit 2
  }

  try {
    if (synth->parsed()) {
      auto specs = build_specs(sy_periods, sy_waves, sy_amps);
      pk::GroundTruth gt = pk::synthesize(specs, sy_n, parse_snr(sy_snr), sy_seed);
      std::filesystem::path dir(sy_outdir);
      std::filesystem::create_directories(dir);
      pk::write_signal_csv(dir / "clean.csv", gt.clean, "periodkit synth clean");
      pk::write_signal_csv(dir / "noisy.csv", gt.noisy, "periodkit synth noisy");
      json truth{{"schema_version", pk::kReportSchemaVersion},
                 {"n", sy_n},
                 {"seed", sy_seed},
                 {"snr_db", std::isinf(gt.snr_db) ? json("inf") : json(gt.snr_db)},
                 {"composite_period", pk::lcm_of(sy_periods)},
                 {"clean_power", pk::power_of(gt.clean)}};
      json comps = json::array();
      for (std::size_t i = 0; i < specs.size(); ++i) {
        comps.push_back({{"period", specs[i].period},
                         {"wave", pk::waveform_name(specs[i].wave)},
                         {"amplitude", specs[i].amplitude}});
      }
      truth["components"] = comps;
      write_json_report(dir / "truth.json", truth);
      return 0;
    }

    if (estimate->parsed()) return cmd_estimate(ea);

    if (decompose->parsed()) {
      pk::Signal x = pk::read_signal_csv(de_input);
      std::size_t period = de_period;
      if (de_auto || period == 0) {
        period = (de_method == "svd") ? pk::estimate_period_svd(x).period
                                      : pk::estimate_period_mvpf(x).period;
        std::fprintf(stderr, "estimated period: %zu\n", period);
      }
      pk::Decomposition dec = pk::decompose(x, period);

      pk::CsvTable st;
      st.header = {"q", "strength"};
      for (const auto& [q, s] : pk::normalized_strengths(dec))
        st.rows.push_back({std::to_string(q), pk::format_double(s)});
      st.write(de_strengths);

      if (!de_hidden.empty()) {
        pk::ComponentSet cs = pk::reconstruct_components(dec, de_hidden);
        pk::CsvTable ct;
        ct.header = {"n"};
        for (const auto& [p, comp] : cs.components) ct.header.push_back("p" + std::to_string(p));
        for (std::size_t i = 0; i < dec.period; ++i) {
          std::vector<std::string> row{std::to_string(i)};
          for (const auto& [p, comp] : cs.components) row.push_back(pk::format_double(comp[i]));
          ct.rows.push_back(std::move(row));
        }
        ct.write(de_components);
      }
      return 0;
    }

    // experiment commands share config assembly; flags override the file
    CLI::App* xc = hitmiss->parsed() ? hitmiss : bench->parsed() ? bench : recon;
    pk::ExperimentConfig config = load_config(xp_config);
    auto given = [&](const char* name) {
      CLI::Option* opt = xc->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    if (!xp_periods.empty()) config.components = build_specs(xp_periods, xp_waves, xp_amps);
    if (!xp_snrs.empty()) {
      config.snr_db.clear();
      for (const std::string& s : xp_snrs) config.snr_db.push_back(parse_snr(s));
    }
    if (given("--n") && xc != bench) config.n = xp_n;
    if (given("--trials")) config.trials = xp_trials;
    if (given("--resends")) config.montecarlo.resends = xp_resends;
    if (given("--seed")) config.master_seed = xp_seed;
    if (given("--reps")) config.timing_repeats = xp_reps;
    if (given("--seeds-per-snr")) config.seeds_per_snr = xp_seeds_per_snr;
    if (!xp_nsweep.empty()) config.n_sweep = xp_nsweep;
    if (!xp_methods.empty()) config.methods = xp_methods;

    if (hitmiss->parsed()) {
      if (config.snr_db.empty()) config.snr_db = {32.0};
      pk::ExperimentReport rep = pk::run_hit_miss(config);
      write_report(rep, xp_out, xp_csv);
      std::printf("hits=%zu misses=%zu (composite period %llu)\n", rep.hits, rep.misses,
                  static_cast<unsigned long long>(config.composite_period()));
      return 0;
    }
    if (bench->parsed()) {
      pk::ExperimentReport rep = pk::run_runtime_comparison(config);
      write_report(rep, xp_out, xp_csv);
      for (const auto& [method, slope] : rep.slopes)
        std::printf("%s: log-log slope %.3f\n", method.c_str(), slope);
      return 0;
    }
    if (recon->parsed()) {
      if (config.snr_db.empty()) config.snr_db = {5, 10, 20, 35};
      pk::ExperimentReport rep = pk::run_reconstruction_eval(config);
      write_report(rep, xp_out, xp_csv);
      std::printf("%zu rows -> %s\n", rep.recon.size(), xp_out.c_str());
      return 0;
    }
  } catch (const pk::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.code()) {
      case pk::Errc::NoDipsFound:
      case pk::Errc::NoConsistentDips:
        return 3;
      case pk::Errc::IoError:
        return 4;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
