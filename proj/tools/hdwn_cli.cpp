// hdwn: command-line front end for the high-dimensional white-noise test.
//
//   hdwn test     --input FILE [--q N] [--orders 2,4,6] [--alpha A] [--output report.json]
//   hdwn simulate --model null|var1|vma1 --p P --T T [--cov ...] [--innov ...] [--coeff ...]
//   hdwn study    --config FILE.json --output-dir DIR
//   hdwn verify
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include "hdwn/errors.hpp"
#include "hdwn/montecarlo.hpp"
#include "hdwn/report_io.hpp"
#include "hdwn/series_io.hpp"
#include "hdwn/simulator.hpp"
#include "hdwn/verify.hpp"
#include "hdwn/whitenoise_test.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<long long> env_integer(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const long long parsed = std::strtoll(v, &end, 10);
  if (*end != '\0') throw UsageError(std::string(name) + " must be an integer");
  return parsed;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (auto env = env_integer("HDWN_THREADS"); env && *env > 0) return static_cast<int>(*env);
  return omp_get_max_threads();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hdwn::Error(hdwn::ErrorCode::io, "cannot write " + path.string());
  out << text;
}

struct TestOptions {
  std::string input;
  bool has_header = false;
  hdwn::TestConfig cfg;
  std::string output;
  int threads = 0;
};

int run_test_command(const TestOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const hdwn::SeriesMatrix x = hdwn::read_series_csv(opt.input, opt.has_header);
  hdwn::TestConfig cfg = opt.cfg;
  cfg.threads = resolve_threads(opt.threads);
  const hdwn::UStatReport report = hdwn::run_test(x, cfg);
  const double wall = seconds_since(start);

  for (const hdwn::OrderResult& r : report.orders) {
    if (r.ok) {
      std::printf("U(%lld): z = %.6f  p = %.6g  %s\n", static_cast<long long>(r.a), r.z,
                  r.p_value, r.reject ? "reject" : "do not reject");
    } else {
      std::printf("U(%lld): failed (%s: %s)\n", static_cast<long long>(r.a),
                  hdwn::to_string(*r.error), r.message.c_str());
    }
  }
  if (report.adaptive.ok) {
    std::printf("U(adp): z = %.6f  p = %.6g  %s\n", report.adaptive.z, report.adaptive.p_value,
                report.adaptive.reject ? "reject" : "do not reject");
  } else {
    std::printf("U(adp): unavailable (an order failed)\n");
  }
  for (const std::string& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

  if (!opt.output.empty()) {
    const hdwn::ReportInput input{opt.input, x.p(), x.T()};
    write_text(opt.output, hdwn::report_to_json(report, cfg, input, wall).dump(2) + "\n");
  }
  return 0;
}

struct SimulateOptions {
  std::string model = "null";
  long long p = 0;
  long long T = 0;
  std::string cov = "identity";
  std::string innov = "gaussian";
  std::string coeff;
  std::optional<unsigned long long> seed;
  std::string output;
  bool header = false;
};

int run_simulate_command(const SimulateOptions& opt) {
  const hdwn::ModelKind model = hdwn::parse_model_kind(opt.model);
  if (model == hdwn::ModelKind::null && !opt.coeff.empty()) {
    throw UsageError("--coeff is not allowed with --model null");
  }
  if (model != hdwn::ModelKind::null && opt.coeff.empty()) {
    throw UsageError("--model " + opt.model + " requires --coeff");
  }
  std::uint64_t seed = 1;
  if (opt.seed) {
    seed = *opt.seed;
  } else if (auto env = env_integer("HDWN_SEED")) {
    seed = static_cast<std::uint64_t>(*env);
  }

  const hdwn::InnovationDist innov = hdwn::parse_innovation(opt.innov);
  hdwn::RandomStream design = hdwn::derive_rep_rng(seed, hdwn::stream_domain::design, 0);
  const hdwn::CovarianceModel cov = hdwn::parse_cov_kind(opt.cov) == hdwn::CovKind::identity
                                        ? hdwn::identity_cov(opt.p)
                                        : hdwn::factor_cov(opt.p, design);
  hdwn::RandomStream rng = hdwn::derive_rep_rng(seed, hdwn::stream_domain::data, 0);
  std::optional<hdwn::SeriesMatrix> x;
  if (model == hdwn::ModelKind::null) {
    x = hdwn::gen_null(cov, innov, opt.T, rng);
  } else {
    const hdwn::DiagCoeff coeff = hdwn::coeff_matrix(hdwn::parse_coeff_kind(opt.coeff), opt.p);
    x = model == hdwn::ModelKind::var1 ? hdwn::gen_var1(cov, coeff, innov, opt.T, rng)
                                       : hdwn::gen_vma1(cov, coeff, innov, opt.T, rng);
  }
  if (opt.output.empty()) {
    hdwn::write_series_csv(std::cout, *x, opt.header);
  } else {
    hdwn::write_series_csv(opt.output, *x, opt.header);
  }
  return 0;
}

int run_study_command(const std::string& config, const std::string& output_dir, int threads) {
  std::ifstream in(config);
  if (!in) throw hdwn::Error(hdwn::ErrorCode::io, "cannot open " + config);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw hdwn::Error(hdwn::ErrorCode::parse, config + ": " + e.what());
  }
  const hdwn::ExperimentSpec spec = hdwn::spec_from_json(j);
  const auto start = std::chrono::steady_clock::now();
  const hdwn::ResultTable table = hdwn::run_study(spec, resolve_threads(threads));
  const double wall = seconds_since(start);

  std::filesystem::create_directories(output_dir);
  const std::filesystem::path dir(output_dir);
  write_text(dir / "results.csv", hdwn::table_to_csv(table));
  write_text(dir / "results.json", hdwn::table_to_json(table, wall).dump(2) + "\n");
  std::printf("%zu cells, %.1f s; wrote %s and %s\n", table.cells.size(), wall,
              (dir / "results.csv").c_str(), (dir / "results.json").c_str());
  return 0;
}

int run_verify_command(long long cases, unsigned long long seed) {
  const hdwn::VerifySummary dp = hdwn::verify_dp_against_oracle(cases, seed);
  const hdwn::VerifySummary count = hdwn::verify_count_identity();
  std::printf("dp vs enumeration: %lld cases, %lld mismatches, max rel error %.3g\n",
              static_cast<long long>(dp.cases), static_cast<long long>(dp.mismatches),
              dp.max_rel_error);
  std::printf("count identity:    %lld cases, %lld mismatches\n",
              static_cast<long long>(count.cases), static_cast<long long>(count.mismatches));
  for (const auto& f : dp.failures) std::fprintf(stderr, "  dp mismatch: %s\n", f.c_str());
  for (const auto& f : count.failures) std::fprintf(stderr, "  count mismatch: %s\n", f.c_str());
  return dp.ok() && count.ok() ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-dimensional white-noise test based on gap-constrained U-statistics"};
  app.require_subcommand(1);

  TestOptions test_opt;
  auto* test = app.add_subcommand("test", "Run the test on a series file");
  test->add_option("--input", test_opt.input, "CSV file, rows = time, columns = series")
      ->required()
      ->check(CLI::ExistingFile);
  test->add_flag("--has-header", test_opt.has_header, "Skip the first row");
  test->add_option("--q", test_opt.cfg.q, "Lag cap")->check(CLI::PositiveNumber);
  test->add_option("--orders", test_opt.cfg.orders, "Comma-separated even orders")
      ->delimiter(',');
  test->add_option("--alpha", test_opt.cfg.alpha, "Significance level");
  test->add_flag("--demean", test_opt.cfg.demean, "Subtract per-series means");
  test->add_flag("--scale", test_opt.cfg.scale, "Scale each series to unit variance");
  test->add_option("--output", test_opt.output, "Write the JSON report here");
  test->add_option("--threads", test_opt.threads, "Worker threads (default: HDWN_THREADS)");

  SimulateOptions sim_opt;
  auto* sim = app.add_subcommand("simulate", "Write a simulated series file");
  sim->add_option("--model", sim_opt.model)->check(CLI::IsMember({"null", "var1", "vma1"}));
  sim->add_option("--p", sim_opt.p)->required()->check(CLI::PositiveNumber);
  sim->add_option("--T", sim_opt.T)->required()->check(CLI::PositiveNumber);
  sim->add_option("--cov", sim_opt.cov)->check(CLI::IsMember({"identity", "factor"}));
  sim->add_option("--innov", sim_opt.innov)->check(CLI::IsMember({"gaussian", "gamma"}));
  sim->add_option("--coeff", sim_opt.coeff)
      ->check(CLI::IsMember({"dense", "sparse", "identity"}));
  sim->add_option("--seed", sim_opt.seed, "Master seed (default: HDWN_SEED or 1)");
  sim->add_option("--output", sim_opt.output, "Output CSV (default: stdout)");
  sim->add_flag("--header", sim_opt.header, "Write a header row x1,...,xp");

  std::string study_config;
  std::string study_dir;
  int study_threads = 0;
  auto* study = app.add_subcommand("study", "Run a size or power study");
  study->add_option("--config", study_config)->required()->check(CLI::ExistingFile);
  study->add_option("--output-dir", study_dir)->required();
  study->add_option("--threads", study_threads);

  long long verify_cases = 1000;
  unsigned long long verify_seed = 20240601;
  auto* verify = app.add_subcommand("verify", "Check the recursion against enumeration");
  verify->add_option("--cases", verify_cases)->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*test) return run_test_command(test_opt);
    if (*sim) return run_simulate_command(sim_opt);
    if (*study) return run_study_command(study_config, study_dir, study_threads);
    if (*verify) return run_verify_command(verify_cases, verify_seed);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const hdwn::Error& e) {
    if (e.code() == hdwn::ErrorCode::config && *test) {
      // Bad --q / --orders / --alpha values are usage errors.
      std::fprintf(stderr, "usage error: %s\n", e.what());
      return kExitUsage;
    }
    std::fprintf(stderr, "error (%s): %s\n", hdwn::to_string(e.code()), e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
