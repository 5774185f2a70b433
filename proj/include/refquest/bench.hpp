#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refquest/dialogue.hpp"
#include "refquest/dnet.hpp"
#include "refquest/world.hpp"
#include "refquest/worlds.hpp"

namespace refquest {

enum class SystemKind { baseline, model_data, model_entropy };

std::string system_name(SystemKind kind);
std::optional<SystemKind> parse_system(std::string_view name);

/// Either one fixed world reused by every iteration, or a random-world
/// template regenerated (with a derived seed) for each iteration.
struct Environment {
  std::string name;
  std::shared_ptr<const World> fixed;
  std::optional<RandomWorldSpec> random;

  static Environment spacecraft();
  static Environment random_low(RandomWorldSpec base = {});
  static Environment random_high(RandomWorldSpec base = {});
  static Environment from_world(std::string name, std::shared_ptr<const World> world);
};

/// Looks up "spacecraft", "random-low" or "random-high".
std::optional<Environment> parse_environment(std::string_view name, const RandomWorldSpec& base = {});

struct BenchmarkSpec {
  std::vector<SystemKind> systems{SystemKind::baseline, SystemKind::model_data, SystemKind::model_entropy};
  Environment environment = Environment::spacecraft();
  std::size_t trials_per_iteration = 20;
  std::size_t iterations = 100;
  std::uint64_t base_seed = 1;
  std::size_t threads = 0;  // 0: one per hardware thread
  EpisodeOptions episode;
  FrequencyTable frequencies = default_frequency_table();

  std::vector<std::string> problems() const;
};

struct CellResult {
  std::string system;
  std::string environment;
  double mean = 0.0;  // mean questions per instruction
  double sd = 0.0;    // sample SD over iteration means
  std::vector<double> iteration_means;
  std::vector<std::uint64_t> iteration_seeds;
  std::size_t iterations = 0;
  std::size_t trials = 0;
  std::size_t total_episodes = 0;
  std::size_t wh_questions = 0;
  std::size_t yn_questions = 0;
  std::uint64_t base_seed = 0;

  bool operator==(const CellResult&) const = default;
};

struct BenchmarkReport {
  std::vector<CellResult> cells;

  const CellResult* find(std::string_view system, std::string_view environment) const;
  bool operator==(const BenchmarkReport&) const = default;
};

/// Seed of iteration i (random-world generation): derive_seed(base, {i}).
std::uint64_t iteration_seed(std::uint64_t base_seed, std::size_t iteration);
/// Seed of the baseline's question stream for one trial.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t iteration, std::size_t trial);

/// Trial t targets entity (t mod |entities|) of the iteration's world.
/// Fully reproducible from spec.base_seed; iterations may run concurrently.
/// Throws std::invalid_argument for an invalid spec and propagates episode
/// errors with iteration/trial context.
BenchmarkReport run_benchmark(const BenchmarkSpec& spec);

/// Concatenates cells of several reports.
BenchmarkReport merge_reports(std::span<const BenchmarkReport> reports);

struct SampleSummary {
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator; 0 for a single sample
};

SampleSummary summarize(std::span<const double> sample);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
};

/// Welch's unequal-variance t statistic (a minus b) and Welch-Satterthwaite
/// degrees of freedom. Throws InsufficientSample when either sample has fewer
/// than two values or both variances are zero.
WelchResult welch_t(std::span<const double> a, std::span<const double> b);

/// Human corpus reference (spacecraft only); shown in report footnotes, never
/// recomputed.
inline constexpr double kHumanCorpusMean = 1.72;
inline constexpr double kHumanCorpusSd = 0.40;

enum class ReportFormat { table, delimited, structured };

std::optional<ReportFormat> parse_report_format(std::string_view name);
std::string emit_report(const BenchmarkReport& report, ReportFormat format);
/// Inverse of the structured format. Throws ParseError.
BenchmarkReport parse_structured_report(std::string_view text);

}  // namespace refquest
