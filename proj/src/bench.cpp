#include "refquest/bench.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "refquest/errors.hpp"
#include "refquest/rng.hpp"

namespace refquest {

std::string system_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::baseline:
      return "baseline";
    case SystemKind::model_data:
      return "model-data";
    case SystemKind::model_entropy:
      return "model-entropy";
  }
  return "unknown";
}

std::optional<SystemKind> parse_system(std::string_view name) {
  for (auto k : {SystemKind::baseline, SystemKind::model_data, SystemKind::model_entropy}) {
    if (system_name(k) == name) return k;
  }
  return std::nullopt;
}

Environment Environment::spacecraft() { return {"spacecraft", spacecraft_world_ptr(), std::nullopt}; }

Environment Environment::random_low(RandomWorldSpec base) {
  base.n_varying = RandomWorldSpec::low_variance().n_varying;
  return {"random-low", nullptr, base};
}

Environment Environment::random_high(RandomWorldSpec base) {
  base.n_varying = RandomWorldSpec::high_variance().n_varying;
  return {"random-high", nullptr, base};
}

Environment Environment::from_world(std::string name, std::shared_ptr<const World> world) {
  return {std::move(name), std::move(world), std::nullopt};
}

std::optional<Environment> parse_environment(std::string_view name, const RandomWorldSpec& base) {
  if (name == "spacecraft") return Environment::spacecraft();
  if (name == "random-low") return Environment::random_low(base);
  if (name == "random-high") return Environment::random_high(base);
  return std::nullopt;
}

std::vector<std::string> BenchmarkSpec::problems() const {
  std::vector<std::string> out;
  if (systems.empty()) out.push_back("no systems to evaluate");
  if (trials_per_iteration == 0) out.push_back("trials_per_iteration must be at least 1");
  if (iterations == 0) out.push_back("iterations must be at least 1");
  if (!environment.fixed && !environment.random) out.push_back("environment has no world");
  if (environment.random) {
    for (auto& p : environment.random->problems()) out.push_back(p);
  }
  return out;
}

const CellResult* BenchmarkReport::find(std::string_view system, std::string_view environment) const {
  for (const auto& c : cells) {
    if (c.system == system && c.environment == environment) return &c;
  }
  return nullptr;
}

std::uint64_t iteration_seed(std::uint64_t base_seed, std::size_t iteration) {
  return derive_seed(base_seed, {iteration});
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t iteration, std::size_t trial) {
  return derive_seed(base_seed, {iteration, trial, 0xba5eULL});
}

namespace {

struct IterationResult {
  std::vector<std::size_t> questions;  // per system
  std::vector<std::size_t> wh;
  std::vector<std::size_t> yn;
};

AgentPolicy make_agent(SystemKind kind, const BenchmarkSpec& spec, std::size_t iteration, std::size_t trial) {
  switch (kind) {
    case SystemKind::model_entropy:
      return ModelAgent{UtilityPolicy::entropy()};
    case SystemKind::model_data:
      return ModelAgent{UtilityPolicy::data(spec.frequencies)};
    case SystemKind::baseline:
      break;
  }
  return BaselineAgent{trial_seed(spec.base_seed, iteration, trial)};
}

IterationResult run_iteration(const BenchmarkSpec& spec, std::size_t iteration) {
  std::shared_ptr<const World> world = spec.environment.fixed;
  if (!world) {
    RandomWorldSpec rs = *spec.environment.random;
    rs.seed = iteration_seed(spec.base_seed, iteration);
    world = std::make_shared<const World>(generate_random_world(rs));
  }
  IterationResult r;
  r.questions.assign(spec.systems.size(), 0);
  r.wh.assign(spec.systems.size(), 0);
  r.yn.assign(spec.systems.size(), 0);
  for (std::size_t trial = 0; trial < spec.trials_per_iteration; ++trial) {
    const auto& target = world->entities[trial % world->entities.size()].id;
    for (std::size_t s = 0; s < spec.systems.size(); ++s) {
      auto agent = make_agent(spec.systems[s], spec, iteration, trial);
      EpisodeRecord rec;
      try {
        rec = run_episode(world, target, agent, spec.episode);
      } catch (const BudgetExceeded& e) {
        throw BudgetExceeded(spec.environment.name + " iteration " + std::to_string(iteration) + " trial " +
                             std::to_string(trial) + " target '" + target + "': " + e.what());
      }
      r.questions[s] += rec.question_count;
      r.wh[s] += rec.count(QuestionKind::wh);
      r.yn[s] += rec.count(QuestionKind::yn);
    }
  }
  return r;
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkSpec& spec) {
  if (auto problems = spec.problems(); !problems.empty()) {
    std::string msg = "invalid benchmark spec:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw std::invalid_argument(msg);
  }

  std::vector<IterationResult> results(spec.iterations);
  std::vector<std::exception_ptr> errors(spec.iterations);
  std::size_t threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, spec.iterations);

  // Static striping: worker w handles iterations w, w + threads, ...
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < spec.iterations; i += threads) {
      try {
        results[i] = run_iteration(spec, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  BenchmarkReport report;
  for (std::size_t s = 0; s < spec.systems.size(); ++s) {
    CellResult cell;
    cell.system = system_name(spec.systems[s]);
    cell.environment = spec.environment.name;
    cell.iterations = spec.iterations;
    cell.trials = spec.trials_per_iteration;
    cell.total_episodes = spec.iterations * spec.trials_per_iteration;
    cell.base_seed = spec.base_seed;
    for (std::size_t i = 0; i < spec.iterations; ++i) {
      cell.iteration_means.push_back(static_cast<double>(results[i].questions[s]) /
                                     static_cast<double>(spec.trials_per_iteration));
      cell.iteration_seeds.push_back(iteration_seed(spec.base_seed, i));
      cell.wh_questions += results[i].wh[s];
      cell.yn_questions += results[i].yn[s];
    }
    auto summary = summarize(cell.iteration_means);
    cell.mean = summary.mean;
    cell.sd = summary.sd;
    report.cells.push_back(std::move(cell));
  }
  return report;
}

BenchmarkReport merge_reports(std::span<const BenchmarkReport> reports) {
  BenchmarkReport out;
  for (const auto& r : reports) out.cells.insert(out.cells.end(), r.cells.begin(), r.cells.end());
  return out;
}

SampleSummary summarize(std::span<const double> sample) {
  SampleSummary s;
  if (sample.empty()) return s;
  // A constant sample is reported exactly; summation would leave rounding residue.
  if (std::all_of(sample.begin(), sample.end(), [&](double x) { return x == sample.front(); })) {
    s.mean = sample.front();
    return s;
  }
  const double n = static_cast<double>(sample.size());
  double sum = 0.0;
  for (double x : sample) sum += x;
  s.mean = sum / n;
  if (sample.size() > 1) {
    double ss = 0.0;
    for (double x : sample) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

WelchResult welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw InsufficientSample("welch_t needs at least two values per sample");
  }
  auto sa = summarize(a);
  auto sb = summarize(b);
  const double va = sa.sd * sa.sd / static_cast<double>(a.size());
  const double vb = sb.sd * sb.sd / static_cast<double>(b.size());
  const double se2 = va + vb;
  if (se2 <= 0.0) throw InsufficientSample("welch_t: both samples have zero variance");
  WelchResult r;
  r.t = (sa.mean - sb.mean) / std::sqrt(se2);
  const double denom = (va > 0.0 ? va * va / static_cast<double>(a.size() - 1) : 0.0) +
                       (vb > 0.0 ? vb * vb / static_cast<double>(b.size() - 1) : 0.0);
  r.df = se2 * se2 / denom;
  return r;
}

}  // namespace refquest
