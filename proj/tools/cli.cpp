#include "cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "refquest/bench.hpp"
#include "refquest/dialogue.hpp"
#include "refquest/errors.hpp"
#include "refquest/worlds.hpp"

namespace refquest::cli {

namespace {

/// Bad flag values detected after parsing; maps to exit code 2.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("REFQUEST_SEED");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw FlagError(std::string("REFQUEST_SEED is not an unsigned integer: ") + env);
  }
}

/// Writes to stdout, or to `path` through a temporary file so a failed run
/// never leaves a partial file behind.
void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
    f.close();
    if (!f) {
      std::filesystem::remove(tmp);
      throw Error("cannot write '" + path + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

struct RandomFlags {
  std::size_t entities = RandomWorldSpec{}.n_entities;
  std::size_t properties = RandomWorldSpec{}.n_properties;
  std::size_t values = RandomWorldSpec{}.values_per_property;
  std::size_t group_size = RandomWorldSpec{}.group_size;

  void add_to(CLI::App& app) {
    app.add_option("--entities", entities, "Entities per random world")->capture_default_str();
    app.add_option("--properties", properties, "Properties per random world")->capture_default_str();
    app.add_option("--values", values, "Values per property")->capture_default_str();
    app.add_option("--group-size", group_size, "Entities sharing one instruction label")->capture_default_str();
  }

  RandomWorldSpec spec() const {
    RandomWorldSpec s;
    s.n_entities = entities;
    s.n_properties = properties;
    s.values_per_property = values;
    s.group_size = group_size;
    return s;
  }
};

FrequencyTable frequencies_from(const std::string& path) {
  if (path.empty()) return default_frequency_table();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FlagError("cannot open frequency table '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_frequency_table(buf.str());
}

AgentPolicy agent_from(const std::string& name, std::uint64_t seed, const FrequencyTable& table) {
  auto kind = parse_system(name);
  if (!kind) throw FlagError("unknown agent '" + name + "' (expected model-entropy, model-data or baseline)");
  switch (*kind) {
    case SystemKind::model_entropy:
      return ModelAgent{UtilityPolicy::entropy()};
    case SystemKind::model_data:
      return ModelAgent{UtilityPolicy::data(table)};
    case SystemKind::baseline:
      break;
  }
  return BaselineAgent{seed};
}

struct BenchFlags {
  std::string env;
  std::string systems = "baseline,model-data,model-entropy";
  std::size_t iterations = 100;
  std::size_t trials = 20;
  std::optional<std::uint64_t> seed;
  std::string format = "table";
  std::string out;
  std::size_t threads = 0;
  std::size_t max_questions = 50;
  std::string frequencies;
  RandomFlags random;
};

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  auto format = parse_report_format(f.format);
  if (!format) throw FlagError("unknown format '" + f.format + "'");
  std::vector<SystemKind> systems;
  for (const auto& name : split(f.systems, ',')) {
    auto k = parse_system(name);
    if (!k) throw FlagError("unknown system '" + name + "'");
    systems.push_back(*k);
  }
  if (systems.empty()) throw FlagError("--systems is empty");

  std::vector<std::string> env_names = split(f.env, ',');
  if (env_names.size() == 1 && env_names[0] == "all") env_names = {"spacecraft", "random-low", "random-high"};
  if (env_names.empty()) throw FlagError("--env is empty");

  BenchmarkSpec base;
  base.systems = systems;
  base.iterations = f.iterations;
  base.trials_per_iteration = f.trials;
  base.base_seed = f.seed ? *f.seed : default_seed();
  base.threads = f.threads;
  base.episode.max_questions = f.max_questions;
  base.frequencies = frequencies_from(f.frequencies);

  std::vector<BenchmarkSpec> specs;
  for (const auto& name : env_names) {
    auto env = parse_environment(name, f.random.spec());
    if (!env) throw FlagError("unknown environment '" + name + "' (expected spacecraft, random-low, random-high or all)");
    BenchmarkSpec s = base;
    s.environment = *env;
    if (auto problems = s.problems(); !problems.empty()) throw FlagError(problems.front());
    specs.push_back(std::move(s));
  }

  std::vector<BenchmarkReport> reports;
  for (const auto& s : specs) reports.push_back(run_benchmark(s));
  write_output(emit_report(merge_reports(reports), *format), f.out, out);
  return 0;
}

struct EpisodeFlags {
  std::string world = "spacecraft";
  std::string target;
  std::string label;
  std::string agent = "model-entropy";
  std::string oracle = "sim";
  std::optional<std::uint64_t> seed;
  std::size_t max_questions = 50;
  std::string format = "text";
  std::string frequencies;
  std::string out;
};

int cmd_episode(const EpisodeFlags& f, std::istream& in, std::ostream& out) {
  if (f.format != "text" && f.format != "structured") throw FlagError("unknown format '" + f.format + "'");
  if (f.oracle != "sim" && f.oracle != "human") throw FlagError("unknown oracle '" + f.oracle + "'");
  if (f.oracle == "sim" && f.target.empty()) throw FlagError("--target is required with --oracle sim");
  if (f.oracle == "human" && f.target.empty() && f.label.empty()) {
    throw FlagError("--label (or --target) is required with --oracle human");
  }
  auto agent = agent_from(f.agent, f.seed ? *f.seed : default_seed(), frequencies_from(f.frequencies));

  std::shared_ptr<const World> world =
      f.world == "spacecraft" ? spacecraft_world_ptr() : std::make_shared<const World>(load_world_file(f.world));
  EpisodeOptions options;
  options.max_questions = f.max_questions;

  EpisodeRecord record;
  if (f.oracle == "sim") {
    record = run_episode(world, f.target, agent, options);
  } else {
    std::string label = f.label.empty() ? world->entity(f.target).label : f.label;
    out << "Instruction: pick up the " << label << ". Answer yes/no or with a property value.\n";
    HumanOracle oracle(in, out, world->schema);
    record = run_episode(world, label, oracle, agent, options);
    out << "Resolved: " << record.resolved_id << " after " << record.question_count << " questions.\n";
    write_output(episode_json(record), f.out, out);
    return 0;
  }
  write_output(f.format == "text" ? format_transcript(record) : episode_json(record), f.out, out);
  return 0;
}

struct GenworldFlags {
  std::string variance = "low";
  std::optional<std::size_t> varying;
  std::optional<std::uint64_t> seed;
  std::string out;
  RandomFlags random;
};

int cmd_genworld(const GenworldFlags& f, std::ostream& out) {
  RandomWorldSpec spec = f.random.spec();
  if (f.variance == "low") {
    spec.n_varying = RandomWorldSpec::low_variance().n_varying;
  } else if (f.variance == "high") {
    spec.n_varying = RandomWorldSpec::high_variance().n_varying;
  } else {
    throw FlagError("unknown variance '" + f.variance + "' (expected low or high)");
  }
  if (f.varying) spec.n_varying = *f.varying;
  spec.seed = f.seed ? *f.seed : default_seed();
  if (auto problems = spec.problems(); !problems.empty()) throw FlagError(problems.front());
  write_output(serialize_world(generate_random_world(spec)), f.out, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clarification-question simulator for situated reference resolution", "refquest"};
  app.require_subcommand(1);

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run systems over repeated trials and report questions per instruction");
  bench_cmd->add_option("--env", bench.env, "spacecraft, random-low, random-high, a comma list, or all")->required();
  bench_cmd->add_option("--systems", bench.systems, "Comma list of baseline, model-data, model-entropy")
      ->capture_default_str();
  bench_cmd->add_option("--iterations", bench.iterations)->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials, "Trials (instructions) per iteration")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Base seed (default: $REFQUEST_SEED or 1)");
  bench_cmd->add_option("--format", bench.format, "table, delimited or structured")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Write the report here instead of stdout");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0: hardware)")->capture_default_str();
  bench_cmd->add_option("--max-questions", bench.max_questions)->capture_default_str();
  bench_cmd->add_option("--frequencies", bench.frequencies, "Question-type frequency table for model-data");
  bench.random.add_to(*bench_cmd);

  EpisodeFlags episode;
  auto* episode_cmd = app.add_subcommand("episode", "Run one dialogue episode and print its transcript");
  episode_cmd->add_option("--world", episode.world, "spacecraft or a world-config path")->capture_default_str();
  episode_cmd->add_option("--target", episode.target, "Target entity id (simulated oracle)");
  episode_cmd->add_option("--label", episode.label, "Instruction label (human oracle)");
  episode_cmd->add_option("--agent", episode.agent, "model-entropy, model-data or baseline")->capture_default_str();
  episode_cmd->add_option("--oracle", episode.oracle, "sim or human")->capture_default_str();
  episode_cmd->add_option("--seed", episode.seed, "Baseline seed (default: $REFQUEST_SEED or 1)");
  episode_cmd->add_option("--max-questions", episode.max_questions)->capture_default_str();
  episode_cmd->add_option("--format", episode.format, "text or structured")->capture_default_str();
  episode_cmd->add_option("--frequencies", episode.frequencies, "Question-type frequency table for model-data");
  episode_cmd->add_option("--out", episode.out, "Write the transcript here instead of stdout");

  GenworldFlags genworld;
  auto* genworld_cmd = app.add_subcommand("genworld", "Generate a random task world config");
  genworld_cmd->add_option("--variance", genworld.variance, "low or high")->capture_default_str();
  genworld_cmd->add_option("--varying", genworld.varying, "Override the number of varying properties");
  genworld_cmd->add_option("--seed", genworld.seed, "World seed (default: $REFQUEST_SEED or 1)");
  genworld_cmd->add_option("--out", genworld.out, "Write the world here instead of stdout");
  genworld.random.add_to(*genworld_cmd);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*bench_cmd) return cmd_bench(bench, out);
    if (*episode_cmd) return cmd_episode(episode, in, out);
    if (*genworld_cmd) return cmd_genworld(genworld, out);
  } catch (const FlagError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace refquest::cli
