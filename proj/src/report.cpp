#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "refquest/bench.hpp"
#include "refquest/errors.hpp"

namespace refquest {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

std::string table_report(const BenchmarkReport& report) {
  std::vector<std::string> systems, environments;
  for (const auto& c : report.cells) {
    push_unique(systems, c.system);
    push_unique(environments, c.environment);
  }

  std::ostringstream out;
  out << "Mean questions per instruction (M) and SD across iteration means.\n\n";
  out << "| Environment |";
  for (const auto& s : systems) out << ' ' << s << " M | " << s << " SD |";
  out << "\n|---|";
  for (std::size_t i = 0; i < systems.size(); ++i) out << "---:|---:|";
  out << '\n';

  for (const auto& env : environments) {
    double best = 0.0;
    bool have = false;
    for (const auto& s : systems) {
      if (const auto* c = report.find(s, env); c && (!have || c->mean < best)) {
        best = c->mean;
        have = true;
      }
    }
    out << "| " << env << " |";
    for (const auto& s : systems) {
      const auto* c = report.find(s, env);
      if (!c) {
        out << " - | - |";
        continue;
      }
      // Best mean per environment is bolded; compare at printed precision.
      auto m = fixed(c->mean, 2);
      if (m == fixed(best, 2)) m = "**" + m + "**";
      out << ' ' << m << " | " << fixed(c->sd, 2) << " |";
    }
    out << '\n';
  }

  out << '\n';
  for (const auto& env : environments) {
    const CellResult* any = nullptr;
    for (const auto& s : systems) {
      if ((any = report.find(s, env))) break;
    }
    if (any) {
      out << "- " << env << ": " << any->iterations << " iterations x " << any->trials
          << " trials, base seed " << any->base_seed << '\n';
    }
    const auto* base = report.find("baseline", env);
    for (const auto& s : systems) {
      const auto* c = report.find(s, env);
      if (!base || !c || c == base) continue;
      try {
        auto w = welch_t(c->iteration_means, base->iteration_means);
        out << "  - Welch t(" << fixed(w.df, 1) << ") = " << fixed(w.t, 2) << " for " << s << " vs baseline\n";
      } catch (const InsufficientSample&) {
        out << "  - Welch t for " << s << " vs baseline: insufficient sample\n";
      }
    }
  }
  out << "- Human corpus reference (spacecraft, not recomputed): M = " << fixed(kHumanCorpusMean, 2)
      << ", SD = " << fixed(kHumanCorpusSd, 2) << '\n';
  return out.str();
}

std::string delimited_report(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "system,environment,mean_questions,sd,iterations,trials,base_seed\n";
  for (const auto& c : report.cells) {
    out << c.system << ',' << c.environment << ',' << fixed(c.mean, 6) << ',' << fixed(c.sd, 6) << ','
        << c.iterations << ',' << c.trials << ',' << c.base_seed << '\n';
  }
  return out.str();
}

using ordered = nlohmann::ordered_json;

std::string structured_report(const BenchmarkReport& report) {
  ordered cells = ordered::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"system", c.system},
                     {"environment", c.environment},
                     {"mean_questions", c.mean},
                     {"sd", c.sd},
                     {"iterations", c.iterations},
                     {"trials", c.trials},
                     {"total_episodes", c.total_episodes},
                     {"wh_questions", c.wh_questions},
                     {"yn_questions", c.yn_questions},
                     {"base_seed", c.base_seed},
                     {"iteration_seeds", c.iteration_seeds},
                     {"iteration_means", c.iteration_means}});
  }
  ordered doc = {{"metric", "mean questions per instruction"},
                 {"sd_basis", "sample SD over per-iteration means"},
                 {"human_reference", {{"environment", "spacecraft"}, {"mean", kHumanCorpusMean}, {"sd", kHumanCorpusSd}}},
                 {"cells", cells}};
  return doc.dump(2) + "\n";
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "table") return ReportFormat::table;
  if (name == "delimited" || name == "csv") return ReportFormat::delimited;
  if (name == "structured" || name == "json") return ReportFormat::structured;
  return std::nullopt;
}

std::string emit_report(const BenchmarkReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::table:
      return table_report(report);
    case ReportFormat::delimited:
      return delimited_report(report);
    case ReportFormat::structured:
      return structured_report(report);
  }
  return {};
}

BenchmarkReport parse_structured_report(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  BenchmarkReport report;
  try {
    for (const auto& c : doc.at("cells")) {
      CellResult cell;
      cell.system = c.at("system").get<std::string>();
      cell.environment = c.at("environment").get<std::string>();
      cell.mean = c.at("mean_questions").get<double>();
      cell.sd = c.at("sd").get<double>();
      cell.iterations = c.at("iterations").get<std::size_t>();
      cell.trials = c.at("trials").get<std::size_t>();
      cell.total_episodes = c.at("total_episodes").get<std::size_t>();
      cell.wh_questions = c.at("wh_questions").get<std::size_t>();
      cell.yn_questions = c.at("yn_questions").get<std::size_t>();
      cell.base_seed = c.at("base_seed").get<std::uint64_t>();
      cell.iteration_seeds = c.at("iteration_seeds").get<std::vector<std::uint64_t>>();
      cell.iteration_means = c.at("iteration_means").get<std::vector<double>>();
      report.cells.push_back(std::move(cell));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return report;
}

}  // namespace refquest
