#include "bigp/cli_app.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bigp/metrics.hpp"
#include "bigp/scenario.hpp"
#include "bigp/sim.hpp"

namespace bigp {

namespace {

struct ParsedDump {
  RouterId router;
  SimTime at;
};

std::optional<ParsedDump> parse_dump_arg(const std::string& s) {
  auto at = s.find('@');
  if (at == std::string::npos) return std::nullopt;
  auto router = parse_router_name(s.substr(0, at));
  if (!router) return std::nullopt;
  // Reuse the scenario time grammar: seconds with <= 3 decimals.
  const std::string t = s.substr(at + 1);
  auto dot = t.find('.');
  std::string whole = dot == std::string::npos ? t : t.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : t.substr(dot + 1);
  if (whole.empty() || frac.size() > 3) return std::nullopt;
  for (char c : whole + frac)
    if (!isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  while (frac.size() < 3) frac += '0';
  return ParsedDump{*router, std::stoll(whole) * kMsPerSec +
                                 (frac.empty() ? 0 : std::stoll(frac))};
}

int run_command(const std::string& scenario_path, std::optional<double> until_s,
                std::uint64_t seed, const std::vector<std::string>& dump_args,
                const std::string& trace_path, const std::string& metrics_format,
                std::ostream& out, std::ostream& err) {
  std::ifstream f(scenario_path);
  if (!f) {
    err << "error: cannot open scenario file: " << scenario_path << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << f.rdbuf();

  Scenario scenario;
  try {
    scenario = load_scenario(buf.str());
  } catch (const ScenarioError& e) {
    err << "error: " << scenario_path << ": " << e.what() << "\n";
    return 1;
  }

  std::optional<SimTime> until;
  if (until_s) until = static_cast<SimTime>(*until_s * kMsPerSec + 0.5);
  SimTime effective_until = until.value_or(scenario.run_until);

  std::vector<DumpRequest> dumps;
  std::set<RouterId> known;
  for (const RouterConfig& n : scenario.topology.nodes) known.insert(n.router_id);
  for (const std::string& d : dump_args) {
    auto parsed = parse_dump_arg(d);
    if (!parsed) {
      err << "error: bad --dump-tables argument (expected R<id>@<t>): " << d << "\n";
      return 1;
    }
    if (!known.count(parsed->router)) {
      err << "error: UnknownRouter in --dump-tables: " << d << "\n";
      return 1;
    }
    if (parsed->at > effective_until) {
      err << "error: dump time exceeds run_until: " << d << "\n";
      return 1;
    }
    dumps.push_back(DumpRequest{parsed->router, parsed->at});
  }

  RunOutputs outputs;
  try {
    outputs = run_scenario(scenario, until, seed, dumps);
  } catch (const SimError& e) {
    err << "runtime assertion: " << e.what() << "\n";
    return 2;
  }

  for (const PhaseMetrics& p : outputs.metrics.phases) {
    out << "phase " << p.index << ": ";
    if (p.converged)
      out << "converged convergence_time_s=" << format_sim_seconds(*p.convergence_ms);
    else
      out << "not_converged";
    out << "\n";
  }
  for (const std::string& d : outputs.dumps) out << d;

  if (metrics_format == "csv")
    out << metrics_to_csv(outputs.metrics);
  else
    out << metrics_to_json(outputs.metrics);

  if (!trace_path.empty()) {
    std::ofstream tf(trace_path, std::ios::binary);
    if (!tf) {
      err << "error: cannot write trace file: " << trace_path << "\n";
      return 1;
    }
    tf << outputs.trace;
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"BIGP scenario runner"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::optional<double> until_s;
  std::uint64_t seed = 0;
  std::vector<std::string> dump_args;
  std::string trace_path;
  std::string metrics_format = "json";

  CLI::App* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("--until", until_s, "override run_until (seconds)");
  run->add_option("--seed", seed, "seed for randomized knobs (none by default)");
  run->add_option("--dump-tables", dump_args,
                  "dump a router's tables at a time, e.g. R3@100.0");
  run->add_option("--trace", trace_path, "write the event trace to a file");
  run->add_option("--metrics-format", metrics_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  return run_command(scenario_path, until_s, seed, dump_args, trace_path,
                     metrics_format, out, err);
}

}  // namespace bigp
