// Copyright 2026 The Glove Twin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// glove: simulate, receive, record, inspect and evaluate data-glove streams.
//
// Machine-readable output goes to stdout (JSON or JSON Lines); progress and
// warnings go to stderr. Exit codes: 0 ok, 2 config/usage, 3 network,
// 4 data integrity.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "glove/config.hpp"
#include "glove/driver.hpp"
#include "glove/errors.hpp"
#include "glove/eval.hpp"
#include "glove/glove_sim.hpp"
#include "glove/hand_model.hpp"
#include "glove/topology.hpp"
#include "json.hpp"

namespace {

using namespace glove;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNetwork = 3;
constexpr int kExitData = 4;

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted = true; }

std::uint64_t wall_epoch_ms() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
          .count());
}

config::RunConfig load_config(const std::string& path) {
  return path.empty() ? config::parse_run_config("{}") : config::load_run_config(path);
}

std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& target) {
  const auto colon = target.rfind(':');
  if (colon == std::string::npos || colon == 0) throw ConfigError("target must be host:port, got \"" + target + "\"");
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(target.substr(colon + 1), &used);
    if (used != target.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ConfigError("bad port in target \"" + target + "\"");
  }
  if (port <= 0 || port > 65535) throw ConfigError("port out of range in target \"" + target + "\"");
  return {target.substr(0, colon), static_cast<std::uint16_t>(port)};
}

driver::Recording open_recording(const std::string& path) {
  if (!std::ifstream(path, std::ios::binary)) throw ConfigError("cannot open recording " + path);
  return driver::read_recording(path);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text << '\n';
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config_path;
  std::string duration = "10s";
  bool until_empty = false;
  std::string target;
  std::string to_file;
  std::optional<std::uint64_t> seed;
  double speed = 1.0;
};

int cmd_simulate(const SimulateArgs& a) {
  config::RunConfig rc = load_config(a.config_path);
  if (a.seed) rc.sim.seed = *a.seed;
  const double duration_ms = a.until_empty ? 0.0 : config::parse_duration_ms(a.duration);

  json summary;
  if (!a.to_file.empty()) {
    // Simulated time: arrival offsets are the simulated send times.
    sim::GloveSim sim(rc.sim);
    driver::RecordingWriter rec(a.to_file, wall_epoch_ms());
    std::ofstream truth(a.to_file + ".truth.jsonl");
    if (!truth) throw ConfigError("cannot write " + a.to_file + ".truth.jsonl");
    std::uint64_t packets = 0, cycles = 0;
    while ((a.until_empty || sim.clock_ms() < duration_ms) && !sim.battery_empty()) {
      const auto c = sim.step();
      ++cycles;
      for (const auto& t : c.truth) truth << sim::truth_json_line(t) << '\n';
      if (!c.packet) continue;
      rec.append(static_cast<std::uint32_t>(std::llround(c.send_time_ms)), wire::encode(*c.packet));
      ++packets;
    }
    rec.flush();
    summary = {{"packets", packets},
               {"cycles", cycles},
               {"link_losses", sim.link_losses()},
               {"end_time_ms", sim.clock_ms()},
               {"battery_empty", sim.battery_empty()}};
    std::ofstream meta(a.to_file + ".meta.json");
    meta << json{{"config_digest", config::digest(rc.sim)},
                 {"seed", rc.sim.seed},
                 {"config", json::parse(config::canonical_json(rc.sim))}}
                .dump(2)
         << '\n';
    std::cerr << "wrote " << packets << " packets to " << a.to_file << '\n';
  } else {
    auto [host, port] = a.target.empty() ? std::pair{rc.network.host, rc.network.port} : parse_endpoint(a.target);
    sim::UdpSink sink(host, port);
    sim::RunOptions opts;
    opts.duration_ms = duration_ms;
    opts.until_empty = a.until_empty;
    opts.realtime_speed = a.speed;
    opts.keep_packets = false;
    opts.keep_truth = false;
    std::cerr << "streaming to " << host << ':' << port << " at " << a.speed << "x real time\n";
    const sim::SessionLog log = sim::run(rc.sim, opts, &sink);
    sink.flush();
    summary = {{"packets", sink.sent()},
               {"cycles", log.cycles},
               {"link_losses", log.link_losses},
               {"queue_drops", sink.dropped()},
               {"end_time_ms", log.end_time_ms},
               {"battery_empty", log.battery_empty}};
  }
  summary["config_digest"] = config::digest(rc.sim);
  summary["seed"] = rc.sim.seed;
  std::cout << summary.dump() << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ listen

struct ListenArgs {
  std::optional<int> port;
  std::string record;
  double stats_interval_s = 5.0;
  std::string duration;
  double time_scale = 1.0;
};

int cmd_listen(const ListenArgs& a) {
  const int port = a.port.value_or(config::default_port());
  if (port < 0 || port > 65535) throw ConfigError("port out of range");
  if (!(a.stats_interval_s > 0.0)) throw ConfigError("--stats-interval must be > 0");
  const double limit_ms = a.duration.empty() ? 0.0 : config::parse_duration_ms(a.duration);

  driver::Session session;
  auto receiver = driver::listen(session, static_cast<std::uint16_t>(port), a.time_scale);
  std::cerr << "listening on udp port " << receiver->port() << '\n';
  std::optional<driver::RecordingWriter> rec;
  if (!a.record.empty()) rec.emplace(a.record, wall_epoch_ms());

  std::signal(SIGINT, on_sigint);
  std::signal(SIGTERM, on_sigint);
  const auto start = std::chrono::steady_clock::now();
  auto next_report = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(a.stats_interval_s));
  std::uint64_t window_packets = 0;

  auto print_stats = [&](bool final) {
    json line = {{"window_rate_hz", static_cast<double>(window_packets) / (a.stats_interval_s * a.time_scale)},
                 {"received", session.received()},
                 {"malformed", session.malformed()}};
    try {
      line["session"] = json::parse(session.stats().to_json());
    } catch (const TooShort&) {
      line["session"] = nullptr;
    }
    if (final) {
      line = line["session"].is_null() ? json{{"received", session.received()}, {"malformed", session.malformed()}}
                                       : line["session"];
      line["final"] = true;
    }
    std::cout << line.dump() << std::endl;
  };

  while (!g_interrupted) {
    const auto now = std::chrono::steady_clock::now();
    if (limit_ms > 0.0 && std::chrono::duration<double, std::milli>(now - start).count() >= limit_ms) break;
    if (now >= next_report) {
      print_stats(false);
      window_packets = 0;
      next_report += std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(a.stats_interval_s));
    }
    auto arrival = session.next(std::chrono::milliseconds(50));
    if (!arrival) continue;
    ++window_packets;
    if (rec) rec->append(static_cast<std::uint32_t>(std::llround(arrival->arrival_ms)), arrival->payload);
  }
  receiver->stop();
  while (auto arrival = session.next(std::chrono::milliseconds(0))) {
    if (rec) rec->append(static_cast<std::uint32_t>(std::llround(arrival->arrival_ms)), arrival->payload);
  }
  if (rec) rec->flush();
  print_stats(true);
  return kExitOk;
}

// -------------------------------------------------------- export / report

int cmd_export(const std::string& input, const std::string& csv_path) {
  const driver::Recording r = open_recording(input);
  std::size_t rows = 0;
  if (csv_path == "-") {
    rows = driver::export_csv(r, std::cout);
  } else {
    std::ofstream out(csv_path);
    if (!out) throw ConfigError("cannot write " + csv_path);
    rows = driver::export_csv(r, out);
  }
  std::cerr << "exported " << rows << " samples\n";
  return kExitOk;
}

int cmd_report(const std::string& input) {
  const driver::Recording r = open_recording(input);
  driver::Session session(r.frames.size() + 1);
  for (const auto& f : r.frames) session.ingest(f.arrival_offset_ms, f.payload);
  std::cout << session.stats().to_json() << '\n';
  return kExitOk;
}

// -------------------------------------------------------------------- pose

int cmd_pose(const std::string& input, const std::string& topology_path) {
  const SensorTopology topo = topology_path.empty() ? default_topology() : load_topology(topology_path);
  const driver::Recording r = open_recording(input);
  for (const auto& p : driver::decode_recording(r)) {
    const hand::HandPose pose = hand::compute_pose(p.packet, topo);
    for (const auto& w : pose.warnings) std::cerr << "seq " << p.packet.sequence << ": " << w << '\n';
    std::cout << hand::to_json_line(pose, p.offset_ms, p.packet.sequence) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string kind;
  std::string config_path;
  std::string duration;
  int trials = 1;
  std::optional<std::uint64_t> seed;
  std::string output;
};

int cmd_evaluate(const EvaluateArgs& a) {
  config::RunConfig rc = load_config(a.config_path);
  if (a.seed) rc.sim.seed = *a.seed;
  eval::TestKind kind = eval::TestKind::kStatic;
  std::string duration = a.duration;
  if (a.kind == "static") {
    if (duration.empty()) duration = "30m";
  } else if (a.kind == "dynamic") {
    kind = eval::TestKind::kDynamic;
    if (duration.empty()) duration = "45m";
    if (rc.sim.trajectory.kind == sim::TrajectoryKind::kStaticPose) {
      std::cerr << "config has a static trajectory; using random_motion\n";
      rc.sim.trajectory.kind = sim::TrajectoryKind::kRandomMotion;
    }
  } else {
    kind = eval::TestKind::kAutonomy;
  }
  const double duration_s = kind == eval::TestKind::kAutonomy ? 0.0 : config::parse_duration_ms(duration) / 1000.0;
  write_output(eval::run_trials(kind, rc.sim, duration_s, a.trials), a.output);
  return kExitOk;
}

int run_guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TopologyInvalid& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NetworkError& e) {
    std::cerr << "network error: " << e.what() << '\n';
    return kExitNetwork;
  } catch (const RecordingCorrupt& e) {
    std::cerr << "corrupt recording: " << e.what() << '\n';
    return kExitData;
  } catch (const MissingReference& e) {
    std::cerr << "missing reference: " << e.what() << '\n';
    return kExitData;
  } catch (const ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << '\n';
    return kExitData;
  } catch (const TooShort& e) {
    std::cerr << "too short: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IMU data-glove simulator, driver and evaluation tools"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run the virtual glove and stream or record its packets");
  simulate->add_option("-c,--config", sim_args.config_path, "Run config JSON")->check(CLI::ExistingFile);
  auto* dur = simulate->add_option("--duration", sim_args.duration, "Simulated duration (e.g. 10s, 30m, 1h)");
  simulate->add_flag("--until-empty", sim_args.until_empty, "Run until the battery is empty")->excludes(dur);
  auto* target = simulate->add_option("--target", sim_args.target, "Stream UDP to host:port (real time)");
  simulate->add_option("--to-file", sim_args.to_file, "Write a recording plus truth sidecar instead")->excludes(target);
  simulate->add_option("--seed", sim_args.seed, "Override the config seed");
  simulate->add_option("--speed", sim_args.speed, "Real-time multiplier when streaming")->check(CLI::PositiveNumber);

  ListenArgs listen_args;
  auto* listen = app.add_subcommand("listen", "Receive packets and print rolling statistics");
  listen->add_option("--port", listen_args.port, "UDP port (default GLOVE_PORT or 9750)");
  listen->add_option("--record", listen_args.record, "Write a recording file");
  listen->add_option("--stats-interval", listen_args.stats_interval_s, "Seconds between stats lines");
  listen->add_option("--duration", listen_args.duration, "Stop after this wall-clock time");
  listen->add_option("--time-scale", listen_args.time_scale, "Multiply arrival times (for accelerated senders)")
      ->check(CLI::PositiveNumber);

  std::string export_input, export_csv;
  auto* exp = app.add_subcommand("export", "Convert a recording");
  exp->add_option("-i,--input", export_input, "Recording file")->required();
  exp->add_option("--to-csv", export_csv, "CSV output path, - for stdout")->required();

  std::string pose_input, pose_topology;
  auto* pose = app.add_subcommand("pose", "Emit hand poses (JSON Lines) from a recording");
  pose->add_option("-i,--input", pose_input, "Recording file")->required();
  pose->add_option("--topology", pose_topology, "Topology JSON (default: 11-sensor right hand)");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Run the drift and autonomy protocols");
  evaluate->add_option("kind", eval_args.kind, "static | dynamic | autonomy")
      ->required()
      ->check(CLI::IsMember({"static", "dynamic", "autonomy"}));
  evaluate->add_option("-c,--config", eval_args.config_path, "Run config JSON")->check(CLI::ExistingFile);
  evaluate->add_option("--duration", eval_args.duration, "Session length (default 30m static, 45m dynamic)");
  evaluate->add_option("--trials", eval_args.trials, "Number of seeded trials");
  evaluate->add_option("--seed", eval_args.seed, "Override the config seed");
  evaluate->add_option("-o,--output", eval_args.output, "Write the report here instead of stdout");

  std::string report_input;
  auto* report = app.add_subcommand("report", "Session statistics of a recording");
  report->add_option("-i,--input", report_input, "Recording file")->required();

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

  if (*simulate) return run_guarded([&] { return cmd_simulate(sim_args); });
  if (*listen) return run_guarded([&] { return cmd_listen(listen_args); });
  if (*exp) return run_guarded([&] { return cmd_export(export_input, export_csv); });
  if (*pose) return run_guarded([&] { return cmd_pose(pose_input, pose_topology); });
  if (*evaluate) return run_guarded([&] { return cmd_evaluate(eval_args); });
  if (*report) return run_guarded([&] { return cmd_report(report_input); });
  return kExitUsage;
}
