// Copyright 2026 The infoeff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. Kept in a header so tests can drive `run` in
// process with captured streams.
//
//   infoeff measure  --in samples.csv [--quotes quotes.csv] [--smoothing S] [--resamples B]
//   infoeff coin     --p-tail P --accuracy A --q-tail Q
//   infoeff simulate --p-tail P --accuracy A --q-tail Q --rounds N --runs R [--trajectory path]
//   infoeff figures  --which {1,2,3,4,all} --out-dir DIR [--format svg]
//
// Exit codes: 0 ok, 2 parse, 3 domain, 4 I/O.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infoeff/infoeff.hpp"

namespace infoeff::app {

enum ExitCode : int { kOk = 0, kParse = 2, kDomain = 3, kIo = 4 };

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::EmptyInput: return kParse;
    case ErrorKind::Io: return kIo;
    default: return kDomain;
  }
}

/// Everything that determines a run.
struct RunConfig {
  std::string subcommand;
  std::string in_path;
  std::string out_path;
  std::string out_dir = ".";
  std::string format;
  std::string quotes_path;
  std::string quote_values;
  std::string info_set;
  std::string which = "all";
  std::string trajectory_path;
  std::uint64_t seed = estimation::kDefaultSeed;
  std::uint64_t rounds = 100000;
  std::uint64_t stride = 1000;
  std::size_t runs = 1;
  std::size_t resamples = 1000;
  std::size_t grid_points = 1001;
  double smoothing = 0.5;
  double p_tail = 0.5;
  double accuracy = 0.5;
  double q_tail = 0.5;
};

namespace detail {

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  return in;
}

// Writes `text` to the configured destination.
inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot open '" + cfg.out_path + "' for writing");
  file << text;
  if (!file) throw Error(ErrorKind::Io, "write to '" + cfg.out_path + "' failed");
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  file << text;
  if (!file) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

// "h=0.5,t=0.5"
inline Distribution parse_quote_values(const std::string& text) {
  std::vector<Label> labels;
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  std::size_t column = 1;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError(1, column, "quote '" + item + "' is not of the form label=q");
    }
    const std::string number = item.substr(eq + 1);
    double q = 0.0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), q);
    if (ec != std::errc() || ptr != number.data() + number.size()) {
      throw ParseError(1, column + eq + 1, "'" + number + "' is not a number");
    }
    labels.push_back(item.substr(0, eq));
    values.push_back(q);
    column += item.size() + 1;
  }
  return make_quotes(std::move(labels), std::move(values));
}

inline coin::CoinGameParams coin_params(const RunConfig& cfg) {
  coin::CoinGameParams p{cfg.p_tail, cfg.accuracy, cfg.q_tail};
  p.validate();
  return p;
}

}  // namespace detail

inline int cmd_measure(const RunConfig& cfg, std::ostream& out) {
  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (format == "svg") throw ParseError(1, 1, "measure writes json or csv, not svg");
  auto in = detail::open_in(cfg.in_path);
  const auto samples = estimation::read_samples(in);

  std::optional<Distribution> quotes;
  if (!cfg.quotes_path.empty()) {
    auto qin = detail::open_in(cfg.quotes_path);
    quotes = estimation::read_quotes(qin);
  } else if (!cfg.quote_values.empty()) {
    quotes = detail::parse_quote_values(cfg.quote_values);
  }

  estimation::EstimateOptions options;
  options.smoothing = cfg.smoothing;
  options.resamples = cfg.resamples;
  options.seed = cfg.seed;
  if (!cfg.info_set.empty()) options.info_set = InfoSetLabel::parse(cfg.info_set);
  const auto report = estimation::estimate_efficiency(samples, options, quotes);

  const auto j = to_json(report);
  if (format == "csv") {
    std::ostringstream csv;
    write_flat_csv(csv, j);
    detail::emit(cfg, out, csv.str());
  } else {
    detail::emit(cfg, out, detail::dump(j));
  }
  return kOk;
}

/// General-pipeline report, the closed-form values and their largest
/// absolute difference.
inline nlohmann::ordered_json coin_report(const coin::CoinGameParams& params, const InfoSetLabel& info_set) {
  const auto system = coin::coin_joint(params);
  const auto general = efficiency_with_quotes(system.joint, system.quotes, info_set);
  const auto closed = coin::closed_form_report(params);

  nlohmann::ordered_json j;
  j["p_tail"] = params.p_tail;
  j["accuracy"] = params.accuracy;
  j["q_tail"] = params.q_tail;
  const auto fields = to_json(general);
  for (const auto& [key, value] : fields.items()) j[key] = value;
  j["closed_form_h_x"] = closed.h_x.value();
  j["closed_form_h_x_given_y"] = closed.h_x_given_y.value();
  j["closed_form_h_q"] = closed.h_q.value();
  if (closed.eff) j["closed_form_eff"] = *closed.eff;
  j["closed_form_eff_q"] = closed.eff_q;
  j["closed_form_g_max"] = closed.g_max.value();
  j["closed_form_g_max_q"] = closed.g_max_q.value();

  double delta = 0.0;
  auto track = [&](double a, double b) { delta = std::max(delta, std::abs(a - b)); };
  track(general.h_x.value(), closed.h_x.value());
  track(general.h_x_given_y.value(), closed.h_x_given_y.value());
  track(general.h_q->value(), closed.h_q.value());
  if (general.eff && closed.eff) track(*general.eff, *closed.eff);
  track(*general.eff_q, closed.eff_q);
  track(general.g_max.value(), closed.g_max.value());
  track(general.g_max_q->value(), closed.g_max_q.value());
  j["consistency_delta"] = delta;
  return j;
}

inline int cmd_coin(const RunConfig& cfg, std::ostream& out) {
  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (format == "svg") throw ParseError(1, 1, "coin writes json or csv, not svg");
  const auto params = detail::coin_params(cfg);
  const auto info = cfg.info_set.empty() ? InfoSetLabel::strong() : InfoSetLabel::parse(cfg.info_set);
  const auto j = coin_report(params, info);
  if (format == "csv") {
    std::ostringstream csv;
    write_flat_csv(csv, j);
    detail::emit(cfg, out, csv.str());
  } else {
    detail::emit(cfg, out, detail::dump(j));
  }
  return kOk;
}

inline int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  if (format == "svg") throw ParseError(1, 1, "simulate writes csv or json, not svg");
  if (cfg.rounds < 1) throw Error(ErrorKind::DomainViolation, "rounds must be at least 1");
  if (cfg.runs < 1) throw Error(ErrorKind::DomainViolation, "runs must be at least 1");
  const auto params = detail::coin_params(cfg);
  const auto prior = make_distribution(coin::labels(), {1.0 - params.p_tail, params.p_tail});
  const auto channel = symmetric_channel(coin::labels(), params.accuracy);
  const auto quotes = make_quotes(coin::labels(), {1.0 - params.q_tail, params.q_tail});
  const kelly::Market market(prior, channel, quotes);
  const auto strategy = kelly::kelly_strategy(prior, channel);
  const double target = max_growth_q(market.joint(), quotes).value();
  const std::uint64_t stride = cfg.trajectory_path.empty() ? 0 : std::max<std::uint64_t>(1, cfg.stride);
  const auto results = kelly::simulate_runs(market, strategy, cfg.rounds, cfg.seed, cfg.runs, stride);

  double mean = 0.0;
  for (const auto& r : results) mean += r.mean_growth;
  mean /= static_cast<double>(results.size());

  std::ostringstream text;
  if (format == "json") {
    nlohmann::ordered_json j;
    j["p_tail"] = params.p_tail;
    j["accuracy"] = params.accuracy;
    j["q_tail"] = params.q_tail;
    j["rounds"] = cfg.rounds;
    j["seed"] = cfg.seed;
    j["target"] = target;
    auto runs = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      nlohmann::ordered_json row;
      row["run"] = r.stream;
      row["final_log2_wealth"] = r.final_log2_wealth;
      row["mean_growth"] = r.mean_growth;
      row["abs_error"] = std::abs(r.mean_growth - target);
      if (r.bankrupt_round) row["bankrupt_round"] = *r.bankrupt_round;
      runs.push_back(row);
    }
    j["runs"] = runs;
    j["mean_growth"] = mean;
    j["abs_error"] = std::abs(mean - target);
    text << detail::dump(j);
  } else {
    text << "run,seed,rounds,final_log2_wealth,mean_growth,target,abs_error,bankrupt_round\n";
    for (const auto& r : results) {
      text << r.stream << "," << r.seed << "," << r.rounds << "," << format_number(r.final_log2_wealth) << ","
           << format_number(r.mean_growth) << "," << format_number(target) << ","
           << format_number(std::abs(r.mean_growth - target)) << ","
           << (r.bankrupt_round ? std::to_string(*r.bankrupt_round) : "") << "\n";
    }
    text << "mean," << cfg.seed << "," << cfg.rounds << ",," << format_number(mean) << "," << format_number(target)
         << "," << format_number(std::abs(mean - target)) << ",\n";
  }
  detail::emit(cfg, out, text.str());

  if (!cfg.trajectory_path.empty()) {
    std::ostringstream traj;
    write_trajectory_csv(traj, results.front());
    detail::write_file(cfg.trajectory_path, traj.str());
  }
  return kOk;
}

struct FigureSpec {
  int number;
  coin::Curve curve;
  svg::ChartSpec chart;
};

inline std::vector<FigureSpec> figure_specs() {
  return {
      {1, coin::Curve::EffVsAccuracy, {"Efficiency of a fair coin vs. signal accuracy", "p(y|x)", "Eff(X|Y)"}},
      {2, coin::Curve::EntropyVsPTail, {"Entropy of the coin vs. p(x='t')", "p(x='t')", "H(X) [bits]"}},
      {3, coin::Curve::EffVsQ, {"Efficiency of a fair unpredictable coin vs. quote", "q(x)", "Eff_q(X|Y)"}},
      {4, coin::Curve::HqVsQ, {"Quote entropy of a fair coin vs. quote", "q(x)", "H(q) [bits]"}},
  };
}

inline int cmd_figures(const RunConfig& cfg, std::ostream& out) {
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  if (format != "csv" && format != "svg") throw ParseError(1, 1, "figures writes csv or svg");
  std::vector<int> wanted;
  if (cfg.which == "all") {
    wanted = {1, 2, 3, 4};
  } else if (cfg.which.size() == 1 && cfg.which[0] >= '1' && cfg.which[0] <= '4') {
    wanted = {cfg.which[0] - '0'};
  } else {
    throw ParseError(1, 1, "--which must be 1, 2, 3, 4 or all");
  }
  const std::filesystem::path dir = cfg.out_path.empty() ? cfg.out_dir : cfg.out_path;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir.string() + "': " + ec.message());

  for (const auto& fig : figure_specs()) {
    if (std::find(wanted.begin(), wanted.end(), fig.number) == wanted.end()) continue;
    auto grid = coin::default_grid(fig.curve);
    grid.points = cfg.grid_points;
    const auto rows = coin::sweep(fig.curve, grid);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    const auto stem = "fig" + std::to_string(fig.number);
    detail::write_file(dir / (stem + ".csv"), csv.str());
    out << (dir / (stem + ".csv")).string() << "\n";
    if (format == "svg") {
      auto chart = fig.chart;
      double top = 0.0;
      for (const auto& r : rows) top = std::max(top, r.value);
      chart.y_max = std::max(1.0, std::ceil(top));
      std::ostringstream image;
      svg::write_line_chart(image, chart, rows);
      detail::write_file(dir / (stem + ".svg"), image.str());
      out << (dir / (stem + ".svg")).string() << "\n";
    }
  }
  return kOk;
}

/// Parses `args` (without the program name) and runs the subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Entropy-based efficiency of event-generating systems"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "svg", "json"}));
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  };
  auto add_coin = [&](CLI::App* sub) {
    sub->add_option("--p-tail", cfg.p_tail, "p(x='t')")->capture_default_str();
    sub->add_option("--accuracy", cfg.accuracy, "Signal accuracy p(y=x|x)")->capture_default_str();
    sub->add_option("--q-tail", cfg.q_tail, "Quote probability q(x='t')")->capture_default_str();
  };

  auto* measure = app.add_subcommand("measure", "Estimate efficiency from (signal, outcome) samples");
  add_common(measure);
  measure->add_option("--in", cfg.in_path, "Sample CSV with header signal,outcome")->required();
  measure->add_option("--quotes", cfg.quotes_path, "Quote sidecar CSV with header label,q");
  measure->add_option("--quote-values", cfg.quote_values, "Inline quotes, e.g. h=0.5,t=0.5");
  measure->add_option("--smoothing", cfg.smoothing, "Additive smoothing per cell")->capture_default_str();
  measure->add_option("--resamples", cfg.resamples, "Bootstrap resamples")->capture_default_str();
  measure->add_option("--info-set", cfg.info_set, "weak, semi_strong, strong or a custom name");

  auto* coin_cmd = app.add_subcommand("coin", "Coin-toss system: closed forms against the general measures");
  add_common(coin_cmd);
  add_coin(coin_cmd);
  coin_cmd->add_option("--info-set", cfg.info_set, "weak, semi_strong, strong or a custom name");

  auto* simulate = app.add_subcommand("simulate", "Kelly betting on the coin-toss system");
  add_common(simulate);
  add_coin(simulate);
  simulate->add_option("--rounds", cfg.rounds, "Rounds per run")->capture_default_str();
  simulate->add_option("--runs", cfg.runs, "Independent runs")->capture_default_str();
  simulate->add_option("--trajectory", cfg.trajectory_path, "Write run 0's log2 wealth path as CSV");
  simulate->add_option("--stride", cfg.stride, "Rounds between trajectory points")->capture_default_str();

  auto* figures = app.add_subcommand("figures", "Write the coin-toss curves as CSV (and SVG)");
  add_common(figures);
  figures->add_option("--which", cfg.which, "1, 2, 3, 4 or all")->capture_default_str();
  figures->add_option("--out-dir", cfg.out_dir, "Directory for figN.csv / figN.svg")->capture_default_str();
  figures->add_option("--points", cfg.grid_points, "Grid points per curve")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (*measure) return cmd_measure(cfg, out);
    if (*coin_cmd) return cmd_coin(cfg, out);
    if (*simulate) return cmd_simulate(cfg, out);
    if (*figures) return cmd_figures(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kParse;
}

}  // namespace infoeff::app
