// Copyright 2026 The currloss Authors.
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

#include "commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "currloss/compare.hpp"
#include "currloss/data.hpp"
#include "currloss/errors.hpp"
#include "currloss/metrics.hpp"
#include "currloss/serialize.hpp"
#include "currloss/superloss.hpp"
#include "currloss/trainer.hpp"
#include "io.hpp"

namespace currloss::cli {
namespace fs = std::filesystem;

namespace {

constexpr const char* kToolVersion = CURRLOSS_VERSION;

Json parse_json_file(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
}

// Collects everything a run manifest records.
class Manifest {
 public:
  Manifest(std::string command, fs::path out_dir)
      : out_dir_(std::move(out_dir)),
        start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["tool_version"] = kToolVersion;
    doc_["started_at"] = utc_timestamp();
    doc_["config"] = Json::object();
    doc_["seeds"] = Json::array();
    doc_["inputs"] = Json::object();
    doc_["outputs"] = Json::object();
    doc_["checksums"] = Json::object();
  }

  Json& config() { return doc_["config"]; }
  void add_seed(std::uint64_t seed) { doc_["seeds"].push_back(seed); }

  void add_input(const std::string& name, const fs::path& path) {
    doc_["inputs"][name] = path.string();
    doc_["checksums"][path.filename().string()] = sha256_hex(read_file(path));
  }

  // Writes an output artifact atomically and records its checksum.
  void emit(const std::string& name, const std::string& filename,
            const std::string& contents) {
    const fs::path path = out_dir_ / filename;
    write_file_atomic(path, contents);
    doc_["outputs"][name] = path.string();
    doc_["checksums"][filename] = sha256_hex(contents);
  }

  void finish() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    doc_["duration_seconds"] =
        std::chrono::duration<double>(elapsed).count();
    write_file_atomic(out_dir_ / "manifest.json", doc_.dump(2) + "\n");
  }

 private:
  fs::path out_dir_;
  std::chrono::steady_clock::time_point start_;
  Json doc_;
};

double round4(double v) { return std::round(v * 1e4) / 1e4; }

Json rouge_json(const RougeScore& s) {
  Json j;
  j["recall"] = round4(s.recall);
  j["precision"] = round4(s.precision);
  j["f1"] = round4(s.f1);
  return j;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string optional_fixed(const std::optional<double>& v) {
  return v ? fixed(*v) : std::string("-");
}

// ---- gen-data -------------------------------------------------------------

struct GenDataOptions {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::string> task;
  std::optional<std::size_t> n_train, n_val, dim;
  std::optional<double> noise_rate, separation, noise_sigma;
  std::optional<std::uint64_t> seed;
};

int cmd_gen_data(const GenDataOptions& o, std::ostream& out) {
  Json j = Json::object();
  if (!o.config.empty()) {
    j = parse_json_file(o.config);
    if (j.contains("dataset")) j = j.at("dataset");
  }
  if (o.task) j["task"] = *o.task;
  if (o.n_train) j["n_train"] = *o.n_train;
  if (o.n_val) j["n_val"] = *o.n_val;
  if (o.dim) j["dim"] = *o.dim;
  if (o.noise_rate) j["noise_rate"] = *o.noise_rate;
  if (o.separation) j["class_separation"] = *o.separation;
  if (o.noise_sigma) j["noise_sigma"] = *o.noise_sigma;
  if (o.seed) j["seed"] = *o.seed;
  const DatasetSpec spec = dataset_spec_from_json(j);

  Manifest manifest("gen-data", o.out_dir);
  if (!o.config.empty()) manifest.add_input("config", o.config);
  manifest.config() = to_json(spec);
  manifest.add_seed(spec.seed);

  const Dataset data = generate(spec);
  manifest.emit("train", "train.jsonl", to_jsonl(data.train));
  manifest.emit("val", "val.jsonl", to_jsonl(data.val));
  manifest.finish();

  out << "generated " << data.train.size() << " train ("
      << spec.corrupted_count() << " corrupted) and " << data.val.size()
      << " val samples in " << o.out_dir << "\n";
  return kExitOk;
}

// ---- train ----------------------------------------------------------------

struct TrainOptions {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
};

int cmd_train(const TrainOptions& o, std::ostream& out) {
  const fs::path config_path = o.config;
  const Json j = parse_json_file(config_path);
  TrainConfig config = train_config_from_json(j);
  if (o.seed) config.seed = *o.seed;

  Manifest manifest("train", o.out_dir);
  manifest.add_input("config", config_path);
  manifest.add_seed(config.seed);

  Dataset data;
  Json data_json;
  if (const auto it = j.find("data"); it != j.end()) {
    if (!it->is_object() || !it->contains("train") || !it->contains("val")) {
      throw ConfigError("data must be an object with \"train\" and \"val\" paths");
    }
    const fs::path base = config_path.parent_path();
    const fs::path train_path = base / it->at("train").get<std::string>();
    const fs::path val_path = base / it->at("val").get<std::string>();
    if (!fs::exists(train_path)) throw ConfigError("data.train: " + train_path.string() + " not found");
    if (!fs::exists(val_path)) throw ConfigError("data.val: " + val_path.string() + " not found");
    data.train = load_jsonl(train_path);
    data.val = load_jsonl(val_path);
    manifest.add_input("train_data", train_path);
    manifest.add_input("val_data", val_path);
    data_json = {{"train", train_path.string()}, {"val", val_path.string()}};
  } else if (const auto ds = j.find("dataset"); ds != j.end()) {
    const DatasetSpec spec = dataset_spec_from_json(*ds);
    data = generate(spec);
    data_json = {{"dataset", to_json(spec)}};
  } else {
    throw ConfigError("config needs either \"data\" paths or a \"dataset\" spec");
  }
  if (data.train.empty()) throw ConfigError("training set is empty");
  if (data.val.empty()) throw ConfigError("validation set is empty");
  if (data.train.front().features.size() != config.model.input_dim) {
    throw ConfigError("model.input_dim " + std::to_string(config.model.input_dim) +
                      " does not match data dimension " +
                      std::to_string(data.train.front().features.size()));
  }
  config.validate(data.train.size());

  manifest.config() = to_json(config);
  manifest.config()["data"] = data_json;

  const TrainResult result = train(config, data.train, data.val);
  manifest.emit("train_log", "train_log.jsonl", to_jsonl(result.log));
  manifest.emit("checkpoint", "checkpoint.json",
                to_json(result.best_params).dump() + "\n");
  manifest.emit("final_checkpoint", "final_checkpoint.json",
                to_json(result.final_params).dump() + "\n");
  manifest.finish();

  out << to_string(config.mode) << ": " << result.log.size() << " steps";
  if (result.best_step) {
    out << ", best " << to_string(config.checkpoint_metric) << " "
        << fixed(*result.best_metric) << " at step " << *result.best_step
        << " (epoch " << fixed(result.log[*result.best_step - 1].epoch_fraction, 2)
        << ")";
  }
  const auto& w = result.final_epoch_weights;
  out << "; final-epoch mean weight " << fixed(w.mean_all) << " (clean "
      << optional_fixed(w.mean_clean) << ", corrupted "
      << optional_fixed(w.mean_corrupted) << ")\n";
  return kExitOk;
}

// ---- compare --------------------------------------------------------------

struct CompareOptions {
  std::string config;
  std::string out_dir = ".";
  std::vector<std::uint64_t> seeds;
  std::string format = "table";
};

void print_comparison_table(const ComparisonReport& r, std::ostream& out) {
  const std::string metric(to_string(r.metric));
  out << std::left << std::setw(12) << "mode" << std::setw(16)
      << ("mean " + metric).substr(0, 15) << std::setw(10) << "std"
      << std::setw(12) << "rel.impr." << std::setw(10) << "w(clean)"
      << "w(corrupted)\n";
  out << std::setw(12) << "baseline" << std::setw(16)
      << fixed(r.baseline_metric.mean) << std::setw(10)
      << fixed(r.baseline_metric.stddev) << std::setw(12) << "-"
      << std::setw(10) << "1.0000" << "1.0000\n";
  std::string rel = "-";
  if (r.relative_improvement_percent) {
    rel = (*r.relative_improvement_percent >= 0 ? "+" : "") +
          fixed(*r.relative_improvement_percent, 2) + "%";
  }
  out << std::setw(12) << "curriculum" << std::setw(16)
      << fixed(r.curriculum_metric.mean) << std::setw(10)
      << fixed(r.curriculum_metric.stddev) << std::setw(12) << rel
      << std::setw(10) << optional_fixed(r.mean_weight_clean)
      << optional_fixed(r.mean_weight_corrupted) << "\n";
  out << "seeds: " << r.per_seed.size() << "  curriculum wins "
      << r.curriculum_wins << ", baseline wins " << r.baseline_wins
      << ", ties " << r.ties << "  (mean gap " << fixed(r.mean_gap) << ")\n";
}

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  const Json j = parse_json_file(o.config);
  if (!j.is_object()) throw ConfigError("compare config must be a JSON object");
  const DatasetSpec spec = dataset_spec_from_json(j.value("dataset", Json::object()));
  const TrainConfig config = train_config_from_json(j.value("train", Json::object()));
  std::vector<std::uint64_t> seeds = o.seeds;
  if (seeds.empty() && j.contains("seeds")) {
    try {
      seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("seeds: ") + e.what());
    }
  }
  if (seeds.empty()) throw ConfigError("seeds: at least one seed is required");

  Manifest manifest("compare", o.out_dir);
  manifest.add_input("config", o.config);
  for (auto s : seeds) manifest.add_seed(s);
  manifest.config() = {{"dataset", to_json(spec)}, {"train", to_json(config)}};

  const ComparisonReport report =
      compare(config, spec, seeds, compare_threads_from_env());
  const Json report_json = to_json(report);
  manifest.emit("report", "compare_report.json", report_json.dump(2) + "\n");
  manifest.finish();

  if (o.format == "json") {
    out << report_json.dump(2) << "\n";
  } else {
    print_comparison_table(report, out);
  }
  return kExitOk;
}

// ---- score ----------------------------------------------------------------

struct ScoreOptions {
  std::string candidates;
  std::string references;
  std::string out_dir = ".";
};

int cmd_score(const ScoreOptions& o, std::ostream& out) {
  const auto cands = read_lines(o.candidates);
  const auto refs = read_lines(o.references);
  if (cands.size() != refs.size()) {
    throw ConfigError("line count mismatch: " + std::to_string(cands.size()) +
                      " candidates vs " + std::to_string(refs.size()) +
                      " references");
  }
  Manifest manifest("score", o.out_dir);
  manifest.add_input("candidates", o.candidates);
  manifest.add_input("references", o.references);

  RougeScore sum1, sum2, suml;
  auto accumulate = [](RougeScore& acc, const RougeScore& s) {
    acc.recall += s.recall;
    acc.precision += s.precision;
    acc.f1 += s.f1;
  };
  Json pairs = Json::array();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const auto c = tokenize(cands[i]);
    const auto r = tokenize(refs[i]);
    const RougeScore r1 = rouge_n(c, r, 1);
    const RougeScore r2 = rouge_n(c, r, 2);
    const RougeScore rl = rouge_l(c, r);
    accumulate(sum1, r1);
    accumulate(sum2, r2);
    accumulate(suml, rl);
    Json p;
    p["line"] = i + 1;
    p["rouge1"] = rouge_json(r1);
    p["rouge2"] = rouge_json(r2);
    p["rougeL"] = rouge_json(rl);
    pairs.push_back(p);
  }
  const double n = cands.empty() ? 1.0 : static_cast<double>(cands.size());
  auto mean = [n](const RougeScore& s) {
    return RougeScore{s.recall / n, s.precision / n, s.f1 / n};
  };
  Json doc;
  doc["count"] = cands.size();
  doc["pairs"] = pairs;
  doc["mean"] = {{"rouge1", rouge_json(mean(sum1))},
                 {"rouge2", rouge_json(mean(sum2))},
                 {"rougeL", rouge_json(mean(suml))}};
  manifest.emit("scores", "scores.json", doc.dump(2) + "\n");
  manifest.finish();

  out << "pairs " << cands.size() << "  R-1 " << fixed(mean(sum1).f1)
      << "  R-2 " << fixed(mean(sum2).f1) << "  R-L " << fixed(mean(suml).f1)
      << "\n";
  return kExitOk;
}

// ---- sigma-table ----------------------------------------------------------

struct SigmaOptions {
  double lambda = 1.0;
  double tau = 1.0;
  std::vector<double> range{0.0, 3.0};
  double step = 0.5;
  std::string out_dir = ".";
};

int cmd_sigma_table(const SigmaOptions& o, std::ostream& out) {
  if (o.range.size() != 2) throw ConfigError("--range takes MIN MAX");
  Manifest manifest("sigma-table", o.out_dir);
  manifest.config() = {{"lambda", o.lambda},
                       {"tau", o.tau},
                       {"range", o.range},
                       {"step", o.step}};
  const std::string csv =
      sigma_table_csv(o.lambda, o.tau, o.range[0], o.range[1], o.step);
  manifest.emit("table", "sigma_table.csv", csv);
  manifest.finish();
  const auto rows = static_cast<std::size_t>(
      std::count(csv.begin(), csv.end(), '\n') - 1);
  out << "wrote " << rows << " rows to "
      << (fs::path(o.out_dir) / "sigma_table.csv").string() << "\n";
  return kExitOk;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string sigma_table_csv(double lambda, double tau, double lo, double hi,
                            double step) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("--lambda must be > 0");
  }
  if (!std::isfinite(tau)) throw ConfigError("--tau must be finite");
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("--step must be > 0");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw ConfigError("--range MIN MAX needs finite MIN <= MAX");
  }
  const auto rows = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::string csv = "loss,beta,sigma_star,superloss_value,clamped\n";
  for (std::size_t i = 0; i < rows; ++i) {
    const double loss = lo + static_cast<double>(i) * step;
    const SuperLossOutput s = evaluate_superloss(loss, tau, lambda);
    csv += format_number(loss) + "," + format_number(s.beta) + "," +
           format_number(s.sigma_star) + "," + format_number(s.value) + "," +
           (s.clamped ? "true" : "false") + "\n";
  }
  return csv;
}

std::size_t compare_threads_from_env() {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CURRLOSS_THREADS")) {
    std::size_t cap = 0;
    const std::string_view s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (res.ec == std::errc{} && res.ptr == s.data() + s.size() && cap > 0) {
      threads = cap;
    }
  }
  return threads;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"currloss: SuperLoss curriculum training and evaluation toolkit",
               "currloss"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  GenDataOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic dataset");
  gen_cmd->add_option("--config", gen.config, "Dataset spec JSON")
      ->check(CLI::ExistingFile);
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory");
  gen_cmd->add_option("--task", gen.task, "two_gaussian | linear_regression");
  gen_cmd->add_option("--n-train", gen.n_train);
  gen_cmd->add_option("--n-val", gen.n_val);
  gen_cmd->add_option("--dim", gen.dim);
  gen_cmd->add_option("--noise-rate", gen.noise_rate);
  gen_cmd->add_option("--separation", gen.separation);
  gen_cmd->add_option("--noise-sigma", gen.noise_sigma);
  gen_cmd->add_option("--seed", gen.seed);

  TrainOptions tr;
  auto* train_cmd = app.add_subcommand("train", "Train one model from a run config");
  train_cmd->add_option("--config", tr.config, "Run config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--out-dir", tr.out_dir, "Output directory");
  train_cmd->add_option("--seed", tr.seed, "Override the config seed");

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand(
      "compare", "Curriculum vs baseline over several seeds");
  cmp_cmd->add_option("--config", cmp.config, "Comparison spec JSON")
      ->required()
      ->check(CLI::ExistingFile);
  cmp_cmd->add_option("--out-dir", cmp.out_dir, "Output directory");
  cmp_cmd->add_option("--seeds", cmp.seeds, "Comma-separated seeds")
      ->delimiter(',');
  cmp_cmd->add_option("--format", cmp.format, "Stdout format")
      ->check(CLI::IsMember({"table", "json"}));

  ScoreOptions sc;
  auto* score_cmd = app.add_subcommand("score", "ROUGE-1/2/L per line and corpus mean");
  score_cmd->add_option("--candidates", sc.candidates)->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--references", sc.references)->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--out-dir", sc.out_dir, "Output directory");

  SigmaOptions sg;
  auto* sigma_cmd = app.add_subcommand(
      "sigma-table", "Tabulate beta, sigma*, SuperLoss over a loss range");
  sigma_cmd->add_option("--lambda", sg.lambda);
  sigma_cmd->add_option("--tau", sg.tau);
  sigma_cmd->add_option("--range", sg.range, "MIN MAX")->expected(2);
  sigma_cmd->add_option("--step", sg.step);
  sigma_cmd->add_option("--out-dir", sg.out_dir, "Output directory");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    if (*gen_cmd) return cmd_gen_data(gen, out);
    if (*train_cmd) return cmd_train(tr, out);
    if (*cmp_cmd) return cmd_compare(cmp, out);
    if (*score_cmd) return cmd_score(sc, out);
    if (*sigma_cmd) return cmd_sigma_table(sg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitUsageError;
}

}  // namespace currloss::cli
