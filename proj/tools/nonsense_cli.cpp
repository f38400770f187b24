// nonsense: generate, verify, inspect and score synthetic summarization
// pretraining datasets.
//
// Exit status: 0 success, 1 runtime failure, 2 usage error.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nonsense/nonsense.hpp"

namespace {

using namespace nonsense;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonGen {
  std::uint64_t seed = 0;
  std::uint64_t count = 100000;
  std::string out;
  unsigned threads = default_thread_count();
  double verify_fraction = 0.01;
};

void add_common_gen(CLI::App* cmd, CommonGen& g) {
  cmd->add_option("--seed", g.seed, "Master seed")->required();
  cmd->add_option("--count", g.count, "Number of records")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--out", g.out, "Output dataset (JSON lines)")->required();
  cmd->add_option("--threads", g.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--verify-fraction", g.verify_fraction, "Fraction of records re-verified during generation")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
}

struct MaskOptions {
  double fraction = 0.15;
  std::string token = "[MASK]";
  std::string mode = "per-token";

  MaskConfig config() const { return {fraction, token, mode == "per-token"}; }
  Json json() const { return {{"fraction", fraction}, {"token", token}, {"per_token", mode == "per-token"}}; }
};

void add_mask_options(CLI::App* cmd, MaskOptions& m) {
  cmd->add_option("--mask-fraction", m.fraction, "Masked share of document tokens")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--mask-token", m.token, "Mask token")->capture_default_str();
  cmd->add_option("--mask-mode", m.mode, "per-token or span")
      ->capture_default_str()
      ->check(CLI::IsMember({"per-token", "span"}));
}

struct TaskOptions {
  std::string scheme_path;
  std::size_t vocab_size = kDefaultVocabularySize;
  std::size_t min_sentences = 7;
  std::size_t max_sentences = 13;
  std::size_t tasks_per_instance = 3;
  std::vector<std::string> eligible;
  bool replacement = false;
};

void add_scheme_option(CLI::App* cmd, std::string& path) {
  cmd->add_option("--scheme", path, "Keyword scheme file (default: built-in)")->envname("NONSENSE_SCHEME");
}

void add_ensemble_options(CLI::App* cmd, TaskOptions& t) {
  cmd->add_option("--tasks-per-instance", t.tasks_per_instance, "Elementary tasks per ensemble pair")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--eligible", t.eligible, "Comma-separated kinds eligible for ensembles")->delimiter(',');
  cmd->add_flag("--with-replacement", t.replacement, "Sample ensemble kinds with replacement");
}

KeywordScheme load_scheme_or_default(const std::string& path) {
  return path.empty() ? default_scheme() : load_scheme(path);
}

EnsembleConfig ensemble_config(const TaskOptions& t) {
  EnsembleConfig cfg;
  if (!t.eligible.empty()) {
    cfg.eligible_kinds.clear();
    for (const auto& name : t.eligible) {
      auto k = parse_elementary_kind(name);
      if (!k) throw UsageError("unknown elementary kind '" + name + "' in --eligible");
      cfg.eligible_kinds.push_back(*k);
    }
  }
  cfg.tasks_per_instance = t.tasks_per_instance;
  cfg.replacement = t.replacement;
  cfg.doc.sentences = {t.min_sentences, t.max_sentences};
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

Json ensemble_json(const EnsembleConfig& cfg) {
  Json kinds = Json::array();
  for (auto k : cfg.eligible_kinds) kinds.push_back(std::string(to_string(k)));
  return {{"eligible", kinds}, {"tasks_per_instance", cfg.tasks_per_instance}, {"replacement", cfg.replacement}};
}

void write_sidecar(const std::string& out, const Json& config, const std::string& digest,
                   const GenerationSummary& summary) {
  Json side;
  side["config"] = config;
  side["config_digest"] = digest;
  side["records"] = summary.records;
  std::ofstream f(out + ".config.json");
  if (!f) throw IoError("cannot write sidecar '" + out + ".config.json'");
  f << side.dump(2) << '\n';
}

// Runs generation, spot-verifies every k-th instance, writes the sidecar.
template <typename Gen>
int run_generation(const CommonGen& g, const Json& config, const std::string& digest, const Gen& gen,
                   const KeywordScheme& scheme) {
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw IoError("cannot open '" + g.out + "' for writing");
  const std::uint64_t stride =
      g.verify_fraction > 0.0 ? std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(1.0 / g.verify_fraction))) : 0;
  std::atomic<std::uint64_t> checked{0}, failed{0};
  auto make = [&](std::uint64_t index) {
    TaskInstance inst = gen(index);
    if (stride && index % stride == 0) {
      ++checked;
      if (!verify_instance(inst, scheme)) ++failed;
    }
    return inst;
  };
  const GenerationSummary summary = generate_lines(out, g.count, g.threads, make);
  out.close();
  if (!out) throw IoError("write to '" + g.out + "' failed");
  write_sidecar(g.out, config, digest, summary);
  std::cerr << "wrote " << summary.records << " records to " << g.out << " in " << summary.seconds << " s ("
            << static_cast<std::uint64_t>(summary.per_second()) << " records/s)\n";
  if (stride) std::cerr << "spot-verified " << checked << " records, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_gen_step(const CommonGen& g, const std::string& kind_name, std::size_t budget, std::size_t vocab_size,
                 const MaskOptions& mask) {
  const auto kind = parse_step_kind(kind_name);
  if (!kind) throw UsageError("unknown step kind '" + kind_name + "'");
  Json config;
  config["command"] = "gen step";
  config["kind"] = kind_name;
  config["seed"] = g.seed;
  config["count"] = g.count;
  config["budget"] = budget;
  config["vocab_size"] = vocab_size;
  config["mask"] = mask.json();
  const std::string digest = config_digest(config);
  StepGenerator gen({g.seed, *kind, vocab_size, budget, mask.config()}, digest);
  return run_generation(g, config, digest, gen, default_scheme());
}

int cmd_gen_tasks(const CommonGen& g, const std::string& kind_name, const TaskOptions& t) {
  TaskGenConfig cfg;
  cfg.seed = g.seed;
  cfg.vocab_size = t.vocab_size;
  cfg.doc.sentences = {t.min_sentences, t.max_sentences};
  if (kind_name != "ensemble") {
    cfg.kind = parse_elementary_kind(kind_name);
    if (!cfg.kind) throw UsageError("unknown task kind '" + kind_name + "'");
  } else {
    cfg.ensemble = ensemble_config(t);
  }
  KeywordScheme scheme = load_scheme_or_default(t.scheme_path);
  Json config;
  config["command"] = "gen tasks";
  config["kind"] = kind_name;
  config["seed"] = g.seed;
  config["count"] = g.count;
  config["vocab_size"] = t.vocab_size;
  config["sentences"] = {t.min_sentences, t.max_sentences};
  if (!cfg.kind) config["ensemble"] = ensemble_json(cfg.ensemble);
  config["scheme_digest"] = hex64(fnv1a64(format_scheme(scheme)));
  const std::string digest = config_digest(config);
  TaskGenerator gen(cfg, scheme, digest);
  return run_generation(g, config, digest, gen, gen.scheme());
}

struct IngestOptions {
  std::string input;
  std::string policy = "sentences";
  std::size_t budget = kDefaultTokenBudget;
  std::string task;
};

int cmd_ingest(const CommonGen& g, const IngestOptions& in, const TaskOptions& t, const MaskOptions& mask) {
  const bool known = parse_step_kind(in.task) || parse_elementary_kind(in.task) || in.task == "ensemble";
  if (!known) throw UsageError("unknown task '" + in.task + "'");
  IngestPolicy policy;
  if (in.policy == "sentences") {
    policy = BySentences{{t.min_sentences, t.max_sentences}};
  } else {
    policy = ByTokens{in.budget};
  }
  KeywordScheme scheme = load_scheme_or_default(t.scheme_path);
  EnsembleConfig ensemble = in.task == "ensemble" ? ensemble_config(t) : EnsembleConfig{};

  Json config;
  config["command"] = "ingest";
  config["task"] = in.task;
  config["seed"] = g.seed;
  config["policy"] = in.policy;
  if (in.policy == "sentences") config["sentences"] = {t.min_sentences, t.max_sentences};
  else config["budget"] = in.budget;
  config["input_digest"] = [&] {
    std::ifstream f(in.input, std::ios::binary);
    if (!f) throw IoError("cannot open corpus '" + in.input + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return hex64(fnv1a64(buf.str()));
  }();
  if (parse_step_kind(in.task)) config["mask"] = mask.json();
  if (in.task == "ensemble") config["ensemble"] = ensemble_json(ensemble);
  config["scheme_digest"] = hex64(fnv1a64(format_scheme(scheme)));
  const std::string digest = config_digest(config);

  Rng assemble_rng = Rng::derive(g.seed, "ingest-assemble", 0);
  auto docs = ingest_real_corpus(in.input, policy, assemble_rng);
  const std::size_t doc_count = docs.size();
  DocumentTaskGenerator gen(std::move(docs), in.task, g.seed, scheme, digest, mask.config(), ensemble, t.vocab_size);

  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw IoError("cannot open '" + g.out + "' for writing");
  GenerationSummary summary;
  std::uint64_t skipped = 0, failed = 0;
  for (std::uint64_t i = 0; i < gen.size(); ++i) {
    auto inst = gen.try_make(i);
    if (!inst) {
      ++skipped;
      continue;
    }
    if (!verify_instance(*inst, scheme)) ++failed;
    out << serialize_record(to_record(*inst)) << '\n';
    ++summary.records;
  }
  out.close();
  if (!out) throw IoError("write to '" + g.out + "' failed");
  write_sidecar(g.out, config, digest, summary);
  std::cerr << "ingested " << doc_count << " documents; wrote " << summary.records << " records, skipped " << skipped
            << " too small for the task\n";
  if (failed) std::cerr << failed << " records failed verification\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_verify(const std::string& path, const std::string& scheme_path, std::size_t show) {
  const KeywordScheme scheme = load_scheme_or_default(scheme_path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::uint64_t total = 0, failed = 0;
  for_each_record(in, [&](const DatasetRecord& rec, std::size_t line_no) {
    ++total;
    const std::string reason = check_instance(to_instance(rec), scheme);
    if (!reason.empty()) {
      if (failed < show) std::cout << "FAIL line " << line_no << " id=" << rec.id << ": " << reason << '\n';
      ++failed;
    }
  });
  std::cout << "checked " << total << " records: " << (total - failed) << " passed, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_stats(const std::string& path, bool json) {
  const StatsReport report = dataset_stats(path);
  std::cout << (json ? to_json(report).dump(2) + "\n" : format_stats(report));
  return kExitOk;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

int cmd_rouge(const std::string& cand_path, const std::string& ref_path, bool json, bool per_pair, bool real_text) {
  const auto cands = read_lines(cand_path);
  const auto refs = read_lines(ref_path);
  if (cands.size() != refs.size()) {
    throw ValidationError("line count mismatch: " + std::to_string(cands.size()) + " candidates vs " +
                          std::to_string(refs.size()) + " references");
  }
  RougeOptions opts;
  opts.strip_punctuation = real_text;
  std::vector<std::pair<Tokens, Tokens>> pairs;
  pairs.reserve(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) pairs.emplace_back(rouge_tokenize(cands[i], opts), rouge_tokenize(refs[i], opts));
  const RougeReport report = corpus_rouge(pairs);
  if (json) {
    std::cout << to_json(report, per_pair).dump(2) << '\n';
  } else {
    if (per_pair) {
      for (std::size_t i = 0; i < report.pairs.size(); ++i) {
        const auto& p = report.pairs[i];
        std::printf("pair %zu  r1=%.4f r2=%.4f rl=%.4f\n", i + 1, p.r1.f1, p.r2.f1, p.rl.f1);
      }
    }
    std::cout << format_rouge_table(report);
  }
  return kExitOk;
}

std::vector<std::string> elementary_names() {
  std::vector<std::string> names;
  for (auto k : kAllElementaryKinds) names.emplace_back(to_string(k));
  return names;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic summarization pretraining corpora: generate, verify, inspect, score"};
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "Generate a dataset");
  gen->require_subcommand(1);

  CommonGen step_common;
  std::string step_kind;
  std::size_t step_budget = kDefaultTokenBudget;
  std::size_t step_vocab = kDefaultVocabularySize;
  MaskOptions step_mask;
  CLI::App* gen_step = gen->add_subcommand("step", "Denoising tasks over 512-token nonsense documents");
  gen_step->add_option("--kind", step_kind, "nsg, sr, sr-adjusted, mdg or mdg-adjusted")
      ->required()
      ->check(CLI::IsMember({"nsg", "sr", "sr-adjusted", "mdg", "mdg-adjusted"}));
  add_common_gen(gen_step, step_common);
  gen_step->add_option("--budget", step_budget, "Token budget per base document")->capture_default_str();
  gen_step->add_option("--vocab-size", step_vocab, "Vocabulary size")->capture_default_str();
  add_mask_options(gen_step, step_mask);

  CommonGen task_common;
  std::string task_kind;
  TaskOptions task_opts;
  CLI::App* gen_tasks = gen->add_subcommand("tasks", "Elementary summarization tasks or their ensemble");
  std::vector<std::string> task_choices = elementary_names();
  task_choices.emplace_back("ensemble");
  task_choices.emplace_back("CopyKwdOneSent");
  gen_tasks->add_option("--kind", task_kind, "Elementary kind name or 'ensemble'")
      ->required()
      ->check(CLI::IsMember(task_choices));
  add_common_gen(gen_tasks, task_common);
  add_scheme_option(gen_tasks, task_opts.scheme_path);
  gen_tasks->add_option("--vocab-size", task_opts.vocab_size, "Vocabulary size")->capture_default_str();
  gen_tasks->add_option("--min-sentences", task_opts.min_sentences, "Minimum sentences per base document")
      ->capture_default_str();
  gen_tasks->add_option("--max-sentences", task_opts.max_sentences, "Maximum sentences per base document")
      ->capture_default_str();
  add_ensemble_options(gen_tasks, task_opts);

  CommonGen ingest_common;
  ingest_common.verify_fraction = 1.0;
  IngestOptions ingest_opts;
  TaskOptions ingest_task;
  MaskOptions ingest_mask;
  CLI::App* ingest = app.add_subcommand("ingest", "Build task datasets from a plain-text corpus");
  ingest->add_option("--input", ingest_opts.input, "Plain-text corpus")->required();
  ingest->add_option("--policy", ingest_opts.policy, "sentences or tokens")
      ->capture_default_str()
      ->check(CLI::IsMember({"sentences", "tokens"}));
  ingest->add_option("--budget", ingest_opts.budget, "Token budget (tokens policy)")->capture_default_str();
  ingest->add_option("--min-sentences", ingest_task.min_sentences, "Minimum sentences (sentences policy)")
      ->capture_default_str();
  ingest->add_option("--max-sentences", ingest_task.max_sentences, "Maximum sentences (sentences policy)")
      ->capture_default_str();
  ingest->add_option("--task", ingest_opts.task, "Step kind, elementary kind or 'ensemble'")->required();
  ingest->add_option("--seed", ingest_common.seed, "Master seed")->required();
  ingest->add_option("--out", ingest_common.out, "Output dataset (JSON lines)")->required();
  add_scheme_option(ingest, ingest_task.scheme_path);
  add_mask_options(ingest, ingest_mask);
  add_ensemble_options(ingest, ingest_task);

  std::string verify_path, verify_scheme;
  std::size_t verify_show = 10;
  CLI::App* verify = app.add_subcommand("verify", "Replay task oracles over a dataset");
  verify->add_option("dataset", verify_path, "Dataset file")->required();
  add_scheme_option(verify, verify_scheme);
  verify->add_option("--show", verify_show, "Failures to print")->capture_default_str();

  std::string stats_path;
  bool stats_json = false;
  CLI::App* stats = app.add_subcommand("stats", "Record counts, length percentiles and task histograms");
  stats->add_option("dataset", stats_path, "Dataset file")->required();
  stats->add_flag("--json", stats_json, "Emit JSON");

  std::string cand_path, ref_path;
  bool rouge_json = false, rouge_per_pair = false, rouge_real = false;
  CLI::App* rouge = app.add_subcommand("rouge", "ROUGE-1/2/L of candidates against references, one per line");
  rouge->add_option("candidates", cand_path, "Candidate summaries")->required();
  rouge->add_option("references", ref_path, "Reference summaries")->required();
  rouge->add_flag("--json", rouge_json, "Emit JSON report");
  rouge->add_flag("--per-pair", rouge_per_pair, "Include per-pair scores");
  rouge->add_flag("--real-text", rouge_real, "Treat punctuation as separators");

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
    if (*gen_step) return cmd_gen_step(step_common, step_kind, step_budget, step_vocab, step_mask);
    if (*gen_tasks) return cmd_gen_tasks(task_common, task_kind, task_opts);
    if (*ingest) return cmd_ingest(ingest_common, ingest_opts, ingest_task, ingest_mask);
    if (*verify) return cmd_verify(verify_path, verify_scheme, verify_show);
    if (*stats) return cmd_stats(stats_path, stats_json);
    if (*rouge) return cmd_rouge(cand_path, ref_path, rouge_json, rouge_per_pair, rouge_real);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
