#include "cli.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "issr/core/blank.h"
#include "issr/core/config.h"
#include "issr/core/dataset.h"
#include "issr/core/error.h"
#include "issr/core/json.h"
#include "issr/embeddings/vector_table.h"
#include "issr/eval/analysis.h"
#include "issr/eval/experiments.h"
#include "issr/eval/report.h"
#include "issr/lexicon/lexicon.h"
#include "issr/modelio/direct_generation.h"
#include "issr/modelio/http_clients.h"
#include "issr/modelio/mock.h"
#include "issr/modelio/prompts.h"
#include "issr/pipeline/run.h"
#include "issr/service/http_server.h"
#include "issr/service/session_service.h"
#include "manifest.h"

namespace issr::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string dataset;
  std::string out;
  std::string wordlist;
  std::string vectors;
  std::string chat_endpoint;
  std::string chat_model;
  std::string mask_endpoint;
  std::string mask_fixture;
  std::string mock_script;
  std::string templates;
  std::string config_file;
  std::string strategy;
  int k = 0;
  int pool_cap = 0;
  int target_count = 0;
  double temperature = 0.0;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool dry_run = false;
  std::vector<std::string> settings;

  // Command-specific.
  std::string generated;
  std::string csv;
  std::vector<int> sizes{10, 50, 100, 300};
  int n_fill = 10;
  std::string addr = "127.0.0.1:8080";
  std::string data_dir = "issr-sessions";
  std::string ui_dir;
};

std::string env_or(const char* name, std::string fallback = {}) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

const std::string& require_file(const std::string& path, std::string_view flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  if (!fs::exists(path)) throw UsageError(std::string(flag) + ": no such file '" + path + "'");
  return path;
}

const std::string& require_value(const std::string& value, std::string_view flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
  return value;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write to " + path.string() + " failed");
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  const auto workers = static_cast<std::size_t>(std::clamp<long>(jobs, 1, static_cast<long>(std::max<std::size_t>(n, 1))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

bool is_transport(ErrorCode code) { return code == ErrorCode::kTransport || code == ErrorCode::kRetriesExhausted; }

/// Everything a command needs, resolved from flags, environment and files.
class Context {
 public:
  Context(std::string command, const Options& opts, const CLI::App& sub) : opts_(opts) {
    manifest.command = std::move(command);
    config = resolve_config(sub);
    manifest.config = config;
    if (!opts_.templates.empty()) {
      if (!fs::is_directory(opts_.templates)) throw UsageError("--templates: no such directory '" + opts_.templates + "'");
      prompts = modelio::PromptSet::load_directory(opts_.templates);
      manifest.inputs["templates"] = opts_.templates;
      manifest.template_revision = git_describe(opts_.templates);
    } else {
      prompts = modelio::PromptSet::builtin();
      manifest.template_revision = git_describe(ISSR_SOURCE_DIR);
    }
    manifest.template_digest = prompts.digest();
    if (!opts_.mock_script.empty()) {
      mock_script = read_json_file(require_file(opts_.mock_script, "--mock-script"));
      manifest.inputs["mock_script"] = opts_.mock_script;
    }
  }

  PipelineConfig config;
  modelio::PromptSet prompts;
  RunManifest manifest;
  std::optional<json> mock_script;

  const std::vector<QuestionItem>& dataset() {
    if (!dataset_) {
      dataset_ = read_dataset(fs::path(require_file(opts_.dataset, "--dataset")));
      manifest.inputs["dataset"] = opts_.dataset;
    }
    return *dataset_;
  }

  const lexicon::Lexicon& lexicon(std::ostream& err) {
    if (!wordlist_) {
      wordlist_ = lexicon::load_wordlist(require_file(opts_.wordlist, "--wordlist"));
      manifest.inputs["wordlist"] = opts_.wordlist;
      if (!wordlist_->warnings.empty()) {
        err << "wordlist: " << wordlist_->warnings.size() << " malformed rows skipped (first at line "
            << wordlist_->warnings.front().line_no << ": " << wordlist_->warnings.front().reason << ")\n";
      }
    }
    return wordlist_->lexicon;
  }

  const embeddings::VectorTable* vectors() {
    if (opts_.vectors.empty()) return nullptr;
    if (!vectors_) {
      vectors_ = embeddings::VectorTable::load_file(require_file(opts_.vectors, "--vectors"));
      manifest.inputs["vectors"] = opts_.vectors;
    }
    return &*vectors_;
  }

  modelio::ChatClient& chat() {
    if (chat_) return *chat_;
    if (mock_script) {
      chat_ = modelio::chat_client_from_mock_script(*mock_script, config.seed);
      if (auto* rule = dynamic_cast<modelio::RuleChatMock*>(chat_.get()); rule != nullptr && dataset_) {
        for (const auto& item : *dataset_) rule->set_gold(item.id, item.gold_distractors);
      }
    } else if (!opts_.chat_endpoint.empty()) {
      modelio::HttpEndpoint endpoint{opts_.chat_endpoint, opts_.chat_model.empty() ? env_or("ISSR_CHAT_MODEL") : opts_.chat_model,
                                     env_or("ISSR_CHAT_API_KEY"), std::chrono::seconds(60)};
      if (!endpoint.api_key.empty()) manifest.api_keys_present.push_back("chat");
      manifest.endpoints["chat"] = endpoint.url;
      chat_ = std::make_unique<modelio::HttpChatClient>(std::move(endpoint));
    } else {
      throw UsageError("a chat model is required: pass --mock-script or --chat-endpoint");
    }
    return *chat_;
  }

  modelio::MaskedSource& masked(std::ostream& err) {
    if (masked_) return *masked_;
    if (!opts_.mask_fixture.empty()) {
      masked_ = std::make_unique<modelio::FixtureMaskedSource>(
          modelio::FixtureMaskedSource::from_file(require_file(opts_.mask_fixture, "--mask-fixture")));
      manifest.inputs["mask_fixture"] = opts_.mask_fixture;
    } else if (!opts_.mask_endpoint.empty()) {
      modelio::HttpEndpoint endpoint{opts_.mask_endpoint, {}, env_or("ISSR_MASK_API_KEY"), std::chrono::seconds(60)};
      if (!endpoint.api_key.empty()) manifest.api_keys_present.push_back("mask");
      manifest.endpoints["mask"] = endpoint.url;
      masked_ = std::make_unique<modelio::HttpMaskedSource>(std::move(endpoint));
    } else if (mock_script && mock_script->contains("masked")) {
      const auto& m = mock_script->at("masked");
      if (m.contains("fixture")) {
        fs::path p = m.at("fixture").get<std::string>();
        if (p.is_relative()) p = fs::path(opts_.mock_script).parent_path() / p;
        masked_ = std::make_unique<modelio::FixtureMaskedSource>(modelio::FixtureMaskedSource::from_file(p));
      } else {
        masked_ = std::make_unique<modelio::LexiconMaskedSource>(lexicon(err), m.value("seed", config.seed));
      }
    } else {
      throw UsageError("a candidate generator is required: pass --mask-fixture, --mask-endpoint or a mock script "
                       "with a \"masked\" section");
    }
    return *masked_;
  }

  void finish(const std::vector<std::string>& outputs, int exit_code, const fs::path& manifest_path) {
    manifest.outputs = outputs;
    manifest.exit_code = exit_code;
    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::system_clock::now() - manifest.started).count();
    manifest.write(manifest_path);
  }

 private:
  PipelineConfig resolve_config(const CLI::App& sub) {
    PipelineConfig c;
    const std::string file = opts_.config_file.empty() ? env_or("ISSR_CONFIG") : opts_.config_file;
    if (!file.empty()) {
      for (const auto& [key, value] : read_key_value_file(require_file(file, "--config"))) apply_setting(c, key, value);
      manifest.inputs["config"] = file;
    }
    for (const auto key : config_keys()) {
      const std::string name = "ISSR_" + upper(key);
      if (const char* v = std::getenv(name.c_str()); v != nullptr && *v != '\0') apply_setting(c, key, v);
    }
    auto given = [&](const char* flag) { return sub.count(flag) > 0; };
    if (given("--strategy")) apply_setting(c, "validator_strategy", opts_.strategy);
    if (given("--k")) c.k_per_round = opts_.k;
    if (given("--pool-cap")) c.pool_cap = opts_.pool_cap;
    if (given("--target-count")) c.target_count = opts_.target_count;
    if (given("--temperature")) c.temperature = opts_.temperature;
    if (given("--seed")) c.seed = opts_.seed;
    for (const auto& s : opts_.settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
      apply_setting(c, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
    c.validate();
    return c;
  }

  const Options& opts_;
  std::optional<std::vector<QuestionItem>> dataset_;
  std::optional<lexicon::WordlistLoad> wordlist_;
  std::optional<embeddings::VectorTable> vectors_;
  std::unique_ptr<modelio::ChatClient> chat_;
  std::unique_ptr<modelio::MaskedSource> masked_;
};

struct ItemOutcome {
  json line;
  std::string audit;
  std::optional<ErrorCode> failure;
};

json error_line(const QuestionItem& item, ErrorCode code) {
  return json{{"id", item.id}, {"distractors", json::array()}, {"rounds_used", 0}, {"status", "error"},
              {"error", std::string(to_string(code))}};
}

int exit_for_failures(const std::vector<ItemOutcome>& outcomes) {
  std::size_t failed = 0;
  bool transport = false;
  for (const auto& o : outcomes) {
    if (!o.failure) continue;
    ++failed;
    transport = transport || is_transport(*o.failure);
  }
  if (failed * 10 <= outcomes.size()) return kExitOk;
  return transport ? kExitTransport : kExitPartial;
}

std::string jsonl(const std::vector<ItemOutcome>& outcomes) {
  std::string text;
  for (const auto& o : outcomes) text += o.line.dump() + '\n';
  return text;
}

int dry_run(Context& ctx, std::ostream& out, std::ostream& err) {
  const auto& items = ctx.dataset();
  const auto& lex = ctx.lexicon(err);
  for (const auto& item : items) {
    out << "### " << item.id << " masked query\n" << fill_blank(item.stem, modelio::kMaskToken) << "\n";
    try {
      const auto pool = pipeline::generate_candidates(item, ctx.masked(err), lex, ctx.config);
      const auto words = pool.words();
      const int k = std::min<int>(ctx.config.k_per_round, static_cast<int>(words.size()));
      out << "### " << item.id << " selector prompt (round 1)\n"
          << modelio::render_selector_prompt(ctx.prompts, item.stem, item.answer, words, k) << "\n";
      out << "### " << item.id << " validator prompt (" << to_string(ctx.config.validator_strategy) << ", "
          << words.front() << ")\n"
          << modelio::render_validator_prompt(ctx.prompts, ctx.config.validator_strategy, item.stem, item.answer,
                                              words.front())
          << "\n";
    } catch (const Error& e) {
      out << "### " << item.id << " no selector prompt: " << to_string(e.code()) << ": " << e.what() << "\n";
    }
  }
  return kExitOk;
}

int cmd_generate(Context& ctx, const Options& opts, std::ostream& out, std::ostream& err) {
  if (opts.dry_run) return dry_run(ctx, out, err);
  const fs::path out_path = require_value(opts.out, "--out");
  const auto& items = ctx.dataset();
  const auto& lex = ctx.lexicon(err);
  auto& masked = ctx.masked(err);
  auto& chat = ctx.chat();

  std::vector<ItemOutcome> outcomes(items.size());
  std::mutex log_mu;
  parallel_for(items.size(), opts.jobs, [&](std::size_t i) {
    const auto& item = items[i];
    try {
      const auto result = pipeline::run_issr({masked, chat}, item, lex, ctx.config, ctx.prompts);
      outcomes[i].line = json{{"id", item.id},
                              {"distractors", result.distractors},
                              {"rounds_used", result.rounds_used},
                              {"status", std::string(pipeline::to_string(result.stop))}};
      outcomes[i].audit = pipeline::audit_jsonl(result, item.id);
    } catch (const Error& e) {
      outcomes[i].line = error_line(item, e.code());
      outcomes[i].audit = json{{"id", item.id}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() + '\n';
      outcomes[i].failure = e.code();
      std::lock_guard lock(log_mu);
      err << "item " << item.id << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    }
  });

  std::string audit;
  for (const auto& o : outcomes) audit += o.audit;
  const fs::path audit_path = out_path.string() + ".audit.jsonl";
  write_file(out_path, jsonl(outcomes));
  write_file(audit_path, audit);

  const int code = exit_for_failures(outcomes);
  const auto failed = std::count_if(outcomes.begin(), outcomes.end(), [](const ItemOutcome& o) { return o.failure.has_value(); });
  ctx.manifest.extra = {{"items", items.size()}, {"failed", failed}};
  ctx.finish({out_path.string(), audit_path.string()}, code, out_path.string() + ".manifest.json");
  err << "generate: " << items.size() << " items, " << failed << " failed\n";
  return code;
}

int cmd_baseline(Context& ctx, const Options& opts, std::ostream& err) {
  const fs::path out_path = require_value(opts.out, "--out");
  const auto& items = ctx.dataset();
  auto& chat = ctx.chat();
  std::vector<ItemOutcome> outcomes(items.size());
  std::mutex log_mu;
  parallel_for(items.size(), opts.jobs, [&](std::size_t i) {
    const auto& item = items[i];
    modelio::DirectGenerationRequest request;
    request.item_id = item.id;
    request.stem = item.stem;
    request.target = item.answer;
    request.count = ctx.config.target_count;
    request.rounds_of = ctx.config.k_per_round;
    request.max_rounds = ctx.config.max_rounds;
    request.temperature = ctx.config.temperature;
    request.max_tokens = ctx.config.max_tokens;
    request.retry = {ctx.config.retry_limit, std::chrono::milliseconds(ctx.config.retry_backoff_ms)};
    try {
      const auto result = modelio::direct_generate(chat, ctx.prompts, request);
      const bool reached = static_cast<int>(result.words.size()) >= request.count;
      outcomes[i].line = json{{"id", item.id},
                              {"distractors", result.words},
                              {"rounds_used", result.rounds_used},
                              {"status", reached ? "target_reached" : "max_rounds"}};
    } catch (const Error& e) {
      outcomes[i].line = error_line(item, e.code());
      outcomes[i].failure = e.code();
      std::lock_guard lock(log_mu);
      err << "item " << item.id << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    }
  });
  write_file(out_path, jsonl(outcomes));
  const int code = exit_for_failures(outcomes);
  ctx.finish({out_path.string()}, code, out_path.string() + ".manifest.json");
  return code;
}

int cmd_evaluate(Context& ctx, const Options& opts, std::ostream& out) {
  const fs::path out_path = require_value(opts.out, "--out");
  std::ifstream in(require_file(opts.generated, "--generated"), std::ios::binary);
  ctx.manifest.inputs["generated"] = opts.generated;
  const auto generated = eval::read_generated(in);
  const auto report = eval::evaluate(generated, ctx.dataset());
  write_file(out_path, eval::to_json(report).dump(2) + '\n');
  std::vector<std::string> outputs{out_path.string()};
  if (!opts.csv.empty()) {
    write_file(opts.csv, eval::to_csv(report));
    outputs.push_back(opts.csv);
  }
  for (const auto& key : eval::metric_keys()) out << key.name << '\t' << report.means.at(key.name) << '\n';
  ctx.finish(outputs, kExitOk, out_path.string() + ".manifest.json");
  return kExitOk;
}

int cmd_analyze(Context& ctx, const Options& opts, std::ostream& out, std::ostream& err) {
  const fs::path out_path = require_value(opts.out, "--out");
  const auto report = eval::analyze_corpus(ctx.dataset(), ctx.lexicon(err), ctx.vectors());
  const json j = eval::to_json(report);
  write_file(out_path, j.dump(2) + '\n');
  std::vector<std::string> outputs{out_path.string()};
  if (!opts.csv.empty()) {
    write_file(opts.csv, eval::histograms_csv(report));
    outputs.push_back(opts.csv);
  }
  out << j.dump(2) << '\n';
  ctx.finish(outputs, kExitOk, out_path.string() + ".manifest.json");
  return kExitOk;
}

int cmd_sweep(Context& ctx, const Options& opts, std::ostream& out, std::ostream& err) {
  const fs::path out_path = require_value(opts.out, "--out");
  const auto& items = ctx.dataset();
  std::vector<std::string> vocabulary;
  for (const auto& e : ctx.lexicon(err).all_entries()) {
    if (is_single_word(e.lemma)) vocabulary.push_back(e.lemma);
  }
  const auto rates = eval::in_pool_rate(ctx.chat(), ctx.prompts, items, opts.sizes, vocabulary, ctx.config);
  json j = json::object();
  for (const auto& [size, r] : rates) {
    j[std::to_string(size)] = {{"trials", r.trials}, {"successes", r.successes}, {"rate", r.rate}};
    out << size << '\t' << r.rate << '\n';
  }
  write_file(out_path, j.dump(2) + '\n');
  ctx.finish({out_path.string()}, kExitOk, out_path.string() + ".manifest.json");
  return kExitOk;
}

int cmd_plant(Context& ctx, const Options& opts, std::ostream& out, std::ostream& err) {
  const fs::path out_path = require_value(opts.out, "--out");
  const auto& items = ctx.dataset();
  auto& chat = ctx.chat();
  const auto report = eval::planted_gold_eval(chat, ctx.prompts, items, ctx.masked(err), ctx.lexicon(err), ctx.config,
                                              opts.n_fill);
  json per_item = json::object();
  for (const auto& [id, r] : report.per_item) {
    per_item[id] = {{"pool", r.pool}, {"selected", r.selected}, {"f1@3", r.f1_at_3}, {"ndcg@3", r.ndcg_at_3},
                    {"selection_failed", r.selection_failed}};
  }
  const json j{{"items", report.items}, {"f1@3", report.f1_at_3}, {"ndcg@3", report.ndcg_at_3}, {"n_fill", opts.n_fill},
               {"per_item", per_item}};
  write_file(out_path, j.dump(2) + '\n');
  out << "f1@3\t" << report.f1_at_3 << "\nndcg@3\t" << report.ndcg_at_3 << '\n';
  ctx.finish({out_path.string()}, kExitOk, out_path.string() + ".manifest.json");
  return kExitOk;
}

int cmd_answer(Context& ctx, const Options& opts, std::ostream& out) {
  const fs::path out_path = require_value(opts.out, "--out");
  const auto& items = ctx.dataset();
  const auto acc = eval::answer_accuracy(ctx.chat(), ctx.prompts, items, ctx.config);
  const json j{{"total", acc.total}, {"correct", acc.correct}, {"unparsed", acc.unparsed}, {"accuracy", acc.accuracy}};
  write_file(out_path, j.dump(2) + '\n');
  out << "accuracy\t" << acc.accuracy << '\n';
  ctx.finish({out_path.string()}, kExitOk, out_path.string() + ".manifest.json");
  return kExitOk;
}

int cmd_serve(Context& ctx, const Options& opts, std::ostream& out, std::ostream& err) {
  service::ServiceDeps deps;
  deps.lexicon = &ctx.lexicon(err);
  deps.masked = &ctx.masked(err);
  deps.chat = &ctx.chat();
  deps.prompts = &ctx.prompts;
  deps.defaults = ctx.config;
  service::SessionService svc(std::move(deps), opts.data_dir);

  service::ServerOptions server_opts;
  const auto colon = opts.addr.rfind(':');
  if (colon == std::string::npos) throw UsageError("--addr expects host:port, got '" + opts.addr + "'");
  server_opts.host = opts.addr.substr(0, colon);
  try {
    server_opts.port = std::stoi(opts.addr.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("--addr: bad port in '" + opts.addr + "'");
  }
  if (!opts.ui_dir.empty()) server_opts.ui_dir = opts.ui_dir;
  service::HttpServer server(svc, server_opts);
  const int port = server.bind();
  out << "listening on http://" << server_opts.host << ':' << port << " (" << svc.session_ids().size()
      << " sessions restored from " << opts.data_dir << ")" << std::endl;
  server.serve();
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--wordlist", o.wordlist, "Graded wordlist TSV (word, pos, level)");
  sub->add_option("--vectors", o.vectors, "Word vectors in text format");
  sub->add_option("--chat-endpoint", o.chat_endpoint, "Chat-completion URL");
  sub->add_option("--chat-model", o.chat_model, "Model name sent to the chat endpoint");
  sub->add_option("--mask-endpoint", o.mask_endpoint, "Masked-LM prediction URL");
  sub->add_option("--mask-fixture", o.mask_fixture, "Masked-LM predictions from a JSON file");
  sub->add_option("--mock-script", o.mock_script, "Answer model calls from a mock script");
  sub->add_option("--templates", o.templates, "Directory of prompt templates overriding the built-in ones");
  sub->add_option("--config", o.config_file, "key = value configuration file");
  sub->add_option("--set", o.settings, "Override one configuration key (key=value)");
  sub->add_option("--strategy", o.strategy, "Validator strategy")->check(CLI::IsMember({"s1", "s2", "s3"}));
  sub->add_option("--k", o.k, "Distractors selected per round");
  sub->add_option("--pool-cap", o.pool_cap, "Candidate pool size");
  sub->add_option("--target-count", o.target_count, "Distractors wanted per item");
  sub->add_option("--temperature", o.temperature, "Sampling temperature");
  sub->add_option("--seed", o.seed, "Seed for every random choice");
  sub->add_option("--jobs", o.jobs, "Items processed in parallel")->check(CLI::PositiveNumber);
  sub->add_option("--dataset", o.dataset, "Question items (JSON Lines)");
  sub->add_option("--out", o.out, "Output path");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distractor generation, evaluation and review service", "issr"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Run the pipeline for every dataset item");
  add_common(generate, o);
  generate->add_flag("--dry-run", o.dry_run, "Print the prompts that would be sent and exit");

  auto* baseline = app.add_subcommand("baseline", "Direct generation with an avoid-list, no candidate pool");
  add_common(baseline, o);

  auto* evaluate = app.add_subcommand("evaluate", "Score generated distractors against gold");
  add_common(evaluate, o);
  evaluate->add_option("--generated", o.generated, "Output of generate or baseline");
  evaluate->add_option("--csv", o.csv, "Also write the report as CSV");

  auto* analyze = app.add_subcommand("analyze", "Difficulty, similarity and pass-rate analysis of a dataset");
  add_common(analyze, o);
  analyze->add_option("--csv", o.csv, "Also write the histograms as CSV");

  auto* sweep = app.add_subcommand("sweep", "Selector in-pool rate across candidate pool sizes");
  add_common(sweep, o);
  sweep->add_option("--sizes", o.sizes, "Pool sizes")->delimiter(',');

  auto* plant = app.add_subcommand("plant", "Selector accuracy on pools with planted gold distractors");
  add_common(plant, o);
  plant->add_option("--n-fill", o.n_fill, "Pool size including the 3 gold words");

  auto* answer = app.add_subcommand("answer", "Accuracy of the chat model answering the items");
  add_common(answer, o);

  auto* serve = app.add_subcommand("serve", "Start the HTTP review service");
  add_common(serve, o);
  serve->add_option("--addr", o.addr, "host:port to listen on");
  serve->add_option("--data-dir", o.data_dir, "Session event logs");
  serve->add_option("--ui-dir", o.ui_dir, "Static UI bundle served at /");

  // CLI11 consumes a vector from the back.
  std::vector<std::string> reversed(args.empty() ? args.end() : args.begin() + 1, args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    Context ctx(sub->get_name(), o, *sub);
    if (sub == generate) return cmd_generate(ctx, o, out, err);
    if (sub == baseline) return cmd_baseline(ctx, o, err);
    if (sub == evaluate) return cmd_evaluate(ctx, o, out);
    if (sub == analyze) return cmd_analyze(ctx, o, out, err);
    if (sub == sweep) return cmd_sweep(ctx, o, out, err);
    if (sub == plant) return cmd_plant(ctx, o, out, err);
    if (sub == answer) return cmd_answer(ctx, o, out);
    return cmd_serve(ctx, o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kInvalidConfig:
      case ErrorCode::kParse:
      case ErrorCode::kEmptyFile:
      case ErrorCode::kDimensionMismatch:
      case ErrorCode::kIo:
        return kExitUsage;
      default:
        return is_transport(e.code()) ? kExitTransport : kExitPartial;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitPartial;
  }
}

}  // namespace issr::cli
