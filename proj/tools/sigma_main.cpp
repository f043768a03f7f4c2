//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sigma/chem/parse.hpp"
#include "sigma/chem/smi_io.hpp"
#include "sigma/chem/write.hpp"
#include "sigma/decode/beam.hpp"
#include "sigma/decode/model_scorer.hpp"
#include "sigma/decode/ngram.hpp"
#include "sigma/metrics/curve.hpp"
#include "sigma/metrics/heatmap.hpp"
#include "sigma/metrics/metrics.hpp"
#include "sigma/model/checkpoint.hpp"
#include "sigma/model/gradcheck.hpp"
#include "sigma/model/train.hpp"
#include "sigma/util/hash.hpp"
#include "sigma/version.hpp"
#include "sigma/views/mine.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sigma;

namespace {

// Exit codes: 0 ok, 1 partial data errors, 2 config/usage, 3 internal
// invariant violation.
constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kUsageError = 2;
constexpr int kInternalError = 3;

bool verbose_logging() {
  const char* level = std::getenv("SIGMA_LOG");
  return level == nullptr || std::string(level) != "quiet";
}

void info(const std::string& message) {
  if (verbose_logging()) std::cerr << "[sigma] " << message << '\n';
}

json input_digests(const std::vector<std::string>& paths) {
  json arr = json::array();
  for (const std::string& p : paths) {
    arr.push_back({{"path", p}, {"digest", util::file_digest(p)}});
  }
  return arr;
}

void write_manifest(const fs::path& out_dir, const std::string& tool,
                    std::uint64_t seed, const json& config_echo,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
  json manifest{{"tool", tool},
                {"version", kToolkitVersion},
                {"seed", seed},
                {"config", config_echo},
                {"inputs", input_digests(inputs)},
                {"outputs", outputs}};
  std::ofstream out(out_dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  in >> j;
  return j;
}

// --- canonicalize -------------------------------------------------------

struct CanonicalizeArgs {
  std::string in_path;
  std::string out_dir;
};

int cmd_canonicalize(const CanonicalizeArgs& args) {
  fs::create_directories(args.out_dir);
  std::vector<chem::SmiRecord> records = chem::read_smi_file(args.in_path);

  std::ofstream smi_out(fs::path(args.out_dir) / "canonical.smi");
  std::ofstream key_out(fs::path(args.out_dir) / "keys.txt");
  int failures = 0;
  for (const chem::SmiRecord& rec : records) {
    chem::ParseResult parsed = chem::parse_string(rec.smiles);
    if (!parsed.complete()) {
      ++failures;
      std::cerr << args.in_path << ":" << rec.line_no << ": "
                << (parsed.irrecoverable() ? parsed.reason
                                           : "incomplete SMILES")
                << '\n';
      continue;
    }
    std::string canonical = chem::write_canonical(parsed.graph);
    smi_out << canonical;
    if (!rec.id.empty()) smi_out << '\t' << rec.id;
    smi_out << '\n';
    key_out << canonical << '\n';
  }
  write_manifest(args.out_dir, "canonicalize", 0,
                 json{{"in", args.in_path}, {"failures", failures},
                      {"records", records.size()}},
                 {args.in_path}, {"canonical.smi", "keys.txt"});
  info("canonicalize: " + std::to_string(records.size() - failures) + " ok, " +
       std::to_string(failures) + " failed");
  return failures == 0 ? kOk : kDataError;
}

// --- mine ---------------------------------------------------------------

struct MineArgs {
  std::string in_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool enumerate_all_cuts = false;
  int retry_budget = 16;
};

int cmd_mine(const MineArgs& args) {
  fs::create_directories(args.out_dir);
  views::MineConfig config;
  config.enumerate_all_cuts = args.enumerate_all_cuts;
  config.retry_budget = args.retry_budget;

  std::vector<views::MalformedLine> errors;
  views::MineStats stats = views::mine_dataset(
      args.in_path, config, args.seed,
      (fs::path(args.out_dir) / "pairs.jsonl").string(),
      (fs::path(args.out_dir) / "manifest.json").string(), &errors);
  for (const views::MalformedLine& e : errors) {
    std::cerr << args.in_path << ":" << e.line_no << ": " << e.message << '\n';
  }
  info("mine: " + std::to_string(stats.pairs_out) + " pairs from " +
       std::to_string(stats.records_in) + " records (skipped " +
       std::to_string(stats.skipped_no_cut) + " no-cut, " +
       std::to_string(stats.skipped_retries) + " retries)");
  return stats.malformed_lines == 0 ? kOk : kDataError;
}

// --- train --------------------------------------------------------------

struct TrainArgs {
  std::string pairs_path;
  std::string out_dir;
  std::string config_path;
  model::TrainConfig cfg;
};

void apply_train_config(const json& j, model::TrainConfig& cfg) {
  if (j.contains("model")) {
    const json& m = j["model"];
    if (m.contains("d_model")) cfg.model.d_model = m["d_model"];
    if (m.contains("n_layers")) cfg.model.n_layers = m["n_layers"];
    if (m.contains("n_heads")) cfg.model.n_heads = m["n_heads"];
    if (m.contains("d_proj")) cfg.model.d_proj = m["d_proj"];
    if (m.contains("max_len")) cfg.model.max_len = m["max_len"];
  }
  for (const char* key : {"lambda", "tau", "peak_lr", "weight_decay",
                          "clip_norm", "val_fraction"}) {
    if (!j.contains(key)) continue;
    double v = j[key];
    if (key == std::string("lambda")) cfg.lambda = v;
    else if (key == std::string("tau")) cfg.tau = v;
    else if (key == std::string("peak_lr")) cfg.peak_lr = v;
    else if (key == std::string("weight_decay")) cfg.weight_decay = v;
    else if (key == std::string("clip_norm")) cfg.clip_norm = v;
    else cfg.val_fraction = v;
  }
  if (j.contains("epochs")) cfg.epochs = j["epochs"];
  if (j.contains("batch_size")) cfg.batch_size = j["batch_size"];
  if (j.contains("warmup_steps")) cfg.warmup_steps = j["warmup_steps"];
  if (j.contains("max_negatives")) cfg.max_negatives = j["max_negatives"];
  if (j.contains("strict_negatives")) cfg.strict_negatives = j["strict_negatives"];
  if (j.contains("seed")) cfg.seed = j["seed"];
}

json train_config_echo(const model::TrainConfig& cfg) {
  return json{{"model",
               {{"d_model", cfg.model.d_model},
                {"n_layers", cfg.model.n_layers},
                {"n_heads", cfg.model.n_heads},
                {"d_proj", cfg.model.d_proj},
                {"max_len", cfg.model.max_len},
                {"vocab_size", cfg.model.vocab_size}}},
              {"lambda", cfg.lambda},
              {"tau", cfg.tau},
              {"epochs", cfg.epochs},
              {"batch_size", cfg.batch_size},
              {"peak_lr", cfg.peak_lr},
              {"weight_decay", cfg.weight_decay},
              {"clip_norm", cfg.clip_norm},
              {"warmup_steps", cfg.warmup_steps},
              {"max_negatives", cfg.max_negatives},
              {"strict_negatives", cfg.strict_negatives},
              {"val_fraction", cfg.val_fraction},
              {"seed", cfg.seed}};
}

int cmd_train(TrainArgs& args) {
  fs::create_directories(args.out_dir);
  std::vector<views::ViewPair> pairs = views::load_pairs_jsonl(args.pairs_path);

  std::vector<std::string> corpus;
  for (const views::ViewPair& p : pairs) {
    corpus.push_back(p.prefix_u + p.suffix);
    corpus.push_back(p.prefix_v + p.suffix);
  }
  model::Vocab vocab = model::Vocab::build_from_strings(corpus);

  std::ofstream log(fs::path(args.out_dir) / "train_log.jsonl");
  model::TrainResult result = model::train(args.cfg, pairs, vocab, &log);

  std::string ckpt = (fs::path(args.out_dir) / "model.ckpt").string();
  model::save_checkpoint(ckpt, result.params, result.vocab);
  write_manifest(args.out_dir, "train", args.cfg.seed,
                 train_config_echo(args.cfg), {args.pairs_path},
                 {"model.ckpt", "train_log.jsonl"});
  if (result.aborted) {
    std::cerr << "training aborted: " << result.abort_reason
              << " (last good checkpoint written)\n";
    return kDataError;
  }
  info("train: " + std::to_string(result.steps_run) + " steps, final nll " +
       std::to_string(result.final_nll) + ", sigma " +
       std::to_string(result.final_sigma));
  return kOk;
}

// --- gradcheck ----------------------------------------------------------

int cmd_gradcheck(std::uint64_t seed) {
  bool ok = true;
  for (const model::GradCheckReport& r : model::gradcheck_suite(seed)) {
    std::cout << "lambda=" << r.lambda << " max_rel_error=" << r.max_rel_error
              << " worst=" << r.worst_tensor
              << " params=" << r.parameters_checked << '\n';
    ok = ok && r.max_rel_error < 1e-4;
  }
  std::cout << (ok ? "gradcheck PASS" : "gradcheck FAIL") << '\n';
  return ok ? kOk : kDataError;
}

// --- decode -------------------------------------------------------------

struct DecodeArgs {
  std::string checkpoint;
  std::string ngram_corpus;
  int ngram_order = 3;
  double k_smooth = 0.1;
  int beam_width = 16;
  int max_steps = 64;
  int branch_k = -1;
  bool iso = false;
  std::string out_dir;
  std::uint64_t seed = 0;
};

int cmd_decode(const DecodeArgs& args) {
  fs::create_directories(args.out_dir);

  std::optional<model::Checkpoint> ckpt;
  std::optional<decode::NGramScorer> ngram;
  model::Vocab vocab;
  std::unique_ptr<decode::Scorer> scorer;
  std::vector<std::string> inputs;

  if (!args.checkpoint.empty()) {
    ckpt = model::load_checkpoint(args.checkpoint);
    vocab = ckpt->vocab;
    scorer = std::make_unique<decode::ModelScorer>(&ckpt->params, &vocab);
    inputs.push_back(args.checkpoint);
  } else {
    std::vector<chem::SmiRecord> records =
        chem::read_smi_file(args.ngram_corpus);
    std::vector<std::string> corpus;
    for (const chem::SmiRecord& r : records) corpus.push_back(r.smiles);
    vocab = model::Vocab::build_from_strings(corpus);
    ngram = decode::NGramScorer::fit(corpus, vocab, args.ngram_order,
                                     args.k_smooth);
    scorer = std::make_unique<decode::NGramScorer>(*ngram);
    inputs.push_back(args.ngram_corpus);
  }

  decode::DecodeConfig config;
  config.beam_width = args.beam_width;
  config.max_steps = args.max_steps;
  config.branch_k = args.branch_k;

  decode::DecodeResult result =
      args.iso ? decode::isobeam_search(*scorer, vocab, config)
               : decode::standard_beam_search(*scorer, vocab, config);

  std::ofstream smi_out(fs::path(args.out_dir) / "decoded.smi");
  int rank = 0;
  for (const decode::BeamEntry& e : result.finished) {
    smi_out << decode::entry_smiles(e, vocab) << '\t' << "rank" << rank++
            << '\n';
  }
  std::ofstream trace_out(fs::path(args.out_dir) / "trace.jsonl");
  for (const decode::StepTrace& t : result.trace) {
    json row{{"step", t.step},
             {"candidates", t.candidates},
             {"admitted", t.admitted},
             {"pruned_isomorphic", t.pruned_isomorphic},
             {"discarded_irrecoverable", t.discarded_irrecoverable},
             {"dropped_budget", t.dropped_budget}};
    trace_out << row.dump() << '\n';
  }

  write_manifest(args.out_dir, "decode", args.seed,
                 json{{"iso", args.iso},
                      {"K", args.beam_width},
                      {"t_max", args.max_steps},
                      {"branch_k", args.branch_k},
                      {"ngram_order", args.ngram_order},
                      {"k_smooth", args.k_smooth},
                      {"scorer", args.checkpoint.empty() ? "ngram" : "model"}},
                 inputs, {"decoded.smi", "trace.jsonl"});
  info("decode: " + std::to_string(result.finished.size()) +
       " finished sequences over " + std::to_string(result.trace.size()) +
       " steps");
  return kOk;
}

// --- eval ---------------------------------------------------------------

struct EvalArgs {
  std::string gen_path;
  std::string train_path;
  std::string checkpoint;
  std::string pairs_path;
  std::string out_dir;
};

int cmd_eval(const EvalArgs& args) {
  fs::create_directories(args.out_dir);
  std::vector<std::string> gen_smiles;
  for (const chem::SmiRecord& r : chem::read_smi_file(args.gen_path)) {
    gen_smiles.push_back(r.smiles);
  }
  metrics::GenSet gen(std::move(gen_smiles));

  std::vector<std::string> train_keys;
  for (const chem::SmiRecord& r : chem::read_smi_file(args.train_path)) {
    chem::ParseResult parsed = chem::parse_string(r.smiles);
    if (parsed.complete()) {
      train_keys.push_back(chem::write_canonical(parsed.graph));
    }
  }

  json report;
  report["schema_version"] = 1;
  report["toolkit_version"] = kToolkitVersion;
  metrics::Ratio v = metrics::validity(gen);
  metrics::Ratio u = metrics::uniqueness(gen);
  double novelty_unique = 0.0;
  metrics::Ratio nov = metrics::novelty(gen, train_keys, &novelty_unique);
  report["validity"] = v.value;
  report["uniqueness"] = u.value;
  report["novelty"] = nov.value;
  report["novelty_unique_variant"] = novelty_unique;
  if (v.empty_warning || u.empty_warning || nov.empty_warning) {
    report["empty_set_warning"] = true;
  }
  if (gen.valid_count() > 0) {
    double off_diag = 0.0;
    report["intdiv"] = metrics::intdiv(gen, &off_diag);
    report["intdiv_off_diagonal"] = off_diag;
  }
  report["scaffold_count"] = metrics::scaffold_count(gen);
  report["fcd"] = nullptr;
  report["fcd_note"] =
      "unavailable: requires a pretrained ChemNet activation model";

  std::vector<std::string> inputs{args.gen_path, args.train_path};
  if (!args.checkpoint.empty() && !args.pairs_path.empty()) {
    model::Checkpoint ckpt = model::load_checkpoint(args.checkpoint);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const views::ViewPair& p : views::load_pairs_jsonl(args.pairs_path)) {
      pairs.emplace_back(p.prefix_u, p.prefix_v);
    }
    report["tis"] = metrics::tis(ckpt.params, ckpt.vocab, pairs);
    inputs.push_back(args.checkpoint);
    inputs.push_back(args.pairs_path);
  } else {
    report["tis"] = nullptr;
    report["tis_note"] = "omitted: needs --checkpoint and --pairs";
  }

  std::ofstream out(fs::path(args.out_dir) / "report.json");
  out << report.dump(2) << '\n';
  write_manifest(args.out_dir, "eval", 0,
                 json{{"gen", args.gen_path}, {"train", args.train_path}},
                 inputs, {"report.json"});
  std::cout << report.dump(2) << '\n';
  return kOk;
}

// --- curve --------------------------------------------------------------

struct CurveArgs {
  std::string ngram_corpus;
  int ngram_order = 3;
  double k_smooth = 0.1;
  std::vector<int> k_list{10, 50, 100, 500};
  int max_steps = 64;
  std::string out_dir;
};

int cmd_curve(const CurveArgs& args) {
  fs::create_directories(args.out_dir);
  std::vector<chem::SmiRecord> records = chem::read_smi_file(args.ngram_corpus);
  std::vector<std::string> corpus;
  for (const chem::SmiRecord& r : records) corpus.push_back(r.smiles);
  model::Vocab vocab = model::Vocab::build_from_strings(corpus);
  decode::NGramScorer scorer =
      decode::NGramScorer::fit(corpus, vocab, args.ngram_order, args.k_smooth);

  std::vector<metrics::CurveRow> rows =
      metrics::diversity_curve(scorer, vocab, args.k_list, args.max_steps);
  std::ofstream out(fs::path(args.out_dir) / "curve.csv");
  metrics::write_curve_csv(out, rows);
  write_manifest(args.out_dir, "curve", 0,
                 json{{"k_list", args.k_list},
                      {"t_max", args.max_steps},
                      {"ngram_order", args.ngram_order}},
                 {args.ngram_corpus}, {"curve.csv"});
  return kOk;
}

// --- heatmap ------------------------------------------------------------

struct HeatmapArgs {
  std::string checkpoint;
  std::string s1;
  std::string s2;
  std::string out_dir;
};

int cmd_heatmap(const HeatmapArgs& args) {
  fs::create_directories(args.out_dir);
  model::Checkpoint ckpt = model::load_checkpoint(args.checkpoint);
  metrics::HeatmapMatrix hm =
      metrics::heatmap(ckpt.params, ckpt.vocab, args.s1, args.s2);
  std::ofstream out(fs::path(args.out_dir) / "heatmap.csv");
  metrics::write_heatmap_csv(out, hm);
  write_manifest(args.out_dir, "heatmap", 0,
                 json{{"s1", args.s1}, {"s2", args.s2}}, {args.checkpoint},
                 {"heatmap.csv"});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SMILES structure-invariant generation toolkit"};
  app.require_subcommand(1);

  CanonicalizeArgs canon_args;
  CLI::App* canon = app.add_subcommand(
      "canonicalize", "Canonical strings and keys for a .smi corpus");
  canon->add_option("--in", canon_args.in_path, "input .smi")->required();
  canon->add_option("--out", canon_args.out_dir, "output directory")->required();

  MineArgs mine_args;
  CLI::App* mine =
      app.add_subcommand("mine", "Mine verified view pairs from a corpus");
  mine->add_option("--in", mine_args.in_path, "input .smi")->required();
  mine->add_option("--out", mine_args.out_dir, "output directory")->required();
  mine->add_option("--seed", mine_args.seed, "random seed");
  mine->add_flag("--enumerate-all-cuts", mine_args.enumerate_all_cuts,
                 "emit a pair for every cuttable bond");
  mine->add_option("--retry-budget", mine_args.retry_budget,
                   "randomized re-draws before skipping a molecule");

  TrainArgs train_args;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Train a model on a mined pair dataset");
  train_cmd->add_option("--pairs", train_args.pairs_path, "pairs.jsonl")
      ->required();
  train_cmd->add_option("--out", train_args.out_dir, "output directory")
      ->required();
  train_cmd->add_option("--config", train_args.config_path, "JSON config file");
  double lambda_flag = -1.0, tau_flag = -1.0, lr_flag = -1.0, valf_flag = -1.0;
  int epochs_flag = -1, batch_flag = -1, dmodel_flag = -1, negs_flag = -1;
  std::int64_t seed_flag = -1;
  train_cmd->add_option("--lambda", lambda_flag, "sigma loss weight");
  train_cmd->add_option("--tau", tau_flag, "contrastive temperature");
  train_cmd->add_option("--epochs", epochs_flag, "training epochs");
  train_cmd->add_option("--batch-size", batch_flag, "molecules per step");
  train_cmd->add_option("--d-model", dmodel_flag, "hidden width");
  train_cmd->add_option("--lr", lr_flag, "peak learning rate");
  train_cmd->add_option("--seed", seed_flag, "random seed");
  train_cmd->add_option("--val-fraction", valf_flag, "held-out tail fraction");
  train_cmd->add_option("--max-negatives", negs_flag, "negatives per anchor");

  std::uint64_t gradcheck_seed = 17;
  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck", "Finite-difference check of the analytic gradients");
  gradcheck->add_option("--seed", gradcheck_seed, "fixture seed");

  DecodeArgs decode_args;
  CLI::App* dec = app.add_subcommand("decode", "Beam-search decoding");
  dec->add_option("--checkpoint", decode_args.checkpoint, "model checkpoint");
  dec->add_option("--ngram", decode_args.ngram_corpus,
                  "fit an n-gram scorer on this .smi corpus");
  dec->add_option("--order", decode_args.ngram_order, "n-gram order");
  dec->add_option("--k-smooth", decode_args.k_smooth, "add-k constant");
  dec->add_option("--K", decode_args.beam_width, "beam width")->required();
  dec->add_option("--t-max", decode_args.max_steps, "decoding steps");
  dec->add_option("--branch-k", decode_args.branch_k,
                  "expansions per beam entry (default K)");
  dec->add_flag("--iso", decode_args.iso, "isomorphic dedup (IsoBeam)");
  dec->add_option("--seed", decode_args.seed, "seed (echoed into manifest)");
  dec->add_option("--out", decode_args.out_dir, "output directory")->required();

  EvalArgs eval_args;
  CLI::App* ev = app.add_subcommand("eval", "Metric report for a generated set");
  ev->add_option("--gen", eval_args.gen_path, "generated .smi")->required();
  ev->add_option("--train", eval_args.train_path, "training .smi")->required();
  ev->add_option("--checkpoint", eval_args.checkpoint, "model checkpoint (TIS)");
  ev->add_option("--pairs", eval_args.pairs_path, "held-out pairs.jsonl (TIS)");
  ev->add_option("--out", eval_args.out_dir, "output directory")->required();

  CurveArgs curve_args;
  CLI::App* curve = app.add_subcommand(
      "curve", "Diversity-vs-K comparison of standard beam and IsoBeam");
  curve->add_option("--ngram", curve_args.ngram_corpus, "corpus .smi")
      ->required();
  curve->add_option("--order", curve_args.ngram_order, "n-gram order");
  curve->add_option("--k-list", curve_args.k_list, "beam widths, ascending");
  curve->add_option("--t-max", curve_args.max_steps, "decoding steps");
  curve->add_option("--out", curve_args.out_dir, "output directory")->required();

  HeatmapArgs heat_args;
  CLI::App* heat = app.add_subcommand(
      "heatmap", "Token-level hidden-state similarity between two strings");
  heat->add_option("--checkpoint", heat_args.checkpoint, "model checkpoint")
      ->required();
  heat->add_option("--s1", heat_args.s1, "first SMILES")->required();
  heat->add_option("--s2", heat_args.s2, "second SMILES")->required();
  heat->add_option("--out", heat_args.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsageError;
  }

  try {
    if (canon->parsed()) return cmd_canonicalize(canon_args);
    if (mine->parsed()) return cmd_mine(mine_args);
    if (train_cmd->parsed()) {
      apply_train_config(load_config_file(train_args.config_path),
                         train_args.cfg);
      if (lambda_flag >= 0) train_args.cfg.lambda = lambda_flag;
      if (tau_flag > 0) train_args.cfg.tau = tau_flag;
      if (lr_flag > 0) train_args.cfg.peak_lr = lr_flag;
      if (valf_flag >= 0) train_args.cfg.val_fraction = valf_flag;
      if (epochs_flag > 0) train_args.cfg.epochs = epochs_flag;
      if (batch_flag > 0) train_args.cfg.batch_size = batch_flag;
      if (dmodel_flag > 0) train_args.cfg.model.d_model = dmodel_flag;
      if (negs_flag >= 0) train_args.cfg.max_negatives = negs_flag;
      if (seed_flag >= 0) train_args.cfg.seed = static_cast<std::uint64_t>(seed_flag);
      return cmd_train(train_args);
    }
    if (gradcheck->parsed()) return cmd_gradcheck(gradcheck_seed);
    if (dec->parsed()) {
      if (decode_args.checkpoint.empty() == decode_args.ngram_corpus.empty()) {
        std::cerr << "decode needs exactly one of --checkpoint or --ngram\n";
        return kUsageError;
      }
      return cmd_decode(decode_args);
    }
    if (ev->parsed()) return cmd_eval(eval_args);
    if (curve->parsed()) return cmd_curve(curve_args);
    if (heat->parsed()) return cmd_heatmap(heat_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
