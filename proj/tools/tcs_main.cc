// tools/tcs_main.cc

// Copyright 2026  The TCS Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Command-line surface. Exit codes: 0 success, 2 malformed input,
// 3 infeasible label, 4 enumeration guard exceeded. Primary output goes
// to stdout as JSON (or CSV where documented); diagnostics to stderr.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcs/decoder.h"
#include "tcs/error.h"
#include "tcs/lattice.h"
#include "tcs/matrix.h"
#include "tcs/nnet.h"
#include "tcs/oracle.h"
#include "tcs/synthgen.h"
#include "tcs/trellis.h"

namespace {

using nlohmann::json;

tcs::TopologyKind parse_topology(const std::string& name) {
  if (name == "ctc") return tcs::TopologyKind::kCtc;
  if (name == "tcs") return tcs::TopologyKind::kTcs;
  throw tcs::ParseError("unknown topology '" + name + "' (expected ctc or tcs)");
}

tcs::Alphabet load_alphabet(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tcs::ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw tcs::ParseError("bad alphabet file " + path + ": " + e.what());
  }
  return tcs::Alphabet::from_json(j);
}

// Comma-separated class names; bare integers fall back to class indices.
tcs::LabelSequence parse_labels(const std::string& csv, const tcs::Alphabet& alphabet) {
  tcs::LabelSequence labels;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t comma = csv.find(',', pos);
    const std::string token = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
    int id = alphabet.index_of(token);
    if (id < 0) {
      try {
        std::size_t used = 0;
        id = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw tcs::ParseError("unknown label '" + token + "'");
      }
    }
    labels.push_back(id);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  tcs::validate_labels(labels, alphabet);
  return labels;
}

struct LossArgs {
  std::string logits_path, labels_csv, alphabet_path, topology;
  std::string grad_path, result_path;
  bool verify = false;
};

int run_loss(const LossArgs& args) {
  const tcs::Alphabet alphabet = load_alphabet(args.alphabet_path);
  const tcs::TopologyKind kind = parse_topology(args.topology);
  const tcs::LabelSequence labels = parse_labels(args.labels_csv, alphabet);
  const tcs::Matrix logits = tcs::read_csv_matrix(args.logits_path);

  const tcs::LatticeResult result = tcs::loss_and_gradient(logits, labels, alphabet, kind);

  json out{{"nll", result.nll()}, {"cross_entropy", result.cross_entropy}};
  if (args.verify) {
    const tcs::StateTrellis trellis = tcs::expand(labels, alphabet, kind);
    const double oracle_ll =
        tcs::brute_force_log_likelihood(tcs::softmax_frames(logits), trellis);
    out["oracle_nll"] = -oracle_ll;
    out["abs_diff"] = std::abs(result.log_likelihood - oracle_ll);
  }
  if (!args.grad_path.empty()) tcs::write_csv_matrix(args.grad_path, result.gradient);
  if (!args.result_path.empty()) {
    std::ofstream f(args.result_path);
    if (!f) throw tcs::ParseError("cannot write " + args.result_path);
    f << result.to_json().dump(2) << '\n';
  }
  std::cout << out.dump() << '\n';
  return 0;
}

struct AlignArgs {
  std::string logits_path, labels_csv, alphabet_path, topology;
  bool speech_span = false;
};

int run_align(const AlignArgs& args) {
  const tcs::Alphabet alphabet = load_alphabet(args.alphabet_path);
  const tcs::TopologyKind kind = parse_topology(args.topology);
  const tcs::LabelSequence labels = parse_labels(args.labels_csv, alphabet);
  const tcs::Matrix logits = tcs::read_csv_matrix(args.logits_path);

  const tcs::StateTrellis trellis = tcs::expand(labels, alphabet, kind);
  const tcs::Alignment alignment =
      tcs::viterbi_align(tcs::softmax_frames(logits), trellis);
  std::vector<tcs::Segment> segments = alignment.segments;
  if (args.speech_span) segments = tcs::merge_speech_spans(segments);

  std::cout << tcs::segments_to_json(segments, alphabet).dump() << '\n';
  return 0;
}

struct DecodeArgs {
  std::string logits_path, alphabet_path, topology;
};

int run_decode(const DecodeArgs& args) {
  const tcs::Alphabet alphabet = load_alphabet(args.alphabet_path);
  const tcs::TopologyKind kind = parse_topology(args.topology);
  const tcs::Matrix logits = tcs::read_csv_matrix(args.logits_path);

  const tcs::LabelSequence labels =
      tcs::greedy_decode(tcs::softmax_frames(logits), alphabet, kind);
  json names = json::array();
  for (int id : labels) names.push_back(alphabet.names[id]);
  std::cout << json{{"labels", names}}.dump() << '\n';
  return 0;
}

struct SynthArgs {
  std::string out_dir, config_path;
  int count = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

int run_synth(const SynthArgs& args) {
  tcs::SynthConfig config;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw tcs::ParseError("cannot open " + args.config_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw tcs::ParseError("bad config file " + args.config_path + ": " + e.what());
    }
    config = tcs::SynthConfig::from_json(j);
  }
  if (args.seed_given || args.config_path.empty()) config.seed = args.seed;
  config.validate();

  const std::vector<tcs::SynthSample> samples = tcs::generate_dataset(config, args.count);
  tcs::save_dataset(args.out_dir, config, samples);
  std::cout << json{{"out", args.out_dir}, {"n", args.count}, {"seed", config.seed}}.dump()
            << '\n';
  return 0;
}

struct TrainArgs {
  std::string data_dir, topology = "tcs", model_out;
  int epochs = 30;
  std::uint64_t seed = 0;
  bool sortagrad = false;
  int holdout = 0;
  std::vector<int> hidden = {32};
  double learning_rate = 0.05;
  double clip_norm = 5.0;
  int stack_window = 8;
  int stack_stride = 2;
};

int run_train(const TrainArgs& args) {
  const tcs::TopologyKind kind = parse_topology(args.topology);
  auto [config, raw_samples] = tcs::load_dataset(args.data_dir);

  std::vector<tcs::SynthSample> samples;
  samples.reserve(raw_samples.size());
  for (const tcs::SynthSample& s : raw_samples)
    samples.push_back(tcs::stack_sample(s, args.stack_window, args.stack_stride));

  if (args.holdout < 0 || args.holdout >= static_cast<int>(samples.size()))
    throw tcs::ConfigError("holdout must be in [0, n_samples)");
  const std::vector<tcs::SynthSample> train_set(samples.begin(),
                                                samples.end() - args.holdout);
  const std::vector<tcs::SynthSample> eval_set(samples.end() - args.holdout, samples.end());

  tcs::Alphabet alphabet;
  const std::vector<std::string> names = tcs::synth_class_names(config.n_classes);
  alphabet = kind == tcs::TopologyKind::kTcs
                 ? tcs::Alphabet::with_background_foreground(names)
                 : tcs::Alphabet::with_blank(names);

  std::vector<int> layer_sizes;
  layer_sizes.push_back(args.stack_window * config.feature_dim);
  for (int h : args.hidden) layer_sizes.push_back(h);
  layer_sizes.push_back(alphabet.num_classes());

  tcs::RnnModel model = tcs::init_model(layer_sizes, alphabet, args.seed);
  tcs::TrainConfig train_config;
  train_config.epochs = args.epochs;
  train_config.learning_rate = args.learning_rate;
  train_config.clip_norm = args.clip_norm;
  train_config.sortagrad = args.sortagrad;
  train_config.kind = kind;
  train_config.seed = args.seed;

  const tcs::TrainResult result = tcs::train(model, train_set, eval_set, train_config);
  if (!args.model_out.empty()) model.save(args.model_out);

  json epochs = json::array();
  for (const tcs::EpochMetrics& m : result.epochs) {
    epochs.push_back({{"epoch", m.epoch},
                      {"mean_nll", m.mean_nll},
                      {"eval_sequence_accuracy", m.eval_sequence_accuracy}});
    std::cerr << "epoch " << m.epoch << ": mean_nll=" << m.mean_nll
              << " eval_acc=" << m.eval_sequence_accuracy << '\n';
  }
  const tcs::EvalMetrics eval =
      tcs::evaluate(model, eval_set.empty() ? train_set : eval_set, kind);
  std::cout << json{{"epochs", epochs}, {"eval", eval.to_json()}}.dump() << '\n';
  return 0;
}

struct PosteriorsArgs {
  std::string model_path, input_path;
  int stack_window = 8;
  int stack_stride = 2;
};

int run_posteriors(const PosteriorsArgs& args) {
  const tcs::RnnModel model = tcs::RnnModel::load(args.model_path);
  const tcs::Matrix features = tcs::read_csv_matrix(args.input_path);
  const tcs::Matrix stacked =
      tcs::stack_frames(features, args.stack_window, args.stack_stride);
  const tcs::Matrix probs = tcs::softmax_frames(tcs::rnn_forward(model, stacked));
  std::cout << tcs::format_csv_matrix(probs);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal classification and segmentation toolkit"};
  app.require_subcommand(1);

  LossArgs loss_args;
  CLI::App* loss = app.add_subcommand("loss", "Sequence loss and gradient from raw scores");
  loss->add_option("--logits", loss_args.logits_path, "score CSV, one frame per row")
      ->required();
  loss->add_option("--labels", loss_args.labels_csv, "comma-separated labels");
  loss->add_option("--alphabet", loss_args.alphabet_path, "alphabet JSON")->required();
  loss->add_option("--topology", loss_args.topology, "ctc or tcs")->required();
  loss->add_option("--grad", loss_args.grad_path, "write gradient CSV here");
  loss->add_option("--result", loss_args.result_path, "write full lattice result JSON here");
  loss->add_flag("--verify", loss_args.verify, "cross-check against path enumeration");

  AlignArgs align_args;
  CLI::App* align = app.add_subcommand("align", "Viterbi forced alignment to segments");
  align->add_option("--logits", align_args.logits_path)->required();
  align->add_option("--labels", align_args.labels_csv);
  align->add_option("--alphabet", align_args.alphabet_path)->required();
  align->add_option("--topology", align_args.topology)->required();
  align->add_flag("--speech-span", align_args.speech_span,
                  "fold foreground frames into the following character span");

  DecodeArgs decode_args;
  CLI::App* decode = app.add_subcommand("decode", "Greedy best-path decoding");
  decode->add_option("--logits", decode_args.logits_path)->required();
  decode->add_option("--alphabet", decode_args.alphabet_path)->required();
  decode->add_option("--topology", decode_args.topology)->required();

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic labeled dataset");
  synth->add_option("--out", synth_args.out_dir, "output directory")->required();
  synth->add_option("--n", synth_args.count, "number of samples")->required();
  CLI::Option* seed_opt = synth->add_option("--seed", synth_args.seed, "RNG seed");
  synth->add_option("--config", synth_args.config_path, "generator config JSON");

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "Train a recurrent model on a dataset");
  train->add_option("--data", train_args.data_dir, "dataset directory")->required();
  train->add_option("--topology", train_args.topology, "ctc or tcs");
  train->add_option("--epochs", train_args.epochs);
  train->add_option("--seed", train_args.seed);
  train->add_flag("--sortagrad", train_args.sortagrad, "first epoch shortest-first");
  train->add_option("--model-out", train_args.model_out, "model JSON path");
  train->add_option("--holdout", train_args.holdout, "samples held out from the end");
  train->add_option("--hidden", train_args.hidden, "hidden layer sizes");
  train->add_option("--lr", train_args.learning_rate);
  train->add_option("--clip", train_args.clip_norm, "gradient clipping norm");
  train->add_option("--stack-window", train_args.stack_window);
  train->add_option("--stack-stride", train_args.stack_stride);

  PosteriorsArgs post_args;
  CLI::App* posteriors =
      app.add_subcommand("posteriors", "Per-frame class posteriors for a feature CSV");
  posteriors->add_option("--model", post_args.model_path)->required();
  posteriors->add_option("--input", post_args.input_path, "feature CSV")->required();
  posteriors->add_option("--stack-window", post_args.stack_window);
  posteriors->add_option("--stack-stride", post_args.stack_stride);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (loss->parsed()) return run_loss(loss_args);
    if (align->parsed()) return run_align(align_args);
    if (decode->parsed()) return run_decode(decode_args);
    if (synth->parsed()) {
      synth_args.seed_given = seed_opt->count() > 0;
      return run_synth(synth_args);
    }
    if (train->parsed()) return run_train(train_args);
    if (posteriors->parsed()) return run_posteriors(post_args);
  } catch (const tcs::InfeasibleLabelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const tcs::GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
