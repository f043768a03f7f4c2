//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/model/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sigma::model {

using nlohmann::json;

namespace {

constexpr std::uint32_t kFormatVersion = 1;

json config_to_json(const ModelConfig& cfg) {
  return json{{"vocab_size", cfg.vocab_size}, {"d_model", cfg.d_model},
              {"n_layers", cfg.n_layers},     {"n_heads", cfg.n_heads},
              {"d_proj", cfg.d_proj},         {"max_len", cfg.max_len},
              {"ln_eps", cfg.ln_eps}};
}

ModelConfig config_from_json(const json& j) {
  ModelConfig cfg;
  cfg.vocab_size = j.at("vocab_size").get<int>();
  cfg.d_model = j.at("d_model").get<int>();
  cfg.n_layers = j.at("n_layers").get<int>();
  cfg.n_heads = j.at("n_heads").get<int>();
  cfg.d_proj = j.at("d_proj").get<int>();
  cfg.max_len = j.at("max_len").get<int>();
  cfg.ln_eps = j.at("ln_eps").get<double>();
  return cfg;
}

}  // namespace

void save_checkpoint(const std::string& path, const ModelParams& params,
                     const Vocab& vocab) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);

  json header;
  header["config"] = config_to_json(params.cfg);
  header["vocab"] = vocab.token_texts();
  json manifest = json::array();
  for (const TensorView& t : params.tensor_views()) {
    manifest.push_back({{"name", t.name}, {"rows", t.rows}, {"cols", t.cols}});
  }
  header["tensors"] = manifest;
  std::string header_bytes = header.dump();

  out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  std::uint32_t version = kFormatVersion;
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  std::uint64_t header_len = header_bytes.size();
  out.write(reinterpret_cast<const char*>(&header_len), sizeof(header_len));
  out.write(header_bytes.data(), static_cast<std::streamsize>(header_bytes.size()));
  for (const TensorView& t : params.tensor_views()) {
    out.write(reinterpret_cast<const char*>(t.data),
              static_cast<std::streamsize>(t.size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);

  char magic[sizeof(kCheckpointMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("not a checkpoint file: " + path);
  }
  std::uint32_t version = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  if (version != kFormatVersion) {
    throw std::runtime_error("unsupported checkpoint version");
  }
  std::uint64_t header_len = 0;
  in.read(reinterpret_cast<char*>(&header_len), sizeof(header_len));
  std::string header_bytes(header_len, '\0');
  in.read(header_bytes.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw std::runtime_error("truncated checkpoint header");
  json header = json::parse(header_bytes);

  Checkpoint ckpt;
  ckpt.vocab =
      Vocab::from_token_texts(header.at("vocab").get<std::vector<std::string>>());
  ModelConfig cfg = config_from_json(header.at("config"));
  ckpt.params = ModelParams::init(cfg, 0);

  const json& manifest = header.at("tensors");
  std::vector<TensorView> views = ckpt.params.tensor_views();
  if (manifest.size() != views.size()) {
    throw std::runtime_error("checkpoint tensor manifest mismatch");
  }
  for (std::size_t i = 0; i < views.size(); ++i) {
    const json& entry = manifest[i];
    if (entry.at("name").get<std::string>() != views[i].name ||
        entry.at("rows").get<Eigen::Index>() != views[i].rows ||
        entry.at("cols").get<Eigen::Index>() != views[i].cols) {
      throw std::runtime_error("checkpoint tensor mismatch at " + views[i].name);
    }
    in.read(reinterpret_cast<char*>(views[i].data),
            static_cast<std::streamsize>(views[i].size() * sizeof(double)));
  }
  if (!in) throw std::runtime_error("truncated checkpoint tensors");
  return ckpt;
}

}  // namespace sigma::model
