// Copyright 2026 The aaeal Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "error.hpp"

namespace aaeal {

namespace {

using nlohmann::json;

constexpr const char* kNetworkNames[] = {"encoder", "decoder", "discriminator",
                                         "classifier"};

json mlp_to_json(const Mlp& net) {
  json layers = json::array();
  for (const DenseLayer& l : net.layers()) {
    layers.push_back({{"fan_in", l.fan_in()},
                      {"fan_out", l.fan_out()},
                      {"activation", to_string(l.activation)},
                      {"weights", std::vector<double>(l.weights.values().begin(),
                                                      l.weights.values().end())},
                      {"bias", std::vector<double>(l.bias.values().begin(),
                                                   l.bias.values().end())}});
  }
  return layers;
}

Mlp mlp_from_json(const json& layers, const std::string& name) {
  if (!layers.is_array() || layers.empty()) {
    fail(ErrorKind::kFormat, "checkpoint: network '" + name + "' has no layers");
  }
  std::vector<DenseLayer> out;
  for (const json& l : layers) {
    const auto fan_in = l.at("fan_in").get<std::size_t>();
    const auto fan_out = l.at("fan_out").get<std::size_t>();
    auto weights = l.at("weights").get<std::vector<double>>();
    auto bias = l.at("bias").get<std::vector<double>>();
    if (fan_in == 0 || fan_out == 0 || weights.size() != fan_in * fan_out ||
        bias.size() != fan_out) {
      fail(ErrorKind::kFormat, "checkpoint: network '" + name +
                                   "' layer parameter counts disagree with its shape");
    }
    out.push_back({Tensor::from(fan_out, fan_in, std::move(weights)),
                   Tensor::vector(std::move(bias)),
                   activation_from_string(l.at("activation").get<std::string>())});
  }
  return Mlp(std::move(out));
}

}  // namespace

json model_to_json(const ModelCheckpoint& ckpt) {
  const AaeModel& m = ckpt.model;
  const Mlp* nets[] = {&m.encoder, &m.decoder, &m.discriminator, &m.classifier};
  json networks = json::object();
  for (std::size_t i = 0; i < 4; ++i) networks[kNetworkNames[i]] = mlp_to_json(*nets[i]);
  return {{"format_version", kCheckpointFormatVersion},
          {"d_z", m.latent_dim},
          {"input_mean", m.input_mean},
          {"input_scale", m.input_scale},
          {"networks", std::move(networks)},
          {"rng_seed", ckpt.rng_seed},
          {"rounds_completed", ckpt.rounds_completed}};
}

ModelCheckpoint model_from_json(const json& doc) {
  try {
    if (!doc.is_object()) fail(ErrorKind::kFormat, "checkpoint: not a JSON object");
    const int version = doc.at("format_version").get<int>();
    if (version != kCheckpointFormatVersion) {
      fail(ErrorKind::kFormat, "checkpoint: unsupported format_version " +
                                   std::to_string(version));
    }
    ModelCheckpoint c;
    c.model.latent_dim = doc.at("d_z").get<std::size_t>();
    const json& nets = doc.at("networks");
    c.model.encoder = mlp_from_json(nets.at("encoder"), "encoder");
    c.model.decoder = mlp_from_json(nets.at("decoder"), "decoder");
    c.model.discriminator = mlp_from_json(nets.at("discriminator"), "discriminator");
    c.model.classifier = mlp_from_json(nets.at("classifier"), "classifier");
    c.model.input_mean = doc.at("input_mean").get<std::vector<double>>();
    c.model.input_scale = doc.at("input_scale").get<std::vector<double>>();
    c.model.validate();
    c.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
    c.rounds_completed = doc.at("rounds_completed").get<std::size_t>();
    return c;
  } catch (const json::exception& e) {
    fail(ErrorKind::kFormat, std::string("checkpoint: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kFormat) throw;
    fail(ErrorKind::kFormat, std::string("checkpoint: ") + e.what());
  }
}

void save_model(const ModelCheckpoint& ckpt, const std::filesystem::path& path) {
  write_json_file(model_to_json(ckpt), path);
}

ModelCheckpoint load_model(const std::filesystem::path& path) {
  return model_from_json(read_json_file(path));
}

void write_json_file(const json& doc, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(ErrorKind::kIo, "cannot write " + tmp.string());
    out << doc.dump();
    if (!out) fail(ErrorKind::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::kIo, "cannot move checkpoint into place: " + ec.message());
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kFormat, path.string() + ": " + e.what());
  }
}

}  // namespace aaeal
