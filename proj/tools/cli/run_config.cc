// Copyright 2026 The owflab Authors
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

#include "cli/run_config.h"

#include <fstream>

namespace owflab::cli {

nlohmann::json ToJson(const RunConfig& c) {
  nlohmann::json j;
  j["seed"] = c.seed;
  j["beta"] = c.beta;
  j["alpha"] = c.alpha ? nlohmann::json(*c.alpha) : nlohmann::json(nullptr);
  j["n"] = c.n;
  j["ell"] = c.ell;
  j["trials"] = c.trials;
  j["oracle"] = c.oracle;
  j["k_profile"] = c.k_profile;
  j["format"] = c.format;
  j["out"] = c.out;
  j["limit"] = c.limit;
  j["n_min"] = c.n_min;
  j["n_max"] = c.n_max;
  j["k"] = c.k;
  j["range"] = c.range;
  j["lengths"] = c.lengths;
  j["input"] = c.input;
  j["threads"] = c.threads;
  return j;
}

void ApplyJson(const nlohmann::json& j, RunConfig* c) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") {
        c->seed = v.get<std::uint64_t>();
      } else if (key == "beta") {
        c->beta = v.get<unsigned>();
      } else if (key == "alpha") {
        if (v.is_null()) {
          c->alpha.reset();
        } else if (v.is_string()) {
          c->alpha = v.get<std::string>();
        } else {
          c->alpha = v.dump();
        }
      } else if (key == "n") {
        c->n = v.get<std::uint64_t>();
      } else if (key == "ell") {
        c->ell = v.get<std::uint64_t>();
      } else if (key == "trials") {
        c->trials = v.get<std::uint64_t>();
      } else if (key == "oracle") {
        c->oracle = v.get<std::string>();
      } else if (key == "k_profile") {
        c->k_profile = v.get<std::string>();
      } else if (key == "format") {
        c->format = v.get<std::string>();
      } else if (key == "out") {
        c->out = v.get<std::string>();
      } else if (key == "limit") {
        c->limit = v.get<std::uint64_t>();
      } else if (key == "n_min") {
        c->n_min = v.get<std::uint64_t>();
      } else if (key == "n_max") {
        c->n_max = v.get<std::uint64_t>();
      } else if (key == "k") {
        c->k = v.get<std::uint64_t>();
      } else if (key == "range") {
        c->range = v.get<std::uint64_t>();
      } else if (key == "lengths") {
        c->lengths = v.get<std::vector<std::uint64_t>>();
      } else if (key == "input") {
        c->input = v.get<std::string>();
      } else if (key == "threads") {
        c->threads = v.get<unsigned>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
}

void ApplyConfigFile(const std::string& path, RunConfig* config) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  ApplyJson(j, config);
}

}  // namespace owflab::cli
