// Copyright 2026 The GlossGauge Authors
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

#ifndef GLOSSGAUGE_TESTS_TEST_UTIL_HPP_
#define GLOSSGAUGE_TESTS_TEST_UTIL_HPP_

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "glossgauge/config.hpp"
#include "glossgauge/io.hpp"

namespace glossgauge::testing {

namespace fs = std::filesystem;

inline fs::path data_dir() { return fs::path(GLOSSGAUGE_TEST_DATA); }

class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("glossgauge-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Set GLOSSGAUGE_UPDATE_GOLDEN=1 to rewrite goldens instead of comparing.
inline bool update_goldens() {
  const char* v = std::getenv("GLOSSGAUGE_UPDATE_GOLDEN");
  return v != nullptr && std::string(v) == "1";
}

// Local stand-in for an OpenAI-compatible service. Handlers see the parsed
// request body and the Authorization header.
class FakeService {
 public:
  struct Request {
    std::string path;
    nlohmann::json body;
    std::string authorization;
  };
  using Handler = std::function<void(const Request&, httplib::Response&)>;

  explicit FakeService(Handler handler) : handler_(std::move(handler)) {
    auto serve = [this](const httplib::Request& req, httplib::Response& res) {
      Request r{req.path, nlohmann::json::parse(req.body, nullptr, false),
                req.get_header_value("Authorization")};
      {
        std::lock_guard lock(mu_);
        requests_.push_back(r);
      }
      handler_(r, res);
    };
    server_.Post(R"(/.*)", serve);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeService() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  std::vector<Request> requests() const {
    std::lock_guard lock(mu_);
    return requests_;
  }

 private:
  Handler handler_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  mutable std::mutex mu_;
  std::vector<Request> requests_;
};

// Definition-like texts of 4 to 28 words drawn from a mixed vocabulary.
inline std::vector<std::string> synthetic_corpus(std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> vocab{
      "sea",        "ice",          "carbon",     "flux",         "change",     "land",
      "the",        "of",           "a",          "region",       "emissions",  "temperature",
      "vulnerability", "adaptation", "atmospheric", "concentration", "water",    "forest",
      "biodiversity", "heat",       "risk",       "system",       "process",    "policy"};
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto len = 4 + rng() % 25;
    std::string s;
    for (std::uint64_t w = 0; w < len; ++w) {
      if (w > 0) s += ' ';
      s += vocab[rng() % vocab.size()];
    }
    s += '.';
    out.push_back(s);
  }
  return out;
}

// The fixture run: 10-term glossary, stub chat, hashed_stub embedder, seed 42.
inline RunConfig golden_config(const fs::path& out_dir) {
  auto cfg = load_config(data_dir() / "golden_config.json");
  cfg.out_dir = out_dir;
  return cfg;
}

inline fs::path golden_report_dir() { return data_dir() / "golden" / "report"; }

inline void reply_json(httplib::Response& res, const nlohmann::json& j, int status = 200) {
  res.status = status;
  res.set_content(j.dump(), "application/json");
}

}  // namespace glossgauge::testing

#endif  // GLOSSGAUGE_TESTS_TEST_UTIL_HPP_
