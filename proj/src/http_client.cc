// Copyright 2026 The RUSS Authors.
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

#include <chrono>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "russ/mrc.h"
#include "russ/scoring.h"

namespace russ {

using json = nlohmann::json;

void HttpMrcClient::Slots::Acquire() {
  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait(lock, [this] { return free_ > 0; });
  --free_;
}

void HttpMrcClient::Slots::Release() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++free_;
  }
  cv_.notify_one();
}

HttpMrcClient::HttpMrcClient(HttpClientOptions options)
    : options_(std::move(options)), slots_(std::max(1, options_.max_in_flight)) {
  const std::string &url = options_.endpoint;
  size_t scheme = url.find("://");
  if (scheme == std::string::npos || url.substr(0, scheme) != "http") {
    throw ConfigError("endpoint must be an http:// URL: " + url);
  }
  size_t slash = url.find('/', scheme + 3);
  host_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "" : url.substr(slash);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/answer";
  if (host_.size() <= scheme + 3) throw ConfigError("endpoint has no host");
  if (options_.retries < 0) throw ConfigError("retries must be >= 0");
  if (options_.timeout_ms <= 0) throw ConfigError("timeout must be positive");
}

std::string HttpMrcClient::EncodeRequest(const std::string &question,
                                         std::span<const Token> context) {
  json tokens = json::array();
  for (const Token &token : context) tokens.push_back(token.text);
  return json{{"question", question}, {"tokens", std::move(tokens)}}.dump();
}

SpanAnswer HttpMrcClient::DecodeResponse(const std::string &body,
                                         std::span<const Token> context) {
  SpanAnswer answer;
  try {
    json obj = json::parse(body);
    answer.text = obj.at("text").get<std::string>();
    answer.start_token = obj.at("start_token").get<int>();
    answer.end_token = obj.at("end_token").get<int>();
    answer.score = obj.at("score").get<double>();
  } catch (const json::exception &e) {
    throw BackendError(std::string("malformed response: ") + e.what(), body);
  }
  ValidateSpan(answer, context, body);
  return answer;
}

SpanAnswer HttpMrcClient::Answer(const std::string &question,
                                 std::span<const Token> context) const {
  const std::string request = EncodeRequest(question, context);
  slots_.Acquire();
  struct Release {
    Slots *slots;
    ~Release() { slots->Release(); }
  } release{&slots_};

  std::string last_error;
  std::string last_payload;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(options_.backoff_ms << (attempt - 1)));
    }
    httplib::Client client(host_);
    auto timeout = std::chrono::milliseconds(options_.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    auto res = client.Post(path_, request, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      last_payload.clear();
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP status " + std::to_string(res->status);
      last_payload = res->body;
      continue;
    }
    return DecodeResponse(res->body, context);
  }
  throw BackendError(options_.endpoint + path_ + ": " + last_error + " after " +
                         std::to_string(options_.retries + 1) + " attempt(s)",
                     last_payload);
}

}  // namespace russ
