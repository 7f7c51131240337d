#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"

#include "bioinstruct/backend.hpp"
#include "bioinstruct/error.hpp"
#include "bioinstruct/jsonl.hpp"

namespace bioinstruct {

namespace {

// Splits "http://host:port/path" into (scheme://host:port, /path).
std::pair<std::string, std::string> split_endpoint(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw ValidationError("endpoint must start with http:// or https://: " +
                          url);
  }
  const std::size_t path = url.find('/', scheme + 3);
  if (path == std::string::npos) return {url, "/"};
  return {url.substr(0, path), url.substr(path)};
}

}  // namespace

HttpBackend::HttpBackend(HttpConfig config) : config_(std::move(config)) {
  if (config_.max_retries == 0) {
    throw ValidationError("max retries must be at least 1");
  }
  if (!config_.auth_env.empty()) {
    const char* token = std::getenv(config_.auth_env.c_str());
    if (token != nullptr) token_ = token;
  }
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::generate(const InstructionRecord& record,
                                  const GenerationRequest& request) {
  json body;
  if (config_.chat_style) {
    json message;
    message["role"] = "user";
    message["content"] = request.prompt;
    body["messages"] = json::array({message});
    body["max_tokens"] = request.max_new_tokens;
    body["temperature"] = request.temperature;
    body["stop"] = request.stop;
  } else {
    body["prompt"] = request.prompt;
    body["max_new_tokens"] = request.max_new_tokens;
    body["temperature"] = request.temperature;
    body["stop"] = request.stop;
  }
  const std::string payload = body.dump();

  const auto [base, path] = split_endpoint(config_.endpoint);
  httplib::Client client(base);
  client.set_connection_timeout(std::chrono::milliseconds(
      static_cast<int>(config_.timeout_s * 1000)));
  client.set_read_timeout(
      std::chrono::milliseconds(static_cast<int>(config_.timeout_s * 1000)));
  httplib::Headers headers;
  if (!token_.empty()) {
    headers.emplace("Authorization", "Bearer " + token_);
  }

  std::string last_error;
  std::uint64_t delay_ms = config_.backoff_ms;
  for (std::uint64_t attempt = 1; attempt <= config_.max_retries; ++attempt) {
    auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
    } else if (res->status >= 500) {
      last_error = "server returned " + std::to_string(res->status);
    } else if (res->status != 200) {
      throw BackendError("record '" + record.meta.source_id +
                         "': unexpected status " + std::to_string(res->status));
    } else {
      json j = json::parse(res->body, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        throw BackendError("record '" + record.meta.source_id +
                           "': response is not JSON");
      }
      try {
        if (config_.chat_style) {
          return j.at("choices").at(0).at("message").at("content")
              .get<std::string>();
        }
        return j.at("text").get<std::string>();
      } catch (const json::exception& e) {
        throw BackendError("record '" + record.meta.source_id +
                           "': bad response shape: " + e.what());
      }
    }
    if (attempt < config_.max_retries) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
      delay_ms *= 2;
    }
  }
  throw BackendError("record '" + record.meta.source_id + "': " + last_error +
                     " after " + std::to_string(config_.max_retries) +
                     " attempts");
}

std::string HttpBackend::describe() const {
  return std::string(config_.chat_style ? "http-chat:" : "http:") +
         config_.endpoint;
}

}  // namespace bioinstruct
