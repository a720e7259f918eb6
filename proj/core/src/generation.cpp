#include "prooflab/generation.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include <httplib.h>

#include "json_io.hpp"

namespace prooflab {

using jsonio::json;

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

GenerationResult backend_error_result(std::string message, std::int64_t latency_ms) {
  GenerationResult r;
  r.finish_reason = GenerationResult::Finish::kBackendError;
  r.completion_text.clear();
  r.error_message = std::move(message);
  r.latency_ms = latency_ms;
  return r;
}

// ---------------------------------------------------------------------------
// Scripted mock: a read-only (theorem_id, attempt_index) -> result map loaded
// at construction, reentrant by design.
// ---------------------------------------------------------------------------

class MockBackend final : public TextBackend {
 public:
  explicit MockBackend(const std::string& fixture_path) : path_(fixture_path) {
    std::ifstream in(fixture_path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("mock backend: cannot open fixture '" + fixture_path + "'");
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        throw std::runtime_error("mock backend fixture '" + fixture_path + "' line " +
                                 std::to_string(line_no) + ": malformed JSON");
      }
      Entry e;
      e.completion = jsonio::get_string(j, "completion");
      const std::string reason = jsonio::get_string(j, "finish_reason", "stop");
      if (reason == "length") {
        e.finish = GenerationResult::Finish::kLength;
      } else if (reason == "backend_error") {
        e.finish = GenerationResult::Finish::kBackendError;
        e.completion.clear();
      } else {
        e.finish = GenerationResult::Finish::kStop;
      }
      if (j.contains("token_count") && j["token_count"].is_number_integer()) {
        e.token_count = j["token_count"].get<int>();
      }
      e.latency_ms = j.value("latency_ms", std::int64_t{0});
      const std::string tid = jsonio::require_string(j, "theorem_id", "mock fixture");
      const int idx = j.value("attempt_index", 0);
      script_[{tid, idx}] = std::move(e);
    }
  }

  GenerationResult generate(const GenerationRequest& request) override {
    auto it = script_.find({request.theorem_id, request.attempt_index});
    if (it == script_.end()) {
      return backend_error_result("mock backend: no script for (" + request.theorem_id + ", " +
                                      std::to_string(request.attempt_index) + ")",
                                  0);
    }
    GenerationResult r;
    r.completion_text = it->second.completion;
    r.finish_reason = it->second.finish;
    r.token_count = it->second.token_count;
    r.latency_ms = it->second.latency_ms;
    if (r.finish_reason == GenerationResult::Finish::kBackendError) {
      r.error_message = "mock backend: scripted backend_error";
    }
    return r;
  }

  std::string descriptor() const override { return "mock:" + path_; }

 private:
  struct Entry {
    std::string completion;
    GenerationResult::Finish finish = GenerationResult::Finish::kStop;
    std::optional<int> token_count;
    std::int64_t latency_ms = 0;
  };
  std::string path_;
  std::map<std::pair<std::string, int>, Entry> script_;
};

// ---------------------------------------------------------------------------
// Remote completion endpoint
// ---------------------------------------------------------------------------

class RemoteBackend final : public TextBackend {
 public:
  explicit RemoteBackend(BackendDescriptor d) : d_(std::move(d)) {
    if (d_.base_url.empty()) {
      throw std::runtime_error("remote backend: base_url is required");
    }
    if (!d_.api_key_env.empty()) {
      if (const char* v = std::getenv(d_.api_key_env.c_str()); v && *v) {
        api_key_ = v;
      }
    }
  }

  GenerationResult generate(const GenerationRequest& request) override {
    const auto start = Clock::now();
    json body;
    body["model"] = request.params.model_name.empty() ? d_.model : request.params.model_name;
    body["prompt"] = request.prompt;
    body["temperature"] = request.params.temperature;
    body["top_p"] = request.params.top_p;
    body["max_tokens"] = request.params.max_tokens;
    body["n"] = 1;
    body["stop"] = request.params.stop_sequences;
    const std::string payload = jsonio::dump_lossy(body);

    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= d_.max_retries; ++attempt) {
      if (attempt > 0) {
        const auto delay = std::chrono::milliseconds(
            static_cast<std::int64_t>(d_.backoff_base_ms) << (attempt - 1));
        std::this_thread::sleep_for(delay);
      }
      httplib::Client client(d_.base_url);
      client.set_connection_timeout(std::chrono::seconds(d_.timeout_seconds));
      client.set_read_timeout(std::chrono::seconds(d_.timeout_seconds));
      client.set_write_timeout(std::chrono::seconds(d_.timeout_seconds));
      httplib::Headers headers;
      if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

      auto res = client.Post(d_.completions_path, headers, payload, "application/json");
      if (!res) {
        last_error = "transport error: " + httplib::to_string(res.error());
        continue;  // transient
      }
      if (res->status == 200) {
        return parse_response(res->body, ms_since(start));
      }
      if (res->status == 408 || res->status == 429 || res->status >= 500) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;  // transient
      }
      // 4xx other than 408/429: permanent (auth, bad request).
      return backend_error_result("permanent backend error: HTTP " +
                                      std::to_string(res->status) + " " + res->body,
                                  ms_since(start));
    }
    return backend_error_result("backend unreachable after " + std::to_string(d_.max_retries) +
                                    " retries: " + last_error,
                                ms_since(start));
  }

  std::string descriptor() const override {
    return "remote:" + d_.base_url + d_.completions_path + " model=" + d_.model;
  }

 private:
  GenerationResult parse_response(const std::string& body, std::int64_t latency_ms) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("choices") ||
        !j["choices"].is_array() || j["choices"].empty()) {
      return backend_error_result("malformed completion response", latency_ms);
    }
    const json& choice = j["choices"][0];
    GenerationResult r;
    r.completion_text = jsonio::get_string(choice, "text");
    const std::string reason = jsonio::get_string(choice, "finish_reason", "stop");
    r.finish_reason = reason == "length" ? GenerationResult::Finish::kLength
                                         : GenerationResult::Finish::kStop;
    if (j.contains("usage") && j["usage"].is_object() &&
        j["usage"].contains("completion_tokens") &&
        j["usage"]["completion_tokens"].is_number_integer()) {
      r.token_count = j["usage"]["completion_tokens"].get<int>();
    }
    r.latency_ms = latency_ms;
    return r;
  }

  BackendDescriptor d_;
  std::string api_key_;
};

}  // namespace

BackendDescriptor backend_descriptor_from_json(const std::string& text) {
  json j = jsonio::parse_or_throw(text, "backend descriptor");
  BackendDescriptor d;
  d.kind = jsonio::require_string(j, "kind", "backend descriptor");
  d.path = jsonio::get_string(j, "path");
  d.base_url = jsonio::get_string(j, "base_url");
  d.completions_path = jsonio::get_string(j, "completions_path", "/v1/completions");
  d.model = jsonio::get_string(j, "model");
  d.api_key_env = jsonio::get_string(j, "api_key_env");
  d.timeout_seconds = j.value("timeout_seconds", 300);
  d.max_retries = j.value("max_retries", 3);
  d.backoff_base_ms = j.value("backoff_base_ms", 1000);
  return d;
}

std::string backend_descriptor_to_string(const BackendDescriptor& d) {
  if (d.kind == "mock") return "mock:" + d.path;
  return "remote:" + d.base_url + d.completions_path + " model=" + d.model;
}

std::unique_ptr<TextBackend> make_backend(const BackendDescriptor& descriptor) {
  if (descriptor.kind == "mock") {
    return std::make_unique<MockBackend>(descriptor.path);
  }
  if (descriptor.kind == "remote") {
    return std::make_unique<RemoteBackend>(descriptor);
  }
  throw std::runtime_error("unknown backend kind '" + descriptor.kind + "'");
}

std::unique_ptr<TextBackend> make_backend(const std::string& descriptor_json) {
  return make_backend(backend_descriptor_from_json(descriptor_json));
}

}  // namespace prooflab
