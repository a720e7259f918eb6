#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace prooflab {

// Decoding parameters. Defaults are the pinned evaluation settings and must
// stay in sync with RunConfig's defaults.
struct GenerationParams {
  double temperature = 0.6;
  double top_p = 0.95;
  int max_tokens = 1024;
  std::string model_name = "deepseek-ai/DeepSeek-Prover-V1.5-RL";
  std::vector<std::string> stop_sequences;
};

struct GenerationResult {
  std::string completion_text;  // empty when finish_reason is backend_error
  enum class Finish { kStop, kLength, kBackendError } finish_reason = Finish::kStop;
  std::optional<int> token_count;
  std::int64_t latency_ms = 0;
  std::string error_message;  // set on backend_error
};

// One generation call. theorem_id/attempt_index route scripted fixtures; the
// remote backend only sends the prompt.
struct GenerationRequest {
  std::string prompt;
  std::string theorem_id;
  int attempt_index = 0;
  GenerationParams params;
};

// Text-generation backend. Implementations must tolerate concurrent
// in-flight generate() calls; admission limits live in the orchestrator.
class TextBackend {
 public:
  virtual ~TextBackend() = default;
  virtual GenerationResult generate(const GenerationRequest& request) = 0;
  virtual std::string descriptor() const = 0;
};

// Parsed backend configuration.
//   mock:   {"kind":"mock","path":"fixture.jsonl"}
//           fixture lines: {theorem_id, attempt_index, completion,
//           finish_reason, token_count?, latency_ms?}; unknown keys return
//           backend_error with an empty completion.
//   remote: {"kind":"remote","base_url":"http://host:port","model":"...",
//            "completions_path":"/v1/completions","api_key_env":"VAR",
//            "timeout_seconds":N,"max_retries":N,"backoff_base_ms":N}
//           POSTs {model, prompt, temperature, top_p, max_tokens, n, stop}
//           and reads the first choice. Transient transport failures
//           (connect errors, 408/429/5xx) are retried with exponential
//           backoff; auth failures and malformed responses are permanent.
struct BackendDescriptor {
  std::string kind;  // "mock" | "remote"
  std::string path;  // mock fixture path
  std::string base_url;
  std::string completions_path = "/v1/completions";
  std::string model;
  std::string api_key_env;
  int timeout_seconds = 300;
  int max_retries = 3;
  int backoff_base_ms = 1000;
};

BackendDescriptor backend_descriptor_from_json(const std::string& text);
std::string backend_descriptor_to_string(const BackendDescriptor& d);

// Builds a backend from a parsed descriptor or its JSON text. Throws
// std::runtime_error for unknown kinds or unreadable fixture files.
std::unique_ptr<TextBackend> make_backend(const BackendDescriptor& descriptor);
std::unique_ptr<TextBackend> make_backend(const std::string& descriptor_json);

}  // namespace prooflab
