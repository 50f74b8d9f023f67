#pragma once

#include "wwaudit/agent/backend.hpp"
#include "wwaudit/game/types.hpp"

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace wwaudit::gateway {

struct ChatMessage {
    std::string role; // system | user | assistant
    std::string content;
};

struct ChatRequest {
    std::string model;
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    int max_tokens = 512;

    /// Canonical JSON covering exactly the fields that define the cache key.
    game::Json to_json() const;
    static ChatRequest from_json(const game::Json& j);
};

/// SHA-256 over the canonical request serialization; equal requests map to
/// equal keys, and any recorded field change yields a new key.
std::string cache_key(const ChatRequest& req);

enum class CacheMode { ReadWrite, ReadOnly, Off };

CacheMode cache_mode_from_string(const std::string& s);

/// One file per key under <root>/<first 2 hex>/<digest>.json holding
/// {request, response, timestamp}. Writes are atomic; reads re-derive the
/// key from the stored request and fail with IntegrityError on mismatch.
class ResponseCache {
public:
    ResponseCache(std::filesystem::path root, CacheMode mode);

    CacheMode mode() const { return mode_; }
    const std::filesystem::path& root() const { return root_; }

    std::optional<std::string> lookup(const ChatRequest& req) const;
    void store(const ChatRequest& req, const std::string& response);

    /// Scans every entry; returns the relative paths of corrupt files.
    static std::vector<std::string> validate_dir(const std::filesystem::path& root);

private:
    std::filesystem::path path_for(const std::string& key) const;

    std::filesystem::path root_;
    CacheMode mode_;
    mutable std::mutex mutex_;
};

struct GatewayConfig {
    std::string base_url; // e.g. http://127.0.0.1:8089/v1
    std::string api_key;
    std::string model;
    double temperature = 0.0;
    int max_tokens = 512;
    int max_attempts = 5;
    double backoff_base_seconds = 1.0; // doubles per retry
    double rate_limit_per_second = 2.0;
    int timeout_seconds = 60;

    /// Reads AUDIT_LLM_BASE_URL, AUDIT_LLM_API_KEY, AUDIT_LLM_MODEL.
    static GatewayConfig from_env();
};

/// Thread-safe client for OpenAI-compatible chat-completion endpoints with
/// token-bucket rate limiting and exponential-backoff retries.
class LlmGateway {
public:
    explicit LlmGateway(GatewayConfig config);
    ~LlmGateway();

    const GatewayConfig& config() const { return config_; }

    /// Assistant message content. Retries 429/5xx/transport errors with
    /// exponential backoff, then throws GatewayError; other 4xx codes throw
    /// ConfigurationError immediately.
    std::string complete(const ChatRequest& req);

    /// (content, hit). Read-only cache misses throw ReplayError without
    /// touching the network.
    std::pair<std::string, bool> cached_complete(const ChatRequest& req, ResponseCache& cache);

    /// Total retry sleeps performed, for logging and tests.
    long total_retries() const;

private:
    struct Impl;
    GatewayConfig config_;
    std::unique_ptr<Impl> impl_;
};

/// AgentBackend over the gateway: system rules go in the system message, the
/// context and task blocks in the user message. Optional cache.
std::unique_ptr<agent::AgentBackend> make_llm_backend(std::shared_ptr<LlmGateway> gateway,
                                                      std::shared_ptr<ResponseCache> cache);

} // namespace wwaudit::gateway
