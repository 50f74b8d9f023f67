#include "wwaudit/gateway/gateway.hpp"

#include "wwaudit/errors.hpp"

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

namespace wwaudit::gateway {

using game::Json;

namespace {

struct ParsedUrl {
    std::string scheme_host_port; // httplib client target
    std::string path_prefix;      // e.g. /v1
};

ParsedUrl parse_base_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigurationError("base url must start with http:// or https://, got: " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    ParsedUrl out;
    if (path_start == std::string::npos) {
        out.scheme_host_port = url;
    } else {
        out.scheme_host_port = url.substr(0, path_start);
        out.path_prefix = url.substr(path_start);
        while (!out.path_prefix.empty() && out.path_prefix.back() == '/') {
            out.path_prefix.pop_back();
        }
    }
    return out;
}

/// Token bucket: capacity equals the per-second rate (1-second burst).
class RateLimiter {
public:
    explicit RateLimiter(double per_second)
        : rate_(per_second), tokens_(per_second), last_(clock::now()) {}

    void acquire() {
        if (rate_ <= 0) return; // unlimited
        while (true) {
            std::unique_lock<std::mutex> lock(mutex_);
            refill();
            if (tokens_ >= 1.0) {
                tokens_ -= 1.0;
                return;
            }
            const double missing = 1.0 - tokens_;
            lock.unlock();
            std::this_thread::sleep_for(
                std::chrono::duration<double>(missing / rate_));
        }
    }

private:
    using clock = std::chrono::steady_clock;

    void refill() {
        const auto now = clock::now();
        const double elapsed = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        tokens_ = std::min(rate_, tokens_ + elapsed * rate_);
    }

    double rate_;
    double tokens_;
    clock::time_point last_;
    std::mutex mutex_;
};

std::string env_or(const char* name, const char* fallback) {
    const char* v = std::getenv(name);
    return v ? v : fallback;
}

} // namespace

GatewayConfig GatewayConfig::from_env() {
    GatewayConfig cfg;
    cfg.base_url = env_or("AUDIT_LLM_BASE_URL", "");
    cfg.api_key = env_or("AUDIT_LLM_API_KEY", "");
    cfg.model = env_or("AUDIT_LLM_MODEL", "");
    return cfg;
}

struct LlmGateway::Impl {
    explicit Impl(const GatewayConfig& cfg)
        : url(parse_base_url(cfg.base_url)), limiter(cfg.rate_limit_per_second) {}

    ParsedUrl url;
    RateLimiter limiter;
    std::atomic<long> retries{0};
};

LlmGateway::LlmGateway(GatewayConfig config) : config_(std::move(config)) {
    if (config_.base_url.empty()) {
        throw ConfigurationError("gateway: endpoint URL not configured "
                                 "(set AUDIT_LLM_BASE_URL)");
    }
    impl_ = std::make_unique<Impl>(config_);
}

LlmGateway::~LlmGateway() = default;

long LlmGateway::total_retries() const { return impl_->retries.load(); }

std::string LlmGateway::complete(const ChatRequest& req) {
    const std::string body = req.to_json().dump();
    const std::string path = impl_->url.path_prefix + "/chat/completions";

    std::string last_error;
    for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
        if (attempt > 1) {
            const double delay =
                config_.backoff_base_seconds * static_cast<double>(1 << (attempt - 2));
            std::this_thread::sleep_for(std::chrono::duration<double>(delay));
            impl_->retries.fetch_add(1);
        }
        impl_->limiter.acquire();

        httplib::Client client(impl_->url.scheme_host_port);
        client.set_connection_timeout(config_.timeout_seconds, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);
        httplib::Headers headers;
        if (!config_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        }
        auto res = client.Post(path, headers, body, "application/json");

        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue; // retryable
        }
        if (res->status == 200) {
            try {
                Json j = Json::parse(res->body);
                return j.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const std::exception& e) {
                throw GatewayError(std::string("malformed completion response: ") + e.what());
            }
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "http " + std::to_string(res->status);
            continue; // retryable
        }
        throw ConfigurationError("gateway: non-retryable http " +
                                 std::to_string(res->status) + ": " + res->body);
    }
    throw GatewayError("gateway: giving up after " + std::to_string(config_.max_attempts) +
                       " attempts (" + last_error + ")");
}

std::pair<std::string, bool> LlmGateway::cached_complete(const ChatRequest& req,
                                                         ResponseCache& cache) {
    if (auto hit = cache.lookup(req)) return {*hit, true};
    if (cache.mode() == CacheMode::ReadOnly) {
        throw ReplayError("replay cache has no entry for request " + cache_key(req));
    }
    std::string content = complete(req);
    cache.store(req, content);
    return {content, false};
}

namespace {

class LlmBackend : public agent::AgentBackend {
public:
    LlmBackend(std::shared_ptr<LlmGateway> gateway, std::shared_ptr<ResponseCache> cache)
        : gateway_(std::move(gateway)), cache_(std::move(cache)) {}

    std::string respond(const prompt::PromptText& prompt, DecisionKind) override {
        ChatRequest req;
        req.model = gateway_->config().model;
        req.temperature = gateway_->config().temperature;
        req.max_tokens = gateway_->config().max_tokens;
        req.messages = {{"system", prompt.system_rules},
                        {"user", prompt.context_block + "\n" + prompt.task_block}};
        if (cache_ && cache_->mode() != CacheMode::Off) {
            return gateway_->cached_complete(req, *cache_).first;
        }
        return gateway_->complete(req);
    }

    std::string id() const override { return "llm:" + gateway_->config().model; }

private:
    std::shared_ptr<LlmGateway> gateway_;
    std::shared_ptr<ResponseCache> cache_;
};

} // namespace

std::unique_ptr<agent::AgentBackend> make_llm_backend(std::shared_ptr<LlmGateway> gateway,
                                                      std::shared_ptr<ResponseCache> cache) {
    return std::make_unique<LlmBackend>(std::move(gateway), std::move(cache));
}

} // namespace wwaudit::gateway
