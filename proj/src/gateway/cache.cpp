#include "wwaudit/gateway/gateway.hpp"

#include "wwaudit/errors.hpp"
#include "wwaudit/util/fs.hpp"
#include "wwaudit/util/sha256.hpp"

#include <chrono>

namespace fs = std::filesystem;

namespace wwaudit::gateway {

using game::Json;

Json ChatRequest::to_json() const {
    Json msgs = Json::array();
    for (const auto& m : messages) {
        msgs.push_back(Json{{"role", m.role}, {"content", m.content}});
    }
    return Json{{"model", model},
                {"messages", std::move(msgs)},
                {"temperature", temperature},
                {"max_tokens", max_tokens}};
}

ChatRequest ChatRequest::from_json(const Json& j) {
    ChatRequest req;
    req.model = j.at("model").get<std::string>();
    for (const auto& m : j.at("messages")) {
        req.messages.push_back(
            ChatMessage{m.at("role").get<std::string>(), m.at("content").get<std::string>()});
    }
    req.temperature = j.at("temperature").get<double>();
    req.max_tokens = j.at("max_tokens").get<int>();
    return req;
}

std::string cache_key(const ChatRequest& req) { return util::sha256_hex(req.to_json().dump()); }

CacheMode cache_mode_from_string(const std::string& s) {
    if (s == "rw") return CacheMode::ReadWrite;
    if (s == "ro") return CacheMode::ReadOnly;
    if (s == "off") return CacheMode::Off;
    throw ConfigurationError("cache mode must be rw, ro or off, got: " + s);
}

ResponseCache::ResponseCache(fs::path root, CacheMode mode)
    : root_(std::move(root)), mode_(mode) {
    if (mode_ == CacheMode::ReadWrite) fs::create_directories(root_);
}

fs::path ResponseCache::path_for(const std::string& key) const {
    return root_ / key.substr(0, 2) / (key + ".json");
}

std::optional<std::string> ResponseCache::lookup(const ChatRequest& req) const {
    if (mode_ == CacheMode::Off) return std::nullopt;
    const std::string key = cache_key(req);
    const fs::path path = path_for(key);
    std::lock_guard<std::mutex> lock(mutex_);
    if (!fs::exists(path)) return std::nullopt;
    Json entry;
    try {
        entry = Json::parse(util::read_file(path));
    } catch (const std::exception& e) {
        throw IntegrityError("cache entry unreadable: " + path.string() + ": " + e.what());
    }
    const ChatRequest stored = ChatRequest::from_json(entry.at("request"));
    if (cache_key(stored) != key) {
        throw IntegrityError("cache entry digest mismatch: " + path.string());
    }
    return entry.at("response").get<std::string>();
}

void ResponseCache::store(const ChatRequest& req, const std::string& response) {
    if (mode_ != CacheMode::ReadWrite) return;
    const std::string key = cache_key(req);
    const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
    Json entry{{"request", req.to_json()}, {"response", response}, {"timestamp", now}};
    std::lock_guard<std::mutex> lock(mutex_);
    util::atomic_write_file(path_for(key), entry.dump());
}

std::vector<std::string> ResponseCache::validate_dir(const fs::path& root) {
    std::vector<std::string> corrupt;
    if (!fs::is_directory(root)) return corrupt;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
        const std::string stem = entry.path().stem().string();
        try {
            Json j = Json::parse(util::read_file(entry.path()));
            const ChatRequest stored = ChatRequest::from_json(j.at("request"));
            if (cache_key(stored) != stem) {
                corrupt.push_back(fs::relative(entry.path(), root).string());
                continue;
            }
            (void)j.at("response").get<std::string>();
        } catch (const std::exception&) {
            corrupt.push_back(fs::relative(entry.path(), root).string());
        }
    }
    std::sort(corrupt.begin(), corrupt.end());
    return corrupt;
}

} // namespace wwaudit::gateway
