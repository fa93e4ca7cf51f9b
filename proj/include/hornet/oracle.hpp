#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hornet {

enum class Purpose { expand, followups, answer, rate, generalize, svo };

const char* purpose_name(Purpose p);

/// One oracle exchange. The trace is the chain of prior goals leading to
/// this request (the dialog short-term memory); it contains no duplicates
/// because loop prevention happens upstream.
struct OracleRequest {
    Purpose purpose = Purpose::expand;
    std::string goal_text;
    std::vector<std::string> trace;
    std::map<std::string, std::string> params;
};

struct OracleResponse {
    std::vector<std::string> items;      // trimmed, non-empty
    std::optional<double> rating;        // present iff purpose == rate
    std::string raw;
};

class OracleError : public std::runtime_error {
public:
    explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

class Oracle {
public:
    virtual ~Oracle() = default;
    virtual OracleResponse ask(const OracleRequest& req) = 0;
};

// Inclusive accept decision; both values must lie in [0, 100]
// (std::out_of_range otherwise).
bool accept(double rating, double threshold);

// Reply parsing, shared by all oracle implementations:
// one item per line with list bullets/numbering stripped, empties dropped.
std::vector<std::string> parse_items(const std::string& raw);
// First number in the reply clamped to [0, 100]; a reply leading with
// yes/no and no number maps to 100/0. nullopt when nothing parses.
std::optional<double> parse_rating(const std::string& raw);

/// Editable per-purpose prompt templates; "{goal}" and "{trace}" expand to
/// the request goal and its context chain.
struct PromptTemplates {
    std::string system;
    std::map<Purpose, std::string> user;

    static PromptTemplates defaults();
    static PromptTemplates load(const std::string& path); // JSON overrides
    std::string render(const OracleRequest& req) const;
};

/// Recorded oracle exchanges keyed by purpose + goal + a hash of the trace,
/// so identical goals in different contexts replay distinctly.
struct ReplayFixture {
    std::map<std::string, OracleResponse> entries;
    std::string recorded_from;

    static std::string key(const OracleRequest& req);
    void add(const OracleRequest& req, OracleResponse resp);
    const OracleResponse* find(const OracleRequest& req) const;

    void save(const std::string& path) const;
    static ReplayFixture load(const std::string& path);
};

/// Deterministic offline oracle: exact fixture lookups, never any network.
class ReplayOracle : public Oracle {
public:
    explicit ReplayOracle(ReplayFixture fixture) : fixture_(std::move(fixture)) {}
    OracleResponse ask(const OracleRequest& req) override;

private:
    ReplayFixture fixture_;
};

struct HttpOracleConfig {
    std::string base_url = "http://localhost:8000";
    std::string model = "gpt-4";
    std::string api_key_env = "LLM_API_KEY"; // name of the env var holding the key
    double temperature = 0.0;
    int timeout_seconds = 60;
    int max_retries = 3;
    int max_inflight = 4;
    PromptTemplates templates = PromptTemplates::defaults();
};

/// OpenAI-compatible chat-completions client with exponential backoff on
/// transient failures and a bounded in-flight request budget.
class HttpOracle : public Oracle {
public:
    explicit HttpOracle(HttpOracleConfig config);
    ~HttpOracle() override;
    OracleResponse ask(const OracleRequest& req) override;

private:
    std::string post_once(const std::string& body, std::string& error);

    HttpOracleConfig config_;
    struct Inflight;
    std::unique_ptr<Inflight> inflight_;
};

/// Wraps another oracle and records every exchange into a fixture file, so
/// a captured pipeline can be replayed offline later.
class CaptureOracle : public Oracle {
public:
    CaptureOracle(std::unique_ptr<Oracle> inner, std::string fixture_path,
                  std::string recorded_from = "");
    OracleResponse ask(const OracleRequest& req) override;

private:
    std::unique_ptr<Oracle> inner_;
    std::string path_;
    ReplayFixture fixture_;
    std::mutex write_mutex_;
};

// Parses a purpose-specific OracleResponse out of a raw reply; throws
// OracleError when nothing usable parses (empty items / missing rating).
OracleResponse parse_reply(Purpose purpose, std::string raw);

} // namespace hornet
