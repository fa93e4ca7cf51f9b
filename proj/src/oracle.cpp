#include "hornet/oracle.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <semaphore>
#include <sstream>
#include <thread>

namespace hornet {

const char* purpose_name(Purpose p) {
    switch (p) {
    case Purpose::expand: return "expand";
    case Purpose::followups: return "followups";
    case Purpose::answer: return "answer";
    case Purpose::rate: return "rate";
    case Purpose::generalize: return "generalize";
    case Purpose::svo: return "svo";
    }
    return "unknown";
}

bool accept(double rating, double threshold) {
    if (rating < 0.0 || rating > 100.0)
        throw std::out_of_range("rating must lie in [0, 100]");
    if (threshold < 0.0 || threshold > 100.0)
        throw std::out_of_range("threshold must lie in [0, 100]");
    return rating >= threshold; // boundary accepts
}

namespace {

std::string trim_copy(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Strips list markers: "-", "*", unicode bullet, "1.", "1)".
std::string strip_bullet(const std::string& line) {
    std::string s = line;
    if (s.rfind("\xe2\x80\xa2", 0) == 0) // U+2022
        return trim_copy(s.substr(3));
    if (!s.empty() && (s[0] == '-' || s[0] == '*'))
        return trim_copy(s.substr(1));
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i;
    if (i > 0 && i < s.size() && (s[i] == '.' || s[i] == ')'))
        return trim_copy(s.substr(i + 1));
    return s;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::vector<std::string> parse_items(const std::string& raw) {
    std::vector<std::string> items;
    std::istringstream in(raw);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = strip_bullet(trim_copy(line));
        if (!t.empty())
            items.push_back(t);
    }
    return items;
}

std::optional<double> parse_rating(const std::string& raw) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(raw[i]))) {
            std::size_t end = i;
            while (end < raw.size() && std::isdigit(static_cast<unsigned char>(raw[end])))
                ++end;
            if (end < raw.size() && raw[end] == '.') {
                ++end;
                while (end < raw.size() && std::isdigit(static_cast<unsigned char>(raw[end])))
                    ++end;
            }
            double value = std::stod(raw.substr(i, end - i));
            return std::clamp(value, 0.0, 100.0);
        }
    }
    // Let an advisor-style yes/no verdict stand in for a score.
    std::string t = trim_copy(raw);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (t.rfind("yes", 0) == 0)
        return 100.0;
    if (t.rfind("no", 0) == 0)
        return 0.0;
    return std::nullopt;
}

OracleResponse parse_reply(Purpose purpose, std::string raw) {
    OracleResponse resp;
    resp.items = parse_items(raw);
    if (purpose == Purpose::rate) {
        resp.rating = parse_rating(raw);
        if (!resp.rating)
            throw OracleError("unparseable rating reply: " + raw.substr(0, 200));
    } else if (resp.items.empty()) {
        throw OracleError("empty reply for purpose " +
                          std::string(purpose_name(purpose)));
    }
    resp.raw = std::move(raw);
    return resp;
}

// ---------------------------------------------------------------- templates

PromptTemplates PromptTemplates::defaults() {
    PromptTemplates t;
    t.system = "You are a careful reasoning assistant. Reply exactly in the "
               "requested format with no preamble.";
    t.user[Purpose::expand] =
        "Context so far:\n{trace}\n\nList the most salient direct consequences "
        "or sub-steps of: {goal}\nOne short phrase per line.";
    t.user[Purpose::followups] =
        "Context so far:\n{trace}\n\nList concise follow-up questions to the "
        "answer of: {goal}\nOne question per line.";
    t.user[Purpose::answer] =
        "Context so far:\n{trace}\n\nAnswer concisely in one paragraph: {goal}";
    t.user[Purpose::rate] =
        "Context so far:\n{trace}\n\nRate from 0 to 100 how plausible and "
        "relevant this is: {goal}\nReply with a single number.";
    t.user[Purpose::generalize] =
        "For each item below, reply with one line of the form "
        "'item' is 'general category'.\n{goal}";
    t.user[Purpose::svo] =
        "Split the sentence into simple clauses and reply with one "
        "'subject | verb | object' line per clause.\n{goal}";
    return t;
}

PromptTemplates PromptTemplates::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open template file: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    PromptTemplates t = defaults();
    if (doc.contains("system"))
        t.system = doc["system"].get<std::string>();
    for (Purpose p : {Purpose::expand, Purpose::followups, Purpose::answer,
                      Purpose::rate, Purpose::generalize, Purpose::svo}) {
        if (doc.contains(purpose_name(p)))
            t.user[p] = doc[purpose_name(p)].get<std::string>();
    }
    return t;
}

std::string PromptTemplates::render(const OracleRequest& req) const {
    std::string tmpl = user.at(req.purpose);
    std::string trace;
    for (const auto& g : req.trace) {
        if (!trace.empty())
            trace += '\n';
        trace += g;
    }
    auto replace_all = [](std::string s, const std::string& from, const std::string& to) {
        std::size_t pos = 0;
        while ((pos = s.find(from, pos)) != std::string::npos) {
            s.replace(pos, from.size(), to);
            pos += to.size();
        }
        return s;
    };
    tmpl = replace_all(std::move(tmpl), "{goal}", req.goal_text);
    tmpl = replace_all(std::move(tmpl), "{trace}", trace);
    return tmpl;
}

// ----------------------------------------------------------------- fixtures

std::string ReplayFixture::key(const OracleRequest& req) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& g : req.trace) {
        h = fnv1a64(g, h);
        h = fnv1a64(std::string_view("\x1f", 1), h);
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return std::string(purpose_name(req.purpose)) + "|" + req.goal_text + "|" + hex;
}

void ReplayFixture::add(const OracleRequest& req, OracleResponse resp) {
    entries[key(req)] = std::move(resp);
}

const OracleResponse* ReplayFixture::find(const OracleRequest& req) const {
    auto it = entries.find(key(req));
    return it == entries.end() ? nullptr : &it->second;
}

void ReplayFixture::save(const std::string& path) const {
    nlohmann::ordered_json doc;
    doc["recorded_from"] = recorded_from;
    auto& ents = doc["entries"];
    ents = nlohmann::ordered_json::object();
    for (const auto& [k, resp] : entries) {
        nlohmann::ordered_json e;
        e["items"] = resp.items;
        if (resp.rating)
            e["rating"] = *resp.rating;
        e["raw"] = resp.raw;
        ents[k] = std::move(e);
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write fixture file: " + path);
    out << doc.dump(2) << '\n';
}

ReplayFixture ReplayFixture::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open fixture file: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    ReplayFixture f;
    f.recorded_from = doc.value("recorded_from", "");
    for (const auto& [k, e] : doc.at("entries").items()) {
        OracleResponse resp;
        resp.items = e.value("items", std::vector<std::string>{});
        if (e.contains("rating") && !e["rating"].is_null())
            resp.rating = e["rating"].get<double>();
        resp.raw = e.value("raw", "");
        f.entries[k] = std::move(resp);
    }
    return f;
}

OracleResponse ReplayOracle::ask(const OracleRequest& req) {
    const OracleResponse* found = fixture_.find(req);
    if (!found)
        throw OracleError("no fixture entry for key: " + ReplayFixture::key(req));
    return *found;
}

// --------------------------------------------------------------- http client

struct HttpOracle::Inflight {
    explicit Inflight(int budget) : sem(budget) {}
    std::counting_semaphore<> sem;
};

HttpOracle::HttpOracle(HttpOracleConfig config)
    : config_(std::move(config)),
      inflight_(std::make_unique<Inflight>(std::max(1, config_.max_inflight))) {}

HttpOracle::~HttpOracle() = default;

std::string HttpOracle::post_once(const std::string& body, std::string& error) {
    httplib::Client cli(config_.base_url);
    cli.set_connection_timeout(config_.timeout_seconds);
    cli.set_read_timeout(config_.timeout_seconds);
    httplib::Headers headers;
    if (const char* key = std::getenv(config_.api_key_env.c_str()))
        headers.emplace("Authorization", std::string("Bearer ") + key);

    auto res = cli.Post("/v1/chat/completions", headers, body, "application/json");
    if (!res) {
        error = "transport error: " + httplib::to_string(res.error());
        return "";
    }
    if (res->status == 429 || res->status >= 500) {
        error = "retryable HTTP " + std::to_string(res->status) + ": " +
                res->body.substr(0, 200);
        return "";
    }
    if (res->status != 200)
        throw OracleError("HTTP " + std::to_string(res->status) + ": " +
                          res->body.substr(0, 200));
    return res->body;
}

OracleResponse HttpOracle::ask(const OracleRequest& req) {
    nlohmann::json body;
    body["model"] = config_.model;
    body["temperature"] = config_.temperature;
    body["messages"] = nlohmann::json::array(
        {{{"role", "system"}, {"content", config_.templates.system}},
         {{"role", "user"}, {"content", config_.templates.render(req)}}});
    const std::string payload = body.dump();

    inflight_->sem.acquire();
    struct Release {
        std::counting_semaphore<>& sem;
        ~Release() { sem.release(); }
    } release{inflight_->sem};

    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(200 << (attempt - 1)));
        std::string reply = post_once(payload, last_error);
        if (reply.empty())
            continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(reply);
        } catch (const nlohmann::json::exception& e) {
            throw OracleError(std::string("malformed completion reply: ") + e.what());
        }
        try {
            std::string content =
                doc.at("choices").at(0).at("message").at("content").get<std::string>();
            return parse_reply(req.purpose, std::move(content));
        } catch (const nlohmann::json::exception&) {
            throw OracleError("completion reply missing choices[0].message.content: " +
                              reply.substr(0, 200));
        }
    }
    throw OracleError("oracle request failed after " +
                      std::to_string(config_.max_retries + 1) + " attempts: " +
                      last_error);
}

// ------------------------------------------------------------------ capture

CaptureOracle::CaptureOracle(std::unique_ptr<Oracle> inner, std::string fixture_path,
                             std::string recorded_from)
    : inner_(std::move(inner)), path_(std::move(fixture_path)) {
    fixture_.recorded_from = std::move(recorded_from);
}

OracleResponse CaptureOracle::ask(const OracleRequest& req) {
    OracleResponse resp = inner_->ask(req);
    std::lock_guard<std::mutex> lock(write_mutex_);
    fixture_.add(req, resp);
    fixture_.save(path_);
    return resp;
}

} // namespace hornet
