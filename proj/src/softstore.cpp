#include "hornet/softstore.hpp"

#include "hornet/parser.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>

namespace hornet {

namespace {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::vector<float> HashedBowBackend::embed(const std::string& text) {
    std::vector<float> v(kDim, 0.0f);
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            v[fnv1a64(token) % kDim] += 1.0f;
            token.clear();
        }
    };
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        else
            flush();
    }
    flush();
    double norm = 0.0;
    for (float x : v)
        norm += static_cast<double>(x) * x;
    if (norm > 0.0) {
        const float inv = static_cast<float>(1.0 / std::sqrt(norm));
        for (float& x : v)
            x *= inv;
    }
    return v;
}

std::vector<float> HttpEmbeddingBackend::embed(const std::string& text) {
    httplib::Client cli(config_.base_url);
    cli.set_connection_timeout(config_.timeout_seconds);
    cli.set_read_timeout(config_.timeout_seconds);
    httplib::Headers headers;
    if (const char* key = std::getenv(config_.api_key_env.c_str()))
        headers.emplace("Authorization", std::string("Bearer ") + key);

    nlohmann::json body;
    body["model"] = config_.model;
    body["input"] = std::vector<std::string>{text};
    auto res = cli.Post("/v1/embeddings", headers, body.dump(), "application/json");
    if (!res)
        throw std::runtime_error("embedding request failed: " +
                                 httplib::to_string(res.error()));
    if (res->status != 200)
        throw std::runtime_error("embedding HTTP " + std::to_string(res->status) +
                                 ": " + res->body.substr(0, 200));
    nlohmann::json doc = nlohmann::json::parse(res->body);
    auto vec = doc.at("data").at(0).at("embedding").get<std::vector<float>>();
    if (vec.size() != config_.dimension)
        throw std::runtime_error("embedding dimension mismatch: got " +
                                 std::to_string(vec.size()));
    return vec;
}

SentenceStore make_store(const EmbeddingBackend& backend) {
    SentenceStore store;
    store.backend_name = backend.name();
    store.dimension = backend.dimension();
    return store;
}

void add_sentences(SentenceStore& store, EmbeddingBackend& backend,
                   const std::vector<std::string>& texts) {
    if (store.backend_name != backend.name())
        throw std::runtime_error("store was built with backend '" + store.backend_name +
                                 "', not '" + backend.name() + "'");
    if (store.dimension != backend.dimension())
        throw std::runtime_error("store dimension mismatch");

    for (const std::string& text : texts) {
        if (std::find(store.sentences.begin(), store.sentences.end(), text) !=
            store.sentences.end())
            continue;
        std::vector<float> v = backend.embed(text);
        store.sentences.push_back(text);
        store.vectors.insert(store.vectors.end(), v.begin(), v.end());
    }
}

// ------------------------------------------------------------- persistence

namespace {

constexpr char kVecMagic[4] = {'S', 'V', 'E', 'C'};

std::string escape_line(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '\\')
            out += "\\\\";
        else if (c == '\n')
            out += "\\n";
        else
            out.push_back(c);
    }
    return out;
}

std::string unescape_line(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            ++i;
            out.push_back(s[i] == 'n' ? '\n' : s[i]);
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

void put_u32le(std::ofstream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

std::uint32_t get_u32le(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

} // namespace

void save_store(const SentenceStore& store, const std::string& base_path) {
    std::ofstream txt(base_path + ".txt", std::ios::binary);
    if (!txt)
        throw std::runtime_error("cannot write " + base_path + ".txt");
    for (const std::string& s : store.sentences)
        txt << escape_line(s) << '\n';

    std::ofstream vec(base_path + ".vec", std::ios::binary);
    if (!vec)
        throw std::runtime_error("cannot write " + base_path + ".vec");
    vec.write(kVecMagic, 4);
    put_u32le(vec, static_cast<std::uint32_t>(store.dimension));
    put_u32le(vec, static_cast<std::uint32_t>(store.sentences.size()));
    put_u32le(vec, 0); // reserved
    // Row-major little-endian float32. All supported targets are
    // little-endian IEEE, so rows are written directly.
    static_assert(sizeof(float) == 4);
    vec.write(reinterpret_cast<const char*>(store.vectors.data()),
              static_cast<std::streamsize>(store.vectors.size() * sizeof(float)));
}

bool store_exists(const std::string& base_path) {
    return std::filesystem::exists(base_path + ".txt") &&
           std::filesystem::exists(base_path + ".vec");
}

SentenceStore load_store(const std::string& base_path,
                         const EmbeddingBackend& backend) {
    std::ifstream txt(base_path + ".txt", std::ios::binary);
    if (!txt)
        throw std::runtime_error("cannot open " + base_path + ".txt");
    SentenceStore store = make_store(backend);
    std::string line;
    while (std::getline(txt, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        store.sentences.push_back(unescape_line(line));
    }

    std::ifstream vec(base_path + ".vec", std::ios::binary);
    if (!vec)
        throw std::runtime_error("cannot open " + base_path + ".vec");
    char magic[4];
    vec.read(magic, 4);
    if (std::memcmp(magic, kVecMagic, 4) != 0)
        throw std::runtime_error(base_path + ".vec: bad magic");
    std::uint32_t dim = get_u32le(vec);
    std::uint32_t rows = get_u32le(vec);
    get_u32le(vec); // reserved
    if (dim != backend.dimension())
        throw std::runtime_error("store dimension " + std::to_string(dim) +
                                 " does not match backend dimension " +
                                 std::to_string(backend.dimension()));
    if (rows != store.sentences.size())
        throw std::runtime_error("sentence/vector row count mismatch");
    store.vectors.resize(static_cast<std::size_t>(dim) * rows);
    vec.read(reinterpret_cast<char*>(store.vectors.data()),
             static_cast<std::streamsize>(store.vectors.size() * sizeof(float)));
    if (!vec)
        throw std::runtime_error(base_path + ".vec: truncated");
    return store;
}

// -------------------------------------------------------------------- knn

std::vector<std::pair<std::size_t, double>> knn(const SentenceStore& store,
                                                EmbeddingBackend& backend,
                                                const std::string& query,
                                                std::size_t k) {
    if (store.size() == 0)
        throw std::runtime_error("knn over an empty store");
    if (k < 1)
        throw std::runtime_error("knn requires k >= 1");
    if (store.backend_name != backend.name())
        throw std::runtime_error("store was built with backend '" + store.backend_name +
                                 "', not '" + backend.name() + "'");

    std::vector<float> q = backend.embed(query);
    double qnorm = 0.0;
    for (float x : q)
        qnorm += static_cast<double>(x) * x;
    qnorm = std::sqrt(qnorm);

    std::vector<std::pair<std::size_t, double>> hits;
    hits.reserve(store.size());
    for (std::size_t i = 0; i < store.size(); ++i) {
        const float* row = store.row(i);
        double dot = 0.0, rnorm = 0.0;
        for (std::size_t d = 0; d < store.dimension; ++d) {
            dot += static_cast<double>(q[d]) * row[d];
            rnorm += static_cast<double>(row[d]) * row[d];
        }
        rnorm = std::sqrt(rnorm);
        double sim = (qnorm > 0.0 && rnorm > 0.0) ? dot / (qnorm * rnorm) : 0.0;
        hits.emplace_back(i, 1.0 - sim);
    }
    // Ascending distance, ties by insertion order.
    std::stable_sort(hits.begin(), hits.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    hits.resize(std::min(k, hits.size()));
    return hits;
}

// ------------------------------------------------------------------ ledger

bool AbducedLedger::record(const std::string& query, const std::string& sentence,
                           double distance) {
    auto key = std::make_pair(query, sentence);
    if (index_.count(key))
        return false;
    index_.emplace(std::move(key), entries_.size());
    entries_.push_back({query, sentence, distance});
    return true;
}

void AbducedLedger::save(const std::string& path) const {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const AbducedEntry& e : entries_) {
        nlohmann::ordered_json entry;
        entry["query"] = e.query;
        entry["sentence"] = e.sentence;
        entry["distance"] = e.distance;
        doc.push_back(std::move(entry));
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write ledger: " + path);
    out << doc.dump(2) << '\n';
}

AbducedLedger AbducedLedger::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open ledger: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    AbducedLedger ledger;
    for (const auto& e : doc)
        ledger.record(e.at("query").get<std::string>(),
                      e.at("sentence").get<std::string>(),
                      e.at("distance").get<double>());
    return ledger;
}

std::vector<std::string> soft_unify(const SentenceStore& store,
                                    EmbeddingBackend& backend,
                                    AbducedLedger& ledger, const SoftQuery& sq) {
    const double bound = static_cast<double>(sq.d_percent) / 100.0;
    std::vector<std::string> matches;
    for (const auto& [idx, dist] : knn(store, backend, sq.q, sq.k)) {
        if (dist <= bound) {
            ledger.record(sq.q, store.sentences[idx], dist);
            matches.push_back(store.sentences[idx]);
        }
    }
    return matches;
}

AbducedExport export_abduced(const AbducedLedger& ledger) {
    AbducedExport out;
    out.program.kind = ProgramKind::horn;
    out.annotated =
        "% abduced clauses; annotation is p = max(0, 1 - distance)\n";

    std::set<std::pair<AtomId, AtomId>> seen_clauses;
    std::set<AtomId> seen_facts;
    for (const AbducedEntry& e : ledger.entries()) {
        AtomId q = out.program.symbols.intern(e.query);
        AtomId a = out.program.symbols.intern(e.sentence);
        if (seen_clauses.emplace(q, a).second) {
            out.program.horn.push_back({q, {a}});
            double p = std::max(0.0, 1.0 - e.distance);
            char prefix[16];
            std::snprintf(prefix, sizeof prefix, "%.4f", p);
            out.annotated += std::string(prefix) + " :: " +
                             serialize_clause(HornClause{q, {a}}, out.program.symbols) +
                             "\n";
        }
        if (seen_facts.insert(a).second) {
            out.program.horn.push_back({a, {kTrueAtom}});
            out.annotated += "1.0000 :: " +
                             serialize_clause(HornClause{a, {kTrueAtom}},
                                              out.program.symbols) +
                             "\n";
        }
    }
    return out;
}

} // namespace hornet
