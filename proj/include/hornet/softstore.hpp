#pragma once

#include "hornet/program.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hornet {

/// Embedding backend contract: deterministic per instance, fixed dimension,
/// finite-valued vectors.
class EmbeddingBackend {
public:
    virtual ~EmbeddingBackend() = default;
    virtual std::vector<float> embed(const std::string& text) = 0;
    virtual std::size_t dimension() const = 0;
    virtual std::string name() const = 0;
};

/// Deterministic test backend: lowercase, split on non-alphanumerics, hash
/// each token into one of 256 buckets, count, L2-normalize. Identical
/// output on every platform.
class HashedBowBackend : public EmbeddingBackend {
public:
    static constexpr std::size_t kDim = 256;

    std::vector<float> embed(const std::string& text) override;
    std::size_t dimension() const override { return kDim; }
    std::string name() const override { return "hashed-bow-256"; }
};

/// Client for an OpenAI-compatible /v1/embeddings endpoint.
class HttpEmbeddingBackend : public EmbeddingBackend {
public:
    struct Config {
        std::string base_url = "http://localhost:8000";
        std::string model = "text-embedding-3-small";
        std::string api_key_env = "LLM_API_KEY";
        int timeout_seconds = 60;
        std::size_t dimension = 1536;
    };

    explicit HttpEmbeddingBackend(Config config) : config_(std::move(config)) {}

    std::vector<float> embed(const std::string& text) override;
    std::size_t dimension() const override { return config_.dimension; }
    std::string name() const override { return "http:" + config_.model; }

private:
    Config config_;
};

/// Sentences with embedding row vectors, deduplicated by text. Reads are
/// freely concurrent; mutations require exclusive access.
struct SentenceStore {
    std::string backend_name;
    std::size_t dimension = 0;
    std::vector<std::string> sentences;
    std::vector<float> vectors; // row-major, sentences.size() rows

    std::size_t size() const { return sentences.size(); }
    const float* row(std::size_t i) const { return vectors.data() + i * dimension; }
};

SentenceStore make_store(const EmbeddingBackend& backend);

// Embeds and appends texts not already present. Throws std::runtime_error
// on a backend-name or dimension mismatch with the existing store.
void add_sentences(SentenceStore& store, EmbeddingBackend& backend,
                   const std::vector<std::string>& texts);

// Two-file persistence: <base>.txt holds the sentences (UTF-8, one per
// line, backslash/newline escaped) and <base>.vec the vectors
// (16-byte header: magic "SVEC", u32 dimension, u32 rows; then row-major
// little-endian float32).
void save_store(const SentenceStore& store, const std::string& base_path);
SentenceStore load_store(const std::string& base_path,
                         const EmbeddingBackend& backend);
bool store_exists(const std::string& base_path);

// Exact brute-force cosine-distance scan (distance = 1 - cosine
// similarity), ascending, ties broken by insertion order. Returns
// min(k, store size) hits as (sentence index, distance).
// Throws std::runtime_error on an empty store or k < 1.
std::vector<std::pair<std::size_t, double>> knn(const SentenceStore& store,
                                                EmbeddingBackend& backend,
                                                const std::string& query,
                                                std::size_t k);

struct SoftQuery {
    std::string q;
    std::size_t k = 3;
    int d_percent = 70; // effective distance bound = d_percent / 100
};

struct AbducedEntry {
    std::string query;
    std::string sentence;
    double distance = 0.0;
};

/// Insertion-ordered (query, sentence) -> distance ledger with idempotent
/// keying: re-running a query against the same store adds nothing.
class AbducedLedger {
public:
    // Returns true when the entry is new.
    bool record(const std::string& query, const std::string& sentence,
                double distance);

    const std::vector<AbducedEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    void save(const std::string& path) const;
    static AbducedLedger load(const std::string& path);

private:
    std::vector<AbducedEntry> entries_;
    std::map<std::pair<std::string, std::string>, std::size_t> index_;
};

/// knn filtered by the distance bound; every hit is recorded in the ledger
/// and returned in ascending-distance order (the enumeration backtracking
/// maps onto).
std::vector<std::string> soft_unify(const SentenceStore& store,
                                    EmbeddingBackend& backend,
                                    AbducedLedger& ledger, const SoftQuery& sq);

struct AbducedExport {
    Program program;      // q :- a plus a :- true per entry, deduplicated
    std::string annotated; // "p :: clause." lines, p = max(0, 1 - distance)
};

AbducedExport export_abduced(const AbducedLedger& ledger);

} // namespace hornet
