#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "assay/model.hpp"

namespace assay {

// A pluggable evidence backend. Implementations must be side-effect free on
// the ledger; the items they return are immutable values.
class EvidenceSource {
public:
    virtual ~EvidenceSource() = default;
    virtual std::string name() const = 0;
    virtual SourceClass source_class() const = 0;
    // Throws on transport failure; returns an empty vector for "no results".
    virtual std::vector<EvidenceItem> search(const std::string& query) = 0;
};

// Deduplicated, provenance-tracked collection of evidence. Safe for
// concurrent insertion: items with equal id are equal, so last-writer-wins
// is harmless.
class EvidenceLedger {
public:
    struct Provenance {
        RiskDomain domain = RiskDomain::License;
        int iteration = 1;

        bool operator==(const Provenance&) const = default;
    };

    // Returns true when the id was new.
    bool insert(const EvidenceItem& item);
    void record_provenance(const std::string& id, RiskDomain domain,
                           int iteration);

    bool contains(const std::string& id) const;
    std::optional<EvidenceItem> find(const std::string& id) const;
    std::size_t size() const;

    // Items sorted by id; the canonical ledger ordering.
    std::vector<EvidenceItem> items_sorted() const;
    std::vector<Provenance> provenance_of(const std::string& id) const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, EvidenceItem> items_;
    std::map<std::string, std::vector<Provenance>> provenance_;
};

// Token bucket, one per source. The clock is injectable so tests can drive
// it without sleeping.
class TokenBucket {
public:
    using Clock = std::function<double()>; // seconds, monotonic

    TokenBucket(double tokens_per_second, double capacity,
                Clock clock = nullptr);

    // Seconds to wait before the next request may proceed; consumes a token.
    double acquire();

private:
    double rate_;
    double capacity_;
    double tokens_;
    double last_refill_;
    Clock clock_;
    std::mutex mutex_;
};

// On-disk response cache keyed by (source, query). Hits within the TTL are
// byte-identical replays; no source call is made.
class EvidenceCache {
public:
    EvidenceCache(std::filesystem::path dir, std::chrono::seconds ttl,
                  ClockFn clock = nullptr);

    std::optional<std::vector<EvidenceItem>> lookup(
        const std::string& source, const std::string& query) const;
    void store(const std::string& source, const std::string& query,
               const std::vector<EvidenceItem>& items) const;

    static constexpr std::chrono::seconds kDefaultTtl =
        std::chrono::seconds{7 * 24 * 3600};

private:
    std::filesystem::path path_for(const std::string& source,
                                   const std::string& query) const;

    std::filesystem::path dir_;
    std::chrono::seconds ttl_;
    ClockFn clock_;
};

// Iteration 1: the domain's template queries instantiated with the library.
// Later iterations: one refined query per reported gap (templates again if
// no gaps were handed over). Deterministic; never empty.
std::vector<std::string> generate_queries(RiskDomain domain,
                                          const Library& library,
                                          int iteration,
                                          const std::vector<std::string>& gaps);

struct RetrievalOptions {
    EvidenceCache* cache = nullptr;           // optional
    double rate_per_second = 1.0;             // per source
    bool concurrent = true;                   // fan out across sources
    std::vector<std::string>* failures = nullptr; // per-source skip notes
};

// Dispatches every query to every source, deduplicates into the ledger and
// returns the sorted ids of newly inserted items. A failing source is
// skipped; throws std::runtime_error("no evidence retrievable") only when
// every source/query combination failed or came back empty.
std::vector<std::string> retrieve(
    const std::vector<std::shared_ptr<EvidenceSource>>& sources,
    const std::vector<std::string>& queries, EvidenceLedger& ledger,
    const RetrievalOptions& options = {});

} // namespace assay
