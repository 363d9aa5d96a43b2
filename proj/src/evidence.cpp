#include "assay/evidence.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace assay {

// --- ledger ---

bool EvidenceLedger::insert(const EvidenceItem& item) {
    std::lock_guard lock(mutex_);
    return items_.emplace(item.id, item).second;
}

void EvidenceLedger::record_provenance(const std::string& id,
                                       RiskDomain domain, int iteration) {
    std::lock_guard lock(mutex_);
    if (!items_.count(id)) {
        throw std::invalid_argument("provenance for unknown evidence id: " +
                                    id);
    }
    auto& entries = provenance_[id];
    const Provenance p{domain, iteration};
    if (std::find(entries.begin(), entries.end(), p) == entries.end()) {
        entries.push_back(p);
    }
}

bool EvidenceLedger::contains(const std::string& id) const {
    std::lock_guard lock(mutex_);
    return items_.count(id) > 0;
}

std::optional<EvidenceItem> EvidenceLedger::find(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = items_.find(id);
    if (it == items_.end()) return std::nullopt;
    return it->second;
}

std::size_t EvidenceLedger::size() const {
    std::lock_guard lock(mutex_);
    return items_.size();
}

std::vector<EvidenceItem> EvidenceLedger::items_sorted() const {
    std::lock_guard lock(mutex_);
    std::vector<EvidenceItem> out;
    out.reserve(items_.size());
    for (const auto& [id, item] : items_) out.push_back(item);
    return out; // std::map iterates in id order
}

std::vector<EvidenceLedger::Provenance> EvidenceLedger::provenance_of(
    const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = provenance_.find(id);
    if (it == provenance_.end()) return {};
    return it->second;
}

// --- token bucket ---

TokenBucket::TokenBucket(double tokens_per_second, double capacity,
                         Clock clock)
    : rate_(tokens_per_second), capacity_(capacity), tokens_(capacity),
      clock_(std::move(clock)) {
    if (rate_ <= 0) throw std::invalid_argument("rate must be positive");
    if (!clock_) {
        clock_ = [] {
            return std::chrono::duration<double>(
                       std::chrono::steady_clock::now().time_since_epoch())
                .count();
        };
    }
    last_refill_ = clock_();
}

double TokenBucket::acquire() {
    std::lock_guard lock(mutex_);
    const double now = clock_();
    tokens_ = std::min(capacity_, tokens_ + (now - last_refill_) * rate_);
    last_refill_ = now;
    if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return 0.0;
    }
    const double wait = (1.0 - tokens_) / rate_;
    tokens_ -= 1.0; // goes negative; the caller owes the wait
    return wait;
}

// --- cache ---

EvidenceCache::EvidenceCache(std::filesystem::path dir,
                             std::chrono::seconds ttl, ClockFn clock)
    : dir_(std::move(dir)), ttl_(ttl), clock_(std::move(clock)) {
    if (!clock_) clock_ = now_utc;
}

std::filesystem::path EvidenceCache::path_for(const std::string& source,
                                              const std::string& query) const {
    return dir_ / source / (fnv1a_hex(query) + ".json");
}

std::optional<std::vector<EvidenceItem>> EvidenceCache::lookup(
    const std::string& source, const std::string& query) const {
    const auto p = path_for(source, query);
    std::error_code ec;
    if (!std::filesystem::exists(p, ec)) return std::nullopt;
    Json j;
    try {
        j = Json::parse(read_file(p));
    } catch (const std::exception&) {
        return std::nullopt; // unreadable entry behaves like a miss
    }
    if (j.value("query", "") != query) return std::nullopt; // hash collision
    const Timestamp cached_at =
        parse_rfc3339(j.at("cached_at").get<std::string>());
    if (clock_() - cached_at > ttl_) return std::nullopt;
    std::vector<EvidenceItem> items;
    for (const auto& e : j.at("items")) {
        items.push_back(decode_evidence_item(e));
    }
    return items;
}

void EvidenceCache::store(const std::string& source, const std::string& query,
                          const std::vector<EvidenceItem>& items) const {
    Json j;
    j["source"] = source;
    j["query"] = query;
    j["cached_at"] = format_rfc3339(clock_());
    Json arr = Json::array();
    for (const auto& item : items) arr.push_back(encode(item));
    j["items"] = std::move(arr);
    write_file(path_for(source, query), j.dump(2) + "\n");
}

// --- query generation ---

namespace {

std::vector<std::string> template_queries(RiskDomain domain,
                                          const Library& lib) {
    const std::string& n = lib.name;
    const std::string& r = lib.repo_url;
    switch (domain) {
        case RiskDomain::License:
            return {n + " license terms SPDX identifier " + r,
                    n + " license commercial use restrictions",
                    n + " license patent grant clause"};
        case RiskDomain::Security:
            return {n + " CVE security advisories history",
                    n + " security policy vulnerability disclosure " + r,
                    n + " security patch latency fix response time"};
        case RiskDomain::Maintenance:
            return {n + " active contributors count " + r,
                    n + " release cadence latest releases",
                    n + " issue first response time governance"};
        case RiskDomain::Dependency:
            return {n + " SBOM software bill of materials",
                    n + " direct dependencies count manifest " + r,
                    n + " transitive dependencies automatic updates"};
        case RiskDomain::Regulatory:
            return {n + " GDPR AI Act compliance documentation",
                    n + " audit trail logging capabilities",
                    n + " explainability data handling documentation"};
    }
    throw std::logic_error("unknown RiskDomain");
}

} // namespace

std::vector<std::string> generate_queries(
    RiskDomain domain, const Library& library, int iteration,
    const std::vector<std::string>& gaps) {
    if (iteration < 1) throw std::invalid_argument("iteration must be >= 1");
    if (iteration == 1 || gaps.empty()) {
        return template_queries(domain, library);
    }
    std::vector<std::string> out;
    out.reserve(gaps.size());
    for (const auto& gap : gaps) {
        out.push_back(library.name + " " + collapse_ws(gap));
    }
    return out;
}

// --- retrieval ---

namespace {

struct SourceOutcome {
    std::vector<EvidenceItem> items;
    std::size_t successful_calls = 0;
    std::string failure; // non-empty when the source was skipped
};

SourceOutcome run_source(EvidenceSource& source,
                         const std::vector<std::string>& queries,
                         EvidenceCache* cache, double rate_per_second) {
    SourceOutcome outcome;
    TokenBucket bucket(rate_per_second, 1.0);
    for (const auto& query : queries) {
        if (cache) {
            if (auto hit = cache->lookup(source.name(), query)) {
                outcome.items.insert(outcome.items.end(), hit->begin(),
                                     hit->end());
                outcome.successful_calls++;
                continue;
            }
        }
        const double wait = bucket.acquire();
        if (wait > 0) {
            std::this_thread::sleep_for(std::chrono::duration<double>(wait));
        }
        try {
            auto items = source.search(query);
            if (cache) cache->store(source.name(), query, items);
            outcome.items.insert(outcome.items.end(), items.begin(),
                                 items.end());
            outcome.successful_calls++;
        } catch (const std::exception& e) {
            outcome.failure = source.name() + ": " + e.what();
            break; // skip the rest of this source, keep the others going
        }
    }
    return outcome;
}

} // namespace

std::vector<std::string> retrieve(
    const std::vector<std::shared_ptr<EvidenceSource>>& sources,
    const std::vector<std::string>& queries, EvidenceLedger& ledger,
    const RetrievalOptions& options) {
    if (queries.empty()) {
        throw std::invalid_argument("retrieve: queries must be non-empty");
    }

    std::vector<SourceOutcome> outcomes(sources.size());
    if (options.concurrent && sources.size() > 1) {
        std::vector<std::thread> workers;
        workers.reserve(sources.size());
        for (std::size_t i = 0; i < sources.size(); ++i) {
            workers.emplace_back([&, i] {
                outcomes[i] = run_source(*sources[i], queries, options.cache,
                                         options.rate_per_second);
            });
        }
        for (auto& w : workers) w.join();
    } else {
        for (std::size_t i = 0; i < sources.size(); ++i) {
            outcomes[i] = run_source(*sources[i], queries, options.cache,
                                     options.rate_per_second);
        }
    }

    std::set<std::string> new_ids;
    std::size_t returned_items = 0;
    for (auto& outcome : outcomes) {
        returned_items += outcome.items.size();
        for (auto& item : outcome.items) {
            if (ledger.insert(item)) new_ids.insert(item.id);
        }
        if (!outcome.failure.empty() && options.failures) {
            options.failures->push_back(outcome.failure);
        }
    }

    if (returned_items == 0) {
        throw std::runtime_error("no evidence retrievable");
    }
    return {new_ids.begin(), new_ids.end()};
}

} // namespace assay
