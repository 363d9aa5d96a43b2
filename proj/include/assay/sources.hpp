#pragma once

#include <filesystem>

#include "assay/evidence.hpp"

namespace assay {

// Canned responses from a directory of JSON files. Each file holds one
// response set:
//
//   {
//     "query": "exact query string",        // or
//     "query_contains": "substring token",  // case-insensitive
//     "items": [ {"url": "...", "excerpt": "...",
//                 "source_class": "web-search",      // optional
//                 "retrieved_at": "RFC3339"} ]       // optional
//   }
//
// Exact matches win over substring matches; among substring matches the
// longest token wins, ties by file name. Deterministic.
class FixtureSource : public EvidenceSource {
public:
    FixtureSource(std::string name, SourceClass cls,
                  const std::filesystem::path& dir,
                  Timestamp default_retrieved_at);

    std::string name() const override { return name_; }
    SourceClass source_class() const override { return class_; }
    std::vector<EvidenceItem> search(const std::string& query) override;

    std::size_t calls() const { return calls_; }

private:
    struct Entry {
        std::string exact_query;
        std::string contains_token; // lowercase
        std::string file_name;
        std::vector<EvidenceItem> items;
    };

    std::string name_;
    SourceClass class_;
    std::vector<Entry> entries_;
    std::size_t calls_ = 0;
};

// Hosting-platform REST API adapter (GitHub-style). Reads metadata for a
// repository: description, license, contributor and release signals.
// Credential: ASSAY_REPO_TOKEN (optional; unauthenticated works rate-limited).
class RepoMetadataSource : public EvidenceSource {
public:
    explicit RepoMetadataSource(std::string api_base = "https://api.github.com");

    std::string name() const override { return "repo-metadata"; }
    SourceClass source_class() const override {
        return SourceClass::RepositoryMetadata;
    }
    std::vector<EvidenceItem> search(const std::string& query) override;

private:
    std::string api_base_;
};

// OSV-style advisory query endpoint (POST {"package": ...}).
class VulnDbSource : public EvidenceSource {
public:
    explicit VulnDbSource(std::string api_base = "https://api.osv.dev");

    std::string name() const override { return "vulnerability-db"; }
    SourceClass source_class() const override {
        return SourceClass::VulnerabilityDb;
    }
    std::vector<EvidenceItem> search(const std::string& query) override;

private:
    std::string api_base_;
};

// Generic JSON search endpoint. Credentials via ASSAY_SEARCH_ENDPOINT and
// ASSAY_SEARCH_KEY.
class WebSearchSource : public EvidenceSource {
public:
    WebSearchSource();
    explicit WebSearchSource(std::string endpoint, std::string api_key);

    std::string name() const override { return "web-search"; }
    SourceClass source_class() const override { return SourceClass::WebSearch; }
    std::vector<EvidenceItem> search(const std::string& query) override;

private:
    std::string endpoint_;
    std::string api_key_;
};

// Response-body parsers, split out so they are testable without a network.
std::vector<EvidenceItem> parse_repo_metadata_response(
    const std::string& body, const std::string& url, const std::string& query,
    Timestamp retrieved_at);
std::vector<EvidenceItem> parse_osv_response(const std::string& body,
                                             const std::string& url,
                                             const std::string& query,
                                             Timestamp retrieved_at);
std::vector<EvidenceItem> parse_web_search_response(const std::string& body,
                                                    const std::string& query,
                                                    Timestamp retrieved_at);

// First token of the query that looks like a package/library name.
std::string leading_term(const std::string& query);

} // namespace assay
