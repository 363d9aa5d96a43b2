#include "assay/sources.hpp"

#include <algorithm>
#include <cstdlib>

#include <httplib.h>

namespace assay {

// --- fixture source ---

FixtureSource::FixtureSource(std::string name, SourceClass cls,
                             const std::filesystem::path& dir,
                             Timestamp default_retrieved_at)
    : name_(std::move(name)), class_(cls) {
    if (!std::filesystem::exists(dir)) return; // empty fixture set is valid
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        const Json j = Json::parse(read_file(f));
        Entry entry;
        entry.file_name = f.filename().string();
        entry.exact_query = j.value("query", "");
        entry.contains_token = to_lower(j.value("query_contains", ""));
        for (const auto& it : j.at("items")) {
            const SourceClass item_class =
                it.contains("source_class")
                    ? source_class_from_string(
                          it.at("source_class").get<std::string>())
                    : class_;
            const Timestamp at =
                it.contains("retrieved_at")
                    ? parse_rfc3339(it.at("retrieved_at").get<std::string>())
                    : default_retrieved_at;
            entry.items.push_back(make_evidence_item(
                it.at("url").get<std::string>(), item_class,
                it.at("excerpt").get<std::string>(), at, ""));
        }
        entries_.push_back(std::move(entry));
    }
}

std::vector<EvidenceItem> FixtureSource::search(const std::string& query) {
    ++calls_;
    const Entry* best = nullptr;
    bool best_exact = false;
    for (const auto& e : entries_) {
        if (!e.exact_query.empty() && e.exact_query == query) {
            if (!best_exact) {
                best = &e;
                best_exact = true;
            }
            continue;
        }
        if (best_exact) continue;
        if (!e.contains_token.empty() &&
            to_lower(query).find(e.contains_token) != std::string::npos) {
            if (!best || e.contains_token.size() >
                             best->contains_token.size()) {
                best = &e;
            }
        }
    }
    if (!best) return {};
    std::vector<EvidenceItem> out = best->items;
    for (auto& item : out) item.query = query;
    return out;
}

// --- shared helpers ---

std::string leading_term(const std::string& query) {
    const auto parts = split(collapse_ws(query), ' ');
    return parts.empty() ? "" : parts.front();
}

namespace {

std::string getenv_or(const char* key, const std::string& fallback) {
    const char* v = std::getenv(key);
    return v ? std::string(v) : fallback;
}

std::string http_get(const std::string& base, const std::string& path,
                     const httplib::Headers& headers) {
    httplib::Client client(base);
    client.set_connection_timeout(10);
    client.set_read_timeout(20);
    auto res = client.Get(path, headers);
    if (!res) {
        throw std::runtime_error("request failed: " + base + path);
    }
    if (res->status != 200) {
        throw std::runtime_error("HTTP " + std::to_string(res->status) +
                                 " from " + base + path);
    }
    return res->body;
}

std::string clip(const std::string& s) {
    return s.size() > kMaxExcerptChars ? s.substr(0, kMaxExcerptChars) : s;
}

} // namespace

std::vector<EvidenceItem> parse_repo_metadata_response(
    const std::string& body, const std::string& url, const std::string& query,
    Timestamp retrieved_at) {
    const Json j = Json::parse(body);
    std::vector<EvidenceItem> out;
    auto add = [&](const std::string& excerpt) {
        if (excerpt.empty()) return;
        out.push_back(make_evidence_item(url, SourceClass::RepositoryMetadata,
                                         clip(excerpt), retrieved_at, query));
    };
    if (j.contains("full_name")) {
        std::string ex = "Repository " + j.value("full_name", "");
        if (j.contains("license") && j.at("license").is_object()) {
            ex += "; license: " +
                  j.at("license").value("spdx_id", std::string("NOASSERTION"));
        }
        ex += "; open issues: " + std::to_string(j.value("open_issues_count", 0));
        ex += "; pushed at: " + j.value("pushed_at", std::string("unknown"));
        add(ex);
    }
    if (j.is_array()) { // e.g. contributors or releases listing
        std::string ex = std::to_string(j.size()) + " records returned";
        if (!j.empty() && j.front().contains("tag_name")) {
            ex = "latest release " +
                 j.front().value("tag_name", std::string("?")) +
                 " published " +
                 j.front().value("published_at", std::string("?")) + "; " +
                 std::to_string(j.size()) + " releases listed";
        } else if (!j.empty() && j.front().contains("login")) {
            ex = std::to_string(j.size()) + " contributors listed";
        }
        add(ex);
    }
    return out;
}

std::vector<EvidenceItem> parse_osv_response(const std::string& body,
                                             const std::string& url,
                                             const std::string& query,
                                             Timestamp retrieved_at) {
    const Json j = Json::parse(body);
    std::vector<EvidenceItem> out;
    if (!j.contains("vulns") || !j.at("vulns").is_array() ||
        j.at("vulns").empty()) {
        out.push_back(make_evidence_item(
            url, SourceClass::VulnerabilityDb,
            "0 advisories found for this query", retrieved_at, query));
        return out;
    }
    for (const auto& v : j.at("vulns")) {
        std::string ex = v.value("id", std::string("UNKNOWN")) + ": " +
                         v.value("summary", std::string("no summary"));
        if (v.contains("published")) {
            ex += " (published " + v.value("published", std::string("?")) + ")";
        }
        out.push_back(make_evidence_item(url, SourceClass::VulnerabilityDb,
                                         clip(ex), retrieved_at, query));
    }
    return out;
}

std::vector<EvidenceItem> parse_web_search_response(const std::string& body,
                                                    const std::string& query,
                                                    Timestamp retrieved_at) {
    const Json j = Json::parse(body);
    std::vector<EvidenceItem> out;
    if (!j.contains("results") || !j.at("results").is_array()) return out;
    for (const auto& r : j.at("results")) {
        const std::string url = r.value("url", "");
        const std::string snippet = r.value("snippet", "");
        if (url.empty() || snippet.empty()) continue;
        out.push_back(make_evidence_item(url, SourceClass::WebSearch,
                                         clip(snippet), retrieved_at, query));
    }
    return out;
}

// --- network adapters ---

RepoMetadataSource::RepoMetadataSource(std::string api_base)
    : api_base_(std::move(api_base)) {}

std::vector<EvidenceItem> RepoMetadataSource::search(const std::string& query) {
    // Queries carry the repo URL when the template includes it; fall back to
    // a name search otherwise.
    std::string owner_repo;
    const auto pos = query.find("github.com/");
    if (pos != std::string::npos) {
        owner_repo = query.substr(pos + 11);
        owner_repo = owner_repo.substr(0, owner_repo.find_first_of(" /?#"));
        const auto slash = query.find('/', pos + 11);
        if (slash != std::string::npos) {
            std::string rest = query.substr(slash + 1);
            rest = rest.substr(0, rest.find_first_of(" ?#"));
            owner_repo += "/" + rest;
        }
    }
    if (owner_repo.empty() || owner_repo.find('/') == std::string::npos) {
        throw std::runtime_error("repo-metadata: no repository in query");
    }
    httplib::Headers headers{{"Accept", "application/vnd.github+json"},
                             {"User-Agent", "assay"}};
    const std::string token = getenv_or("ASSAY_REPO_TOKEN", "");
    if (!token.empty()) {
        headers.emplace("Authorization", "Bearer " + token);
    }
    const std::string path = "/repos/" + owner_repo;
    const std::string body = http_get(api_base_, path, headers);
    return parse_repo_metadata_response(body, api_base_ + path, query,
                                        now_utc());
}

VulnDbSource::VulnDbSource(std::string api_base)
    : api_base_(std::move(api_base)) {}

std::vector<EvidenceItem> VulnDbSource::search(const std::string& query) {
    const std::string pkg = leading_term(query);
    if (pkg.empty()) {
        throw std::runtime_error("vulnerability-db: empty query");
    }
    Json payload;
    payload["package"] = {{"name", pkg}};
    httplib::Client client(api_base_);
    client.set_connection_timeout(10);
    client.set_read_timeout(20);
    auto res = client.Post("/v1/query", payload.dump(), "application/json");
    if (!res || res->status != 200) {
        throw std::runtime_error("vulnerability-db query failed");
    }
    return parse_osv_response(res->body, api_base_ + "/v1/query?package=" + pkg,
                              query, now_utc());
}

WebSearchSource::WebSearchSource()
    : endpoint_(getenv_or("ASSAY_SEARCH_ENDPOINT", "")),
      api_key_(getenv_or("ASSAY_SEARCH_KEY", "")) {}

WebSearchSource::WebSearchSource(std::string endpoint, std::string api_key)
    : endpoint_(std::move(endpoint)), api_key_(std::move(api_key)) {}

std::vector<EvidenceItem> WebSearchSource::search(const std::string& query) {
    if (endpoint_.empty()) {
        throw std::runtime_error(
            "web-search: ASSAY_SEARCH_ENDPOINT is not configured");
    }
    httplib::Client client(endpoint_);
    client.set_connection_timeout(10);
    client.set_read_timeout(20);
    Json payload;
    payload["q"] = query;
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("X-Api-Key", api_key_);
    auto res = client.Post("/search", headers, payload.dump(),
                           "application/json");
    if (!res || res->status != 200) {
        throw std::runtime_error("web-search query failed");
    }
    return parse_web_search_response(res->body, query, now_utc());
}

} // namespace assay
