#include "assay/model.hpp"

#include <algorithm>
#include <set>

namespace assay {

std::string to_string(RiskDomain d) {
    switch (d) {
        case RiskDomain::License: return "License";
        case RiskDomain::Security: return "Security";
        case RiskDomain::Maintenance: return "Maintenance";
        case RiskDomain::Dependency: return "Dependency";
        case RiskDomain::Regulatory: return "Regulatory";
    }
    throw std::logic_error("unknown RiskDomain");
}

RiskDomain domain_from_string(const std::string& s) {
    for (RiskDomain d : kAllDomains) {
        if (to_string(d) == s) return d;
    }
    throw std::invalid_argument("unknown risk domain: " + s);
}

std::size_t domain_index(RiskDomain d) {
    return static_cast<std::size_t>(d);
}

std::string to_string(EcosystemCategory c) {
    switch (c) {
        case EcosystemCategory::CoreMlFramework: return "core-ml-framework";
        case EcosystemCategory::LlmInferenceOrchestration:
            return "llm-inference-orchestration";
        case EcosystemCategory::AiAgentFramework: return "ai-agent-framework";
        case EcosystemCategory::Other: return "other";
    }
    throw std::logic_error("unknown EcosystemCategory");
}

EcosystemCategory category_from_string(const std::string& s) {
    for (EcosystemCategory c :
         {EcosystemCategory::CoreMlFramework,
          EcosystemCategory::LlmInferenceOrchestration,
          EcosystemCategory::AiAgentFramework, EcosystemCategory::Other}) {
        if (to_string(c) == s) return c;
    }
    throw std::invalid_argument("unknown ecosystem category: " + s);
}

std::string to_string(SourceClass c) {
    switch (c) {
        case SourceClass::OfficialDocs: return "official-docs";
        case SourceClass::RepositoryMetadata: return "repository-metadata";
        case SourceClass::VulnerabilityDb: return "vulnerability-db";
        case SourceClass::WebSearch: return "web-search";
        case SourceClass::Scorecard: return "scorecard";
    }
    throw std::logic_error("unknown SourceClass");
}

SourceClass source_class_from_string(const std::string& s) {
    for (SourceClass c :
         {SourceClass::OfficialDocs, SourceClass::RepositoryMetadata,
          SourceClass::VulnerabilityDb, SourceClass::WebSearch,
          SourceClass::Scorecard}) {
        if (to_string(c) == s) return c;
    }
    throw std::invalid_argument("unknown source class: " + s);
}

Library make_library(std::string name, EcosystemCategory category,
                     std::string repo_url,
                     std::optional<std::string> version_or_ref,
                     Timestamp assessed_at) {
    if (trim(name).empty()) {
        throw std::invalid_argument("library name must be non-empty");
    }
    if (!is_valid_absolute_url(repo_url)) {
        throw std::invalid_argument("invalid repo url: " + repo_url);
    }
    return Library{std::move(name), category, std::move(repo_url),
                   std::move(version_or_ref), assessed_at};
}

std::string evidence_id(std::string_view url, std::string_view excerpt) {
    std::string key;
    key.reserve(url.size() + 1 + excerpt.size());
    key.append(url);
    key.push_back('\x1f');
    key.append(excerpt);
    return fnv1a_hex(key);
}

EvidenceItem make_evidence_item(std::string url, SourceClass source_class,
                                std::string excerpt, Timestamp retrieved_at,
                                std::string query) {
    if (trim(excerpt).empty()) {
        throw std::invalid_argument("evidence excerpt must be non-empty");
    }
    if (url.empty()) {
        throw std::invalid_argument("evidence url must be non-empty");
    }
    if (excerpt.size() > kMaxExcerptChars) {
        excerpt.resize(kMaxExcerptChars);
    }
    EvidenceItem item;
    item.url = std::move(url);
    item.source_class = source_class;
    item.excerpt = std::move(excerpt);
    item.retrieved_at = retrieved_at;
    item.query = std::move(query);
    item.id = evidence_id(item.url, item.excerpt);
    return item;
}

bool has_quantifiable_token(const std::string& observed) {
    for (unsigned char c : observed) {
        if (std::isdigit(c)) return true;
    }
    return contains_ci(observed, "not found");
}

// --- validation ---

namespace {

void validate_row(const RiskFactorRow& row, const std::string& where,
                  const std::set<std::string>& ledger_ids,
                  std::vector<std::string>& out) {
    if (row.rating < 1 || row.rating > 5) {
        out.push_back(where + ": rating out of range");
    }
    if (row.missing_info && row.rating != 1) {
        out.push_back(where + ": missing-info requires rating 1");
    }
    if (!row.missing_info && row.citations.empty()) {
        out.push_back(where + ": citations required unless missing-info");
    }
    if (!has_quantifiable_token(row.observed)) {
        out.push_back(where + ": observed data lacks a quantifiable token");
    }
    for (const auto& id : row.citations) {
        if (!ledger_ids.count(id)) {
            out.push_back(where + ": citation " + id +
                          " not in evidence ledger");
        }
    }
}

} // namespace

std::vector<std::string> validate_report(const AssessmentReport& report) {
    std::vector<std::string> v;

    if (trim(report.library.name).empty()) {
        v.push_back("library name is empty");
    }
    if (!is_valid_absolute_url(report.library.repo_url)) {
        v.push_back("library repo-url is not a valid absolute URL");
    }

    std::set<std::string> ledger_ids;
    for (const auto& item : report.evidence_ledger) {
        if (!ledger_ids.insert(item.id).second) {
            v.push_back("duplicate evidence id in ledger: " + item.id);
        }
        if (item.excerpt.empty()) {
            v.push_back("evidence " + item.id + " has empty excerpt");
        }
    }

    // exactly one section per domain, in order
    std::array<int, 5> seen{};
    for (const auto& sec : report.sections) {
        seen[domain_index(sec.domain)]++;
    }
    for (RiskDomain d : kAllDomains) {
        if (seen[domain_index(d)] == 0) {
            v.push_back("missing domain: " + to_string(d));
        } else if (seen[domain_index(d)] > 1) {
            v.push_back("duplicate domain: " + to_string(d));
        }
    }
    if (report.sections.size() != 5) {
        v.push_back("expected 5 sections, found " +
                    std::to_string(report.sections.size()));
    }

    int expected_sum = 0;
    for (const auto& sec : report.sections) {
        const std::string where = to_string(sec.domain);
        if (sec.domain_score < 1 || sec.domain_score > 5) {
            v.push_back(where + ": domain score out of range");
        }
        if (sec.rows.size() < 3) {
            v.push_back(where + ": fewer than 3 factor rows");
        }
        if (sec.iterations_used < 1) {
            v.push_back(where + ": iterations-used must be >= 1");
        }
        for (std::size_t i = 0; i < sec.rows.size(); ++i) {
            validate_row(sec.rows[i],
                         where + " row " + std::to_string(i + 1), ledger_ids,
                         v);
        }
        expected_sum += sec.domain_score;
    }

    if (report.sections.size() == 5) {
        if (report.trust_sum != expected_sum) {
            v.push_back("trust-sum mismatch: stored " +
                        std::to_string(report.trust_sum) + ", recomputed " +
                        std::to_string(expected_sum));
        }
        const double expected_mean = static_cast<double>(expected_sum) / 5.0;
        if (report.trust_mean != expected_mean) {
            v.push_back("trust-mean mismatch");
        }
        if (report.executive_summary.risk_dashboard.size() != 5) {
            v.push_back("risk dashboard must list 5 scores");
        } else {
            for (std::size_t i = 0; i < 5; ++i) {
                const auto it = std::find_if(
                    report.sections.begin(), report.sections.end(),
                    [&](const DomainAssessment& s) {
                        return domain_index(s.domain) == i;
                    });
                if (it != report.sections.end() &&
                    report.executive_summary.risk_dashboard[i] !=
                        it->domain_score) {
                    v.push_back("risk dashboard score mismatch for " +
                                to_string(kAllDomains[i]));
                }
            }
        }
    }

    for (const auto& ref : report.executive_summary.emergency_issues) {
        const auto it = std::find_if(
            report.sections.begin(), report.sections.end(),
            [&](const DomainAssessment& s) { return s.domain == ref.domain; });
        if (it == report.sections.end() || ref.row >= it->rows.size()) {
            v.push_back("emergency issue references unknown row: " +
                        to_string(ref.domain) + " row " +
                        std::to_string(ref.row + 1));
        } else if (it->rows[ref.row].rating != 1) {
            v.push_back("emergency issue references row without rating 1: " +
                        to_string(ref.domain) + " row " +
                        std::to_string(ref.row + 1));
        }
    }

    return v;
}

// --- canonical JSON ---

Json encode(const Library& v) {
    Json j;
    j["name"] = v.name;
    j["category"] = to_string(v.category);
    j["repo_url"] = v.repo_url;
    j["version_or_ref"] =
        v.version_or_ref ? Json(*v.version_or_ref) : Json(nullptr);
    j["assessed_at"] = format_rfc3339(v.assessed_at);
    return j;
}

Library decode_library(const Json& j) {
    Library v;
    v.name = j.at("name").get<std::string>();
    v.category = category_from_string(j.at("category").get<std::string>());
    v.repo_url = j.at("repo_url").get<std::string>();
    if (!j.at("version_or_ref").is_null()) {
        v.version_or_ref = j.at("version_or_ref").get<std::string>();
    }
    v.assessed_at = parse_rfc3339(j.at("assessed_at").get<std::string>());
    return v;
}

Json encode(const EvidenceItem& v) {
    Json j;
    j["id"] = v.id;
    j["url"] = v.url;
    j["source_class"] = to_string(v.source_class);
    j["excerpt"] = v.excerpt;
    j["retrieved_at"] = format_rfc3339(v.retrieved_at);
    j["query"] = v.query;
    return j;
}

EvidenceItem decode_evidence_item(const Json& j) {
    EvidenceItem v;
    v.id = j.at("id").get<std::string>();
    v.url = j.at("url").get<std::string>();
    v.source_class =
        source_class_from_string(j.at("source_class").get<std::string>());
    v.excerpt = j.at("excerpt").get<std::string>();
    v.retrieved_at = parse_rfc3339(j.at("retrieved_at").get<std::string>());
    v.query = j.at("query").get<std::string>();
    return v;
}

Json encode(const RiskFactorRow& v) {
    Json j;
    j["factor"] = v.factor;
    j["observed"] = v.observed;
    j["rating"] = v.rating;
    j["justification"] = v.justification;
    j["proposed_control"] = v.proposed_control;
    j["citations"] = v.citations;
    j["missing_info"] = v.missing_info;
    return j;
}

RiskFactorRow decode_risk_factor_row(const Json& j) {
    RiskFactorRow v;
    v.factor = j.at("factor").get<std::string>();
    v.observed = j.at("observed").get<std::string>();
    v.rating = j.at("rating").get<int>();
    v.justification = j.at("justification").get<std::string>();
    v.proposed_control = j.at("proposed_control").get<std::string>();
    v.citations = j.at("citations").get<std::vector<std::string>>();
    v.missing_info = j.at("missing_info").get<bool>();
    return v;
}

Json encode(const DomainAssessment& v) {
    Json j;
    j["domain"] = to_string(v.domain);
    Json rows = Json::array();
    for (const auto& r : v.rows) rows.push_back(encode(r));
    j["rows"] = std::move(rows);
    j["domain_score"] = v.domain_score;
    j["narrative"] = v.narrative;
    j["iterations_used"] = v.iterations_used;
    return j;
}

DomainAssessment decode_domain_assessment(const Json& j) {
    DomainAssessment v;
    v.domain = domain_from_string(j.at("domain").get<std::string>());
    for (const auto& r : j.at("rows")) {
        v.rows.push_back(decode_risk_factor_row(r));
    }
    v.domain_score = j.at("domain_score").get<int>();
    v.narrative = j.at("narrative").get<std::string>();
    v.iterations_used = j.at("iterations_used").get<int>();
    return v;
}

Json encode(const RowRef& v) {
    Json j;
    j["domain"] = to_string(v.domain);
    j["row"] = v.row;
    j["factor"] = v.factor;
    return j;
}

RowRef decode_row_ref(const Json& j) {
    RowRef v;
    v.domain = domain_from_string(j.at("domain").get<std::string>());
    v.row = j.at("row").get<std::size_t>();
    v.factor = j.at("factor").get<std::string>();
    return v;
}

Json encode(const ExecSummary& v) {
    Json j;
    j["risk_dashboard"] = v.risk_dashboard;
    Json issues = Json::array();
    for (const auto& r : v.emergency_issues) issues.push_back(encode(r));
    j["emergency_issues"] = std::move(issues);
    j["prioritized_controls"] = v.prioritized_controls;
    j["mitigation_strategy"] = v.mitigation_strategy;
    return j;
}

ExecSummary decode_exec_summary(const Json& j) {
    ExecSummary v;
    v.risk_dashboard = j.at("risk_dashboard").get<std::vector<int>>();
    for (const auto& r : j.at("emergency_issues")) {
        v.emergency_issues.push_back(decode_row_ref(r));
    }
    v.prioritized_controls =
        j.at("prioritized_controls").get<std::vector<std::string>>();
    v.mitigation_strategy = j.at("mitigation_strategy").get<std::string>();
    return v;
}

Json encode(const AssessmentReport& v) {
    Json j;
    j["schema_version"] = 1;
    j["library"] = encode(v.library);
    Json sections = Json::array();
    for (const auto& s : v.sections) sections.push_back(encode(s));
    j["sections"] = std::move(sections);
    j["executive_summary"] = encode(v.executive_summary);
    j["trust_sum"] = v.trust_sum;
    j["trust_mean"] = v.trust_mean;
    Json ledger = Json::array();
    for (const auto& e : v.evidence_ledger) ledger.push_back(encode(e));
    j["evidence_ledger"] = std::move(ledger);
    return j;
}

AssessmentReport decode_assessment_report(const Json& j) {
    AssessmentReport v;
    v.library = decode_library(j.at("library"));
    for (const auto& s : j.at("sections")) {
        v.sections.push_back(decode_domain_assessment(s));
    }
    v.executive_summary = decode_exec_summary(j.at("executive_summary"));
    v.trust_sum = j.at("trust_sum").get<int>();
    v.trust_mean = j.at("trust_mean").get<double>();
    for (const auto& e : j.at("evidence_ledger")) {
        v.evidence_ledger.push_back(decode_evidence_item(e));
    }
    return v;
}

} // namespace assay
