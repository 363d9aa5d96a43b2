#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "assay/util.hpp"

namespace assay {

using Json = nlohmann::ordered_json;

// The five governance domains, in fixed iteration order.
enum class RiskDomain { License, Security, Maintenance, Dependency, Regulatory };

inline constexpr std::array<RiskDomain, 5> kAllDomains = {
    RiskDomain::License, RiskDomain::Security, RiskDomain::Maintenance,
    RiskDomain::Dependency, RiskDomain::Regulatory};

std::string to_string(RiskDomain d);
RiskDomain domain_from_string(const std::string& s);
std::size_t domain_index(RiskDomain d);

enum class EcosystemCategory {
    CoreMlFramework,
    LlmInferenceOrchestration,
    AiAgentFramework,
    Other,
};

std::string to_string(EcosystemCategory c);
EcosystemCategory category_from_string(const std::string& s);

enum class SourceClass {
    OfficialDocs,
    RepositoryMetadata,
    VulnerabilityDb,
    WebSearch,
    Scorecard,
};

std::string to_string(SourceClass c);
SourceClass source_class_from_string(const std::string& s);

// An assessment target. `assessed_at` is fixed at construction.
struct Library {
    std::string name;
    EcosystemCategory category = EcosystemCategory::Other;
    std::string repo_url;
    std::optional<std::string> version_or_ref;
    Timestamp assessed_at{};

    bool operator==(const Library&) const = default;
};

// Throws std::invalid_argument on empty name or malformed repo_url.
Library make_library(std::string name, EcosystemCategory category,
                     std::string repo_url,
                     std::optional<std::string> version_or_ref,
                     Timestamp assessed_at);

inline constexpr std::size_t kMaxExcerptChars = 2000;

// One cited observation. The id is derived from (url, excerpt), so identical
// content dedupes no matter which source or query produced it.
struct EvidenceItem {
    std::string id;
    std::string url;
    SourceClass source_class = SourceClass::WebSearch;
    std::string excerpt;
    Timestamp retrieved_at{};
    std::string query;

    bool operator==(const EvidenceItem&) const = default;
};

std::string evidence_id(std::string_view url, std::string_view excerpt);

// Truncates the excerpt to kMaxExcerptChars; throws on empty excerpt/url.
EvidenceItem make_evidence_item(std::string url, SourceClass source_class,
                                std::string excerpt, Timestamp retrieved_at,
                                std::string query);

struct RiskFactorRow {
    std::string factor;
    std::string observed;
    int rating = 1; // 1..5
    std::string justification;
    std::string proposed_control;
    std::vector<std::string> citations; // evidence ids
    bool missing_info = false;

    bool operator==(const RiskFactorRow&) const = default;
};

// The quantification-mandate check: a digit anywhere, or the literal
// "not found" (case-insensitive). Dates and versions contain digits.
bool has_quantifiable_token(const std::string& observed);

struct DomainAssessment {
    RiskDomain domain = RiskDomain::License;
    std::vector<RiskFactorRow> rows;
    int domain_score = 1; // 1..5
    std::string narrative;
    int iterations_used = 1;

    bool operator==(const DomainAssessment&) const = default;
};

// Reference into a report: section + row position.
struct RowRef {
    RiskDomain domain = RiskDomain::License;
    std::size_t row = 0;
    std::string factor;

    bool operator==(const RowRef&) const = default;
};

struct ExecSummary {
    std::vector<int> risk_dashboard; // 5 scores in domain order
    std::vector<RowRef> emergency_issues;
    std::vector<std::string> prioritized_controls;
    std::string mitigation_strategy;

    bool operator==(const ExecSummary&) const = default;
};

struct AssessmentReport {
    Library library;
    std::vector<DomainAssessment> sections; // exactly 5, one per domain
    ExecSummary executive_summary;
    int trust_sum = 5;       // 5..25
    double trust_mean = 1.0; // trust_sum / 5, one exact decimal digit
    std::vector<EvidenceItem> evidence_ledger; // sorted by id

    bool operator==(const AssessmentReport&) const = default;
};

// Every invariant violation found, or empty when the report is consistent.
// Never mutates the input; violations are data, not failures.
std::vector<std::string> validate_report(const AssessmentReport& report);

// Canonical JSON codecs: stable field order, RFC 3339 timestamps.
// decode(encode(x)) == x for every type.
Json encode(const Library& v);
Json encode(const EvidenceItem& v);
Json encode(const RiskFactorRow& v);
Json encode(const DomainAssessment& v);
Json encode(const RowRef& v);
Json encode(const ExecSummary& v);
Json encode(const AssessmentReport& v);

Library decode_library(const Json& j);
EvidenceItem decode_evidence_item(const Json& j);
RiskFactorRow decode_risk_factor_row(const Json& j);
DomainAssessment decode_domain_assessment(const Json& j);
RowRef decode_row_ref(const Json& j);
ExecSummary decode_exec_summary(const Json& j);
AssessmentReport decode_assessment_report(const Json& j);

} // namespace assay
