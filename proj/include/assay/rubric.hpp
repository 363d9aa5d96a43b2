#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assay/model.hpp"

namespace assay {

enum class LicenseFamily {
    Permissive,
    WeakCopyleft,
    StrongCopyleft,
    ProprietaryTerms,
    Unclear,
};
enum class PatentGrant { Explicit, Unclear, Absent };
enum class Tier { Robust, Basic, Missing };       // security policy
enum class SbomLevel { Full, Partial, None };
enum class Visibility { Full, Partial, None };    // transitive visibility
enum class DocState { Clear, Incomplete, Missing }; // compliance docs
enum class TrailState { Complete, Partial, Missing }; // audit trail

std::string to_string(LicenseFamily v);
std::string to_string(PatentGrant v);
std::string to_string(Tier v);
std::string to_string(SbomLevel v);
std::string to_string(Visibility v);
std::string to_string(DocState v);
std::string to_string(TrailState v);

// Structured metrics extracted from evidence. Every field is optional:
// absent means unknown, which is distinct from zero or false.
struct ObservedMetrics {
    std::optional<LicenseFamily> license_family;
    std::optional<PatentGrant> patent_grant;

    std::optional<int> cve_count_24mo;
    std::optional<int> cve_count_12mo_minor;
    std::optional<bool> has_critical_cve;
    std::optional<Tier> security_policy;
    std::optional<double> median_fix_days;

    std::optional<int> active_contributors;
    std::optional<double> release_cadence_days;
    std::optional<double> issue_first_response_hours;

    std::optional<SbomLevel> sbom;
    std::optional<int> direct_dependency_count;
    std::optional<Visibility> transitive_visibility;
    std::optional<bool> auto_update_evidence;
    std::optional<bool> vulnerable_transitive_known;

    std::optional<DocState> compliance_docs;
    std::optional<TrailState> audit_trail;

    bool operator==(const ObservedMetrics&) const = default;
};

// One criterion's verdict on the three-band scale.
struct FactorBand {
    std::string factor;
    int band = 1; // 1, 3 or 5
    std::string reason;

    bool operator==(const FactorBand&) const = default;
};

inline constexpr const char* kMissingInfoReason = "missing information";

// Numeric criterion boundaries; defaults are the shipped rubric values.
// Loadable from a versioned, human-editable JSON file.
struct RubricThresholds {
    int version = 1;

    // security
    int minor_cve_12mo_max = 3;   // 1..max minor CVEs in 12 months -> band 3
    double fix_days_fast = 7;     // median fix < fast -> band 5
    double fix_days_moderate = 30; // <= moderate -> band 3, else band 1

    // maintenance
    int contributors_strong = 10;  // > strong -> band 5
    int contributors_minimum = 3;  // >= minimum -> band 3, else band 1
    double release_days_monthly = 31;  // <= monthly -> band 5
    double release_days_stale = 183;   // > stale -> band 1, else band 3
    double response_hours_prompt = 24;     // < prompt -> band 5
    double response_hours_acceptable = 168; // <= acceptable -> band 3

    // dependency
    int direct_deps_low = 20;  // < low -> band 5
    int direct_deps_high = 50; // <= high -> band 3, else band 1

    bool operator==(const RubricThresholds&) const = default;
};

RubricThresholds default_thresholds();
RubricThresholds load_thresholds(const std::filesystem::path& file);
Json encode(const RubricThresholds& t);

// Emits one FactorBand per criterion applicable to the domain. A criterion
// whose needed field is unknown yields band 1 with reason
// "missing information".
std::vector<FactorBand> band_factors(
    RiskDomain domain, const ObservedMetrics& metrics,
    const RubricThresholds& thresholds = default_thresholds());

// min band, raised by one iff strictly more than half of all bands exceed it.
// Output is always in {min, min+1}. Throws on an empty band list.
int score_domain(const std::vector<FactorBand>& bands);

enum class TrustMode { Sum, Mean };

// scores must hold exactly five values, each 1..5, in domain order.
// Sum ranges 5..25; mean is sum/5 (one exact decimal digit).
double aggregate_trust(const std::vector<int>& scores, TrustMode mode);

// Arithmetic mean, half-up rounded to one decimal. Throws on empty input.
double category_average(const std::vector<double>& values);

// Advisory ratings from a synthesis provider collapse onto the three-band
// scale before recomputation: 2 -> 1, 4 -> 3.
int band_of_rating(int rating);

// Recomputed domain score for a set of parsed rows (band, then score_domain).
int score_rows(const std::vector<RiskFactorRow>& rows);

} // namespace assay
