#include "assay/rubric.hpp"

#include <algorithm>

namespace assay {

std::string to_string(LicenseFamily v) {
    switch (v) {
        case LicenseFamily::Permissive: return "permissive";
        case LicenseFamily::WeakCopyleft: return "weak-copyleft";
        case LicenseFamily::StrongCopyleft: return "strong-copyleft";
        case LicenseFamily::ProprietaryTerms: return "proprietary-terms";
        case LicenseFamily::Unclear: return "unclear";
    }
    throw std::logic_error("unknown LicenseFamily");
}

std::string to_string(PatentGrant v) {
    switch (v) {
        case PatentGrant::Explicit: return "explicit";
        case PatentGrant::Unclear: return "unclear";
        case PatentGrant::Absent: return "absent";
    }
    throw std::logic_error("unknown PatentGrant");
}

std::string to_string(Tier v) {
    switch (v) {
        case Tier::Robust: return "robust";
        case Tier::Basic: return "basic";
        case Tier::Missing: return "missing";
    }
    throw std::logic_error("unknown Tier");
}

std::string to_string(SbomLevel v) {
    switch (v) {
        case SbomLevel::Full: return "full";
        case SbomLevel::Partial: return "partial";
        case SbomLevel::None: return "none";
    }
    throw std::logic_error("unknown SbomLevel");
}

std::string to_string(Visibility v) {
    switch (v) {
        case Visibility::Full: return "full";
        case Visibility::Partial: return "partial";
        case Visibility::None: return "none";
    }
    throw std::logic_error("unknown Visibility");
}

std::string to_string(DocState v) {
    switch (v) {
        case DocState::Clear: return "clear";
        case DocState::Incomplete: return "incomplete";
        case DocState::Missing: return "missing";
    }
    throw std::logic_error("unknown DocState");
}

std::string to_string(TrailState v) {
    switch (v) {
        case TrailState::Complete: return "complete";
        case TrailState::Partial: return "partial";
        case TrailState::Missing: return "missing";
    }
    throw std::logic_error("unknown TrailState");
}

RubricThresholds default_thresholds() { return RubricThresholds{}; }

Json encode(const RubricThresholds& t) {
    Json j;
    j["version"] = t.version;
    j["security"] = {{"minor_cve_12mo_max", t.minor_cve_12mo_max},
                     {"fix_days_fast", t.fix_days_fast},
                     {"fix_days_moderate", t.fix_days_moderate}};
    j["maintenance"] = {
        {"contributors_strong", t.contributors_strong},
        {"contributors_minimum", t.contributors_minimum},
        {"release_days_monthly", t.release_days_monthly},
        {"release_days_stale", t.release_days_stale},
        {"response_hours_prompt", t.response_hours_prompt},
        {"response_hours_acceptable", t.response_hours_acceptable}};
    j["dependency"] = {{"direct_deps_low", t.direct_deps_low},
                       {"direct_deps_high", t.direct_deps_high}};
    return j;
}

RubricThresholds load_thresholds(const std::filesystem::path& file) {
    const Json j = Json::parse(read_file(file));
    RubricThresholds t;
    t.version = j.at("version").get<int>();
    const auto& sec = j.at("security");
    t.minor_cve_12mo_max = sec.at("minor_cve_12mo_max").get<int>();
    t.fix_days_fast = sec.at("fix_days_fast").get<double>();
    t.fix_days_moderate = sec.at("fix_days_moderate").get<double>();
    const auto& mnt = j.at("maintenance");
    t.contributors_strong = mnt.at("contributors_strong").get<int>();
    t.contributors_minimum = mnt.at("contributors_minimum").get<int>();
    t.release_days_monthly = mnt.at("release_days_monthly").get<double>();
    t.release_days_stale = mnt.at("release_days_stale").get<double>();
    t.response_hours_prompt = mnt.at("response_hours_prompt").get<double>();
    t.response_hours_acceptable =
        mnt.at("response_hours_acceptable").get<double>();
    const auto& dep = j.at("dependency");
    t.direct_deps_low = dep.at("direct_deps_low").get<int>();
    t.direct_deps_high = dep.at("direct_deps_high").get<int>();
    return t;
}

namespace {

FactorBand missing(const std::string& factor) {
    return FactorBand{factor, 1, kMissingInfoReason};
}

FactorBand make(const std::string& factor, int band, std::string reason) {
    return FactorBand{factor, band, std::move(reason)};
}

void band_license(const ObservedMetrics& m, std::vector<FactorBand>& out) {
    if (!m.license_family) {
        out.push_back(missing("license terms"));
    } else {
        switch (*m.license_family) {
            case LicenseFamily::Permissive:
                out.push_back(make("license terms", 5,
                                   "permissive license with clear terms"));
                break;
            case LicenseFamily::WeakCopyleft:
                out.push_back(
                    make("license terms", 3, "moderate license restrictions"));
                break;
            case LicenseFamily::StrongCopyleft:
                out.push_back(
                    make("license terms", 1, "restrictive copyleft terms"));
                break;
            case LicenseFamily::ProprietaryTerms:
                out.push_back(make("license terms", 1, "proprietary terms"));
                break;
            case LicenseFamily::Unclear:
                out.push_back(
                    make("license terms", 1, "unclear licensing raises legal concerns"));
                break;
        }
    }

    if (!m.patent_grant) {
        out.push_back(missing("patent grant"));
    } else {
        switch (*m.patent_grant) {
            case PatentGrant::Explicit:
                out.push_back(make("patent grant", 5, "explicit patent grant"));
                break;
            case PatentGrant::Unclear:
                out.push_back(
                    make("patent grant", 3, "unclear patent provisions"));
                break;
            case PatentGrant::Absent:
                out.push_back(
                    make("patent grant", 3, "no formal patent grant"));
                break;
        }
    }
}

void band_security(const ObservedMetrics& m, const RubricThresholds& t,
                   std::vector<FactorBand>& out) {
    // critical CVEs trump counts whenever known
    if (m.has_critical_cve && *m.has_critical_cve) {
        out.push_back(make("CVE history", 1, "critical CVE on record"));
    } else if (!m.cve_count_24mo) {
        out.push_back(missing("CVE history"));
    } else if (*m.cve_count_24mo == 0) {
        out.push_back(
            make("CVE history", 5, "no CVEs in the past 24 months"));
    } else if (!m.cve_count_12mo_minor) {
        out.push_back(missing("CVE history"));
    } else if (*m.cve_count_12mo_minor <= t.minor_cve_12mo_max) {
        out.push_back(make("CVE history", 3,
                           "only minor CVEs in the past 12 months"));
    } else {
        out.push_back(make("CVE history", 1, "multiple CVEs on record"));
    }

    if (!m.security_policy) {
        out.push_back(missing("security policy"));
    } else {
        switch (*m.security_policy) {
            case Tier::Robust:
                out.push_back(
                    make("security policy", 5, "robust security policy"));
                break;
            case Tier::Basic:
                out.push_back(
                    make("security policy", 3, "basic security policy"));
                break;
            case Tier::Missing:
                out.push_back(
                    make("security policy", 1, "no security policy"));
                break;
        }
    }

    if (!m.median_fix_days) {
        out.push_back(missing("fix latency"));
    } else if (*m.median_fix_days < t.fix_days_fast) {
        out.push_back(make("fix latency", 5, "rapid fixes"));
    } else if (*m.median_fix_days <= t.fix_days_moderate) {
        out.push_back(make("fix latency", 3, "moderate fix times"));
    } else {
        out.push_back(make("fix latency", 1, "slow fix times"));
    }
}

void band_maintenance(const ObservedMetrics& m, const RubricThresholds& t,
                      std::vector<FactorBand>& out) {
    if (!m.active_contributors) {
        out.push_back(missing("contributor base"));
    } else if (*m.active_contributors > t.contributors_strong) {
        out.push_back(
            make("contributor base", 5, "more than 10 active contributors"));
    } else if (*m.active_contributors >= t.contributors_minimum) {
        out.push_back(make("contributor base", 3, "3-10 active contributors"));
    } else {
        out.push_back(
            make("contributor base", 1, "fewer than 3 active contributors"));
    }

    if (!m.release_cadence_days) {
        out.push_back(missing("release cadence"));
    } else if (*m.release_cadence_days <= t.release_days_monthly) {
        out.push_back(
            make("release cadence", 5, "monthly or more frequent releases"));
    } else if (*m.release_cadence_days > t.release_days_stale) {
        out.push_back(make("release cadence", 1, "infrequent releases"));
    } else {
        out.push_back(make("release cadence", 3, "quarterly releases"));
    }

    if (!m.issue_first_response_hours) {
        out.push_back(missing("issue responsiveness"));
    } else if (*m.issue_first_response_hours < t.response_hours_prompt) {
        out.push_back(
            make("issue responsiveness", 5, "prompt issue response"));
    } else if (*m.issue_first_response_hours <= t.response_hours_acceptable) {
        out.push_back(
            make("issue responsiveness", 3, "issue response within a week"));
    } else {
        out.push_back(make("issue responsiveness", 1, "poor issue response"));
    }
}

void band_dependency(const ObservedMetrics& m, const RubricThresholds& t,
                     std::vector<FactorBand>& out) {
    if (!m.sbom) {
        out.push_back(missing("SBOM availability"));
    } else {
        switch (*m.sbom) {
            case SbomLevel::Full:
                out.push_back(make("SBOM availability", 5, "SBOM available"));
                break;
            case SbomLevel::Partial:
                out.push_back(make("SBOM availability", 3, "partial SBOM"));
                break;
            case SbomLevel::None:
                out.push_back(make("SBOM availability", 1, "no SBOM"));
                break;
        }
    }

    if (!m.direct_dependency_count) {
        out.push_back(missing("direct dependencies"));
    } else if (*m.direct_dependency_count < t.direct_deps_low) {
        out.push_back(make("direct dependencies", 5,
                           "fewer than 20 direct dependencies"));
    } else if (*m.direct_dependency_count <= t.direct_deps_high) {
        out.push_back(
            make("direct dependencies", 3, "20-50 direct dependencies"));
    } else {
        out.push_back(make("direct dependencies", 1,
                           "more than 50 direct dependencies"));
    }

    if (m.vulnerable_transitive_known && *m.vulnerable_transitive_known) {
        out.push_back(make("transitive risk", 1,
                           "known vulnerable transitive dependencies"));
    } else if (!m.transitive_visibility) {
        out.push_back(missing("transitive risk"));
    } else {
        switch (*m.transitive_visibility) {
            case Visibility::Full:
                out.push_back(
                    make("transitive risk", 5, "full transitive visibility"));
                break;
            case Visibility::Partial:
                out.push_back(
                    make("transitive risk", 3, "some transitive visibility"));
                break;
            case Visibility::None:
                out.push_back(
                    make("transitive risk", 1, "no transitive visibility"));
                break;
        }
    }

    if (!m.auto_update_evidence) {
        out.push_back(missing("update automation"));
    } else if (*m.auto_update_evidence) {
        out.push_back(
            make("update automation", 5, "evidence of automatic updates"));
    } else {
        out.push_back(
            make("update automation", 3, "no automatic update evidence"));
    }
}

void band_regulatory(const ObservedMetrics& m, std::vector<FactorBand>& out) {
    if (!m.compliance_docs) {
        out.push_back(missing("compliance documentation"));
    } else {
        switch (*m.compliance_docs) {
            case DocState::Clear:
                out.push_back(make("compliance documentation", 5,
                                   "clear compliance documentation"));
                break;
            case DocState::Incomplete:
                out.push_back(make("compliance documentation", 3,
                                   "incomplete compliance documentation"));
                break;
            case DocState::Missing:
                out.push_back(make("compliance documentation", 1,
                                   "missing compliance documentation"));
                break;
        }
    }

    if (!m.audit_trail) {
        out.push_back(missing("audit trail"));
    } else {
        switch (*m.audit_trail) {
            case TrailState::Complete:
                out.push_back(make("audit trail", 5, "complete audit trail"));
                break;
            case TrailState::Partial:
                out.push_back(
                    make("audit trail", 3, "partial audit readiness"));
                break;
            case TrailState::Missing:
                out.push_back(make("audit trail", 1, "missing audit trail"));
                break;
        }
    }
}

} // namespace

std::vector<FactorBand> band_factors(RiskDomain domain,
                                     const ObservedMetrics& metrics,
                                     const RubricThresholds& thresholds) {
    std::vector<FactorBand> out;
    switch (domain) {
        case RiskDomain::License: band_license(metrics, out); break;
        case RiskDomain::Security:
            band_security(metrics, thresholds, out);
            break;
        case RiskDomain::Maintenance:
            band_maintenance(metrics, thresholds, out);
            break;
        case RiskDomain::Dependency:
            band_dependency(metrics, thresholds, out);
            break;
        case RiskDomain::Regulatory: band_regulatory(metrics, out); break;
    }
    return out;
}

int score_domain(const std::vector<FactorBand>& bands) {
    if (bands.empty()) throw std::invalid_argument("no factors banded");
    int min_band = 5;
    for (const auto& b : bands) min_band = std::min(min_band, b.band);
    const std::size_t above =
        static_cast<std::size_t>(std::count_if(bands.begin(), bands.end(),
            [&](const FactorBand& b) { return b.band > min_band; }));
    if (2 * above > bands.size()) return min_band + 1;
    return min_band;
}

double aggregate_trust(const std::vector<int>& scores, TrustMode mode) {
    if (scores.size() != 5) {
        throw std::invalid_argument("exactly five domain scores required");
    }
    int sum = 0;
    for (int s : scores) {
        if (s < 1 || s > 5) {
            throw std::invalid_argument("domain score out of range");
        }
        sum += s;
    }
    if (mode == TrustMode::Sum) return static_cast<double>(sum);
    return static_cast<double>(sum) / 5.0;
}

double category_average(const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("category_average of empty list");
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    return round1(sum / static_cast<double>(values.size()));
}

int band_of_rating(int rating) {
    if (rating <= 2) return 1;
    if (rating <= 4) return 3;
    return 5;
}

int score_rows(const std::vector<RiskFactorRow>& rows) {
    std::vector<FactorBand> bands;
    bands.reserve(rows.size());
    for (const auto& r : rows) {
        bands.push_back(FactorBand{r.factor, band_of_rating(r.rating), ""});
    }
    return score_domain(bands);
}

} // namespace assay
