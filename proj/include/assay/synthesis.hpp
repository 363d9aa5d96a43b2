#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "assay/evidence.hpp"
#include "assay/model.hpp"

namespace assay {

// Text-completion backend. Implementations must tolerate concurrent calls
// (one in-flight call per domain section).
class SynthesisProvider {
public:
    virtual ~SynthesisProvider() = default;
    virtual std::string synthesize(const std::string& prompt) = 0;
};

// A key concept the section must address, with the text tokens that count
// as addressing it.
struct DomainConcept {
    std::string name;
    std::vector<std::string> keywords;
};

const std::vector<DomainConcept>& domain_concepts(RiskDomain domain);

struct SectionDraft {
    RiskDomain domain = RiskDomain::License;
    std::string raw_text;
    std::vector<RiskFactorRow> parsed_rows;
    std::vector<std::string> parse_errors;
};

struct QualityResult {
    bool pass = false;
    std::vector<std::string> gaps; // one per unmet condition
};

// Deterministic prompt: domain concept checklist, table grammar, the
// quantification/citation/missing-info mandates, and the evidence excerpts
// with their ids. Empty evidence gets an explicit notice.
std::string build_prompt(RiskDomain domain, const Library& library,
                         const std::vector<EvidenceItem>& evidence);

// The documented table emitter; parse_section(render_rows(rows)) == rows
// for every valid row set.
std::string render_rows(const std::vector<RiskFactorRow>& rows);

// Extracts factor rows from the pipe-table grammar. Unknown citation ids are
// dropped from the row, flag it missing-info (rating 1) and log a parse
// error. Throws std::runtime_error("unparseable section") when no row parses.
SectionDraft parse_section(RiskDomain domain, const std::string& raw,
                           const EvidenceLedger& ledger);

// Pass iff >= 3 rows, every observed value is quantified, every
// non-missing-info row has a resolvable citation, and all domain key
// concepts are addressed.
QualityResult quality_check(const SectionDraft& draft);

// Minimal all-missing-info table for a domain; what the mock emits when no
// fixture covers the key and what depth-exhausted sections fall back to.
std::vector<RiskFactorRow> missing_info_rows(RiskDomain domain,
                                             const std::string& note);

// Fixture-backed provider. Prompts carry "Task:", "Library:" and "Domain:"
// header lines; section fixtures live at <dir>/<library-slug>/<domain>.table,
// plan suggestions at <dir>/<library-slug>/plan.txt, benchmark assistance at
// <dir>/<library-slug>/benchmark-match.txt. Deterministic.
class MockProvider : public SynthesisProvider {
public:
    explicit MockProvider(std::filesystem::path fixtures_dir);
    std::string synthesize(const std::string& prompt) override;

private:
    std::filesystem::path dir_;
};

// Plain JSON endpoint: POST {"prompt": ...} -> {"completion": ...}.
// The bearer token is read from the named environment variable.
class HttpProvider : public SynthesisProvider {
public:
    HttpProvider(std::string endpoint, std::string auth_env);
    std::string synthesize(const std::string& prompt) override;

    static std::string request_body(const std::string& prompt);
    static std::string parse_response(const std::string& body);

private:
    std::string endpoint_;
    std::string auth_env_;
};

// Header-line helpers shared by providers.
std::string prompt_header_value(const std::string& prompt,
                                const std::string& key);

} // namespace assay
