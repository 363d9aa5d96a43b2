#include "assay/synthesis.hpp"

#include <algorithm>
#include <cstdlib>
#include <regex>
#include <sstream>

#include <httplib.h>

namespace assay {

const std::vector<DomainConcept>& domain_concepts(RiskDomain domain) {
    static const std::vector<DomainConcept> license = {
        {"legal terms", {"license", "spdx", "legal"}},
        {"commercial use", {"commercial"}},
        {"patent grants", {"patent"}},
        {"compliance", {"complian", "compatib"}},
    };
    static const std::vector<DomainConcept> security = {
        {"known vulnerabilities", {"cve", "vulnerab", "advisor"}},
        {"patching", {"patch", "fix"}},
        {"security policy", {"policy", "disclosure"}},
    };
    static const std::vector<DomainConcept> maintenance = {
        {"release frequency", {"release"}},
        {"contributor activity", {"contributor", "maintainer"}},
        {"issue resolution", {"issue", "response"}},
    };
    static const std::vector<DomainConcept> dependency = {
        {"SBOM availability", {"sbom", "bill of materials"}},
        {"transitive risks", {"transitive", "indirect"}},
        {"supply chain controls", {"dependenc", "pinn", "update"}},
    };
    static const std::vector<DomainConcept> regulatory = {
        {"GDPR/AI Act alignment", {"gdpr", "ai act", "regulat", "complian"}},
        {"explainability", {"explainab", "transparen", "telemetry"}},
        {"audit readiness", {"audit", "logging"}},
    };
    switch (domain) {
        case RiskDomain::License: return license;
        case RiskDomain::Security: return security;
        case RiskDomain::Maintenance: return maintenance;
        case RiskDomain::Dependency: return dependency;
        case RiskDomain::Regulatory: return regulatory;
    }
    throw std::logic_error("unknown RiskDomain");
}

// --- prompt ---

std::string build_prompt(RiskDomain domain, const Library& library,
                         const std::vector<EvidenceItem>& evidence) {
    std::ostringstream p;
    p << "Task: section-synthesis\n";
    p << "Library: " << library.name << "\n";
    p << "Repository: " << library.repo_url << "\n";
    p << "Domain: " << to_string(domain) << "\n";
    p << "\n";
    p << "Assess the " << to_string(domain) << " risk of " << library.name
      << ". Cover every key concept:\n";
    for (const auto& c : domain_concepts(domain)) {
        p << "- " << c.name << "\n";
    }
    p << "\n";
    p << "Report each risk factor as one row of this exact table:\n";
    p << "| Factor | Observed Data | Risk Rating | Justification | Proposed "
         "Control |\n";
    p << "| --- | --- | --- | --- | --- |\n";
    p << "\n";
    p << "Rules:\n";
    p << "- Risk Rating is an integer 1 (high risk) to 5 (low risk).\n";
    p << "- Observed Data must extract specific, verifiable metrics (counts, "
         "dates, versions), never qualitative summaries.\n";
    p << "- Every claim must cite evidence: append the supporting evidence "
         "ids to the Justification cell as a bracketed list, e.g. "
         "[0011223344556677,8899aabbccddeeff].\n";
    p << "- When information is unavailable, write \"not found\" in Observed "
         "Data, set Risk Rating to 1 (missing info) and state the gap.\n";
    p << "\n";
    if (evidence.empty()) {
        p << "Evidence: no evidence retrieved.\n";
    } else {
        p << "Evidence:\n";
        for (const auto& e : evidence) {
            p << "[" << e.id << "] " << e.url << " -- " << e.excerpt << "\n";
        }
    }
    return p.str();
}

// --- table grammar ---

namespace {

std::string escape_cell(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n' || c == '\r') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string current;
    bool escaped = false;
    for (char c : line) {
        if (escaped) {
            current += c;
            escaped = false;
            continue;
        }
        if (c == '\\') {
            escaped = true;
            continue;
        }
        if (c == '|') {
            cells.push_back(current);
            current.clear();
            continue;
        }
        current += c;
    }
    cells.push_back(current);
    // `| a | b |` splits into ["", " a ", " b ", ""]; drop the delimiters.
    if (!cells.empty() && trim(cells.front()).empty()) {
        cells.erase(cells.begin());
    }
    if (!cells.empty() && trim(cells.back()).empty()) {
        cells.pop_back();
    }
    for (auto& c : cells) c = trim(c);
    return cells;
}

bool is_separator_row(const std::vector<std::string>& cells) {
    if (cells.empty()) return false;
    for (const auto& c : cells) {
        if (c.find_first_not_of("-: ") != std::string::npos) return false;
    }
    return true;
}

const std::regex kCitationGroup(R"(\[([0-9a-f]{16}(?:, ?[0-9a-f]{16})*)\]$)");
const std::regex kRatingCell(R"(^(-?\d+)(\s*\(missing info\))?$)");

} // namespace

std::string render_rows(const std::vector<RiskFactorRow>& rows) {
    std::ostringstream out;
    out << "| Factor | Observed Data | Risk Rating | Justification | Proposed "
           "Control |\n";
    out << "| --- | --- | --- | --- | --- |\n";
    for (const auto& r : rows) {
        std::string rating = std::to_string(r.rating);
        if (r.missing_info) rating += " (missing info)";
        std::string justification = escape_cell(r.justification);
        if (!r.citations.empty()) {
            justification += " [" + join(r.citations, ",") + "]";
        }
        out << "| " << escape_cell(r.factor) << " | "
            << escape_cell(r.observed) << " | " << rating << " | "
            << justification << " | " << escape_cell(r.proposed_control)
            << " |\n";
    }
    return out.str();
}

SectionDraft parse_section(RiskDomain domain, const std::string& raw,
                           const EvidenceLedger& ledger) {
    SectionDraft draft;
    draft.domain = domain;
    draft.raw_text = raw;

    bool header_seen = false;
    std::istringstream in(raw);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() != '|') continue;
        auto cells = split_cells(t);
        if (is_separator_row(cells)) continue;
        if (!header_seen) {
            header_seen = true; // first pipe row is the header
            continue;
        }
        if (cells.size() != 5) {
            draft.parse_errors.push_back(
                "line " + std::to_string(line_no) + ": expected 5 columns, found " +
                std::to_string(cells.size()));
            continue;
        }

        RiskFactorRow row;
        row.factor = cells[0];
        row.observed = cells[1];

        std::smatch m;
        if (!std::regex_match(cells[2], m, kRatingCell)) {
            draft.parse_errors.push_back("line " + std::to_string(line_no) +
                                         ": unreadable rating '" + cells[2] +
                                         "'");
            continue;
        }
        int rating = std::stoi(m[1].str());
        row.missing_info = m[2].matched;
        if (rating < 1 || rating > 5) {
            draft.parse_errors.push_back("line " + std::to_string(line_no) +
                                         ": rating out of range");
            rating = std::clamp(rating, 1, 5);
        }
        row.rating = rating;

        std::string justification = cells[3];
        std::smatch cm;
        if (std::regex_search(justification, cm, kCitationGroup)) {
            for (auto& id : split(cm[1].str(), ',')) {
                row.citations.push_back(trim(id));
            }
            justification = trim(justification.substr(
                0, static_cast<std::size_t>(cm.position(0))));
        }
        row.justification = justification;
        row.proposed_control = cells[4];

        std::vector<std::string> resolved;
        for (const auto& id : row.citations) {
            if (ledger.contains(id)) {
                resolved.push_back(id);
            } else {
                draft.parse_errors.push_back("line " + std::to_string(line_no) +
                                             ": unknown citation id " + id);
                row.missing_info = true;
            }
        }
        if (resolved.size() != row.citations.size()) {
            row.citations = std::move(resolved);
            row.rating = 1; // the gap raises the risk rating
        }
        if (row.missing_info && row.rating != 1) {
            row.rating = 1;
        }
        draft.parsed_rows.push_back(std::move(row));
    }

    if (draft.parsed_rows.empty()) {
        throw std::runtime_error("unparseable section");
    }
    return draft;
}

// --- quality check ---

QualityResult quality_check(const SectionDraft& draft) {
    QualityResult result;
    if (draft.parsed_rows.size() < 3) {
        result.gaps.push_back("insufficient factor coverage: " +
                              std::to_string(draft.parsed_rows.size()) +
                              " rows, need 3");
    }
    for (const auto& row : draft.parsed_rows) {
        if (!has_quantifiable_token(row.observed)) {
            result.gaps.push_back(
                "quantification mandate unmet for factor '" + row.factor +
                "': no verifiable metric in observed data");
        }
        if (!row.missing_info && row.citations.empty()) {
            result.gaps.push_back("factor '" + row.factor +
                                  "' lacks a resolvable citation");
        }
    }
    for (const auto& concept_def : domain_concepts(draft.domain)) {
        bool hit = false;
        for (const auto& row : draft.parsed_rows) {
            const std::string text = to_lower(
                row.factor + " " + row.observed + " " + row.justification);
            for (const auto& kw : concept_def.keywords) {
                if (text.find(to_lower(kw)) != std::string::npos) {
                    hit = true;
                    break;
                }
            }
            if (hit) break;
        }
        if (!hit) {
            result.gaps.push_back("key concept '" + concept_def.name +
                                  "' not addressed");
        }
    }
    result.pass = result.gaps.empty();
    return result;
}

std::vector<RiskFactorRow> missing_info_rows(RiskDomain domain,
                                             const std::string& note) {
    std::vector<RiskFactorRow> rows;
    const auto& concepts = domain_concepts(domain);
    for (std::size_t i = 0; i < 3; ++i) {
        RiskFactorRow row;
        row.factor = i < concepts.size()
                         ? concepts[i].name
                         : to_string(domain) + " factor " + std::to_string(i + 1);
        row.observed = "not found (" + note + ")";
        row.rating = 1;
        row.missing_info = true;
        row.justification = "no verifiable evidence retrieved";
        row.proposed_control =
            "obtain and publish verifiable data for this factor";
        rows.push_back(std::move(row));
    }
    return rows;
}

// --- providers ---

std::string prompt_header_value(const std::string& prompt,
                                const std::string& key) {
    std::istringstream in(prompt);
    std::string line;
    const std::string prefix = key + ": ";
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) return trim(line.substr(prefix.size()));
        if (trim(line).empty()) break; // headers end at the first blank line
    }
    return "";
}

MockProvider::MockProvider(std::filesystem::path fixtures_dir)
    : dir_(std::move(fixtures_dir)) {}

std::string MockProvider::synthesize(const std::string& prompt) {
    const std::string task = prompt_header_value(prompt, "Task");
    const std::string library = prompt_header_value(prompt, "Library");
    const std::string lib_slug = slugify(library);

    if (task == "section-synthesis") {
        const std::string domain = prompt_header_value(prompt, "Domain");
        const auto file = dir_ / lib_slug / (to_lower(domain) + ".table");
        if (std::filesystem::exists(file)) {
            return read_file(file);
        }
        return render_rows(
            missing_info_rows(domain_from_string(domain), "no fixture data"));
    }
    if (task == "plan-queries") {
        const auto file = dir_ / lib_slug / "plan.txt";
        return std::filesystem::exists(file) ? read_file(file) : "";
    }
    if (task == "benchmark-match") {
        const auto file = dir_ / lib_slug / "benchmark-match.txt";
        return std::filesystem::exists(file) ? read_file(file) : "";
    }
    return "";
}

HttpProvider::HttpProvider(std::string endpoint, std::string auth_env)
    : endpoint_(std::move(endpoint)), auth_env_(std::move(auth_env)) {}

std::string HttpProvider::request_body(const std::string& prompt) {
    Json j;
    j["prompt"] = prompt;
    return j.dump();
}

std::string HttpProvider::parse_response(const std::string& body) {
    const Json j = Json::parse(body);
    if (!j.contains("completion")) {
        throw std::runtime_error("provider response lacks 'completion'");
    }
    return j.at("completion").get<std::string>();
}

std::string HttpProvider::synthesize(const std::string& prompt) {
    httplib::Client client(endpoint_);
    client.set_connection_timeout(10);
    client.set_read_timeout(120);
    httplib::Headers headers;
    if (!auth_env_.empty()) {
        if (const char* token = std::getenv(auth_env_.c_str())) {
            headers.emplace("Authorization", std::string("Bearer ") + token);
        }
    }
    auto res = client.Post("/complete", headers, request_body(prompt),
                           "application/json");
    if (!res) throw std::runtime_error("provider request failed");
    if (res->status != 200) {
        throw std::runtime_error("provider returned HTTP " +
                                 std::to_string(res->status));
    }
    return parse_response(res->body);
}

} // namespace assay
