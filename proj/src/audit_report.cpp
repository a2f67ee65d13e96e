#include "udense/audit_report.hpp"

namespace udense {

AuditCheck& AuditReport::add(std::string check_name, bool check_pass, double value,
                             double threshold, std::string context, Severity severity) {
    AuditCheck c;
    c.name = std::move(check_name);
    c.pass = check_pass;
    c.severity = severity;
    c.value = value;
    c.threshold = threshold;
    c.context = std::move(context);
    checks.push_back(std::move(c));
    return checks.back();
}

const AuditCheck* AuditReport::find(const std::string& check_name) const {
    for (const auto& c : checks)
        if (c.name == check_name) return &c;
    return nullptr;
}

bool AuditReport::pass() const {
    for (const auto& c : checks)
        if (c.severity == Severity::require && !c.pass) return false;
    return true;
}

bool AuditReport::has_warnings() const {
    for (const auto& c : checks)
        if (c.severity == Severity::warn && !c.pass) return true;
    return false;
}

std::string AuditReport::summary_line() const {
    std::size_t failed = 0;
    for (const auto& c : checks)
        if (c.severity == Severity::require && !c.pass) ++failed;
    std::string s = name + ": " + (pass() ? "pass" : "FAIL");
    s += " (" + std::to_string(checks.size()) + " checks";
    if (failed > 0) s += ", " + std::to_string(failed) + " failed";
    if (has_warnings()) s += ", warnings";
    s += ")";
    return s;
}

} // namespace udense
