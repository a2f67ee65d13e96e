#pragma once

// Uniform result record for every audit-style operation: a named list of
// checks, each carrying the computed value, the threshold it was held
// against, and a short context string saying at which horizon / bound the
// number was produced. Checks marked as warnings do not affect pass().

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace udense {

enum class Severity { require, warn };

struct AuditCheck {
    std::string name;
    bool pass = false;
    Severity severity = Severity::require;
    double value = std::nan("");
    double threshold = std::nan("");
    std::string context;
};

struct AuditReport {
    AuditReport() = default;
    explicit AuditReport(std::string report_name) : name(std::move(report_name)) {}

    std::string name;
    std::vector<AuditCheck> checks;
    std::string config_hash; // fingerprint of the driving configuration
    double runtime_seconds = 0.0;

    AuditCheck& add(std::string check_name, bool pass, double value = std::nan(""),
                    double threshold = std::nan(""), std::string context = {},
                    Severity severity = Severity::require);
    const AuditCheck* find(const std::string& check_name) const;
    bool pass() const; // all require-severity checks passed
    bool has_warnings() const;
    std::string summary_line() const;
};

} // namespace udense
