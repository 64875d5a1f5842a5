#pragma once

#include <map>
#include <string>

#include <json.hpp>

namespace wka {

struct CheckResult {
    bool pass = true;
    double residual = 0.0;
    double threshold = 0.0;
    std::string note;
    /// Boolean checks record a deciding quantity, not a residual.
    bool flag = false;
};

/// Named checks keyed by name, so assembly order never affects the output.
class VerificationReport {
public:
    VerificationReport() = default;
    explicit VerificationReport(double tol) : tol_(tol) {}

    /// Passes iff residual <= threshold (the report tolerance by default).
    void add(const std::string& name, double residual, const std::string& note = {});
    void add(const std::string& name, double residual, double threshold, const std::string& note);
    /// Boolean check; residual records the quantity that decided it.
    void add_flag(const std::string& name, bool pass, double residual = 0.0,
                  const std::string& note = {});

    void merge(const VerificationReport& other, const std::string& prefix = {});

    bool passed() const;
    /// Largest residual over threshold checks (flags excluded).
    double max_residual() const;
    double tolerance() const { return tol_; }
    std::size_t size() const { return checks_.size(); }
    bool contains(const std::string& name) const { return checks_.count(name) != 0; }
    const CheckResult& at(const std::string& name) const;
    const std::map<std::string, CheckResult>& checks() const { return checks_; }

    nlohmann::json to_json() const;
    std::string to_text() const;

private:
    double tol_ = 1e-9;
    std::map<std::string, CheckResult> checks_;
};

} // namespace wka
