#include "wka/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "wka/errors.hpp"

namespace wka {

void VerificationReport::add(const std::string& name, double residual, const std::string& note)
{
    add(name, residual, tol_, note);
}

void VerificationReport::add(const std::string& name, double residual, double threshold,
                             const std::string& note)
{
    CheckResult r;
    r.residual = residual;
    r.threshold = threshold;
    r.pass = std::isfinite(residual) && residual <= threshold;
    r.note = note;
    checks_[name] = r;
}

void VerificationReport::add_flag(const std::string& name, bool pass, double residual,
                                  const std::string& note)
{
    CheckResult r;
    r.pass = pass;
    r.residual = residual;
    r.threshold = tol_;
    r.note = note;
    r.flag = true;
    checks_[name] = r;
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix)
{
    for (const auto& [name, r] : other.checks_)
        checks_[prefix.empty() ? name : prefix + "." + name] = r;
}

bool VerificationReport::passed() const
{
    return std::all_of(checks_.begin(), checks_.end(),
                       [](const auto& kv) { return kv.second.pass; });
}

double VerificationReport::max_residual() const
{
    double m = 0.0;
    for (const auto& [name, r] : checks_)
        if (!r.flag)
            m = std::max(m, std::isfinite(r.residual) ? r.residual : INFINITY);
    return m;
}

const CheckResult& VerificationReport::at(const std::string& name) const
{
    auto it = checks_.find(name);
    if (it == checks_.end())
        throw InvalidArgument("no check named " + name);
    return it->second;
}

namespace {

std::string fmt_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

} // namespace

nlohmann::json VerificationReport::to_json() const
{
    nlohmann::json j;
    j["tolerance"] = tol_;
    j["verdict"] = passed() ? "pass" : "fail";
    j["max_residual"] = max_residual();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [name, r] : checks_) {
        nlohmann::json c;
        c["name"] = name;
        c["pass"] = r.pass;
        c["residual"] = r.residual;
        if (r.flag)
            c["flag"] = true;
        else
            c["threshold"] = r.threshold;
        if (!r.note.empty())
            c["note"] = r.note;
        arr.push_back(c);
    }
    j["checks"] = arr;
    return j;
}

std::string VerificationReport::to_text() const
{
    std::ostringstream os;
    std::size_t width = 0;
    for (const auto& [name, r] : checks_)
        width = std::max(width, name.size());
    for (const auto& [name, r] : checks_) {
        os << (r.pass ? "PASS  " : "FAIL  ") << name
           << std::string(width - name.size() + 2, ' ') << fmt_double(r.residual);
        if (!r.note.empty())
            os << "  " << r.note;
        os << '\n';
    }
    os << "verdict: " << (passed() ? "pass" : "fail") << "  (tol " << fmt_double(tol_)
       << ", max residual " << fmt_double(max_residual()) << ", " << checks_.size()
       << " checks)\n";
    return os.str();
}

} // namespace wka
