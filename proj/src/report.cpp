#include "kwlab/report.hpp"

#include <cmath>

namespace kw {

const char* to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Flagged: return "flagged";
    }
    return "fail";
}

Check& SuiteReport::expect(const std::string& id, const std::string& ref, bool ok, double metric, double tol,
                           const std::string& location)
{
    checks.push_back(Check{id, ref.empty() ? "plumbing" : ref, ok ? Status::Pass : Status::Fail, metric, tol, location});
    return checks.back();
}

Check& SuiteReport::expect_le(const std::string& id, const std::string& ref, double metric, double tol,
                              const std::string& location)
{
    return expect(id, ref, metric <= tol, metric, tol, location);
}

Check& SuiteReport::flag(const std::string& id, const std::string& ref, double metric, double tol,
                         const std::string& location)
{
    checks.push_back(Check{id, ref, Status::Flagged, metric, tol, location});
    return checks.back();
}

void SuiteReport::merge(const SuiteReport& other)
{
    for (Check c : other.checks) {
        c.id = other.suite + "." + c.id;
        checks.push_back(std::move(c));
    }
    if (!other.extra.empty()) extra[other.suite] = other.extra;
}

bool SuiteReport::failed() const
{
    for (const auto& c : checks)
        if (c.status == Status::Fail) return true;
    return false;
}

nlohmann::ordered_json SuiteReport::to_json() const
{
    using J = nlohmann::ordered_json;
    J j;
    j["suite"] = suite;
    j["seed"] = seed;
    int counts[3] = {0, 0, 0};
    J list = J::array();
    for (const auto& c : checks) {
        ++counts[static_cast<int>(c.status)];
        J e;
        e["id"] = c.id;
        e["ref"] = c.ref;
        e["status"] = to_string(c.status);
        // JSON has no NaN or infinity
        e["metric"] = std::isfinite(c.metric) ? J(c.metric) : J(std::to_string(c.metric));
        e["tolerance"] = c.tolerance;
        e["location"] = c.location;
        list.push_back(std::move(e));
    }
    j["summary"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"flagged", counts[2]}};
    j["checks"] = std::move(list);
    if (!extra.empty()) j["details"] = extra;
    if (wall_time >= 0.0) j["wall_time"] = wall_time;
    return j;
}

}  // namespace kw
