#include "homext/report.hpp"

namespace homext {

Check& Report::add(const std::string& name) {
    checks_.push_back(Check{name, 0, 0, {}});
    return checks_.back();
}

Check& Report::expect(const std::string& name, bool ok, Vec lhs, Vec rhs) {
    Check& c = add(name);
    c.evaluated = 1;
    if (!ok) c.record(Failure{{}, {}, std::move(lhs), std::move(rhs)});
    return c;
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const Check& c : other.checks_) {
        checks_.push_back(c);
        checks_.back().name = prefix + c.name;
    }
    for (const auto& kv : other.params_) params_.push_back({prefix + kv.first, kv.second});
}

void Report::param(const std::string& key, std::uint64_t value) { params_.push_back({key, value}); }

bool Report::ok() const { return failed_checks() == 0; }

std::size_t Report::failed_checks() const {
    std::size_t n = 0;
    for (const Check& c : checks_)
        if (!c.passed()) ++n;
    return n;
}

const Check* Report::find(const std::string& name) const {
    for (const Check& c : checks_)
        if (c.name == name) return &c;
    return nullptr;
}

std::string Report::first_failure() const {
    for (const Check& c : checks_)
        if (!c.passed()) return c.name;
    return {};
}

} // namespace homext
