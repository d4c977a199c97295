#pragma once

// Verification reports: one Check per axiom family, each carrying the
// number of instances evaluated, the number that failed, and a bounded
// list of concrete witnesses.

#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "homext/gfp.hpp"

namespace homext {

struct Failure {
    std::vector<std::size_t> tuple;  // basis indices or sample index
    std::vector<Vec> inputs;         // sampled arguments, when not basis vectors
    Vec lhs;
    Vec rhs;
};

struct Check {
    static constexpr std::size_t kMaxWitnesses = 32;

    std::string name;
    std::size_t evaluated = 0;
    std::size_t failed = 0;
    std::vector<Failure> witnesses;

    bool passed() const { return failed == 0; }
    void record(Failure f) {
        ++failed;
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(f));
    }
};

class Report {
public:
    Check& add(const std::string& name);
    // Convenience for a single yes/no condition.
    Check& expect(const std::string& name, bool ok, Vec lhs = {}, Vec rhs = {});
    void merge(const Report& other, const std::string& prefix = "");
    void param(const std::string& key, std::uint64_t value);

    bool ok() const;
    std::size_t failed_checks() const;
    const std::deque<Check>& checks() const { return checks_; }
    const Check* find(const std::string& name) const;
    const std::vector<std::pair<std::string, std::uint64_t>>& params() const { return params_; }
    // First failing check name, or empty.
    std::string first_failure() const;

private:
    std::deque<Check> checks_;  // deque: references from add() stay valid
    std::vector<std::pair<std::string, std::uint64_t>> params_;
};

class PreconditionFailed : public Error {
public:
    PreconditionFailed(const std::string& what, Report report)
        : Error(ErrorCode::PreconditionFailed, what + describe(report)), report_(std::move(report)) {}
    const Report& report() const { return report_; }

private:
    static std::string describe(const Report& r) {
        std::string s = r.first_failure();
        return s.empty() ? std::string() : " (first failing check: " + s + ")";
    }
    Report report_;
};

} // namespace homext
