#pragma once

// Uniform result container for the verification suites.

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dellns {

struct CaseResult {
    std::string input;
    std::pair<int, int> layer{0, 0};  // (omega, u) layer when applicable
    bool pass = true;
    std::string lhs;  // rendered sides on failure (and optionally on pass)
    std::string rhs;
};

struct Report {
    std::string suite;
    std::map<std::string, std::string> params;
    std::vector<CaseResult> cases;

    bool all_pass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string input, bool pass, std::pair<int, int> layer = {0, 0},
             std::string lhs = "", std::string rhs = "") {
        cases.push_back({std::move(input), layer, pass, std::move(lhs), std::move(rhs)});
    }
};

}  // namespace dellns
