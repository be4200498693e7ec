#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace ddsurf {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;  // counterexample or context when failing
};

/// A list of named pass/fail checks; rendering is sorted by name so golden
/// outputs stay stable.
struct Report {
    std::vector<CheckLine> checks;

    void add(std::string name, bool pass, std::string detail = "") {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
    }

    std::size_t passed() const {
        return static_cast<std::size_t>(
            std::count_if(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; }));
    }

    void sort_by_name() {
        std::sort(checks.begin(), checks.end(),
                  [](const CheckLine& a, const CheckLine& b) { return a.name < b.name; });
    }

    std::string to_text() const {
        Report copy = *this;
        copy.sort_by_name();
        std::ostringstream out;
        for (const auto& c : copy.checks) {
            out << (c.pass ? "PASS " : "FAIL ") << c.name;
            if (!c.detail.empty()) out << ": " << c.detail;
            out << "\n";
        }
        return out.str();
    }
};

}  // namespace ddsurf
