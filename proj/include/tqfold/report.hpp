#pragma once

/**
 * Check reports: one record per verified identity, with a pass/fail
 * status, a proof-status tag, and diagnostic detail.
 *
 * Exit-code policy: a run fails only on failing checks tagged Proven;
 * Conjecture/Expected failures are reported but do not fail the run
 * unless strict mode is requested.
 */

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tqfold {

struct Report {
    enum class Status { Pass, Fail, Error };
    // Proven: the identity is established, failure means a bug.
    // Conjecture: stated without proof; failures are informative.
    // Expected: checked outside its stated range, used as exploration.
    enum class Tag { Proven, Conjecture, Expected };

    std::string check;   // short path-style name, e.g. "qq/bosonic"
    std::string params;  // human-readable instance, e.g. "I={1} i=2 j=3"
    Status status = Status::Pass;
    Tag tag = Tag::Proven;
    // Order of the first nonzero residual coefficient, when one exists.
    std::optional<int> residual_first_nonzero;
    int truncation_order = 0;
    long long elapsed_ms = 0;
    std::string note;  // error text or extra diagnostics

    bool operator==(const Report&) const = default;

    bool passed() const { return status == Status::Pass; }

    std::string status_str() const {
        switch (status) {
            case Status::Pass: return "PASS";
            case Status::Fail: return "FAIL";
            default: return "ERROR";
        }
    }
    std::string tag_str() const {
        switch (tag) {
            case Tag::Proven: return "proven";
            case Tag::Conjecture: return "conjecture";
            default: return "expected";
        }
    }

    std::string text_line() const {
        std::ostringstream out;
        out << status_str() << ' ' << check;
        if (!params.empty()) out << ' ' << params;
        if (tag != Tag::Proven) out << " [" << tag_str() << ']';
        if (residual_first_nonzero) out << " first_nonzero=u^" << *residual_first_nonzero;
        if (truncation_order > 0) out << " O=" << truncation_order;
        out << ' ' << elapsed_ms << "ms";
        if (!note.empty()) out << " -- " << note;
        return out.str();
    }
};

// True when every check that must hold does: Proven reports must pass;
// in strict mode every report must pass.
inline bool reports_ok(const std::vector<Report>& reports, bool strict = false) {
    for (const Report& r : reports) {
        if (r.status == Report::Status::Error) return false;
        if (!r.passed() && (strict || r.tag == Report::Tag::Proven)) return false;
    }
    return true;
}

}  // namespace tqfold
