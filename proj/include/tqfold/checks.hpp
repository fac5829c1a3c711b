#pragma once

/**
 * Cross-route verification checks that tie the determinant and tableau
 * constructions together, reported with their logical status: checks
 * backed by a proof are tagged Proven, the mixed-flavor non-rectangular
 * determinant/tableau agreement is tagged Conjecture.
 */

#include <chrono>
#include <vector>

#include "frac.hpp"
#include "partition.hpp"
#include "qfamily.hpp"
#include "report.hpp"
#include "tableaux.hpp"
#include "wronskian.hpp"

namespace tqfold {

inline bool is_rectangular(const Partition& mu) {
    return mu.empty() || mu.part(1) == mu.part(mu.length());
}

// Compares the block-determinant T-function against the normalized
// tableau sum for a straight shape mu over the index sets B and F.
// The identity is established when F is empty (any mu) or mu is
// rectangular; for other mixed-flavor cases it is conjectural.
inline Report check_T_equals_F(const QFamily& fam, const Partition& mu, Mask B, Mask F) {
    auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.check = "tdet-vs-tableau";
    rep.params = "mu=" + mu.str() + " B=" + subset_str(B) + " F=" + subset_str(F);
    rep.truncation_order = fam.order();
    rep.tag = (mask_card(F) == 0 || is_rectangular(mu)) ? Report::Tag::Proven
                                                        : Report::Tag::Conjecture;
    try {
        Frac lhs = t_wronskian(fam, mu, B, F);
        std::vector<int> tuple = concat_sets(mask_elements(B), mask_elements(F));
        Frac rhs = f_normalized(fam, tuple, mu);
        Series res = residual(lhs, rhs);
        if (res.is_zero()) {
            rep.status = Report::Status::Pass;
        } else {
            rep.status = Report::Status::Fail;
            rep.residual_first_nonzero = res.first_nonzero();
        }
    } catch (const Error& e) {
        rep.status = Report::Status::Error;
        rep.note = e.what();
    }
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rep;
}

}  // namespace tqfold
