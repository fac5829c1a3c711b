#pragma once

/**
 * Partitions and skew Young diagrams: conjugation, 180-degree rotation,
 * hook membership, and the hook boundary index.
 *
 * Conventions: parts are weakly decreasing with trailing zeros trimmed;
 * cell (row, col) has row growing downward with the top-left cell at
 * (1, 1). Parsing/printing uses comma-separated part lists like "3,1".
 */

#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace tqfold {

class Partition {
  public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0) throw BadSpec("Partition: negative part");
            if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
                throw BadSpec("Partition: parts must be weakly decreasing");
        }
    }

    // 1-based part access; zero beyond the length.
    int part(int i) const {
        if (i < 1) throw BadSpec("Partition: part index must be positive");
        return i <= length() ? parts_[static_cast<size_t>(i) - 1] : 0;
    }
    int length() const { return static_cast<int>(parts_.size()); }
    int first() const { return parts_.empty() ? 0 : parts_[0]; }
    bool empty() const { return parts_.empty(); }
    int cell_count() const {
        int total = 0;
        for (int p : parts_) total += p;
        return total;
    }
    const std::vector<int>& parts() const { return parts_; }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator!=(const Partition& o) const { return !(*this == o); }

    // Containment as diagrams: every row of the inner fits inside this one.
    bool contains(const Partition& inner) const {
        for (int i = 1; i <= inner.length(); ++i)
            if (inner.part(i) > part(i)) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream out;
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) out << ',';
            out << parts_[i];
        }
        return out.str();
    }

  private:
    std::vector<int> parts_;
};

inline Partition conjugate(const Partition& mu) {
    std::vector<int> parts;
    for (int j = 1; j <= mu.first(); ++j) {
        int count = 0;
        while (count < mu.length() && mu.part(count + 1) >= j) ++count;
        parts.push_back(count);
    }
    return Partition(parts);
}

inline Partition parse_partition(const std::string& text) {
    std::vector<int> parts;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) throw BadSpec("Partition: empty part in \"" + text + "\"");
        size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw BadSpec("Partition: cannot parse part \"" + item + "\"");
        }
        if (used != item.size()) throw BadSpec("Partition: cannot parse part \"" + item + "\"");
        parts.push_back(value);
    }
    return Partition(parts);
}

// Adds one cell to each of the first k rows (a full column of height k).
inline Partition add_column(const Partition& mu, int k) {
    if (k < 0) throw BadSpec("add_column: negative height");
    std::vector<int> parts;
    for (int i = 1; i <= std::max(mu.length(), k); ++i) parts.push_back(mu.part(i) + (i <= k ? 1 : 0));
    return Partition(parts);
}

// Inner shape lam inside outer shape mu.
struct SkewDiagram {
    Partition lam, mu;

    SkewDiagram() = default;
    SkewDiagram(Partition inner, Partition outer) : lam(std::move(inner)), mu(std::move(outer)) {
        if (!mu.contains(lam)) throw BadSpec("SkewDiagram: inner shape does not fit inside outer");
    }
    static SkewDiagram whole(Partition outer) { return SkewDiagram(Partition(), std::move(outer)); }

    int cell_count() const { return mu.cell_count() - lam.cell_count(); }
    bool contains_cell(int row, int col) const {
        return row >= 1 && col >= 1 && col <= mu.part(row) && col > lam.part(row);
    }
    // All cells in outer-shape coordinates, row-major.
    std::vector<std::pair<int, int>> cells() const {
        std::vector<std::pair<int, int>> out;
        for (int row = 1; row <= mu.length(); ++row)
            for (int col = lam.part(row) + 1; col <= mu.part(row); ++col) out.emplace_back(row, col);
        return out;
    }
    bool operator==(const SkewDiagram& o) const { return lam == o.lam && mu == o.mu; }
    bool operator!=(const SkewDiagram& o) const { return !(*this == o); }
};

// 180-degree rotation inside the bounding box of the outer shape: row i of
// the result reads the box complement of row (rows+1-i). The inner shape of
// the result comes from the outer shape of the input and vice versa.
inline SkewDiagram rotate180(const SkewDiagram& d) {
    int rows = d.mu.length();
    int cols = d.mu.first();
    auto complement = [&](const Partition& nu) {
        std::vector<int> parts;
        for (int i = 1; i <= rows; ++i) parts.push_back(cols - nu.part(rows + 1 - i));
        return Partition(parts);
    };
    return SkewDiagram(complement(d.mu), complement(d.lam));
}

// True iff mu fits in the L-shaped region with arm width m and leg height n:
// no (m+1) x (n+1) rectangle, i.e. mu_{m+1} <= n.
inline bool in_hook(const Partition& mu, int m, int n) {
    if (m < 0 || n < 0) throw BadSpec("in_hook: negative bounds");
    return mu.part(m + 1) <= n;
}

// Smallest j >= 1 with mu_j + m - j <= n - 1; the row where the diagram
// crosses the hook boundary.
inline int index_mn(const Partition& mu, int m, int n) {
    if (m < 0 || n < 0) throw BadSpec("index_mn: negative bounds");
    for (int j = 1;; ++j)
        if (mu.part(j) + m - j <= n - 1) return j;
}

}  // namespace tqfold
