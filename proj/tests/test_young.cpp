#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "tqfold/partition.hpp"

using namespace tqfold;

namespace {

Partition random_partition(std::mt19937_64& rng, int max_len = 5, int max_part = 6) {
    std::uniform_int_distribution<int> len_d(0, max_len);
    std::uniform_int_distribution<int> part_d(0, max_part);
    int len = len_d(rng);
    std::vector<int> parts;
    for (int i = 0; i < len; ++i) parts.push_back(part_d(rng));
    std::sort(parts.rbegin(), parts.rend());
    return Partition(parts);
}

// Oracle: transpose the cell set directly.
Partition conjugate_by_cells(const Partition& mu) {
    std::vector<int> parts;
    for (int row = 1; row <= mu.length(); ++row)
        for (int col = 1; col <= mu.part(row); ++col) {
            if (static_cast<int>(parts.size()) < col) parts.resize(static_cast<size_t>(col), 0);
            ++parts[static_cast<size_t>(col) - 1];
        }
    return Partition(parts);
}

using CellSet = std::set<std::pair<int, int>>;

CellSet normalized(const std::vector<std::pair<int, int>>& cells) {
    if (cells.empty()) return {};
    int min_row = cells[0].first, min_col = cells[0].second;
    for (const auto& [r, c] : cells) {
        min_row = std::min(min_row, r);
        min_col = std::min(min_col, c);
    }
    CellSet out;
    for (const auto& [r, c] : cells) out.emplace(r - min_row + 1, c - min_col + 1);
    return out;
}

// Oracle: rotate the cell set by 180 degrees inside the bounding box of the
// outer shape and translate back to the top-left corner.
CellSet rotate_by_cells(const SkewDiagram& d) {
    int rows = d.mu.length(), cols = d.mu.first();
    std::vector<std::pair<int, int>> rotated;
    for (const auto& [r, c] : d.cells()) rotated.emplace_back(rows + 1 - r, cols + 1 - c);
    return normalized(rotated);
}

}  // namespace

TEST_CASE("partition construction and access") {
    Partition p{3, 1};
    CHECK(p.length() == 2);
    CHECK(p.part(1) == 3);
    CHECK(p.part(2) == 1);
    CHECK(p.part(3) == 0);
    CHECK(p.first() == 3);
    CHECK(p.cell_count() == 4);
    CHECK(Partition({3, 1, 0, 0}) == p);  // trailing zeros trimmed
    CHECK(Partition().empty());
    CHECK_THROWS_AS(Partition({1, 3}), BadSpec);
    CHECK_THROWS_AS(Partition({2, -1}), BadSpec);
    CHECK_THROWS_AS(p.part(0), BadSpec);
}

TEST_CASE("partition parse and print round trip") {
    CHECK(parse_partition("3,1") == Partition{3, 1});
    CHECK(parse_partition("") == Partition());
    CHECK(Partition({3, 1}).str() == "3,1");
    CHECK(Partition().str() == "");
    CHECK(parse_partition(Partition({6, 4, 4, 1}).str()) == Partition({6, 4, 4, 1}));
    CHECK_THROWS_AS(parse_partition("3,,1"), BadSpec);
    CHECK_THROWS_AS(parse_partition("3,x"), BadSpec);
    CHECK_THROWS_AS(parse_partition("1,3"), BadSpec);
}

TEST_CASE("conjugate examples") {
    CHECK(conjugate(Partition{3, 1}) == Partition{2, 1, 1});
    CHECK(conjugate(Partition()) == Partition());
}

TEST_CASE("conjugate of rectangles and cell-transposition oracle", "[property]") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> d(1, 6);
    for (int iter = 0; iter < 10; ++iter) {
        int a = d(rng), s = d(rng);
        Partition rect(std::vector<int>(static_cast<size_t>(a), s));
        Partition expect(std::vector<int>(static_cast<size_t>(s), a));
        CHECK(conjugate(rect) == expect);
    }
    for (int iter = 0; iter < 30; ++iter) {
        Partition mu = random_partition(rng);
        CHECK(conjugate(mu) == conjugate_by_cells(mu));
        CHECK(conjugate(conjugate(mu)) == mu);
    }
}

TEST_CASE("skew diagram validation and cells") {
    SkewDiagram d(Partition{1}, Partition{3, 2});
    CHECK(d.cell_count() == 4);
    CHECK(d.contains_cell(1, 2));
    CHECK_FALSE(d.contains_cell(1, 1));  // inner shape
    CHECK_FALSE(d.contains_cell(2, 3));  // outside outer shape
    CHECK(d.cells() == std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 1}, {2, 2}});
    CHECK_THROWS_AS(SkewDiagram(Partition{3}, Partition{2}), BadSpec);
    CHECK_THROWS_AS(SkewDiagram(Partition{1, 1, 1}, Partition{2, 1}), BadSpec);
}

TEST_CASE("rotation fixes rectangles and the empty diagram") {
    SkewDiagram rect = SkewDiagram::whole(Partition{4, 4, 4});
    CHECK(rotate180(rect) == rect);
    SkewDiagram empty = SkewDiagram::whole(Partition());
    CHECK(rotate180(empty) == empty);
}

TEST_CASE("rotation of a hook shape matches the cell oracle") {
    SkewDiagram d = SkewDiagram::whole(Partition{2, 1});
    SkewDiagram r = rotate180(d);
    CHECK(r.mu == Partition{2, 2});
    CHECK(r.lam == Partition{1});
    CHECK(normalized(r.cells()) == rotate_by_cells(d));
}

TEST_CASE("rotation preserves cells and is an involution on cell sets", "[property]") {
    std::mt19937_64 rng(22);
    for (int iter = 0; iter < 40; ++iter) {
        Partition mu = random_partition(rng);
        // Random inner shape inside mu.
        std::vector<int> inner;
        for (int i = 1; i <= mu.length(); ++i) {
            int hi = std::min(mu.part(i), inner.empty() ? mu.part(i) : inner.back());
            std::uniform_int_distribution<int> d(0, hi);
            inner.push_back(d(rng));
        }
        SkewDiagram d(Partition(inner), mu);
        SkewDiagram r = rotate180(d);
        CHECK(r.cell_count() == d.cell_count());
        CHECK(normalized(r.cells()) == rotate_by_cells(d));
        CHECK(normalized(rotate180(r).cells()) == normalized(d.cells()));
    }
}

TEST_CASE("hook membership") {
    CHECK(in_hook(Partition(), 2, 1));
    CHECK_FALSE(in_hook(Partition{1, 1, 1}, 2, 0));  // column of height m+1
    CHECK(in_hook(Partition{5, 1, 1}, 2, 1));
    CHECK_FALSE(in_hook(Partition{5, 2, 2}, 2, 1));
    CHECK_THROWS_AS(in_hook(Partition{1}, -1, 0), BadSpec);
}

TEST_CASE("hook membership matches brute-force rectangle search", "[property]") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> bound(0, 3);
    for (int iter = 0; iter < 40; ++iter) {
        Partition mu = random_partition(rng);
        int m = bound(rng), n = bound(rng);
        // A diagram avoids every (m+1) x (n+1) rectangle iff the cell
        // (m+1, n+1) is absent.
        bool has_rect = mu.part(m + 1) >= n + 1;
        CHECK(in_hook(mu, m, n) == !has_rect);
    }
}

TEST_CASE("hook boundary index examples") {
    CHECK(index_mn(Partition{3, 2}, 4, 0) == 5);       // n = 0 gives m + 1
    CHECK(index_mn(Partition(), 4, 0) == 5);
    CHECK(index_mn(Partition{2, 1}, 0, 2) == 1);       // m = 0 gives 1
    CHECK(index_mn(Partition{2, 1}, 0, 5) == 1);
    for (int r = 1; r <= 3; ++r)
        for (int a = 1; a <= r - 1; ++a)
            for (int s = 1; s <= 4; ++s) {
                Partition rect(std::vector<int>(static_cast<size_t>(a), s));
                CHECK(index_mn(rect, 2 * r, 1) == 2 * r);
            }
}

TEST_CASE("hook boundary index stays within one past the arm", "[property]") {
    std::mt19937_64 rng(24);
    std::uniform_int_distribution<int> bound(0, 4);
    for (int iter = 0; iter < 40; ++iter) {
        Partition mu = random_partition(rng);
        int m = bound(rng), n = bound(rng);
        if (!in_hook(mu, m, n)) continue;
        int xi = index_mn(mu, m, n);
        CHECK(xi >= 1);
        CHECK(xi <= m + 1);
        // Minimality: no smaller row satisfies the boundary condition.
        for (int j = 1; j < xi; ++j) CHECK(mu.part(j) + m - j > n - 1);
        CHECK(mu.part(xi) + m - xi <= n - 1);
    }
}

TEST_CASE("adding a column") {
    CHECK(add_column(Partition{3, 1}, 2) == Partition{4, 2});
    CHECK(add_column(Partition{3, 1}, 4) == Partition{4, 2, 1, 1});
    CHECK(add_column(Partition(), 3) == Partition{1, 1, 1});
    CHECK(add_column(Partition{2, 2}, 0) == Partition{2, 2});
    CHECK_THROWS_AS(add_column(Partition{1}, -1), BadSpec);
}
