#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "family_fixtures.hpp"
#include "tqfold/characters.hpp"

using namespace tqfold;

namespace {

BrFamily constant_family(int r, const std::vector<Rat>& w) {
    Grading g(2 * r, 1);
    std::vector<Series> q(size_t(1) << g.size(), Series::one());
    return BrFamily(r, QFamily(g, br_zparams(r, w), ShiftBase(Rat(2)), 2, std::move(q)), w, {});
}

// Sampled parameter sets with odd numerators and denominators, so no
// ratio or product of the squared values hits a power of the shift base.
std::vector<std::vector<Rat>> parameter_samples(int r) {
    std::vector<std::vector<Rat>> out(3);
    out[0] = default_br_w(r);
    for (int j = 1; j <= r; ++j) out[1].push_back(Rat(2 * j + 1, 2));
    for (int j = 1; j <= r; ++j) out[2].push_back(Rat(6 * j + 1, 5));
    return out;
}

}  // namespace

TEST_CASE("character values at sampled parameters", "[characters]") {
    SECTION("boundary rows and columns are one") {
        for (int r = 2; r <= 3; ++r) {
            std::vector<Rat> w = default_br_w(r);
            for (int a = 0; a <= r; ++a) REQUIRE(kr_character(r, a, 0, w) == 1);
            for (int s = 0; s <= 5; ++s) REQUIRE(kr_character(r, 0, s, w) == 1);
        }
    }

    SECTION("closed forms of the first row and first spinor column") {
        for (int r = 2; r <= 4; ++r) {
            for (const auto& w : parameter_samples(r)) {
                Rat box_sum(1);  // the fermionic box contributes exactly one
                Rat spinor(1);
                for (const Rat& wj : w) {
                    box_sum += wj * wj + Rat(1) / (wj * wj);
                    spinor *= wj + Rat(1) / wj;
                }
                REQUIRE(kr_character(r, 1, 1, w) == box_sum);
                REQUIRE(kr_character(r, r, 1, w) == spinor);
            }
        }
    }

    SECTION("prebuilt family agrees with the one-shot spelling") {
        std::vector<Rat> w = default_br_w(2);
        BrFamily fam = constant_family(2, w);
        for (int a = 0; a <= 2; ++a)
            for (int s = 0; s <= 3; ++s) REQUIRE(kr_character(fam, a, s) == kr_character(2, a, s, w));
    }

    SECTION("non-constant families are rejected") {
        REQUIRE_THROWS_AS(kr_character(fixtures::seeded_br(2, 6), 1, 1), BadSpec);
    }

    SECTION("strip bounds are enforced") {
        std::vector<Rat> w = default_br_w(2);
        REQUIRE_THROWS_AS(kr_character(2, 3, 1, w), BadSpec);
        REQUIRE_THROWS_AS(kr_character(2, -1, 1, w), BadSpec);
        REQUIRE_THROWS_AS(kr_character(2, 1, -1, w), BadSpec);
    }

    SECTION("degenerate parameters are rejected") {
        REQUIRE_THROWS_AS(kr_character(2, 1, 1, {Rat(3)}), BadSpec);
        REQUIRE_THROWS_AS(kr_character(2, 1, 1, {Rat(3), Rat(1)}), DegenerateParameters);
        // (3 * 16/3)^2 = 256 collides with the fourth shift power
        REQUIRE_THROWS_AS(kr_character(2, 1, 1, {Rat(3), Rat(16, 3)}), DegenerateParameters);
    }
}

TEST_CASE("recurrence residuals vanish at sampled parameters", "[characters]") {
    SECTION("first row across columns") {
        for (const auto& w : parameter_samples(2))
            for (int s = 1; s <= 5; ++s) REQUIRE(qsystem_residual(2, 1, s, w) == 0);
    }

    SECTION("full strip at rank two and three") {
        for (int r = 2; r <= 3; ++r) {
            for (const auto& w : parameter_samples(r)) {
                BrFamily fam = constant_family(r, w);
                for (int a = 1; a <= r; ++a)
                    for (int s = 1; s <= 6; ++s) REQUIRE(qsystem_residual(fam, a, s) == 0);
            }
        }
    }

    SECTION("rank four spot checks") {
        BrFamily fam = constant_family(4, default_br_w(4));
        for (int a = 1; a <= 4; ++a)
            for (int s = 1; s <= 3; ++s) REQUIRE(qsystem_residual(fam, a, s) == 0);
    }

    SECTION("preconditions") {
        std::vector<Rat> w = default_br_w(2);
        REQUIRE_THROWS_AS(qsystem_residual(2, 1, 0, w), BadSpec);
        REQUIRE_THROWS_AS(qsystem_residual(2, 0, 1, w), BadSpec);
        REQUIRE_THROWS_AS(qsystem_residual(2, 3, 1, w), BadSpec);
    }
}

TEST_CASE("recurrence residual detects a perturbed value", "[characters]") {
    std::vector<Rat> w = default_br_w(2);
    BrFamily fam = constant_family(2, w);
    REQUIRE(qsystem_residual(fam, 2, 2) == 0);
    // replace chi_{2,2} by chi_{2,2} + 1 in its relation shape
    CharValue chi = kr_character(fam, 2, 2);
    CharValue bumped = (chi + 1) * (chi + 1) - kr_character(fam, 2, 3) * kr_character(fam, 2, 1) -
                       kr_character(fam, 1, 1) * kr_character(fam, 1, 1);
    REQUIRE(bumped == 2 * chi + 1);
    REQUIRE(bumped != 0);
}

TEST_CASE("unit-parameter dimension limits", "[characters]") {
    for (int r = 2; r <= 4; ++r) {
        DimensionCheck vec = vector_dimension_check(r);
        CHECK(vec.ok());
        CHECK(vec.value == Rat(2 * r + 1));
        CHECK(vec.expected == Rat(2 * r + 1));
        CHECK(vec.cancelled_order == r * (2 * r - 1));
        CHECK(vec.finite);
        CHECK(vec.routes_agree);

        DimensionCheck sp = spinor_dimension_check(r);
        CHECK(sp.ok());
        CHECK(sp.value == Rat(1LL << r));
        CHECK(sp.cancelled_order == r * r);
        CHECK(sp.finite);
        CHECK(sp.routes_agree);
    }
    REQUIRE_THROWS_AS(vector_dimension_check(1), BadSpec);
    REQUIRE_THROWS_AS(spinor_dimension_check(1), BadSpec);
}

TEST_CASE("Weyl-type specializations beyond rectangles", "[characters]") {
    // On a constant family the non-rectangular sign-sum formulas reduce
    // to character identities; they must agree exactly with the
    // determinant web at every sampled parameter point.
    for (const auto& w : parameter_samples(2)) {
        BrFamily fam = constant_family(2, w);
        for (const Partition& mu : {Partition{}, Partition{1}, Partition{2, 1}}) {
            REQUIRE(spinodd_residual(fam, mu, FormVariant::Main).is_zero());
            REQUIRE(spinodd_residual(fam, mu, FormVariant::Appendix).is_zero());
        }
        for (const Partition& mu : {Partition{2, 1}, Partition{2, 2}, Partition{1}}) {
            REQUIRE(speven_residual(fam, mu, FormVariant::Main).is_zero());
            REQUIRE(speven_residual(fam, mu, FormVariant::Appendix).is_zero());
        }
    }
    BrFamily fam3 = constant_family(3, parameter_samples(3)[1]);
    for (const Partition& mu : {Partition{2, 1}, Partition{2, 2, 1}}) {
        REQUIRE(spinodd_residual(fam3, mu, FormVariant::Main).is_zero());
        REQUIRE(speven_residual(fam3, mu, FormVariant::Main).is_zero());
    }
}
