#pragma once

// Shared test fixtures: ready-made Q-function families over a default
// shift base t = 2.

#include <cstdint>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "tqfold/br_family.hpp"
#include "tqfold/qfamily.hpp"
#include "tqfold/wronskian.hpp"

namespace fixtures {

using namespace tqfold;

// Distinct odd primes keep the parameters generic for the default base.
inline std::vector<Rat> prime_z(int count) {
    static const int primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    std::vector<Rat> out;
    for (int i = 0; i < count; ++i) out.push_back(Rat(primes[i]));
    return out;
}

inline QFamily all_ones_family(int M, int N, std::vector<Rat> z, int order = 6) {
    Grading g(M, N);
    std::vector<Series> q(size_t(1) << g.size(), Series::one());
    return QFamily(g, ZParams(g, std::move(z)), ShiftBase(Rat(2)), order, std::move(q));
}

inline QFamily all_ones_family(int M, int N, int order = 6) {
    return all_ones_family(M, N, prime_z(M + N), order);
}

// Fully assembled family from random monic seeds; pair functions are
// solved from the opposite-parity relation so the preconditions of the
// generator hold.
inline QFamily random_built_family(int M, int N, std::vector<Rat> z, int order, uint64_t seed) {
    Grading g(M, N);
    ZParams zp(g, std::move(z));
    ShiftBase base{Rat(2)};
    std::mt19937_64 rng(seed);
    Series q_empty = random_q_seed(rng, 2);
    std::vector<Series> singles;
    for (int a = 1; a <= g.size(); ++a) singles.push_back(random_q_seed(rng, 2));
    std::vector<std::vector<Series>> pairs(static_cast<size_t>(M));
    for (int b = 1; b <= M; ++b)
        for (int f = M + 1; f <= M + N; ++f)
            pairs[static_cast<size_t>(b) - 1].push_back(
                solve_pair_q(q_empty, singles[static_cast<size_t>(b) - 1],
                             singles[static_cast<size_t>(f) - 1], zp.z(b), zp.z(f), base, order));
    return build_family_from_basics(g, zp, base, order, q_empty, singles, pairs);
}

inline QFamily random_built_family(int M, int N, int order, uint64_t seed) {
    return random_built_family(M, N, prime_z(M + N), order, seed);
}

// Reduced family with every function equal to one: the constant solution
// of all reduction relations, exact at any truncation order.
inline BrFamily all_ones_br(int r, int order = 6) {
    Grading g(2 * r, 1);
    std::vector<Series> q(size_t(1) << g.size(), Series::one());
    std::vector<Rat> w = default_br_w(r);
    QFamily fam(g, br_zparams(r, w), ShiftBase(Rat(2)), order, std::move(q));
    return BrFamily(r, fam, w, {});
}

// Deterministically seeded reduced family (reduction-route completion with
// the free coordinates fixed to zero), cached per (r, order, seed).
inline const BrFamily& seeded_br(int r, int order, uint64_t seed = 12021u) {
    static std::map<std::tuple<int, int, uint64_t>, BrFamily> cache;
    auto key = std::make_tuple(r, order, seed);
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::mt19937_64 rng(seed + static_cast<uint64_t>(r));
        Series q_empty = random_q_seed(rng, 2);
        Series q_ferm = random_q_seed(rng, 2);
        it = cache
                 .emplace(key, seed_br_family(r, q_empty, q_ferm, SeedRoute::DeterminantIntoReduction,
                                              GaugePolicy::ZeroFree, order))
                 .first;
    }
    return it->second;
}

}  // namespace fixtures
