#pragma once

/**
 * Verification suites: batched check runs over randomly sampled or
 * seeded families, producing one Report per checked instance.
 *
 * Determinism: for a fixed (seed, order, t, rank) every suite constructs
 * the same jobs in the same order and produces the same reports, except
 * for the elapsed-time fields.  Randomness is drawn from generators
 * salted with the suite name, so adding checks to one suite does not
 * reshuffle another.
 *
 * Negative controls: each suite has a companion control run that
 * injects a +u defect into one subset function and requires the re-run
 * residual to become nonzero.  Controls sample from pairs of
 * (perturbation target, residual instance) whose dependence on the
 * perturbed coefficient has been verified; identities that hold for
 * arbitrary families (the column-determinant/tableau-sum rewriting, the
 * boundary factorization) cannot detect any defect and are excluded.
 */

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tqfold/br_family.hpp"
#include "tqfold/br_tfunctions.hpp"
#include "tqfold/characters.hpp"
#include "tqfold/report.hpp"
#include "tqfold/tableaux.hpp"
#include "tqfold/wronskian.hpp"

namespace tqfold {

struct SuiteOptions {
    int order = 6;
    uint64_t seed = 12021;
    Rat t = Rat(2);
    int threads = 0;  // 0: use the hardware concurrency
};

// ---------------------------------------------------------------------------
// Randomness and family construction

inline std::mt19937_64 salted_rng(uint64_t seed, const std::string& salt) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(std::hash<std::string>{}(salt)),
                      static_cast<uint32_t>(std::hash<std::string>{}(salt) >> 32)};
    return std::mt19937_64(seq);
}

// Distinct positive odd/odd rationals: with t = 2 every shifted collision
// z_i t^{2d} = z_j (d != 0) would need an even factor, so distinctness
// already gives genericity; the assertion stays as a safety net.
inline std::vector<Rat> random_generic_z(std::mt19937_64& rng, const Grading& g,
                                         const ShiftBase& base, int order) {
    std::uniform_int_distribution<int> num(1, 50);
    std::uniform_int_distribution<int> den(0, 4);
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::set<Rat> seen;
        std::vector<Rat> z;
        while (static_cast<int>(z.size()) < g.size()) {
            Rat v = rat(2 * num(rng) + 1, 2 * den(rng) + 1);
            if (seen.insert(v).second) z.push_back(v);
        }
        try {
            assert_generic(ZParams(g, z), base, order);
            return z;
        } catch (const DegenerateParameters&) {
        }
    }
    throw DegenerateParameters("could not sample generic spectral parameters");
}

// A family whose subset functions are determinants in random degree-2
// basic functions, so every exchange relation holds by construction.
inline QFamily random_built_family(const Grading& g, const ShiftBase& base, int order,
                                   std::mt19937_64& rng) {
    ZParams zp(g, random_generic_z(rng, g, base, order));
    Series q_empty = random_q_seed(rng, 2);
    std::vector<Series> singles;
    for (int a = 1; a <= g.size(); ++a) singles.push_back(random_q_seed(rng, 2));
    std::vector<std::vector<Series>> pairs;
    for (int b = 1; b <= g.M; ++b) {
        std::vector<Series> row;
        for (int f = g.M + 1; f <= g.size(); ++f)
            row.push_back(solve_pair_q(q_empty, singles[static_cast<size_t>(b) - 1],
                                       singles[static_cast<size_t>(f) - 1], zp.z(b), zp.z(f),
                                       base, order));
        pairs.push_back(std::move(row));
    }
    return build_family_from_basics(g, zp, base, order, q_empty, singles, pairs);
}

// Every subset function identically one; checks against it are exact.
inline QFamily all_ones_family(const Grading& g) {
    static const int odd[] = {3, 5, 7, 11, 13, 17, 19, 23};
    std::vector<Rat> z;
    for (int a = 0; a < g.size(); ++a) z.push_back(Rat(odd[a]));
    std::vector<Series> q(size_t(1) << g.size(), Series::one());
    return QFamily(g, ZParams(g, std::move(z)), ShiftBase(Rat(2)), 2, std::move(q));
}

// The deterministic seeds behind the reduced fixture family of a rank.
inline std::pair<Series, Series> reduced_family_seeds(int r, uint64_t seed) {
    std::mt19937_64 rng(seed + static_cast<uint64_t>(r));
    Series q_empty = random_q_seed(rng, 2);
    Series q_ferm = random_q_seed(rng, 2);
    return {std::move(q_empty), std::move(q_ferm)};
}

inline BrFamily seeded_reduced_family(int r, int order, uint64_t seed) {
    auto [q_empty, q_ferm] = reduced_family_seeds(r, seed);
    return seed_br_family(r, q_empty, q_ferm, SeedRoute::DeterminantIntoReduction,
                          GaugePolicy::ZeroFree, order);
}

// ---------------------------------------------------------------------------
// Job runner

struct CheckJob {
    Report report;  // pre-filled skeleton: check, params, tag, truncation_order
    std::function<void(Report&)> run;
};

// Mark the report failed when the residual is nonzero inside the
// truncation window (truncation_order == 0 means the check is exact).
inline void fill_series_residual(Report& rep, const Series& resid) {
    std::optional<int> k = resid.first_nonzero();
    if (k && (rep.truncation_order == 0 || *k < rep.truncation_order)) {
        rep.status = Report::Status::Fail;
        rep.residual_first_nonzero = *k;
    }
}

inline void fill_rat_residual(Report& rep, const Rat& resid) {
    if (resid != Rat(0)) {
        rep.status = Report::Status::Fail;
        rep.residual_first_nonzero = 0;
    }
}

inline std::vector<Report> run_jobs(std::vector<CheckJob>& jobs, int threads) {
    std::vector<Report> results(jobs.size());
    unsigned hw = std::thread::hardware_concurrency();
    size_t n = static_cast<size_t>(threads > 0 ? threads : (hw ? hw : 1));
    n = std::min(std::max<size_t>(n, 1), jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            Report rep = jobs[i].report;
            auto start = std::chrono::steady_clock::now();
            try {
                jobs[i].run(rep);
            } catch (const std::exception& e) {
                rep.status = Report::Status::Error;
                rep.note = e.what();
            }
            rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
            results[i] = std::move(rep);
        }
    };
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t i = 0; i < n; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    return results;
}

// ---------------------------------------------------------------------------
// Small formatting helpers

namespace detail {

inline std::string tuple_str(const std::vector<int>& tuple) {
    std::string out = "{";
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(tuple[i]);
    }
    return out + "}";
}

inline std::string grading_params(const Grading& g) {
    return "M=" + std::to_string(g.M) + " N=" + std::to_string(g.N);
}

inline std::vector<int> identity_tuple(int size) {
    std::vector<int> tuple(static_cast<size_t>(size));
    std::iota(tuple.begin(), tuple.end(), 1);
    return tuple;
}

// All partitions inside a rows x cols box, nonempty, largest part first.
inline std::vector<Partition> partitions_in_box(int rows, int cols) {
    std::vector<Partition> out;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int maxpart) -> void {
        if (!parts.empty()) out.emplace_back(parts);
        if (static_cast<int>(parts.size()) == rows) return;
        for (int p = std::min(maxpart, cols); p >= 1; --p) {
            parts.push_back(p);
            self(self, p);
            parts.pop_back();
        }
    };
    rec(rec, cols);
    return out;
}

// All subdiagrams of mu (the empty one included), each paired with mu.
inline std::vector<Partition> subdiagrams(const Partition& mu) {
    std::vector<Partition> out;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int row, int maxpart) -> void {
        if (row == mu.length()) {
            std::vector<int> trimmed = parts;
            while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
            out.emplace_back(std::move(trimmed));
            return;
        }
        int bound = std::min(maxpart, mu.part(row + 1));
        for (int p = bound; p >= 0; --p) {
            parts.push_back(p);
            self(self, row + 1, p);
            parts.pop_back();
        }
    };
    rec(rec, 0, mu.length() ? mu.part(1) : 0);
    return out;
}

inline int cell_count(const Partition& mu) {
    int n = 0;
    for (int i = 1; i <= mu.length(); ++i) n += mu.part(i);
    return n;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exchange-relation closure

// Every exchange relation on determinant-built families, enough random
// families to reach min_instances checks per grading.  When an explicit
// family is supplied, its instances are checked once instead.
inline std::vector<CheckJob> qq_closure_jobs(const Grading& g, const SuiteOptions& opt,
                                             int min_instances,
                                             std::shared_ptr<const QFamily> loaded = nullptr) {
    struct Instance {
        Mask i_set;
        int i, j;
        bool bosonic;
    };
    std::vector<Instance> instances;
    for (int i = 1; i <= g.size(); ++i)
        for (int j = i + 1; j <= g.size(); ++j) {
            Mask rest = g.full() & ~mask_of({i, j});
            for (Mask sub = 0;; sub = (sub - rest) & rest) {
                instances.push_back({sub, i, j, g.parity(i) == g.parity(j)});
                if (sub == rest) break;
            }
        }

    std::vector<std::shared_ptr<const QFamily>> families;
    if (loaded) {
        families.push_back(std::move(loaded));
    } else {
        size_t per_family = instances.size();
        size_t n_families = (static_cast<size_t>(min_instances) + per_family - 1) / per_family;
        std::mt19937_64 rng = salted_rng(opt.seed, "qq/" + detail::grading_params(g));
        ShiftBase base(opt.t);
        for (size_t f = 0; f < n_families; ++f)
            families.push_back(
                std::make_shared<QFamily>(random_built_family(g, base, opt.order, rng)));
    }

    std::vector<CheckJob> jobs;
    for (size_t f = 0; f < families.size(); ++f) {
        std::shared_ptr<const QFamily> fam = families[f];
        for (const Instance& in : instances) {
            CheckJob job;
            job.report.check = in.bosonic ? "qq/bosonic" : "qq/fermionic";
            job.report.params = detail::grading_params(g) + " family=" + std::to_string(f) +
                                " I=" + subset_str(in.i_set) + " i=" + std::to_string(in.i) +
                                " j=" + std::to_string(in.j);
            job.report.truncation_order = fam->order();
            job.run = [fam, in](Report& rep) {
                Series resid = in.bosonic ? qq_bosonic_residual(*fam, in.i_set, in.i, in.j)
                                          : qq_fermionic_residual(*fam, in.i_set, in.i, in.j);
                fill_series_residual(rep, resid);
            };
            jobs.push_back(std::move(job));
        }
    }
    return jobs;
}

// ---------------------------------------------------------------------------
// Column determinant vs. tableau sum

// Skew shapes checked: every outer shape in the hook with at most six
// cells (bounded by a 6x6 box), plus every outer shape inside the 4x4
// box intersected with the hook; inner shapes are arbitrary subdiagrams
// leaving between one and six skew cells.
inline std::vector<CheckJob> cbr_tableau_jobs(const Grading& g, const SuiteOptions& opt) {
    std::vector<std::pair<Partition, Partition>> shapes;  // (inner, outer)
    std::set<std::string> seen;
    auto add_outer = [&](const Partition& mu) {
        for (const Partition& lam : detail::subdiagrams(mu)) {
            int skew = detail::cell_count(mu) - detail::cell_count(lam);
            if (skew < 1 || skew > 6) continue;
            if (seen.insert(lam.str() + "/" + mu.str()).second) shapes.emplace_back(lam, mu);
        }
    };
    for (const Partition& mu : detail::partitions_in_box(6, 6))
        if (in_hook(mu, g.M, g.N) && detail::cell_count(mu) <= 6) add_outer(mu);
    for (const Partition& mu : detail::partitions_in_box(4, 4))
        if (in_hook(mu, g.M, g.N)) add_outer(mu);

    struct FamilyCase {
        std::shared_ptr<const QFamily> fam;
        std::string label;
        int window;  // 0: exact
    };
    std::vector<FamilyCase> cases;
    cases.push_back({std::make_shared<QFamily>(all_ones_family(g)), "ones", 0});
    {
        std::mt19937_64 rng = salted_rng(opt.seed, "cbr/" + detail::grading_params(g));
        cases.push_back({std::make_shared<QFamily>(
                             random_built_family(g, ShiftBase(opt.t), opt.order, rng)),
                         "series", opt.order});
    }

    std::vector<int> tuple = detail::identity_tuple(g.size());
    std::vector<CheckJob> jobs;
    for (const FamilyCase& fc : cases)
        for (const auto& [lam, mu] : shapes) {
            CheckJob job;
            job.report.check = "cbr/tableau-sum";
            job.report.params = detail::grading_params(g) + " family=" + fc.label +
                                " lam=" + lam.str() + " mu=" + mu.str();
            job.report.truncation_order = fc.window;
            std::shared_ptr<const QFamily> fam = fc.fam;
            Partition lam_c = lam, mu_c = mu;
            job.run = [fam, tuple, lam_c, mu_c](Report& rep) {
                SkewDiagram d(lam_c, mu_c);
                fill_series_residual(
                    rep, residual(cbr_det(*fam, tuple, d), t_tableau_sum(*fam, tuple, d)));
            };
            jobs.push_back(std::move(job));
        }
    return jobs;
}

// ---------------------------------------------------------------------------
// Tuple relabeling invariance

inline std::vector<CheckJob> tuple_invariance_jobs(const Grading& g, const SuiteOptions& opt,
                                                   int transpositions = 20) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> identity = detail::identity_tuple(g.size());
    if (g.size() <= 4) {
        std::vector<int> perm = identity;
        while (std::next_permutation(perm.begin(), perm.end())) tuples.push_back(perm);
    } else {
        std::mt19937_64 rng = salted_rng(opt.seed, "relabel/" + detail::grading_params(g));
        std::uniform_int_distribution<size_t> pick(0, identity.size() - 1);
        std::vector<int> walk = identity;
        for (int step = 0; step < transpositions; ++step) {
            size_t a = pick(rng), b = pick(rng);
            while (b == a) b = pick(rng);
            std::swap(walk[a], walk[b]);
            tuples.push_back(walk);
        }
    }

    std::vector<Partition> mus = {Partition({1}), Partition({2, 1}), Partition({2, 2}),
                                  Partition({3, 1})};

    struct FamilyCase {
        std::shared_ptr<const QFamily> fam;
        std::string label;
        int window;
    };
    std::vector<FamilyCase> cases;
    cases.push_back({std::make_shared<QFamily>(all_ones_family(g)), "ones", 0});
    {
        std::mt19937_64 rng = salted_rng(opt.seed, "relabel-fam/" + detail::grading_params(g));
        cases.push_back({std::make_shared<QFamily>(
                             random_built_family(g, ShiftBase(opt.t), opt.order, rng)),
                         "series", opt.order});
    }

    std::vector<CheckJob> jobs;
    for (const FamilyCase& fc : cases)
        for (const Partition& mu : mus)
            for (const std::vector<int>& tuple : tuples) {
                CheckJob job;
                job.report.check = "cbr/relabel";
                job.report.params = detail::grading_params(g) + " family=" + fc.label +
                                    " mu=" + mu.str() + " tuple=" + detail::tuple_str(tuple);
                job.report.truncation_order = fc.window;
                std::shared_ptr<const QFamily> fam = fc.fam;
                Partition mu_c = mu;
                std::vector<int> base_tuple = identity;
                job.run = [fam, base_tuple, tuple, mu_c](Report& rep) {
                    fill_series_residual(rep, residual(f_normalized(*fam, base_tuple, mu_c),
                                                       f_normalized(*fam, tuple, mu_c)));
                };
                jobs.push_back(std::move(job));
            }
    return jobs;
}

// ---------------------------------------------------------------------------
// Determinant T-function vs. normalized tableau generating function

inline std::vector<CheckJob> t_equals_f_jobs(const Grading& g, const SuiteOptions& opt) {
    std::mt19937_64 rng = salted_rng(opt.seed, "tf/" + detail::grading_params(g));
    auto fam = std::make_shared<QFamily>(random_built_family(g, ShiftBase(opt.t), opt.order, rng));

    struct Shape {
        Partition mu;
        const char* kind;             // rectangle | bosonic | mixed
        bool bosonic_only = false;    // restrict to the bosonic block
        Report::Tag tag = Report::Tag::Proven;
    };
    std::vector<Shape> shapes;
    for (int a = 1; a <= g.M; ++a)
        for (int s = 1; s <= 3; ++s) {
            std::vector<int> parts(static_cast<size_t>(a), s);
            shapes.push_back({Partition(parts), "rectangle"});
        }
    for (int a = g.M + 1; a <= g.M + 2; ++a) {
        std::vector<int> parts(static_cast<size_t>(a), 1);
        Partition mu(parts);
        if (in_hook(mu, g.M, g.N)) shapes.push_back({mu, "rectangle"});
    }
    std::vector<Partition> nonrect = {Partition({2, 1}), Partition({3, 1}), Partition({3, 2})};
    for (const Partition& mu : nonrect)
        if (mu.length() <= g.M) shapes.push_back({mu, "bosonic", true});
    std::vector<Partition> mixed = {Partition({2, 1}), Partition({3, 1}), Partition({2, 2, 1}),
                                    Partition({3, 2, 1})};
    for (const Partition& mu : mixed)
        if (in_hook(mu, g.M, g.N)) shapes.push_back({mu, "mixed", false, Report::Tag::Conjecture});

    std::vector<CheckJob> jobs;
    for (const Shape& sh : shapes) {
        CheckJob job;
        job.report.check = std::string("tf/") + sh.kind;
        job.report.params = detail::grading_params(g) + " mu=" + sh.mu.str();
        job.report.tag = sh.tag;
        job.report.truncation_order = opt.order;
        Partition mu = sh.mu;
        bool bosonic_only = sh.bosonic_only;
        job.run = [fam, mu, bosonic_only](Report& rep) {
            const Grading& g = fam->grading();
            std::vector<int> tuple = detail::identity_tuple(bosonic_only ? g.M : g.size());
            Mask b_set = g.bosonic_mask();
            Mask f_set = bosonic_only ? Mask(0) : g.fermionic_mask();
            fill_series_residual(rep, residual(t_wronskian(*fam, mu, b_set, f_set),
                                               f_normalized(*fam, tuple, mu)));
        };
        jobs.push_back(std::move(job));
    }
    return jobs;
}

// ---------------------------------------------------------------------------
// Reduced bilinear system and boundaries

inline std::vector<CheckJob> tsystem_jobs(int r, int s_max, const SuiteOptions& opt,
                                          std::shared_ptr<const BrFamily> fam) {
    std::vector<CheckJob> jobs;
    for (int a = 1; a <= r; ++a)
        for (int s = 1; s <= s_max; ++s) {
            CheckJob job;
            job.report.check = "tsystem/bilinear";
            job.report.params = "r=" + std::to_string(r) + " a=" + std::to_string(a) +
                                " s=" + std::to_string(s);
            job.report.truncation_order = fam->base().order();
            job.run = [fam, a, s](Report& rep) {
                fill_series_residual(rep, tsystem_residual(*fam, a, s));
            };
            jobs.push_back(std::move(job));
        }
    for (int a = 0; a <= r; ++a) {
        CheckJob job;
        job.report.check = "tsystem/boundary-row";
        job.report.params = "r=" + std::to_string(r) + " a=" + std::to_string(a) + " s=0";
        job.report.truncation_order = fam->base().order();
        job.run = [fam, a](Report& rep) {
            fill_series_residual(rep, residual(t_br(*fam, a, 0), Frac::one()));
        };
        jobs.push_back(std::move(job));
    }
    for (int s = 1; s <= s_max; ++s) {
        CheckJob job;
        job.report.check = "tsystem/boundary-column";
        job.report.params = "r=" + std::to_string(r) + " a=0 s=" + std::to_string(s);
        job.report.truncation_order = fam->base().order();
        job.run = [fam, r, s](Report& rep) {
            const ShiftBase& base = fam->base().base();
            const Series& q0 = fam->base().q(0);
            Series expected = Series::one();
            for (int j = 1; j <= s; ++j)
                expected = expected * q0.shifted(2 * r - s + 2 * j - 1, base) *
                           q0.shifted(s - 2 * j, base);
            fill_series_residual(rep, residual(t_br(*fam, 0, s), Frac(expected)));
        };
        jobs.push_back(std::move(job));
    }
    return jobs;
}

// ---------------------------------------------------------------------------
// Reflection sum and boundary factorization of extended rows

inline std::vector<CheckJob> tplus_jobs(int r, int a_max, const SuiteOptions& opt,
                                        std::shared_ptr<const BrFamily> fam) {
    std::vector<CheckJob> jobs;
    for (int a = 0; a <= a_max; ++a) {
        CheckJob job;
        job.report.check = "tplus/reflection";
        job.report.params = "r=" + std::to_string(r) + " a=" + std::to_string(a);
        job.report.truncation_order = fam->base().order();
        job.run = [fam, a](Report& rep) {
            fill_series_residual(rep, t_plus_t_residual(*fam, a));
        };
        jobs.push_back(std::move(job));
    }
    for (int a = 2 * r; a <= a_max; ++a) {
        CheckJob job;
        job.report.check = "tplus/factorization";
        job.report.params = "r=" + std::to_string(r) + " a=" + std::to_string(a);
        job.report.truncation_order = fam->base().order();
        job.run = [fam, a](Report& rep) {
            fill_series_residual(rep, t_factor_boundary_residual(*fam, a));
        };
        jobs.push_back(std::move(job));
    }
    return jobs;
}

// ---------------------------------------------------------------------------
// Spinor column sum

inline std::vector<CheckJob> spinor_jobs(int r, const SuiteOptions& opt,
                                         std::shared_ptr<const BrFamily> fam) {
    std::vector<CheckJob> jobs;
    Report::Tag tag = r == 2 ? Report::Tag::Proven : Report::Tag::Expected;
    for (FormVariant v : {FormVariant::Main, FormVariant::Appendix}) {
        CheckJob job;
        job.report.check = "spinor/sum";
        job.report.params = "r=" + std::to_string(r) +
                            std::string(" variant=") +
                            (v == FormVariant::Main ? "main" : "mirror");
        job.report.tag = tag;
        job.report.truncation_order = fam->base().order();
        job.run = [fam, v, r](Report& rep) {
            fill_series_residual(rep, residual(t_spinor_sum(*fam, v), t_br(*fam, r, 1)));
        };
        jobs.push_back(std::move(job));
    }
    if (r == 2) {
        CheckJob job;
        job.report.check = "spinor/expansion";
        job.report.params = "r=2";
        job.report.truncation_order = fam->base().order();
        job.run = [fam](Report& rep) {
            fill_series_residual(rep, spinor_product_residual(*fam));
        };
        jobs.push_back(std::move(job));
    }
    return jobs;
}

// ---------------------------------------------------------------------------
// Column determinants vs. the reduced T-functions

inline std::vector<CheckJob> cbr_web_jobs(int r, int s_max, const SuiteOptions& opt,
                                          std::shared_ptr<const BrFamily> fam) {
    struct VariantCase {
        CbrVariant variant;
        const char* label;
    };
    std::vector<CheckJob> jobs;
    auto add = [&](int a, int s, CbrVariant v, const char* label) {
        CheckJob job;
        job.report.check = std::string("cbr/") + label;
        job.report.params = "r=" + std::to_string(r) + " a=" + std::to_string(a) +
                            " s=" + std::to_string(s);
        job.report.truncation_order = fam->base().order();
        job.run = [fam, a, s, v](Report& rep) {
            fill_series_residual(rep, residual(cbr_br(*fam, a, s, v), t_br(*fam, a, s)));
        };
        jobs.push_back(std::move(job));
    };
    for (int a = 1; a <= r; ++a)
        for (int s = 0; s <= s_max; ++s) {
            add(a, s, CbrVariant::Main, "main");
            add(a, s, CbrVariant::App2, "alt2");
            if (a == r && s % 2 == 1) {
                add(a, s, CbrVariant::App3, "alt3");
                add(a, s, CbrVariant::App4, "alt4");
            }
        }
    return jobs;
}

// ---------------------------------------------------------------------------
// Non-rectangular shapes of the reduced system

// The spinor-kind equality is stated for shapes with at most r rows;
// the (2,2,1) shape at r=2 is outside that bound, so the check asserts
// its rejection there and verifies the shape at the minimal admitting
// rank instead.  The even-column tensor-kind determinant computes
// beyond the bound and is checked as stated.
inline std::vector<CheckJob> br_nonrect_jobs(int r, const SuiteOptions& opt,
                                             std::shared_ptr<const BrFamily> fam) {
    std::vector<CheckJob> jobs;
    int window = std::min(4, fam->base().order());
    std::vector<Partition> shapes = {Partition({2, 1}), Partition({2, 2, 1})};

    for (const Partition& mu : shapes) {
        if (mu.length() <= r) {
            CheckJob job;
            job.report.check = "nonrect/spinor";
            job.report.params = "r=" + std::to_string(r) + " mu=" + mu.str();
            job.report.truncation_order = window;
            Partition mu_c = mu;
            job.run = [fam, mu_c](Report& rep) {
                fill_series_residual(rep, spinodd_residual(*fam, mu_c));
            };
            jobs.push_back(std::move(job));
        } else {
            CheckJob job;
            job.report.check = "nonrect/spinor-domain";
            job.report.params = "r=" + std::to_string(r) + " mu=" + mu.str();
            job.report.truncation_order = window;
            Partition mu_c = mu;
            job.run = [fam, mu_c](Report& rep) {
                try {
                    spinodd_residual(*fam, mu_c);
                    rep.status = Report::Status::Fail;
                    rep.note = "shape beyond the stated row bound was not rejected";
                } catch (const BadSpec&) {
                    rep.note = "rejected: shape exceeds the stated row bound";
                }
            };
            jobs.push_back(std::move(job));
        }
        for (FormVariant v : {FormVariant::Main, FormVariant::Appendix}) {
            CheckJob job;
            job.report.check = "nonrect/tensor";
            job.report.params = "r=" + std::to_string(r) + " mu=" + mu.str() +
                                std::string(" variant=") +
                                (v == FormVariant::Main ? "main" : "mirror");
            job.report.tag = Report::Tag::Conjecture;
            job.report.truncation_order = window;
            Partition mu_c = mu;
            job.run = [fam, mu_c, v](Report& rep) {
                fill_series_residual(rep, speven_residual(*fam, mu_c, v));
            };
            jobs.push_back(std::move(job));
        }
    }

    for (const Partition& mu : {Partition({1}), Partition({2, 1})})
        for (int c = r + 1; c <= r + 2; ++c) {
            CheckJob job;
            job.report.check = "nonrect/factorization";
            job.report.params = "r=" + std::to_string(r) + " mu=" + mu.str() +
                                " c=" + std::to_string(c);
            job.report.truncation_order = window;
            Partition mu_c = mu;
            job.run = [fam, mu_c, c](Report& rep) {
                fill_series_residual(rep, factorization_residual(*fam, mu_c, c));
            };
            jobs.push_back(std::move(job));
        }

    // The out-of-bound spinor shape is verified at the minimal rank that
    // admits it.
    if (r == 2) {
        auto supplement = std::make_shared<BrFamily>(seeded_reduced_family(3, 4, opt.seed));
        Partition tall({2, 2, 1});
        {
            CheckJob job;
            job.report.check = "nonrect/spinor";
            job.report.params = "r=3 mu=" + tall.str();
            job.report.truncation_order = 4;
            job.run = [supplement, tall](Report& rep) {
                fill_series_residual(rep, spinodd_residual(*supplement, tall));
            };
            jobs.push_back(std::move(job));
        }
        for (FormVariant v : {FormVariant::Main, FormVariant::Appendix}) {
            CheckJob job;
            job.report.check = "nonrect/tensor";
            job.report.params = "r=3 mu=" + tall.str() + std::string(" variant=") +
                                (v == FormVariant::Main ? "main" : "mirror");
            job.report.tag = Report::Tag::Conjecture;
            job.report.truncation_order = 4;
            job.run = [supplement, tall, v](Report& rep) {
                fill_series_residual(rep, speven_residual(*supplement, tall, v));
            };
            jobs.push_back(std::move(job));
        }
    }
    return jobs;
}

// ---------------------------------------------------------------------------
// Character recurrence and unit-limit dimensions

inline std::vector<CheckJob> qsystem_jobs(int r, const SuiteOptions& opt) {
    std::vector<std::vector<Rat>> samples;
    samples.push_back(default_br_w(r));
    {
        std::vector<Rat> w;
        for (int j = 1; j <= r; ++j) w.push_back(rat(2 * j + 1, 2));
        samples.push_back(std::move(w));
    }
    {
        std::vector<Rat> w;
        for (int j = 1; j <= r; ++j) w.push_back(rat(6 * j + 1, 5));
        samples.push_back(std::move(w));
    }

    std::vector<CheckJob> jobs;
    for (size_t p = 0; p < samples.size(); ++p) {
        std::vector<Rat> w = samples[p];
        for (int a = 1; a <= r; ++a)
            for (int s = 1; s <= 6; ++s) {
                CheckJob job;
                job.report.check = "qsystem/recurrence";
                job.report.params = "r=" + std::to_string(r) + " sample=" + std::to_string(p) +
                                    " a=" + std::to_string(a) + " s=" + std::to_string(s);
                job.report.truncation_order = 0;  // exact rational arithmetic
                job.run = [r, a, s, w](Report& rep) {
                    fill_rat_residual(rep, qsystem_residual(r, a, s, w));
                };
                jobs.push_back(std::move(job));
            }
    }
    {
        CheckJob job;
        job.report.check = "qsystem/dimension-spinor";
        job.report.params = "r=" + std::to_string(r);
        job.report.truncation_order = 0;
        job.run = [r](Report& rep) {
            DimensionCheck dc = spinor_dimension_check(r);
            rep.note = "value=" + rat_str(dc.value) + " expected=" + rat_str(dc.expected);
            if (!dc.ok()) rep.status = Report::Status::Fail;
        };
        jobs.push_back(std::move(job));
    }
    {
        CheckJob job;
        job.report.check = "qsystem/dimension-vector";
        job.report.params = "r=" + std::to_string(r);
        job.report.truncation_order = 0;
        job.run = [r](Report& rep) {
            DimensionCheck dc = vector_dimension_check(r);
            rep.note = "value=" + rat_str(dc.value) + " expected=" + rat_str(dc.expected);
            if (!dc.ok()) rep.status = Report::Status::Fail;
        };
        jobs.push_back(std::move(job));
    }
    return jobs;
}

// ---------------------------------------------------------------------------
// Seeding-route agreement

// Both seeding routes are driven to the same order-by-order linear
// systems over the coefficients of the unpaired single-index functions:
// the half-shift route determines them up to the measured rank, the
// reduction route pins them down; the completed coefficient table must
// satisfy both systems and the reduction route's extra rank must
// annihilate the half-shift nullspace.
inline std::vector<CheckJob> seeding_route_jobs(int r, const SuiteOptions& opt) {
    int order = r == 2 ? std::min(opt.order, 6) : std::min(opt.order, 4);
    auto fam = std::make_shared<BrFamily>(seeded_reduced_family(r, order, opt.seed));
    auto seeds = std::make_shared<std::pair<Series, Series>>(reduced_family_seeds(r, opt.seed));
    auto singles = std::make_shared<std::vector<Series>>();
    for (int b = 1; b <= 2 * r; ++b) singles->push_back(fam->base().q(mask_of({b})));

    std::vector<CheckJob> jobs;
    for (int k = 1; k <= 2; ++k) {
        for (SeedRoute route :
             {SeedRoute::DeterminantIntoHalfShift, SeedRoute::DeterminantIntoReduction}) {
            const char* route_name =
                route == SeedRoute::DeterminantIntoHalfShift ? "half-shift" : "reduction";
            {
                CheckJob job;
                job.report.check = "seed/route-consistency";
                job.report.params = "r=" + std::to_string(r) + " k=" + std::to_string(k) +
                                    std::string(" route=") + route_name;
                job.report.truncation_order = 0;
                job.run = [fam, seeds, singles, r, k, route](Report& rep) {
                    auto [a, c] = br_route_system(r, route, seeds->first, seeds->second, *singles,
                                                  fam->w(), k);
                    std::vector<Rat> x;
                    for (const Series& s : *singles) x.push_back(s.coeff(k));
                    for (const Rat& v : linear_residual(a, c, x)) fill_rat_residual(rep, v);
                };
                jobs.push_back(std::move(job));
            }
            {
                CheckJob job;
                job.report.check = "seed/route-rank";
                job.report.params = "r=" + std::to_string(r) + " k=" + std::to_string(k) +
                                    std::string(" route=") + route_name;
                job.report.truncation_order = 0;
                int expected_rank = route == SeedRoute::DeterminantIntoHalfShift ? r : r + 1;
                job.run = [fam, seeds, singles, r, k, route, expected_rank](Report& rep) {
                    auto [a, c] = br_route_system(r, route, seeds->first, seeds->second, *singles,
                                                  fam->w(), k);
                    LinearSolution sol = solve_linear(a, c);
                    rep.note = "rank=" + std::to_string(sol.rank) +
                               " expected=" + std::to_string(expected_rank);
                    if (!sol.consistent || sol.rank != expected_rank)
                        rep.status = Report::Status::Fail;
                };
                jobs.push_back(std::move(job));
            }
        }
        {
            CheckJob job;
            job.report.check = "seed/nullspace";
            job.report.params = "r=" + std::to_string(r) + " k=" + std::to_string(k);
            job.report.truncation_order = 0;
            job.run = [fam, seeds, singles, r, k](Report& rep) {
                auto [ai, ci] = br_route_system(r, SeedRoute::DeterminantIntoHalfShift,
                                                seeds->first, seeds->second, *singles, fam->w(), k);
                auto [aii, cii] = br_route_system(r, SeedRoute::DeterminantIntoReduction,
                                                 seeds->first, seeds->second, *singles, fam->w(),
                                                 k);
                LinearSolution sol = solve_linear(aii, cii);
                std::vector<Rat> zeros(ci.size(), Rat(0));
                for (const std::vector<Rat>& n : sol.nullspace)
                    for (const Rat& v : linear_residual(ai, zeros, n)) fill_rat_residual(rep, v);
            };
            jobs.push_back(std::move(job));
        }
    }
    return jobs;
}

// ---------------------------------------------------------------------------
// Negative controls

namespace detail {

inline QFamily perturb_q(const QFamily& fam, Mask where) {
    return fam.with_q(where, fam.q(where) + Series::monomial(Rat(1), 1));
}

inline BrFamily perturb_q(const BrFamily& fam, Mask where) {
    return BrFamily(fam.r(), perturb_q(fam.base(), where), fam.w(), {},
                    BrFamily::SkipReductionCheck{});
}

inline bool series_detects(const Series& resid, int window) {
    std::optional<int> k = resid.first_nonzero();
    return k && (window == 0 || *k < window);
}

}  // namespace detail

// One control pool entry: perturb one subset function, re-run one
// verified-sensitive residual instance, require a nonzero residual.
inline std::vector<CheckJob> negative_control_jobs(const std::string& which,
                                                   const SuiteOptions& opt, int count = 10) {
    struct Control {
        std::string op;      // human-readable op description (no spaces)
        Mask target;
        std::function<bool(int)> detect;  // window -> detected?
    };
    std::vector<Control> pool;
    int window = opt.order;

    auto br_targets = [] {
        return std::vector<Mask>{Mask(0), mask_of({1}), mask_of({2}), mask_of({3}), mask_of({4})};
    };

    if (which == "qq" || which == "cbr") {
        Grading g(2, 1);
        std::mt19937_64 rng = salted_rng(opt.seed, "control-base/" + which);
        auto base = std::make_shared<QFamily>(
            random_built_family(g, ShiftBase(opt.t), opt.order, rng));
        if (which == "qq") {
            struct Instance {
                Mask i_set;
                int i, j;
                bool bosonic;
            };
            std::vector<Instance> instances = {{0, 1, 2, true},
                                               {0, 1, 3, false},
                                               {0, 2, 3, false},
                                               {mask_of({2}), 1, 3, false},
                                               {mask_of({1}), 2, 3, false}};
            for (const Instance& in : instances) {
                std::vector<Mask> support = {in.i_set, mask_add(in.i_set, in.i),
                                             mask_add(in.i_set, in.j),
                                             mask_add(mask_add(in.i_set, in.i), in.j)};
                for (Mask m : support) {
                    std::string op = std::string(in.bosonic ? "bosonic" : "fermionic") + ":I=" +
                                     subset_str(in.i_set) + ",i=" + std::to_string(in.i) +
                                     ",j=" + std::to_string(in.j);
                    Instance in_c = in;
                    pool.push_back({op, m, [base, in_c, m](int w) {
                                        QFamily bad = detail::perturb_q(*base, m);
                                        Series resid =
                                            in_c.bosonic
                                                ? qq_bosonic_residual(bad, in_c.i_set, in_c.i,
                                                                      in_c.j)
                                                : qq_fermionic_residual(bad, in_c.i_set, in_c.i,
                                                                        in_c.j);
                                        return detail::series_detects(resid, w);
                                    }});
                }
            }
        } else {
            // Relabeling pairs on the graded family...
            struct SwapCase {
                std::vector<int> tuple;
                std::vector<Mask> targets;
            };
            std::vector<SwapCase> swaps = {
                {{2, 1, 3}, {Mask(0), mask_of({1}), mask_of({2})}},
                {{3, 2, 1}, {Mask(0), mask_of({1})}},
                {{1, 3, 2}, {mask_of({1})}},
            };
            for (const SwapCase& sc : swaps)
                for (Mask m : sc.targets) {
                    std::vector<int> tuple = sc.tuple;
                    pool.push_back({"relabel:tuple=" + detail::tuple_str(tuple), m,
                                    [base, tuple, m](int w) {
                                        QFamily bad = detail::perturb_q(*base, m);
                                        Partition mu({2, 1});
                                        Series resid =
                                            residual(f_normalized(bad, {1, 2, 3}, mu),
                                                     f_normalized(bad, tuple, mu));
                                        return detail::series_detects(resid, w);
                                    }});
                }
            // ...and reduced-web determinants that read beyond one cell.
            auto rfam = std::make_shared<BrFamily>(seeded_reduced_family(2, opt.order, opt.seed));
            struct WebOp {
                int a, s;
                CbrVariant v;
                const char* label;
            };
            std::vector<WebOp> ops = {{1, 2, CbrVariant::Main, "main"},
                                      {1, 3, CbrVariant::Main, "main"},
                                      {2, 3, CbrVariant::Main, "main"},
                                      {1, 2, CbrVariant::App2, "alt2"}};
            for (const WebOp& op : ops)
                for (Mask m : br_targets()) {
                    std::string desc = std::string("web-") + op.label + ":a=" +
                                       std::to_string(op.a) + ",s=" + std::to_string(op.s);
                    WebOp op_c = op;
                    pool.push_back({desc, m, [rfam, op_c, m](int w) {
                                        BrFamily bad = detail::perturb_q(*rfam, m);
                                        Series resid = residual(cbr_br(bad, op_c.a, op_c.s, op_c.v),
                                                                t_br(bad, op_c.a, op_c.s));
                                        return detail::series_detects(resid, w);
                                    }});
                }
        }
    } else if (which == "qsystem") {
        // A +u defect makes the family non-constant; the character
        // evaluator must reject it, which counts as detection.
        auto cfam = std::make_shared<BrFamily>(detail::constant_br_family(2, default_br_w(2)));
        std::mt19937_64 rng = salted_rng(opt.seed, "control-pool/qsystem");
        std::uniform_int_distribution<int> pick_b(1, 5), pick_a(1, 2), pick_s(1, 6);
        for (int i = 0; i < count; ++i) {
            Mask m = mask_of({pick_b(rng)});
            int a = pick_a(rng), s = pick_s(rng);
            std::string desc =
                "recurrence:a=" + std::to_string(a) + ",s=" + std::to_string(s);
            pool.push_back({desc, m, [cfam, m, a, s](int) {
                                BrFamily bad = detail::perturb_q(*cfam, m);
                                try {
                                    return qsystem_residual(bad, a, s) != Rat(0);
                                } catch (const BadSpec&) {
                                    return true;  // rejected the defective input
                                }
                            }});
        }
    } else {
        auto rfam = std::make_shared<BrFamily>(seeded_reduced_family(2, opt.order, opt.seed));
        if (which == "tsystem") {
            for (int a = 1; a <= 2; ++a)
                for (int s = 1; s <= 3; ++s)
                    for (Mask m :
                         {mask_of({1}), mask_of({2}), mask_of({3}), mask_of({4})}) {
                        std::string desc =
                            "bilinear:a=" + std::to_string(a) + ",s=" + std::to_string(s);
                        pool.push_back({desc, m, [rfam, a, s, m](int w) {
                                            BrFamily bad = detail::perturb_q(*rfam, m);
                                            return detail::series_detects(
                                                tsystem_residual(bad, a, s), w);
                                        }});
                    }
        } else if (which == "tplus") {
            for (int a = 0; a <= 5; ++a)
                for (Mask m : br_targets()) {
                    std::string desc = "reflection:a=" + std::to_string(a);
                    pool.push_back({desc, m, [rfam, a, m](int w) {
                                        BrFamily bad = detail::perturb_q(*rfam, m);
                                        return detail::series_detects(t_plus_t_residual(bad, a),
                                                                      w);
                                    }});
                }
            for (int a = 4; a <= 5; ++a)
                for (Mask m : br_targets()) {
                    std::string desc = "factorization:a=" + std::to_string(a);
                    pool.push_back({desc, m, [rfam, a, m](int w) {
                                        BrFamily bad = detail::perturb_q(*rfam, m);
                                        return detail::series_detects(
                                            t_factor_boundary_residual(bad, a), w);
                                    }});
                }
        } else if (which == "spinor") {
            for (Mask m : br_targets()) {
                pool.push_back({"expansion", m, [rfam, m](int w) {
                                    BrFamily bad = detail::perturb_q(*rfam, m);
                                    return detail::series_detects(spinor_product_residual(bad),
                                                                  w);
                                }});
                for (FormVariant v : {FormVariant::Main, FormVariant::Appendix}) {
                    std::string desc = std::string("sum:variant=") +
                                       (v == FormVariant::Main ? "main" : "mirror");
                    pool.push_back({desc, m, [rfam, v, m](int w) {
                                        BrFamily bad = detail::perturb_q(*rfam, m);
                                        return detail::series_detects(
                                            residual(t_spinor_sum(bad, v), t_br(bad, 2, 1)), w);
                                    }});
                }
            }
        } else if (which == "nonrect") {
            for (Mask m : br_targets()) {
                pool.push_back({"spinor:mu=(2,1)", m, [rfam, m](int w) {
                                    BrFamily bad = detail::perturb_q(*rfam, m);
                                    return detail::series_detects(
                                        spinodd_residual(bad, Partition({2, 1})), w);
                                }});
                for (FormVariant v : {FormVariant::Main, FormVariant::Appendix}) {
                    std::string desc = std::string("tensor:mu=(2,1),variant=") +
                                       (v == FormVariant::Main ? "main" : "mirror");
                    pool.push_back({desc, m, [rfam, v, m](int w) {
                                        BrFamily bad = detail::perturb_q(*rfam, m);
                                        return detail::series_detects(
                                            speven_residual(bad, Partition({2, 1}), v), w);
                                    }});
                }
            }
        } else {
            throw BadSpec("unknown control suite: " + which);
        }
    }

    // Sample without replacement in a suite-salted order.
    std::vector<size_t> order_idx(pool.size());
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::mt19937_64 rng = salted_rng(opt.seed, "control/" + which);
    std::shuffle(order_idx.begin(), order_idx.end(), rng);
    size_t take = std::min<size_t>(static_cast<size_t>(count), pool.size());

    std::vector<CheckJob> jobs;
    for (size_t i = 0; i < take; ++i) {
        const Control& ctl = pool[order_idx[i]];
        CheckJob job;
        job.report.check = "control/" + which;
        job.report.params = "target=" + subset_str(ctl.target) + " op=" + ctl.op;
        job.report.truncation_order = window;
        std::function<bool(int)> detect = ctl.detect;
        job.run = [detect, window](Report& rep) {
            if (detect(window)) {
                rep.note = "defect detected";
            } else {
                rep.status = Report::Status::Fail;
                rep.note = "injected defect went unnoticed";
            }
        };
        jobs.push_back(std::move(job));
    }
    return jobs;
}

}  // namespace tqfold
