#pragma once

/**
 * Command-line driver.
 *
 * Subcommands:
 *   verify qq|tsystem|cbr|qsystem|tplus|spinor|nonrect|all
 *   seed    emit a family document (graded when --M/--N are given,
 *           reduced otherwise)
 *   chars   emit character values on the reduced strip
 *
 * Exit codes: 0 when every Proven check passes (and every check in
 * strict mode), 1 on failing checks or internal errors, 2 on usage
 * errors and malformed input files.
 *
 * Reduced suites always run at shift base t = 2; the --t-num/--t-den
 * pair applies to the graded suites.
 */

#include <algorithm>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "tqfold/serialize.hpp"
#include "tqfold/suites.hpp"

namespace tqfold {

namespace detail {

inline std::string reports_text(const std::vector<Report>& reports) {
    std::string out;
    for (const Report& rep : reports) {
        out += rep.text_line();
        out += '\n';
    }
    return out;
}

inline void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

}  // namespace detail

inline int run(std::vector<std::string> args) {
    CLI::App app{"exact verification of Baxter-function identities"};
    app.require_subcommand(1);

    int r = 2, grading_m = -1, grading_n = -1, order = 6, threads = 0;
    uint64_t seed = 12021;
    long long t_num = 2, t_den = 1;
    std::string format = "text", out_path, family_path;
    bool strict = false;

    app.add_option("--r", r, "reduction rank")->check(CLI::Range(2, 8));
    app.add_option("--M", grading_m, "bosonic index count")->check(CLI::Range(1, 6));
    app.add_option("--N", grading_n, "fermionic index count")->check(CLI::Range(1, 6));
    app.add_option("--order", order, "truncation order")->check(CLI::Range(1, 16));
    app.add_option("--seed", seed, "random seed");
    app.add_option("--t-num", t_num, "shift base numerator (graded suites)");
    app.add_option("--t-den", t_den, "shift base denominator (graded suites)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", out_path, "write output to this file");
    app.add_option("--family", family_path, "check a stored family document");
    app.add_flag("--strict", strict, "conjectured and exploratory failures also fail the run");
    app.add_option("--threads", threads, "worker threads (0: hardware)");

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify->fallthrough();
    verify->require_subcommand(1);
    static const char* kSuites[] = {"qq",    "tsystem", "cbr",     "qsystem",
                                    "tplus", "spinor",  "nonrect", "all"};
    for (const char* name : kSuites) verify->add_subcommand(name)->fallthrough();
    CLI::App* seed_cmd = app.add_subcommand("seed", "emit a family document");
    seed_cmd->fallthrough();
    CLI::App* chars_cmd = app.add_subcommand("chars", "emit character values");
    chars_cmd->fallthrough();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (t_den == 0 || t_num == 0 || (t_den == 1 && (t_num == 1 || t_num == -1)))
            throw MalformedInput("the shift base must differ from 0 and +-1");
        SuiteOptions opt;
        opt.order = order;
        opt.seed = seed;
        opt.t = rat(t_num, t_den);
        opt.threads = threads;
        ShiftBase check_base(opt.t);  // validates the base once, up front
        (void)check_base;

        std::shared_ptr<const QFamily> loaded_q;
        std::shared_ptr<const BrFamily> loaded_br;
        if (!family_path.empty()) {
            Json doc = load_json_file(family_path);
            if (family_json_is_reduced(doc)) {
                loaded_br = std::make_shared<BrFamily>(br_family_from_json(doc));
                loaded_q = std::make_shared<QFamily>(loaded_br->base());
            } else {
                loaded_q = std::make_shared<QFamily>(qfamily_from_json(doc));
            }
        }

        bool explicit_grading = grading_m > 0 && grading_n > 0;
        auto gl_gradings = [&](std::vector<Grading> defaults) {
            if (explicit_grading) return std::vector<Grading>{Grading(grading_m, grading_n)};
            return defaults;
        };

        // Reduced suites share one family per rank; the loaded document
        // overrides rank and order when present.
        int br_rank = loaded_br ? loaded_br->r() : r;
        auto br_order = [&](int rank) { return rank == 2 ? order : std::min(order, 4); };
        std::map<int, std::shared_ptr<const BrFamily>> br_cache;
        auto reduced_family = [&](int rank) -> std::shared_ptr<const BrFamily> {
            if (loaded_br) {
                if (loaded_br->r() != rank)
                    throw MalformedInput("family document has rank " +
                                         std::to_string(loaded_br->r()) +
                                         ", the requested suite needs rank " +
                                         std::to_string(rank));
                return loaded_br;
            }
            if (!family_path.empty())
                throw MalformedInput("this suite needs a reduced family document");
            auto it = br_cache.find(rank);
            if (it != br_cache.end()) return it->second;
            auto fam = std::make_shared<BrFamily>(
                seeded_reduced_family(rank, br_order(rank), seed));
            br_cache.emplace(rank, fam);
            return fam;
        };

        if (verify->parsed()) {
            bool all = verify->got_subcommand("all");
            auto want = [&](const char* name) { return all || verify->got_subcommand(name); };
            std::vector<CheckJob> jobs;
            auto append = [&](std::vector<CheckJob> more) {
                for (CheckJob& job : more) jobs.push_back(std::move(job));
            };

            if (want("qq")) {
                if (loaded_q) {
                    append(qq_closure_jobs(loaded_q->grading(), opt, 0, loaded_q));
                } else {
                    for (const Grading& g :
                         gl_gradings({Grading(2, 1), Grading(4, 1), Grading(2, 2)}))
                        append(qq_closure_jobs(g, opt, 200));
                }
            }
            if (want("cbr")) {
                for (const Grading& g : gl_gradings({Grading(2, 1), Grading(3, 2)})) {
                    append(cbr_tableau_jobs(g, opt));
                    append(tuple_invariance_jobs(g, opt));
                }
                append(cbr_web_jobs(br_rank, 3, opt, reduced_family(br_rank)));
            }
            if (want("tsystem"))
                append(tsystem_jobs(br_rank, br_rank == 2 ? 3 : 2, opt,
                                    reduced_family(br_rank)));
            if (want("qsystem")) append(qsystem_jobs(br_rank, opt));
            if (want("tplus")) append(tplus_jobs(br_rank, 5, opt, reduced_family(br_rank)));
            if (want("spinor")) append(spinor_jobs(br_rank, opt, reduced_family(br_rank)));
            if (want("nonrect")) {
                for (const Grading& g : gl_gradings({Grading(2, 1), Grading(4, 1)}))
                    append(t_equals_f_jobs(g, opt));
                append(br_nonrect_jobs(br_rank, opt, reduced_family(br_rank)));
            }

            std::vector<Report> reports = run_jobs(jobs, threads);
            if (format == "json")
                detail::emit(report_set_to_json(reports, strict).dump(2) + "\n", out_path);
            else
                detail::emit(detail::reports_text(reports), out_path);
            return reports_ok(reports, strict) ? 0 : 1;
        }

        if (seed_cmd->parsed()) {
            Json doc;
            if (explicit_grading) {
                std::mt19937_64 rng = salted_rng(seed, "seed-command");
                doc = family_to_json(random_built_family(Grading(grading_m, grading_n),
                                                         ShiftBase(opt.t), order, rng));
            } else {
                doc = family_to_json(seeded_reduced_family(br_rank, br_order(br_rank), seed));
            }
            detail::emit(doc.dump(2) + "\n", out_path);
            return 0;
        }

        if (chars_cmd->parsed()) {
            std::vector<Rat> w = default_br_w(br_rank);
            Json z_sample = Json::array();
            for (const Rat& wb : w) z_sample.push_back(rat_str(wb * wb));
            Json rows = Json::array();
            std::string text;
            for (int a = 1; a <= br_rank; ++a)
                for (int s = 1; s <= 6; ++s) {
                    Rat value = kr_character(br_rank, a, s, w);
                    rows.push_back(Json{{"r", br_rank},
                                        {"a", a},
                                        {"s", s},
                                        {"z-sample", z_sample},
                                        {"value", rat_str(value)}});
                    text += "chi r=" + std::to_string(br_rank) + " a=" + std::to_string(a) +
                            " s=" + std::to_string(s) + " value=" + rat_str(value) + "\n";
                }
            if (format == "json") {
                Json doc;
                doc["schema"] = "tq-chars/1";
                doc["rows"] = std::move(rows);
                detail::emit(doc.dump(2) + "\n", out_path);
            } else {
                detail::emit(text, out_path);
            }
            return 0;
        }

        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const MalformedInput& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace tqfold
