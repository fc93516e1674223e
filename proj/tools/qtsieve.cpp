// qtsieve: batch driver for the function-field large-sieve laboratory.
//
// Subcommands: verify | ls-ratio | ls-scan | ls-mult | audit | montgomery |
//              pset | sqfree | shifted | trajectory | pnt
// Exit codes:  0 ok, 2 usage, 3 identity failure, 4 resource cap,
//              5 baseline drift, 6 missing baseline.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>

#include "CLI11.hpp"

#include "qtsieve/parallel.hpp"
#include "qtsieve/report.hpp"

namespace fs = std::filesystem;
using namespace qtsieve;

namespace {

struct CommonArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    std::string out_dir;
    std::string baseline;
    bool dry_run = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "key = value config file");
    cmd->add_option("--seed", args.seed, "64-bit seed")->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_option("--workers", args.workers, "worker count");
    cmd->add_option("--out", args.out_dir, "output directory for JSON reports");
    cmd->add_option("--baseline", args.baseline, "baseline payload file to compare against");
    cmd->add_flag("--dry-run", args.dry_run, "validate config and print planned sizes only");
}

ExperimentConfig build_config(const CommonArgs& args, const std::string& kind) {
    ExperimentConfig cfg;
    if (!args.config_path.empty()) cfg = load_config(args.config_path);
    cfg.kind = kind;
    if (args.seed_set) cfg.seed = args.seed;
    if (args.workers > 0) cfg.workers = args.workers;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (cfg.q <= 0 && cfg.p <= 0) cfg.q = 2;  // desk default
    cfg.validate();
    return cfg;
}

int finish(const ExperimentConfig& cfg, const CommonArgs& args, const Json& payload,
           const std::string& extra_name = "", const std::string& extra_content = "") {
    Json full = run_report(cfg, payload);
    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        write_text_file((fs::path(cfg.out_dir) / (cfg.kind + ".json")).string(), full.dump(2) + "\n");
        if (!extra_name.empty())
            write_text_file((fs::path(cfg.out_dir) / extra_name).string(), extra_content);
    }
    if (!args.baseline.empty()) {
        std::string text;
        try {
            text = read_text_file(args.baseline);
        } catch (const std::exception&) {
            std::cerr << "baseline missing: " << args.baseline
                      << " (run with --out and commit the payload to create one)\n";
            return 6;
        }
        Json expected = Json::parse(text);
        auto diffs = compare_json(expected, payload);
        if (!diffs.empty()) {
            std::cerr << "baseline drift: " << diffs.size() << " difference(s)\n";
            for (std::size_t i = 0; i < diffs.size() && i < 20; ++i)
                std::cerr << "  " << diffs[i].path << ": expected " << diffs[i].expected
                          << ", actual " << diffs[i].actual << "\n";
            return 5;
        }
        std::cout << "baseline match: " << args.baseline << "\n";
    }
    return 0;
}

std::vector<Cplx> seeded_coeffs(const FieldPtr& spec, int N, std::uint64_t seed) {
    long long dim = 1;
    for (int i = 0; i <= N; ++i) dim *= spec->q();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Cplx> a(dim);
    for (auto& c : a) c = Cplx(unif(rng), unif(rng));
    return a;
}

// ---- subcommand payloads ----

Json run_verify(const ExperimentConfig& cfg, bool dry) {
    Json j;
    long long ortho_moduli = 0;
    std::vector<Poly> moduli_list;
    std::vector<FieldPtr> fields;
    for (int q : {2, 3, 4}) fields.push_back(FieldSpec::make_q(q));
    for (const auto& F : fields)
        for (int d = 1; d <= 3; ++d)
            for (const Poly& f : enumerate_polys(F, d, EnumMode::MonicExactDegree))
                if (euler_phi(f) <= 200) {
                    moduli_list.push_back(f);
                    ++ortho_moduli;
                }
    if (dry) {
        j["planned_orthogonality_moduli"] = ortho_moduli;
        j["planned_identity_instances"] = 200;
        j["planned_duality_instances"] = 50;
        return j;
    }

    long long additive = 0, multiplicative = 0;
    {
        std::vector<OrthogonalityReport> reps(moduli_list.size());
        parallel_for(moduli_list.size(), cfg.workers, [&](std::size_t i) {
            reps[i] = orthogonality_suite(moduli_list[i], cfg.caps.unit_group);
        });
        for (const auto& r : reps) {
            additive += r.additive_checks;
            multiplicative += r.multiplicative_checks;
        }
    }
    j["orthogonality"] = Json{{"moduli", ortho_moduli},
                              {"additive_checks", additive},
                              {"multiplicative_checks", multiplicative},
                              {"ok", true}};

    long long gauss_checked = 0;
    for (int q : {2, 3}) {
        auto F = FieldSpec::make_q(q);
        for (int d = 1; d <= 2; ++d)
            for (const Poly& f : enumerate_polys(F, d, EnumMode::MonicExactDegree)) {
                auto G = std::make_shared<const UnitGroup>(f, cfg.caps.unit_group);
                long long qd = 1;
                for (int i = 0; i < d; ++i) qd *= q;
                for (const Character& chi : enumerate_characters(G)) {
                    if (!is_primitive(chi)) continue;
                    if (gauss_sum(chi).abs_squared() != CycValue::integer(qd))
                        throw identity_failure("verify: |tau(chi)|^2 != q^{deg f} at f=" + f.str());
                    ++gauss_checked;
                }
            }
    }
    j["gauss_sums"] = Json{{"primitive_characters", gauss_checked}, {"ok", true}};

    // residue-identity machine on seeded instances
    std::mt19937_64 rng(cfg.seed ^ 0x1e37aa11);
    std::uniform_int_distribution<int> entry(-3, 3);
    int done = 0;
    long long dropped_term_failures = 0;
    while (done < 200) {
        int q = (rng() & 1) ? 2 : 3;
        auto F = FieldSpec::make_q(q);
        std::vector<Poly> pool;
        for (int d = 1; d <= 2; ++d)
            for (const Poly& f : enumerate_polys(F, d, EnumMode::MonicExactDegree)) pool.push_back(f);
        std::vector<Poly> primes;
        for (const Poly& cand : pool) {
            if (!(rng() & 1)) continue;
            bool ok = true;
            for (const Poly& p : primes)
                if (gcd(cand, p).degree() != 0) ok = false;
            if (ok) primes.push_back(cand);
            if (primes.size() == 3) break;
        }
        if (primes.empty()) continue;
        std::sort(primes.begin(), primes.end());
        SieveProblem prob;
        prob.spec = F;
        prob.N = 3;
        prob.Q = 2;
        prob.big_n = SieveProblem::full_window(F, 3, 2);
        prob.primes = primes;
        for (const Poly& p : primes) {
            std::vector<Poly> res;
            long long qd = 1;
            for (int i = 0; i < p.degree(); ++i) qd *= q;
            for (const Poly& h : enumerate_polys(F, p.degree() - 1, EnumMode::AllDegAtMost))
                if ((rng() % 3) == 0 && static_cast<long long>(res.size()) + 1 < qd) res.push_back(h);
            prob.omega[p.code()] = res;
        }
        prob.validate();
        CoeffVec coeffs = CoeffVec::zero(F, 3);
        for (auto& a : coeffs.a) a = entry(rng);
        auto kw = kappa_set(F, primes, 2);
        residue_identity_check(coeffs, kw.kappa[rng() % kw.kappa.size()], prob);
        auto br = summed_weight_check(coeffs, prob);
        if (!br.dropped_term_variant_held) ++dropped_term_failures;
        ++done;
    }
    j["residue_identities"] = Json{{"instances", done},
                       {"ok", true},
                       {"dropped_term_failures", dropped_term_failures}};

    // operator-norm duality on seeded instances
    std::mt19937_64 rng2(cfg.seed ^ 0xd0a117ull);
    int checked = 0;
    double worst_gap = 0;
    while (checked < 50) {
        int q = (rng2() & 1) ? 2 : 3;
        auto F = FieldSpec::make_q(q);
        std::vector<Poly> pool;
        for (int d = 1; d <= 2; ++d)
            for (const Poly& f : enumerate_polys(F, d, EnumMode::MonicExactDegree)) pool.push_back(f);
        std::vector<Poly> S;
        for (const Poly& f : pool)
            if (rng2() & 1) S.push_back(f);
        if (S.empty()) continue;
        int N = static_cast<int>(rng2() % 4);
        auto res = operator_norm(F, N, S);
        worst_gap = std::max(worst_gap, res.duality_gap_rel);
        ++checked;
    }
    j["duality"] = Json{{"instances", checked}, {"worst_relative_gap", worst_gap}, {"ok", true}};
    return j;
}

Json run_ls_ratio(const ExperimentConfig& cfg, bool dry) {
    auto F = cfg.make_field();
    auto S = parse_poly_list(F, cfg.moduli);
    int Q = cfg.Q;
    if (Q < 0)
        for (const Poly& f : S) Q = std::max(Q, f.degree());
    if (dry) {
        auto pts = farey_system(S);
        long long dim = 1;
        for (int i = 0; i <= cfg.N; ++i) dim *= F->q();
        return Json{{"planned_points", pts.size()}, {"planned_coeff_dim", dim}};
    }
    std::vector<ScanFamilyInstance> fam{{F, cfg.N, Q, S}};
    auto mode = cfg.mode == "eigen" ? ScanMode::Eigen : ScanMode::RandomCoeffs;
    OperatorNormOptions opts;
    opts.dense_dim_cap = cfg.caps.matrix_dim;
    auto reps = ratio_scan(fam, mode, cfg.seed, cfg.samples, opts);
    return ratio_report_to_json(reps.at(0));
}

Json run_ls_scan(const ExperimentConfig& cfg, bool dry, std::string* witness_out) {
    auto F = cfg.make_field();
    std::vector<int> Ns = cfg.N_list.empty() ? std::vector<int>{0, 1, 2, 3} : cfg.N_list;
    auto fam = subsets_family(F, cfg.max_deg, Ns);
    if (dry) {
        return Json{{"planned_instances", fam.size()},
                    {"planned_subsets", fam.size() / Ns.size()},
                    {"N_list", Ns}};
    }
    auto mode = cfg.mode == "eigen" ? ScanMode::Eigen : ScanMode::RandomCoeffs;
    OperatorNormOptions opts;
    opts.dense_dim_cap = cfg.caps.matrix_dim;
    auto reps = ratio_scan(fam, mode, cfg.seed, cfg.samples, opts);
    Json payload{{"q", F->q()},
                 {"max_deg", cfg.max_deg},
                 {"N_list", Ns},
                 {"mode", cfg.mode},
                 {"instances", ratio_reports_to_json(reps)}};
    long long violations = 0;
    Json witnesses = Json::array();
    for (const auto& r : reps)
        if (r.violation) {
            ++violations;
            witnesses.push_back(Json{{"field", field_to_json(F)},
                                     {"q", r.q},
                                     {"N", r.N},
                                     {"Q", r.Q},
                                     {"moduli", polys_to_json(r.moduli)},
                                     {"witness", complex_vec_to_json(r.witness)},
                                     {"lhs", r.lhs},
                                     {"reverified_lhs", r.reverified_lhs},
                                     {"trivial_rhs_constant", r.trivial_rhs_constant}});
        }
    payload["violations"] = violations;
    if (witness_out && violations > 0) *witness_out = witnesses.dump(2) + "\n";
    return payload;
}

Json run_ls_mult(const ExperimentConfig& cfg, bool dry) {
    auto F = cfg.make_field();
    auto S = parse_poly_list(F, cfg.moduli.empty() ? std::vector<std::string>{"t"} : cfg.moduli);
    if (dry) {
        long long phis = 0;
        for (const Poly& f : S) phis += euler_phi(f);
        return Json{{"planned_moduli", S.size()}, {"planned_character_count", phis}};
    }
    auto coeffs = seeded_coeffs(F, cfg.N, cfg.seed);
    auto rep = mult_sieve_lhs(F, cfg.N, S, coeffs, cfg.caps.unit_group);
    return mult_report_to_json(rep);
}

Json run_audit(const ExperimentConfig& cfg, bool dry) {
    auto F = cfg.make_field();
    int N = cfg.N >= 0 ? cfg.N : cfg.max_deg;
    int Q = cfg.Q >= 0 ? cfg.Q : default_audit_Q(N);
    std::vector<Poly> famF, famG;
    if (!cfg.family_f.empty()) {
        famF = parse_poly_list(F, cfg.family_f);
        famG = cfg.family_g.empty() ? famF : parse_poly_list(F, cfg.family_g);
    } else {
        std::vector<Poly> pool;
        for (int d = 0; d <= cfg.max_deg; ++d)
            for (const Poly& f : enumerate_polys(F, d, EnumMode::MonicExactDegree)) pool.push_back(f);
        std::mt19937_64 rng(cfg.seed ^ 0xa0d17);
        auto draw = [&] {
            std::vector<Poly> fam;
            for (int i = 0; i < cfg.family_size; ++i) fam.push_back(pool[rng() % pool.size()]);
            std::sort(fam.begin(), fam.end());
            fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
            return fam;
        };
        famF = draw();
        famG = draw();
    }
    if (dry) {
        long long irr = count_irreducibles(F->q(), Q);
        return Json{{"planned_irreducible_moduli", irr},
                    {"family_f_size", famF.size()},
                    {"family_g_size", famG.size()}};
    }
    auto rep = shifted_product_audit(famF, famG, F, Q, cfg.caps.unit_group);
    Json j = audit_report_to_json(rep);
    j["family_f"] = polys_to_json(famF);
    j["family_g"] = polys_to_json(famG);
    return j;
}

Json run_montgomery(const ExperimentConfig& cfg, bool dry, const std::string& omega_spec) {
    auto F = cfg.make_field();
    int N = cfg.N;
    int Q = cfg.Q >= 0 ? cfg.Q : N - 1;
    SieveProblem prob;
    prob.spec = F;
    prob.N = N;
    prob.Q = Q;
    prob.big_n = SieveProblem::full_window(F, N, Q);
    prob.primes = parse_poly_list(F, cfg.moduli);
    std::sort(prob.primes.begin(), prob.primes.end());
    if (!omega_spec.empty()) {
        // "P:r1|r2, P2:r3" with poly syntax inside
        std::stringstream ss(omega_spec);
        std::string entry;
        while (std::getline(ss, entry, ',')) {
            auto colon = entry.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("montgomery: omega entries look like P:r1|r2");
            Poly P = parse_poly(F, entry.substr(0, colon));
            std::vector<Poly> residues;
            std::stringstream rs(entry.substr(colon + 1));
            std::string rtext;
            while (std::getline(rs, rtext, '|'))
                if (!rtext.empty()) residues.push_back(parse_poly(F, rtext));
            prob.omega[P.code()] = residues;
        }
    } else {
        std::mt19937_64 rng(cfg.seed ^ 0x307406);
        for (const Poly& P : prob.primes) {
            long long qd = 1;
            for (int i = 0; i < P.degree(); ++i) qd *= F->q();
            std::vector<Poly> res;
            for (const Poly& h : enumerate_polys(F, P.degree() - 1, EnumMode::AllDegAtMost))
                if ((rng() % 3) == 0 && static_cast<long long>(res.size()) + 1 < qd) res.push_back(h);
            prob.omega[P.code()] = res;
        }
    }
    prob.validate();
    if (dry) {
        return Json{{"planned_window", prob.big_n.size()},
                    {"planned_primes", prob.primes.size()},
                    {"planned_coeff_dim", CoeffVec::zero(F, N).dim()}};
    }
    OperatorNormOptions opts;
    opts.dense_dim_cap = cfg.caps.matrix_dim;
    auto mrep = montgomery_bound(prob, /*check_verified_regime=*/true, opts);
    auto surv = survivors(prob);
    CoeffVec ind = CoeffVec::indicator(F, N, surv);
    auto kw = kappa_set(F, prob.primes, Q, cfg.caps.subset_products);
    Poly Rfull = kw.kappa.empty() ? Poly::one(F) : kw.kappa.back();
    auto l1 = residue_identity_check(ind, Rfull, prob);
    auto b1 = summed_weight_check(ind, prob);
    Json j{{"field", field_to_json(F)},
           {"N", N},
           {"Q", Q},
           {"primes", polys_to_json(prob.primes)},
           {"montgomery", montgomery_report_to_json(mrep)},
           {"lemma1", residue_identity_report_to_json(l1)},
           {"summed_weight", summed_weight_report_to_json(b1)}};
    Json omegas = Json::array();
    for (const Poly& P : prob.primes)
        omegas.push_back(Json{{"P", P.str()}, {"residues", polys_to_json(prob.omega.at(P.code()))}});
    j["omega"] = omegas;
    return j;
}

Json run_pset(const ExperimentConfig& cfg, bool dry) {
    auto F = cfg.make_field();
    auto S = parse_poly_list(F, cfg.family_f);
    if (dry) return Json{{"planned_set_size", S.size()}, {"planned_rows", std::max(0, cfg.N - 1)}};
    auto rep = pset_pipeline(F, S, cfg.N);
    Json j = pset_report_to_json(rep);
    j["set"] = polys_to_json(S);
    return j;
}

Json run_sqfree(const ExperimentConfig& cfg, bool dry) {
    auto F = cfg.make_field();
    std::vector<Poly> fam = parse_poly_list(F, cfg.family_f);
    std::optional<int> Q;
    if (cfg.Q >= 0) Q = cfg.Q;
    if (dry) return Json{{"planned_family_size", fam.size()}, {"Q", Q ? *Q : (cfg.N + 2) / 3}};
    auto rep = squarefree_pipeline(F, fam, cfg.N, Q);
    Json j = sqfree_report_to_json(rep);
    j["family"] = polys_to_json(fam);
    return j;
}

Json run_shifted(const ExperimentConfig& cfg, bool dry) {
    auto F = cfg.make_field();
    if (dry) {
        long long verts = 0;
        for (int d = 0; d <= cfg.N; ++d) {
            long long c = 1;
            for (int i = 0; i < d; ++i) c *= F->q();
            verts += c;
        }
        return Json{{"planned_vertices", verts}};
    }
    auto rep = max_shifted_product_family(F, cfg.N, cfg.flag, cfg.caps.biclique_vertices);
    return extremal_report_to_json(rep);
}

Json run_trajectory(const ExperimentConfig& cfg, bool dry, std::string* csv_out) {
    auto F = cfg.make_field();
    if (dry) return Json{{"planned_rows", cfg.N_list.size()}, {"problem", cfg.problem}};
    auto tr = exponent_trajectory(cfg.problem, F, cfg.N_list, cfg.flag);
    if (csv_out) *csv_out = trajectory_to_csv(tr);
    return trajectory_to_json(tr);
}

Json run_pnt(const ExperimentConfig& cfg, bool dry) {
    auto F = cfg.make_field();
    int dmax = cfg.N >= 1 ? cfg.N : (F->q() == 2 ? 8 : 5);
    if (dry) return Json{{"planned_degrees", dmax}};
    Json rows = Json::array();
    bool all_match = true;
    for (int d = 1; d <= dmax; ++d) {
        long long closed = count_irreducibles(F->q(), d);
        long long direct = 0;
        for (const Poly& f : enumerate_polys(F, d, EnumMode::MonicExactDegree, cfg.caps.enumeration))
            if (is_irreducible(f)) ++direct;
        bool match = closed == direct;
        all_match = all_match && match;
        rows.push_back(Json{{"d", d}, {"closed_form", closed}, {"exhaustive", direct}, {"match", match}});
    }
    if (!all_match) throw identity_failure("pnt: closed form disagrees with exhaustive count");
    return Json{{"q", F->q()}, {"rows", rows}, {"ok", all_match}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qtsieve: function-field large-sieve laboratory"};
    app.require_subcommand(1);

    const std::vector<std::string> kinds{"verify", "ls-ratio", "ls-scan", "ls-mult", "audit",
                                         "montgomery", "pset", "sqfree", "shifted", "trajectory",
                                         "pnt"};
    std::map<std::string, CommonArgs> args;
    std::map<std::string, CLI::App*> cmds;
    std::string omega_spec;
    for (const auto& kind : kinds) {
        CLI::App* cmd = app.add_subcommand(kind, "run the '" + kind + "' experiment");
        add_common(cmd, args[kind]);
        if (kind == "montgomery")
            cmd->add_option("--omega", omega_spec, "forbidden classes, e.g. \"t:0|1,t+1:0\"");
        cmds[kind] = cmd;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string kind;
    for (const auto& [name, cmd] : cmds)
        if (cmd->parsed()) kind = name;

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        const CommonArgs& common = args[kind];
        ExperimentConfig cfg = build_config(common, kind);
        Json payload;
        std::string extra_name, extra_content;
        if (kind == "verify") payload = run_verify(cfg, common.dry_run);
        else if (kind == "ls-ratio") payload = run_ls_ratio(cfg, common.dry_run);
        else if (kind == "ls-scan") {
            std::string witnesses;
            payload = run_ls_scan(cfg, common.dry_run, &witnesses);
            if (!witnesses.empty()) {
                extra_name = "witnesses.json";
                extra_content = witnesses;
            }
        } else if (kind == "ls-mult") payload = run_ls_mult(cfg, common.dry_run);
        else if (kind == "audit") payload = run_audit(cfg, common.dry_run);
        else if (kind == "montgomery") payload = run_montgomery(cfg, common.dry_run, omega_spec);
        else if (kind == "pset") payload = run_pset(cfg, common.dry_run);
        else if (kind == "sqfree") payload = run_sqfree(cfg, common.dry_run);
        else if (kind == "shifted") payload = run_shifted(cfg, common.dry_run);
        else if (kind == "trajectory") {
            std::string csv;
            payload = run_trajectory(cfg, common.dry_run, &csv);
            if (!csv.empty()) {
                extra_name = "trajectory.csv";
                extra_content = csv;
            }
        } else if (kind == "pnt") payload = run_pnt(cfg, common.dry_run);

        if (common.dry_run) {
            std::cout << payload.dump(2) << "\n";
            return 0;
        }
        std::cout << payload.dump(2) << "\n";
        rc = finish(cfg, common, payload, extra_name, extra_content);
    } catch (const identity_failure& e) {
        std::cerr << "identity failure: " << e.what() << "\n";
        rc = 3;
    } catch (const numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        rc = 3;
    } catch (const resource_cap_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        rc = 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        rc = 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        rc = 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 1;
    }
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "wall time: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << " ms\n";
    return rc;
}
