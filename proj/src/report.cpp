#include "qtsieve/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qtsieve {

Json field_to_json(const FieldPtr& spec) {
    return Json{{"p", spec->p()}, {"n", spec->n()}, {"modulus", spec->modulus()}};
}

Json poly_to_json(const Poly& f) {
    Json coeffs = Json::array();
    for (int c : f.coeffs()) coeffs.push_back(f.spec()->coords(c));
    return Json{{"str", f.str()}, {"coeffs", coeffs}};
}

Json polys_to_json(const std::vector<Poly>& fs) {
    Json arr = Json::array();
    for (const Poly& f : fs) arr.push_back(f.str());
    return arr;
}

Json cyc_to_json(const CycValue& v) {
    return Json{{"order", v.order()}, {"coeffs", v.coeffs()}};
}

Json rat_to_json(const Rat& r) { return r.str(); }

Json complex_vec_to_json(const std::vector<Cplx>& v) {
    Json arr = Json::array();
    for (const Cplx& z : v) arr.push_back(Json::array({z.real(), z.imag()}));
    return arr;
}

Json character_to_json(const Character& chi) {
    return Json{{"modulus", chi.modulus().str()},
                {"exponents", chi.exponents()},
                {"order", chi.group()->exponent()}};
}

Json sieve_problem_to_json(const SieveProblem& prob) {
    Json omega = Json::array();
    for (const Poly& P : prob.primes) {
        auto it = prob.omega.find(P.code());
        Json residues = Json::array();
        if (it != prob.omega.end())
            for (const Poly& r : it->second) residues.push_back(r.str());
        omega.push_back(Json{{"P", P.str()}, {"residues", residues}});
    }
    return Json{{"field", field_to_json(prob.spec)},
                {"N", prob.N},
                {"Q", prob.Q},
                {"primes", polys_to_json(prob.primes)},
                {"omega", omega},
                {"family", polys_to_json(prob.big_n)}};
}

SieveProblem sieve_problem_from_json(const Json& j) {
    SieveProblem prob;
    const Json& fj = j.at("field");
    prob.spec = FieldSpec::make(fj.at("p").get<int>(), fj.at("n").get<int>(),
                                fj.at("modulus").get<std::vector<int>>());
    prob.N = j.at("N").get<int>();
    prob.Q = j.at("Q").get<int>();
    for (const auto& s : j.at("primes")) prob.primes.push_back(parse_poly(prob.spec, s.get<std::string>()));
    for (const auto& entry : j.at("omega")) {
        Poly P = parse_poly(prob.spec, entry.at("P").get<std::string>());
        std::vector<Poly> residues;
        for (const auto& r : entry.at("residues"))
            residues.push_back(parse_poly(prob.spec, r.get<std::string>()));
        prob.omega[P.code()] = residues;
    }
    for (const auto& s : j.at("family")) prob.big_n.push_back(parse_poly(prob.spec, s.get<std::string>()));
    prob.validate();
    return prob;
}

Json ratio_report_to_json(const RatioReport& rep) {
    Json j{{"q", rep.q},
           {"N", rep.N},
           {"Q", rep.Q},
           {"moduli", polys_to_json(rep.moduli)},
           {"mode", rep.mode},
           {"lhs", rep.lhs},
           {"coeff_norm2", rep.coeff_norm2},
           {"trivial_rhs_constant", rep.trivial_rhs_constant},
           {"conjecture_base", rep.conjecture_base},
           {"ratio", rep.ratio},
           {"implied_epsilon_factor", rep.implied_epsilon_factor},
           {"lambda_point", rep.lambda_point},
           {"lambda_coeff", rep.lambda_coeff},
           {"violation", rep.violation}};
    if (rep.violation) {
        j["witness"] = complex_vec_to_json(rep.witness);
        j["reverified_lhs"] = rep.reverified_lhs;
    }
    return j;
}

Json ratio_reports_to_json(const std::vector<RatioReport>& reps) {
    Json arr = Json::array();
    for (const auto& r : reps) arr.push_back(ratio_report_to_json(r));
    return arr;
}

Json mult_report_to_json(const MultSieveReport& rep) {
    return Json{{"lhs", rep.lhs},
                {"coeff_norm2", rep.coeff_norm2},
                {"trivial_rhs_constant", rep.trivial_rhs_constant},
                {"conjecture_base", rep.conjecture_base},
                {"primitive_characters", rep.primitive_characters}};
}

Json audit_report_to_json(const AuditReport& rep) {
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
        rows.push_back(Json{{"P", row.P.str()},
                            {"direct_count", row.direct_count},
                            {"identity_exact", row.identity_exact},
                            {"coprime_pairs", row.coprime_pairs},
                            {"sf_contrib", row.sf_contrib},
                            {"sg_contrib", row.sg_contrib},
                            {"mid_contrib", row.mid_contrib}});
    }
    return Json{{"Q", rep.Q},
                {"rows", rows},
                {"S_total", rep.S_total},
                {"SF", rep.SF},
                {"SG", rep.SG},
                {"mid_total", rep.mid_total},
                {"hypothesis_ok", rep.hypothesis_ok},
                {"cs_mid_ok", rep.cs_mid_ok},
                {"cs_chain_ok", rep.cs_chain_ok}};
}

Json montgomery_report_to_json(const MontgomeryReport& rep) {
    Json weights = Json::array();
    for (const auto& [R, g] : rep.weights)
        weights.push_back(Json{{"R", R.str()}, {"g", rat_to_json(g)}});
    Json j{{"numerator", rat_to_json(rep.numerator)},
           {"denominator", rat_to_json(rep.denominator)},
           {"bound", rat_to_json(rep.bound)},
           {"a_kappa_q", rep.a_kappa_q},
           {"survivor_count", rep.survivor_count},
           {"count_within_bound", rep.count_within_bound},
           {"no_sieve_information", rep.no_sieve_information},
           {"unconditional_identities_passed", rep.unconditional_identities_passed},
           {"bound_verified_regime", rep.bound_verified_regime},
           {"weights", weights},
           {"divisor_moduli", polys_to_json(rep.divisor_moduli)}};
    if (rep.bound_verified_regime || rep.verified_constant > 0) {
        j["verified_lambda"] = rep.verified_lambda;
        j["verified_constant"] = rep.verified_constant;
        j["bare_lambda"] = rep.bare_lambda;
        j["bare_constant"] = rep.bare_constant;
    }
    return j;
}

Json residue_identity_report_to_json(const ResidueIdentityReport& rep) {
    Json traces = Json::array();
    for (const auto& tr : rep.traces) {
        Json classes = Json::array();
        for (const auto& [code, z] : tr.z_classes)
            classes.push_back(Json::array({code, z}));
        traces.push_back(Json{{"modulus", tr.modulus.str()}, {"z_total", tr.z_total}, {"z_classes", classes}});
    }
    return Json{{"parseval_full", rep.parseval_full},
                {"parseval_punctured", rep.parseval_punctured},
                {"weight_inequality_holds", rep.weight_inequality_holds},
                {"gprime_R", rat_to_json(rep.gprime_R)},
                {"admissible_sum", rep.admissible_sum},
                {"z_squared", rep.z_squared},
                {"traces", traces}};
}

Json summed_weight_report_to_json(const SummedWeightReport& rep) {
    return Json{{"gprime_sum", rat_to_json(rep.gprime_sum)},
                {"z_squared", rep.z_squared},
                {"summed_rhs", rep.summed_rhs},
                {"divisor_sum", rep.divisor_sum},
                {"summed_inequality", rep.summed_inequality},
                {"partition_identity", rep.partition_identity},
                {"dropped_term_variant_held", rep.dropped_term_variant_held},
                {"divisor_count", rep.divisor_count},
                {"divisor_count_bound", rep.divisor_count_bound},
                {"degenerate_no_primes", rep.degenerate_no_primes}};
}

Json pset_report_to_json(const PsetReport& rep) {
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
        Json r{{"Q", row.Q},
               {"primes", polys_to_json(row.primes)},
               {"degenerate", row.degenerate},
               {"w_lower_bound_ok", row.w_lower_bound_ok},
               {"survivor_count", row.survivor_count},
               {"survivors_equal_window", row.survivors_equal_window},
               {"ob1_holds", row.ob1_holds}};
        if (!row.note.empty()) r["note"] = row.note;
        if (row.bound) r["bound"] = rat_to_json(*row.bound);
        rows.push_back(std::move(r));
    }
    Json j{{"a_s_n", rep.a_s_n}, {"char2_vacuous", rep.char2_vacuous}, {"rows", rows}};
    if (rep.best_q) j["best_q"] = *rep.best_q;
    return j;
}

Json sqfree_report_to_json(const SqfreeReport& rep) {
    Json j{{"Q", rep.Q},
           {"prime_squares", polys_to_json(rep.prime_squares)},
           {"family_valid", rep.family_valid},
           {"w_lower_bound_ok", rep.w_lower_bound_ok},
           {"family_size", rep.family_size},
           {"survivor_count", rep.survivor_count},
           {"obs1_holds", rep.obs1_holds},
           {"pnt_lower_irreducibles", rep.pnt_lower_irreducibles},
           {"omega_sizes", rep.omega_sizes},
           {"neg_class_sizes", rep.neg_class_sizes}};
    if (rep.bound) j["bound"] = rat_to_json(*rep.bound);
    return j;
}

Json extremal_report_to_json(const ExtremalReport& rep) {
    Json j{{"kind", rep.kind},
           {"q", rep.q},
           {"N", rep.N},
           {"flag", rep.flag},
           {"max_size", rep.max_size},
           {"witness", polys_to_json(rep.witness)},
           {"exact", rep.exact},
           {"method", rep.method},
           {"reference_inv_phi", rep.reference_inv_phi},
           {"reference_two_thirds", rep.reference_two_thirds}};
    if (!rep.witness_second.empty()) j["witness_second"] = polys_to_json(rep.witness_second);
    if (rep.empirical_exponent) j["empirical_exponent"] = *rep.empirical_exponent;
    else j["empirical_exponent"] = nullptr;
    if (rep.upper_bound) j["upper_bound"] = *rep.upper_bound;
    return j;
}

Json trajectory_to_json(const Trajectory& tr) {
    Json rows = Json::array();
    for (const auto& row : tr.rows) {
        Json r{{"N", row.N}, {"max_size", row.max_size}};
        if (row.empirical_exponent) r["empirical_exponent"] = *row.empirical_exponent;
        else r["empirical_exponent"] = nullptr;
        rows.push_back(std::move(r));
    }
    return Json{{"kind", tr.kind},
                {"q", tr.q},
                {"flag", tr.flag},
                {"rows", rows},
                {"reference_inv_phi", tr.reference_inv_phi},
                {"reference_two_thirds", tr.reference_two_thirds}};
}

std::string trajectory_to_csv(const Trajectory& tr) {
    std::ostringstream os;
    os << "kind,q,flag,N,max_size,empirical_exponent,reference_inv_phi,reference_two_thirds\n";
    for (const auto& row : tr.rows) {
        os << tr.kind << "," << tr.q << "," << (tr.flag ? 1 : 0) << "," << row.N << ","
           << row.max_size << ",";
        if (row.empirical_exponent) os << *row.empirical_exponent;
        os << "," << tr.reference_inv_phi << "," << tr.reference_two_thirds << "\n";
    }
    return os.str();
}

Json run_report(const ExperimentConfig& cfg, Json payload) {
    Json echo{{"kind", cfg.kind}, {"seed", cfg.seed}, {"workers", cfg.workers},
              {"mode", cfg.mode}, {"flag", cfg.flag}, {"epsilon", cfg.epsilon}};
    if (cfg.q > 0) echo["q"] = cfg.q;
    if (cfg.p > 0) { echo["p"] = cfg.p; echo["n"] = cfg.n; }
    if (cfg.N >= 0) echo["N"] = cfg.N;
    if (cfg.Q >= 0) echo["Q"] = cfg.Q;
    if (!cfg.N_list.empty()) echo["N_list"] = cfg.N_list;
    if (!cfg.moduli.empty()) echo["moduli"] = cfg.moduli;
    if (!cfg.family_f.empty()) echo["family_f"] = cfg.family_f;
    if (!cfg.family_g.empty()) echo["family_g"] = cfg.family_g;
    return Json{{"artifact_version", kArtifactVersion}, {"config", echo}, {"payload", std::move(payload)}};
}

namespace {

void diff_rec(const Json& expected, const Json& actual, const std::string& path, double tol,
              std::vector<DiffEntry>& out) {
    auto emit = [&] {
        out.push_back({path.empty() ? "/" : path, expected.dump(), actual.dump()});
    };
    if (expected.is_object() && actual.is_object()) {
        for (auto it = expected.begin(); it != expected.end(); ++it) {
            if (!actual.contains(it.key()))
                out.push_back({path + "/" + it.key(), it.value().dump(), "<missing>"});
            else
                diff_rec(it.value(), actual.at(it.key()), path + "/" + it.key(), tol, out);
        }
        for (auto it = actual.begin(); it != actual.end(); ++it)
            if (!expected.contains(it.key()))
                out.push_back({path + "/" + it.key(), "<missing>", it.value().dump()});
        return;
    }
    if (expected.is_array() && actual.is_array()) {
        if (expected.size() != actual.size()) {
            emit();
            return;
        }
        for (std::size_t i = 0; i < expected.size(); ++i)
            diff_rec(expected[i], actual[i], path + "/" + std::to_string(i), tol, out);
        return;
    }
    if (expected.is_number() && actual.is_number()) {
        if (expected.is_number_integer() && actual.is_number_integer()) {
            if (expected != actual) emit();
            return;
        }
        double a = expected.get<double>(), b = actual.get<double>();
        if (std::abs(a - b) > tol * std::max({1.0, std::abs(a), std::abs(b)})) emit();
        return;
    }
    if (expected != actual) emit();
}

} // namespace

std::vector<DiffEntry> compare_json(const Json& expected, const Json& actual, double tol) {
    std::vector<DiffEntry> out;
    diff_rec(expected, actual, "", tol, out);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace qtsieve
