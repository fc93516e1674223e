#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qtsieve/config.hpp"
#include "qtsieve/extremal.hpp"
#include "qtsieve/montgomery.hpp"
#include "qtsieve/sieve_lab.hpp"

namespace qtsieve {

using Json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "0.1.0";

Json field_to_json(const FieldPtr& spec);
Json poly_to_json(const Poly& f);        // {str, coeffs: [[coord...]...]}
Json polys_to_json(const std::vector<Poly>& fs);
Json cyc_to_json(const CycValue& v);     // {order, coeffs}
Json rat_to_json(const Rat& r);          // "num/den" string
Json complex_vec_to_json(const std::vector<Cplx>& v);
Json character_to_json(const Character& chi);  // {modulus, exponents, order}

// SieveProblem round-trip: {field, N, Q, primes, omega, family}
Json sieve_problem_to_json(const SieveProblem& prob);
SieveProblem sieve_problem_from_json(const Json& j);

Json ratio_report_to_json(const RatioReport& rep);
Json ratio_reports_to_json(const std::vector<RatioReport>& reps);
Json mult_report_to_json(const MultSieveReport& rep);
Json audit_report_to_json(const AuditReport& rep);
Json montgomery_report_to_json(const MontgomeryReport& rep);
Json residue_identity_report_to_json(const ResidueIdentityReport& rep);
Json summed_weight_report_to_json(const SummedWeightReport& rep);
Json pset_report_to_json(const PsetReport& rep);
Json sqfree_report_to_json(const SqfreeReport& rep);
Json extremal_report_to_json(const ExtremalReport& rep);
Json trajectory_to_json(const Trajectory& tr);
std::string trajectory_to_csv(const Trajectory& tr);

// RunReport envelope: config echo + versioned payload. Timing never enters
// the JSON (reruns must be byte-identical); the CLI prints it to stderr.
Json run_report(const ExperimentConfig& cfg, Json payload);

struct DiffEntry {
    std::string path;
    std::string expected;
    std::string actual;
};

// Exact comparison for integers/strings/bools, tolerance for floats
// (|a-b| <= tol * max(1, |a|, |b|)). Arrays and objects compare
// structurally; missing/extra keys are reported.
std::vector<DiffEntry> compare_json(const Json& expected, const Json& actual, double tol = 1e-9);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);  // throws on missing

} // namespace qtsieve
