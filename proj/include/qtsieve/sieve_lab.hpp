#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qtsieve/characters.hpp"
#include "qtsieve/poly.hpp"

namespace qtsieve {

using Cplx = std::complex<double>;

// The object of the additive large-sieve inequality: moduli S of degree <= Q
// and a coefficient vector a_g over all deg g <= N (indexed by g.code()).
struct SieveInstance {
    FieldPtr spec;
    int N = 0;
    int Q = 0;
    std::vector<Poly> moduli;   // non-zero monic, deg <= Q, distinct, sorted
    std::vector<Cplx> coeffs;   // size q^{N+1}

    long long coeff_dim() const;
    void validate() const;      // throws std::invalid_argument
};

// Farey points (f, r): f in S, r mod f, gcd(r, f) = 1; deterministic order
// (moduli ascending by code, residues ascending by code).
struct FareyPoint {
    int modulus_index;
    Poly r;
};
std::vector<FareyPoint> farey_system(const std::vector<Poly>& moduli);

// sum_{deg g <= N} a_g e(g r / f)
Cplx exponential_sum(const SieveInstance& inst, const Poly& f, const Poly& r);

// left side of the sparse large-sieve inequality: sum over Farey points of
// |exponential_sum|^2
double sieve_lhs(const SieveInstance& inst);

struct OperatorNormOptions {
    double tol = 1e-10;          // Rayleigh-quotient drift tolerance
    long long max_iters = 100000;
    double duality_rel_tol = 1e-6;
    std::size_t dense_dim_cap = 4096;
};

struct OperatorNormResult {
    double lambda_point = 0;     // from the point-indexed Gram
    double lambda_coeff = 0;     // from the coefficient-indexed Gram
    std::vector<Cplx> eigvec;    // coefficient-side top eigenvector, unit norm
    long long iterations_point = 0;
    long long iterations_coeff = 0;
    long long n_points = 0;
    double duality_gap_rel = 0;
    double lambda() const { return lambda_point; }
};

// Largest eigenvalue of the Hermitian Gram matrix
// G[(f,r),(f',r')] = sum_{deg g <= N} e(g (r/f - r'/f')), by power iteration
// with the deterministic all-ones start. Also computes the coefficient-side
// value and enforces the duality check.
OperatorNormResult operator_norm(const FieldPtr& spec, int N, const std::vector<Poly>& moduli,
                                 const OperatorNormOptions& opts = {});

// One point Gram entry as an exact cyclotomic sum (the direct route; the
// assembled Gram uses the t^j-coefficient triviality test, and tests pin the
// two routes against each other).
CycValue gram_entry_direct(const FieldPtr& spec, int N, const Poly& f, const Poly& r,
                           const Poly& f2, const Poly& r2);
long long gram_entry_fast(const FieldPtr& spec, int N, const Poly& f, const Poly& r,
                          const Poly& f2, const Poly& r2);

struct RatioReport {
    int q = 0;
    int N = 0;
    int Q = 0;
    std::vector<Poly> moduli;
    std::string mode;                 // "eigen" | "random-coeffs"
    double lhs = 0;
    double coeff_norm2 = 0;           // sum |a_g|^2
    double trivial_rhs_constant = 0;  // q^{N+1} + #S q^{Q-1}
    double conjecture_base = 0;       // q^N + #S q^Q
    double ratio = 0;                 // lhs / (trivial_rhs_constant * coeff_norm2)
    double implied_epsilon_factor = 0;
    std::vector<Cplx> witness;
    double lambda_point = 0;
    double lambda_coeff = 0;
    bool violation = false;           // ratio > 1: the unweakened inequality fails
    double reverified_lhs = 0;        // direct evaluation with the witness when flagged
};

enum class ScanMode { Eigen, RandomCoeffs };

struct ScanFamilyInstance {
    FieldPtr spec;
    int N;
    int Q;
    std::vector<Poly> moduli;
};

// Runs instances and returns reports sorted by ratio descending (ties by
// generation order). Random mode draws `samples` seeded vectors per instance
// and keeps the best.
std::vector<RatioReport> ratio_scan(const std::vector<ScanFamilyInstance>& family, ScanMode mode,
                                    std::uint64_t seed = 0, int samples = 8,
                                    const OperatorNormOptions& opts = {});

// All nonempty subsets of the monic polynomials of degree <= max_deg, with
// Q = max degree in the subset; the standard scan family.
std::vector<ScanFamilyInstance> subsets_family(const FieldPtr& spec, int max_deg,
                                               const std::vector<int>& Ns);

struct MultSieveReport {
    double lhs = 0;                   // sum_f q^{deg f}/phi(f) sum_{chi primitive} |...|^2
    double coeff_norm2 = 0;
    double trivial_rhs_constant = 0;  // same constant as the additive case; not asserted
    double conjecture_base = 0;
    long long primitive_characters = 0;
};

MultSieveReport mult_sieve_lhs(const FieldPtr& spec, int N, const std::vector<Poly>& moduli,
                               const std::vector<Cplx>& coeffs,
                               std::size_t unit_cap = UnitGroup::kDefaultCap);

// One modulus row of the shifted-product audit.
struct AuditRow {
    Poly P;
    long long direct_count = 0;        // #{(f,g): fg+1 = 0 mod P^2}
    bool identity_exact = false;       // phi(P^2) * direct == sum_chi conj(chi(-1)) A_chi B_chi
    long long coprime_pairs = 0;       // #{(f,g): (fg,P)=1}
    long long sf_contrib = 0;          // sum_{chi != chi_0} |A_chi|^2
    long long sg_contrib = 0;
    double mid_contrib = 0;            // sum_{chi != chi_0} |A_chi||B_chi|
};

struct AuditReport {
    int Q = 0;
    std::vector<AuditRow> rows;
    long long S_total = 0;       // script-S: sum of coprime pair counts
    long long SF = 0;            // script-S_F
    long long SG = 0;
    double mid_total = 0;        // sum_P sum_{chi != chi_0} |A||B|
    bool hypothesis_ok = false;  // no fg+1 divisible by any P^2
    bool cs_mid_ok = false;      // mid_total <= sqrt(SF*SG) (unconditional CS)
    bool cs_chain_ok = false;    // S_total <= sqrt(SF*SG); a theorem only when hypothesis_ok
};

// Exact shifted-product audit over S = {monic irreducible of degree Q}. Throws
// identity_failure if the character-sum count disagrees with the direct
// count for some P, or if an unconditionally-valid inequality fails.
AuditReport shifted_product_audit(const std::vector<Poly>& family_f, const std::vector<Poly>& family_g,
                          const FieldPtr& spec, int Q,
                          std::size_t unit_cap = UnitGroup::kDefaultCap);

inline int default_audit_Q(int N) { return (N + 2) / 3; }  // ceil(N/3)

} // namespace qtsieve
