#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtsieve/poly.hpp"
#include "qtsieve/rational.hpp"
#include "qtsieve/sieve_lab.hpp"

namespace qtsieve {

// The object of the arithmetic form of the large sieve: a window of monic
// polynomials, pairwise coprime sieving moduli with forbidden residue
// classes, and the weight data derived from them.
struct SieveProblem {
    FieldPtr spec;
    int N = 0;
    int Q = 0;                                  // Q < N
    std::vector<Poly> big_n;                    // monic, Q < deg <= N
    std::vector<Poly> primes;                   // pairwise coprime monic, deg <= Q, sorted
    std::map<unsigned long long, std::vector<Poly>> omega;  // P.code() -> distinct residues mod P

    void validate() const;                      // throws std::invalid_argument
    long long w(const Poly& P) const;           // |Omega_P|, 0 off the prime set
    long long q_pow(int e) const;

    // all monic with Q < deg <= N
    static std::vector<Poly> full_window(const FieldPtr& spec, int N, int Q);
};

// Exact enumeration of the survivors: elements of big_n avoiding every
// forbidden class of every prime.
std::vector<Poly> survivors(const SieveProblem& prob);

struct KappaWeights {
    std::vector<Poly> kappa;       // {1} and all products of distinct primes, sorted
    long long a_kappa_q = 0;       // #{k in kappa : deg k <= Q}
};

KappaWeights kappa_set(const FieldPtr& spec, const std::vector<Poly>& primes, int Q,
                       std::size_t subset_cap = 20);

// g(R) = prod_{P | R} w(P) / (q^{deg P} - w(P)) for R in kappa, else 0.
Rat g_weight(const Poly& R, const SieveProblem& prob);

struct MontgomeryReport {
    Rat numerator;           // q^{N+1} + A_K(Q) 2^Q q^{Q-1}
    Rat denominator;         // sum over monic deg <= Q of g(R)
    Rat bound;               // numerator / denominator
    long long a_kappa_q = 0;
    long long survivor_count = 0;
    bool count_within_bound = false;      // recorded, asserted only in the verified regime
    bool no_sieve_information = false;    // empty prime set or all weights zero
    // conditional-status flag per the design decisions:
    // identities are unconditional; the bound rests on the unproven
    // sparse large-sieve inequality
    bool unconditional_identities_passed = true;
    bool bound_verified_regime = false;
    double verified_lambda = 0;           // operator norm over {1} + divisor moduli
    double verified_constant = 0;         // q^{N+1} + #moduli q^{Q-1}
    double bare_lambda = 0;               // same without the trivial modulus
    double bare_constant = 0;
    std::vector<Poly> divisor_moduli;     // D != 1 monic dividing some R in T
    std::vector<std::pair<Poly, Rat>> weights;  // g(R) over R in T
};

// Verified-regime check runs operator_norm over {1} union the divisor moduli
// of T = {k in kappa : deg k <= Q}; skipped when check_verified_regime is off.
MontgomeryReport montgomery_bound(const SieveProblem& prob, bool check_verified_regime = false,
                                  const OperatorNormOptions& opts = {});

// Integer coefficient vector a_g over deg g <= N, indexed by g.code().
struct CoeffVec {
    FieldPtr spec;
    int N = 0;
    std::vector<long long> a;

    long long dim() const;
    static CoeffVec zero(const FieldPtr& spec, int N);
    static CoeffVec indicator(const FieldPtr& spec, int N, const std::vector<Poly>& support);
};

// S(r/R) = sum_g a_g e(g r/R) as an exact cyclotomic value.
CycValue s_value(const CoeffVec& coeffs, const Poly& r, const Poly& R);

// Z(R,h) = sum_{g = h mod R} a_g and Z = S(0).
struct ClassSumTrace {
    Poly modulus;
    long long z_total = 0;
    std::map<unsigned long long, long long> z_classes;  // h.code() -> Z(R,h)
};

ClassSumTrace class_sums(const CoeffVec& coeffs, const Poly& R);

// w'(P) = #{h mod P : a_g = 0 for all g = h mod P}
long long w_prime(const CoeffVec& coeffs, const Poly& P);
// g'(R) = prod_{P | R} w'(P) / (q^{deg P} - w(P)) on kappa, else 0.
Rat g_prime_weight(const Poly& R, const SieveProblem& prob, const CoeffVec& coeffs);

struct ResidueIdentityReport {
    std::vector<ClassSumTrace> traces;           // one per prime checked
    bool parseval_full = false;       // (i)  sum_r |S(r/P)|^2 = q^{deg P} sum_h |Z|^2
    bool parseval_punctured = false;           // (ii) permits subtracting |Z|^2
    bool weight_inequality_holds = false;                // (iii) g'(R) |Z|^2 <= admissible sum
    Rat gprime_R;
    long long admissible_sum = 0;
    long long z_squared = 0;
};

// Exact verification of the Parseval-type residue identities for every P in
// the prime set and of the weight inequality for the given R. Throws
// identity_failure on the exact identities.
ResidueIdentityReport residue_identity_check(const CoeffVec& coeffs, const Poly& R, const SieveProblem& prob);

struct SummedWeightReport {
    Rat gprime_sum;                  // sum over monic deg <= Q (supported on T)
    long long z_squared = 0;
    long long summed_rhs = 0;          // sum_{R in T} sum_{admissible r} |S(r/R)|^2
    long long divisor_sum = 0;         // sum_{D != 1 | some R in T} sum_{(s,D)=1} |S(s/D)|^2
    bool summed_inequality = false; // (sum g') |Z|^2 <= summed rhs   [unconditional]
    bool partition_identity = false;   // summed rhs = |Z|^2 + divisor_sum [exact]
    bool dropped_term_variant_held = false;   // (sum g') |Z|^2 <= divisor_sum  [reported only]
    long long divisor_count = 0;
    long long divisor_count_bound = 0; // 2^Q A_K(Q)
    bool degenerate_no_primes = false;
};

// Asserts the summed weight inequality and the exact reduced-fraction
// partition identity; the variant that drops the |S(0)|^2 term can fail
// and is only recorded.
SummedWeightReport summed_weight_check(const CoeffVec& coeffs, const SieveProblem& prob);

// ---- P-set pipeline ----

struct PsetRow {
    int Q = 0;
    std::vector<Poly> primes;
    bool degenerate = false;        // some Omega_P covers all classes (no larger elements)
    std::string note;
    bool w_lower_bound_ok = false;  // w(P) >= 1 + floor(q^{deg P}/2), odd q
    long long survivor_count = 0;
    bool survivors_equal_window = false;  // N* = N (P-set structure)
    std::optional<Rat> bound;
    bool ob1_holds = false;         // A_S(N) <= #N* + q^Q
};

struct PsetReport {
    long long a_s_n = 0;            // #{f in S : deg f <= N}
    bool char2_vacuous = false;
    std::vector<PsetRow> rows;
    std::optional<int> best_q;      // Q minimizing the bound
};

PsetReport pset_pipeline(const FieldPtr& spec, const std::vector<Poly>& pset, int N);

// ---- square-free-sum pipeline ----

struct SqfreeReport {
    int Q = 0;
    std::vector<Poly> prime_squares;
    bool family_valid = false;       // all f+f' square-free (including f = f')
    bool w_lower_bound_ok = false;   // asserted only when family_valid and q odd
    long long family_size = 0;
    long long survivor_count = 0;
    std::optional<Rat> bound;
    bool obs1_holds = false;         // #F <= #N* + q^Q
    long long pnt_lower_irreducibles = 0;  // #{P irreducible, deg P <= Q/2}
    std::vector<long long> omega_sizes;
    std::vector<long long> neg_class_sizes;  // #{-f mod P^2} for comparison
};

SqfreeReport squarefree_pipeline(const FieldPtr& spec, const std::vector<Poly>& family, int N,
                                 std::optional<int> Q_override = std::nullopt);

} // namespace qtsieve
