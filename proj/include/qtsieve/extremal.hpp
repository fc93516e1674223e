#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtsieve/poly.hpp"

namespace qtsieve {

inline constexpr double kInvGoldenRatio = 0.61803398874989484820;  // 2/(1+sqrt 5)
inline constexpr double kTwoThirds = 2.0 / 3.0;

struct PsetCheck {
    bool ok = false;
    // divisibility violation: P | U + V with deg U, deg V > deg P
    std::optional<std::array<Poly, 3>> violation;
    // coprimality violation when requested
    std::optional<std::array<Poly, 2>> coprime_violation;
};

// True iff no P in S divides U + V for U, V in S (not necessarily distinct)
// with deg U, deg V > deg P; optionally also pairwise coprime.
PsetCheck is_pset(const std::vector<Poly>& S, bool require_coprime);

struct ExtremalReport {
    std::string kind;                 // "pset" | "sqfree-sum" | "shifted-product"
    int q = 0;
    int N = 0;
    bool flag = false;                // require_coprime / include_self_pairs / include_all_pairs
    long long max_size = 0;
    std::vector<Poly> witness;        // the extremal set (F for shifted products)
    std::vector<Poly> witness_second; // G for shifted products
    std::optional<double> empirical_exponent;  // log_q(max_size)/N
    double reference_inv_phi = kInvGoldenRatio;
    double reference_two_thirds = kTwoThirds;
    bool exact = true;                // false when a cap forced the heuristic
    std::optional<long long> upper_bound;  // certificate when not exact
    std::string method;
};

// Exact maximum P-set size via depth-first search over monic polynomials of
// degree <= N (ascending code order), include-first so the first maximum is
// the lexicographically least witness. Falls back to greedy beyond the cap.
ExtremalReport max_pset(const FieldPtr& spec, int N, bool require_coprime,
                        std::size_t candidate_cap = 64);

// Exact maximum clique in the square-free-sum compatibility graph.
ExtremalReport max_sqfree_sum_family(const FieldPtr& spec, int N, bool include_self_pairs,
                                     std::size_t vertex_cap = 64);

// Balanced-biclique maximum for fg+1 square-free; exact by subset
// enumeration up to the cap, degree-certificate heuristic beyond it.
ExtremalReport max_shifted_product_family(const FieldPtr& spec, int N, bool include_all_pairs,
                                          std::size_t vertex_cap = 20);

struct TrajectoryRow {
    int N = 0;
    long long max_size = 0;
    std::optional<double> empirical_exponent;
};

struct Trajectory {
    std::string kind;
    int q = 0;
    bool flag = false;
    std::vector<TrajectoryRow> rows;
    double reference_inv_phi = kInvGoldenRatio;
    double reference_two_thirds = kTwoThirds;
};

Trajectory exponent_trajectory(const std::string& kind, const FieldPtr& spec,
                               const std::vector<int>& Ns, bool flag);

// Exact maximum-clique solver on an explicit adjacency matrix (exposed for
// the oracle-equivalence tests).
long long max_clique_size(const std::vector<std::vector<char>>& adj);

} // namespace qtsieve
